#include "twohol/json_io.hpp"

#include <sstream>

#include "twohol/errors.hpp"

namespace twohol {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error("json_io", "schema", what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field ") + key);
    return j.at(key);
}

int as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) bad(std::string(what) + ": expected an integer");
    return j.get<int>();
}

std::vector<int> int_vector(const json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + ": expected an array");
    std::vector<int> out;
    for (const auto& x : j) out.push_back(as_int(x, what));
    return out;
}

json rational_to_json(const Rational& r) {
    return json::array({boost::multiprecision::numerator(r).str(),
                        boost::multiprecision::denominator(r).str()});
}

Rational rational_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) bad("rational: expected [p, q]");
    auto part = [&](const json& x) -> boost::multiprecision::cpp_int {
        if (x.is_string()) return boost::multiprecision::cpp_int(x.get<std::string>());
        if (x.is_number_integer()) return x.get<long long>();
        bad("rational: parts must be integers or decimal strings");
    };
    boost::multiprecision::cpp_int p = part(j[0]), q = part(j[1]);
    if (q == 0) bad("rational: zero denominator");
    return Rational(p, q);
}

json edge_to_json(const TwoComplex::Edge& e) { return json::array({e.src, e.dst, e.framing}); }

TwoComplex::Edge edge_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) bad("edge: expected [src, dst, framing]");
    return {as_int(j[0], "edge src"), as_int(j[1], "edge dst"), as_int(j[2], "edge framing")};
}

json path_to_json(const std::vector<EdgeRef>& p) {
    json out = json::array();
    for (EdgeRef r : p) out.push_back(json::array({r.edge, r.sign}));
    return out;
}

std::vector<EdgeRef> path_from_json(const json& j) {
    if (!j.is_array()) bad("path: expected an array");
    std::vector<EdgeRef> out;
    for (const auto& x : j) {
        if (!x.is_array() || x.size() != 2) bad("path step: expected [edge, sign]");
        out.push_back({as_int(x[0], "path edge"), as_int(x[1], "path sign")});
    }
    return out;
}

}  // namespace

json to_json(const FiniteGroup& g) {
    return json{{"order", g.order}, {"mul", g.mul}};
}

FiniteGroup group_from_json(const json& j) {
    FiniteGroup g;
    g.order = as_int(field(j, "order"), "group order");
    const json& mul = field(j, "mul");
    if (!mul.is_array()) bad("group mul: expected a table");
    for (const auto& row : mul) g.mul.push_back(int_vector(row, "group mul row"));
    try {
        g.finalize();
    } catch (const std::exception& e) {
        bad(std::string("group table: ") + e.what());
    }
    return g;
}

json to_json(const CrossedModule& cm) {
    return json{{"base", to_json(cm.base)},
                {"fiber", to_json(cm.fiber)},
                {"t", cm.t},
                {"act", cm.act}};
}

CrossedModule crossed_module_from_json(const json& j) {
    CrossedModule cm;
    cm.base = group_from_json(field(j, "base"));
    cm.fiber = group_from_json(field(j, "fiber"));
    cm.t = int_vector(field(j, "t"), "t");
    const json& act = field(j, "act");
    if (!act.is_array()) bad("act: expected a table");
    for (const auto& row : act) cm.act.push_back(int_vector(row, "act row"));
    return cm;
}

json to_json(const TwoComplex& c) {
    json edges = json::array(), faces = json::array();
    for (const auto& e : c.edges) edges.push_back(edge_to_json(e));
    for (const auto& f : c.faces) {
        json slots = json::array();
        for (auto s : f.slots) slots.push_back(json::array({s.edge, s.sign}));
        faces.push_back(json{{"slots", slots}, {"eps", f.eps}});
    }
    return json{{"n_vertices", c.n_vertices}, {"root", c.root}, {"edges", edges}, {"faces", faces}};
}

TwoComplex complex_from_json(const json& j) {
    TwoComplex c;
    c.n_vertices = as_int(field(j, "n_vertices"), "n_vertices");
    c.root = as_int(field(j, "root"), "root");
    for (const auto& e : field(j, "edges")) c.edges.push_back(edge_from_json(e));
    for (const auto& f : field(j, "faces")) {
        const json& slots = field(f, "slots");
        if (!slots.is_array() || slots.size() != 3) bad("face: expected three slots");
        Face face;
        for (int s = 0; s < 3; ++s) {
            if (!slots[s].is_array() || slots[s].size() != 2) bad("slot: expected [edge, sign]");
            face.slots[s] = {as_int(slots[s][0], "slot edge"), as_int(slots[s][1], "slot sign")};
        }
        face.eps = as_int(field(f, "eps"), "face eps");
        c.faces.push_back(face);
    }
    return c;
}

json to_json(const BoundaryGraph& b) {
    json edges = json::array();
    for (const auto& e : b.edges) edges.push_back(edge_to_json(e));
    json out{{"n_vertices", b.n_vertices},
             {"edges", edges},
             {"incoming", b.incoming},
             {"outgoing", b.outgoing}};
    if (b.base_point) out["base_point"] = *b.base_point;
    return out;
}

BoundaryGraph graph_from_json(const json& j) {
    BoundaryGraph b;
    b.n_vertices = as_int(field(j, "n_vertices"), "n_vertices");
    for (const auto& e : field(j, "edges")) b.edges.push_back(edge_from_json(e));
    b.incoming = int_vector(field(j, "incoming"), "incoming");
    b.outgoing = int_vector(field(j, "outgoing"), "outgoing");
    if (j.contains("base_point") && !j.at("base_point").is_null())
        b.base_point = as_int(j.at("base_point"), "base_point");
    return b;
}

json to_json(const Ribbon& r) {
    json markings = json::array();
    for (const auto& m : r.markings)
        markings.push_back(json{{"path", path_to_json(m.path)}, {"sign", m.sign}});
    json out{{"source", to_json(r.source)},
             {"target", to_json(r.target)},
             {"body", to_json(r.body)},
             {"source_vertices", r.source_vertices},
             {"target_vertices", r.target_vertices},
             {"source_edges", r.source_edges},
             {"target_edges", r.target_edges},
             {"markings", markings},
             {"twist", r.twist}};
    if (r.pair) {
        const auto& p = *r.pair;
        out["pair"] = json{{"src_vertices", p.src_vertices}, {"src_edges", p.src_edges},
                           {"src_incoming", p.src_incoming}, {"src_outgoing", p.src_outgoing},
                           {"tgt_vertices", p.tgt_vertices}, {"tgt_edges", p.tgt_edges},
                           {"tgt_incoming", p.tgt_incoming}, {"tgt_outgoing", p.tgt_outgoing}};
    }
    return out;
}

Ribbon ribbon_from_json(const json& j) {
    Ribbon r;
    r.source = graph_from_json(field(j, "source"));
    r.target = graph_from_json(field(j, "target"));
    r.body = complex_from_json(field(j, "body"));
    r.source_vertices = int_vector(field(j, "source_vertices"), "source_vertices");
    r.target_vertices = int_vector(field(j, "target_vertices"), "target_vertices");
    r.source_edges = int_vector(field(j, "source_edges"), "source_edges");
    r.target_edges = int_vector(field(j, "target_edges"), "target_edges");
    for (const auto& m : field(j, "markings")) {
        Marking mk;
        mk.path = path_from_json(field(m, "path"));
        mk.sign = as_int(field(m, "sign"), "marking sign");
        r.markings.push_back(std::move(mk));
    }
    r.twist = as_int(field(j, "twist"), "twist");
    if (j.contains("pair") && !j.at("pair").is_null()) {
        const json& p = j.at("pair");
        Ribbon::PairSplit ps;
        ps.src_vertices = as_int(field(p, "src_vertices"), "pair");
        ps.src_edges = as_int(field(p, "src_edges"), "pair");
        ps.src_incoming = as_int(field(p, "src_incoming"), "pair");
        ps.src_outgoing = as_int(field(p, "src_outgoing"), "pair");
        ps.tgt_vertices = as_int(field(p, "tgt_vertices"), "pair");
        ps.tgt_edges = as_int(field(p, "tgt_edges"), "pair");
        ps.tgt_incoming = as_int(field(p, "tgt_incoming"), "pair");
        ps.tgt_outgoing = as_int(field(p, "tgt_outgoing"), "pair");
        r.pair = ps;
    }
    return r;
}

json to_json(const Decoration& d) {
    return json{{"edge_hol", d.edge_hol}, {"face_hol", d.face_hol}};
}

Decoration decoration_from_json(const json& j) {
    Decoration d;
    d.edge_hol = int_vector(field(j, "edge_hol"), "edge_hol");
    d.face_hol = int_vector(field(j, "face_hol"), "face_hol");
    return d;
}

json to_json(const WilsonState& w) {
    json entries = json::array();
    for (const auto& [k, v] : w.table)
        entries.push_back(json::array({k.first, k.second, rational_to_json(v)}));
    json out{{"src_edges", w.src_edges}, {"tgt_edges", w.tgt_edges}, {"entries", entries}};
    if (!w.phase.is_zero()) out["phase"] = rational_to_json(w.phase.v);
    return out;
}

WilsonState wilson_from_json(const json& j) {
    WilsonState w;
    w.src_edges = as_int(field(j, "src_edges"), "src_edges");
    w.tgt_edges = as_int(field(j, "tgt_edges"), "tgt_edges");
    for (const auto& e : field(j, "entries")) {
        if (!e.is_array() || e.size() != 3) bad("entry: expected [i, j, [p, q]]");
        long long i = e[0].get<long long>(), k = e[1].get<long long>();
        w.table[{i, k}] = rational_from_json(e[2]);
    }
    if (j.contains("phase")) w.phase = RotationNumber(rational_from_json(j.at("phase")));
    return w;
}

json to_json(const Amplitude& a) {
    return json{{"value", rational_to_json(a.value)}, {"phase", rational_to_json(a.phase.v)}};
}

Amplitude amplitude_from_json(const json& j) {
    Amplitude a;
    a.value = rational_from_json(field(j, "value"));
    a.phase = RotationNumber(rational_from_json(field(j, "phase")));
    return a;
}

json to_json(const GerbeDatum& g) {
    json phases = json::array();
    for (const auto& [t, v] : g.phases)
        phases.push_back(json::array({json::array({t[0], t[1], t[2]}), rational_to_json(v.v)}));
    return json{{"phases", phases}};
}

GerbeDatum gerbe_from_json(const json& j) {
    GerbeDatum g;
    for (const auto& e : field(j, "phases")) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_array() || e[0].size() != 3)
            bad("gerbe phase: expected [[i, j, k], [p, q]]");
        Triple t{as_int(e[0][0], "triple"), as_int(e[0][1], "triple"), as_int(e[0][2], "triple")};
        g.phases[t] = RotationNumber(rational_from_json(e[1]));
    }
    return g;
}

json violations_to_json(const std::vector<Violation>& vs) {
    json out = json::array();
    for (const auto& v : vs)
        out.push_back(json{{"axiom", v.axiom}, {"witness", v.witness}, {"detail", v.detail}});
    return out;
}

json fixed_to_json(const std::map<int, int>& fixed) {
    json arr = json::array();
    for (auto [e, g] : fixed) arr.push_back(json::array({e, g}));
    return json{{"fixed", arr}};
}

std::map<int, int> fixed_from_json(const json& j) {
    std::map<int, int> out;
    for (const auto& e : field(j, "fixed")) {
        if (!e.is_array() || e.size() != 2) bad("fixed: expected [edge, element] pairs");
        out[as_int(e[0], "fixed edge")] = as_int(e[1], "fixed element");
    }
    return out;
}

std::string wilson_table_text(const WilsonState& w) {
    std::ostringstream os;
    os << "src_edges " << w.src_edges << "  tgt_edges " << w.tgt_edges << "\n";
    if (!w.phase.is_zero()) os << "phase " << w.phase.v << "\n";
    size_t wi = 3, wj = 3;
    for (const auto& [k, v] : w.table) {
        wi = std::max(wi, std::to_string(k.first).size());
        wj = std::max(wj, std::to_string(k.second).size());
    }
    for (const auto& [k, v] : w.table) {
        std::string a = std::to_string(k.first), b = std::to_string(k.second);
        os << std::string(wi - a.size(), ' ') << a << "  " << std::string(wj - b.size(), ' ') << b
           << "  " << v << "\n";
    }
    return os.str();
}

}  // namespace twohol
