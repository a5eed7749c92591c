// twohol: decorated 2-complex / 2-ribbon toolbox.
//
//   twohol --task enumerate --cm cm_02 --geometry triangle
//   twohol --task evaluate --cm cm_s3 --geometry cup --format table
//   twohol --task gallery
//   twohol --task selftest
//
// All outputs are byte-deterministic for identical inputs.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "twohol/errors.hpp"
#include "twohol/gallery.hpp"
#include "twohol/gauge.hpp"
#include "twohol/json_io.hpp"
#include "twohol/selftest.hpp"
#include "twohol/wilson.hpp"

using nlohmann::json;
using namespace twohol;

namespace {

struct Options {
    std::string task;
    std::string cm_ref;
    std::string geometry;
    std::string fix_boundary;
    std::string gerbe_file;
    std::string out_path;
    std::string format = "json";
    int workers = 0;
};

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cli", "unresolved_reference", "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error("json_io", "schema", std::string("unparseable file: ") + e.what());
    }
    return j;
}

CrossedModule resolve_cm(const std::string& ref) {
    if (ref.empty()) throw Error("cli", "unresolved_reference", "no crossed module named");
    const auto& builtins = builtin_crossed_modules();
    if (auto it = builtins.find(ref); it != builtins.end()) return it->second();
    return crossed_module_from_json(load_json_file(ref));
}

GalleryEntry resolve_geometry(const std::string& ref) {
    if (ref.empty()) throw Error("cli", "unresolved_reference", "no geometry named");
    if (auto e = gallery_lookup(ref)) return *e;
    // fall back to a direct file path
    std::ifstream probe(ref);
    if (probe) {
        json j = load_json_file(ref);
        GalleryEntry e;
        e.name = ref;
        if (j.contains("body")) {
            Ribbon r = ribbon_from_json(j);
            auto [n, m] = ribbon_signature(r);
            e.in_strands = n;
            e.out_strands = m;
            e.vertices = r.body.n_vertices;
            e.edges = (int)r.body.edges.size();
            e.faces = (int)r.body.faces.size();
            e.ribbon = std::move(r);
        } else {
            SimplePolyhedron p = stratify(complex_from_json(j));
            e.vertices = p.body.n_vertices;
            e.edges = (int)p.body.edges.size();
            e.faces = (int)p.body.faces.size();
            e.polyhedron = std::move(p);
        }
        return e;
    }
    throw Error("cli", "unresolved_reference", "unknown geometry " + ref);
}

std::optional<GerbeDatum> resolve_gerbe(const std::string& ref) {
    if (ref.empty()) return std::nullopt;
    return gerbe_from_json(load_json_file(ref));
}

// split "a,b" for the binary tasks
std::pair<std::string, std::string> split_pair(const std::string& ref, const char* task) {
    auto comma = ref.find(',');
    if (comma == std::string::npos || comma + 1 >= ref.size())
        throw Error("cli", "unresolved_reference",
                    std::string(task) + " needs --geometry a,b (two names)");
    return {ref.substr(0, comma), ref.substr(comma + 1)};
}

const TwoComplex& body_of(const GalleryEntry& e) {
    return e.ribbon ? e.ribbon->body : e.polyhedron->body;
}

void emit(const Options& opt, const json& payload, const std::string& table_form) {
    std::string text = opt.format == "table" && !table_form.empty() ? table_form
                                                                    : payload.dump(2) + "\n";
    if (opt.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opt.out_path, std::ios::binary);
        if (!out) throw Error("cli", "unresolved_reference", "cannot write " + opt.out_path);
        out << text;
    }
}

int run_task(const Options& opt) {
    if (opt.task == "gallery") {
        json listing = json::array();
        for (const auto& e : builtin_gallery())
            listing.push_back(json{{"name", e.name},
                                   {"kind", e.ribbon ? "ribbon" : "polyhedron"},
                                   {"signature", json::array({e.in_strands, e.out_strands})},
                                   {"vertices", e.vertices},
                                   {"edges", e.edges},
                                   {"faces", e.faces}});
        emit(opt, listing, gallery_listing());
        return 0;
    }
    if (opt.task == "selftest") {
        bool all = true;
        json lines = json::array();
        std::ostringstream table;
        for (const auto& r : run_acceptance()) {
            all = all && r.pass;
            lines.push_back(json{{"criterion", r.number},
                                 {"name", r.name},
                                 {"pass", r.pass},
                                 {"detail", r.detail}});
            table << "criterion " << r.number << (r.pass ? " PASS  " : " FAIL  ") << r.name
                  << (r.detail.empty() ? "" : " -- " + r.detail) << "\n";
        }
        emit(opt, lines, table.str());
        return all ? 0 : 1;
    }
    if (opt.task == "validate") {
        json report = json::object();
        std::ostringstream table;
        if (!opt.cm_ref.empty()) {
            auto vs = resolve_cm(opt.cm_ref).validate();
            report["crossed_module"] = violations_to_json(vs);
            table << "crossed module violations: " << vs.size() << "\n";
        }
        if (!opt.geometry.empty()) {
            GalleryEntry e = resolve_geometry(opt.geometry);
            std::vector<Violation> vs;
            if (e.ribbon) {
                try {
                    validate_ribbon(*e.ribbon);
                } catch (const Error& err) {
                    vs.push_back({err.precondition(), {}, err.what()});
                }
            } else {
                vs = e.polyhedron->validate();
            }
            report["geometry"] = violations_to_json(vs);
            table << "geometry violations: " << vs.size() << "\n";
        }
        if (report.empty())
            throw Error("cli", "unresolved_reference", "validate needs --cm and/or --geometry");
        emit(opt, report, table.str());
        bool clean = true;
        for (const auto& [k, v] : report.items()) clean = clean && v.empty();
        return clean ? 0 : 1;
    }

    CrossedModule cm = resolve_cm(opt.cm_ref);
    std::optional<GerbeDatum> gerbe = resolve_gerbe(opt.gerbe_file);
    std::map<int, int> fixed;
    std::optional<Decoration> decoration;
    if (!opt.fix_boundary.empty()) {
        json j = load_json_file(opt.fix_boundary);
        if (j.contains("edge_hol"))
            decoration = decoration_from_json(j);
        else
            fixed = fixed_from_json(j);
    }

    if (opt.task == "enumerate") {
        GalleryEntry e = resolve_geometry(opt.geometry);
        unsigned long long count = 0;
        enumerate_fake_flat(cm, body_of(e), fixed, [&](const Decoration&) { ++count; });
        emit(opt, json{{"count", count}}, "count " + std::to_string(count) + "\n");
        return 0;
    }
    if (opt.task == "holonomy") {
        GalleryEntry e = resolve_geometry(opt.geometry);
        if (!decoration)
            throw Error("cli", "unresolved_reference",
                        "holonomy needs --fix-boundary with a full decoration");
        TwoGroupElement x = total_surface_holonomy(cm, body_of(e), *decoration);
        emit(opt, json{{"fiber", x.h}, {"base", x.g}},
             "fiber " + std::to_string(x.h) + "  base " + std::to_string(x.g) + "\n");
        return 0;
    }
    if (opt.task == "orbits") {
        GalleryEntry e = resolve_geometry(opt.geometry);
        auto census = orbit_count(cm, body_of(e), fixed);
        std::ostringstream table;
        table << "orbits " << census.orbits << "\nsizes";
        for (auto s : census.sizes) table << " " << s;
        table << "\n";
        emit(opt, json{{"orbits", census.orbits}, {"sizes", census.sizes}}, table.str());
        return 0;
    }
    if (opt.task == "evaluate") {
        GalleryEntry e = resolve_geometry(opt.geometry);
        WilsonState w = e.ribbon ? evaluate(cm, *e.ribbon, gerbe)
                                 : boundary_table(cm, e.polyhedron->body, gerbe);
        emit(opt, to_json(w), wilson_table_text(w));
        return 0;
    }
    if (opt.task == "compose") {
        auto [na, nb] = split_pair(opt.geometry, "compose");
        GalleryEntry a = resolve_geometry(na), b = resolve_geometry(nb);
        if (!a.ribbon || !b.ribbon)
            throw Error("cli", "unresolved_reference", "compose needs two ribbons");
        WilsonState w = compose_states(cm, evaluate(cm, *a.ribbon, gerbe),
                                       evaluate(cm, *b.ribbon, gerbe), a.ribbon->target);
        emit(opt, to_json(w), wilson_table_text(w));
        return 0;
    }
    if (opt.task == "sum") {
        auto [na, nb] = split_pair(opt.geometry, "sum");
        GalleryEntry a = resolve_geometry(na), b = resolve_geometry(nb);
        if (!a.ribbon || !b.ribbon)
            throw Error("cli", "unresolved_reference", "sum needs two ribbons");
        int neg = -1, pos = -1;
        for (int i = 0; i < (int)a.ribbon->markings.size(); ++i)
            if (a.ribbon->markings[i].sign == -1 && neg < 0) neg = i;
        for (int i = 0; i < (int)b.ribbon->markings.size(); ++i)
            if (b.ribbon->markings[i].sign == +1 && pos < 0) pos = i;
        if (neg < 0 || pos < 0)
            throw Error("ribbon", "summability", "no summable marking pair");
        WilsonState w = tensor_with_collar(cm, *a.ribbon, *b.ribbon, neg, pos);
        emit(opt, to_json(w), wilson_table_text(w));
        return 0;
    }
    if (opt.task == "pair") {
        GalleryEntry e = resolve_geometry(opt.geometry);
        if (!e.ribbon) throw Error("cli", "unresolved_reference", "pair needs a ribbon");
        Amplitude a = orientation_pairing(cm, evaluate(cm, dagger1(*e.ribbon), gerbe),
                                          evaluate(cm, *e.ribbon, gerbe));
        std::ostringstream table;
        table << "value " << a.value << "  phase " << a.phase.v << "\n";
        emit(opt, to_json(a), table.str());
        return 0;
    }
    if (opt.task == "partition") {
        GalleryEntry e = resolve_geometry(opt.geometry);
        if (!e.polyhedron)
            throw Error("wilson", "domain", "partition needs a closed polyhedron");
        Amplitude z = partition_function(cm, *e.polyhedron, gerbe);
        std::ostringstream table;
        table << "value " << z.value << "  phase " << z.phase.v << "\n";
        emit(opt, to_json(z), table.str());
        return 0;
    }
    if (opt.task == "move") {
        // apply one Pachner (or handlebody) move and report both tables
        GalleryEntry e = resolve_geometry(opt.geometry);
        json report;
        std::ostringstream table;
        if (e.polyhedron && e.polyhedron->body.is_closed()) {
            SimplePolyhedron p = *e.polyhedron;
            int face = -1;
            for (int f = 0; f < (int)p.body.faces.size() && face < 0; ++f) {
                bool plain = true;
                for (auto s : p.body.faces[f].slots)
                    if (p.edge_strata[s.edge] == EdgeStratum::triple) plain = false;
                if (plain) face = f;
            }
            if (face < 0) throw Error("polyhedron", "site", "no nonsingular face to blow up");
            Amplitude before = partition_function(cm, p, gerbe);
            Amplitude after = partition_function(cm, handle_move_02(p, PillowSite{face}), gerbe);
            report = json{{"move", "handle_02"},
                          {"before", to_json(before)},
                          {"after", to_json(after)},
                          {"equal", before == after}};
            table << "handle_02  before " << before.value << "  after " << after.value
                  << (before == after ? "  equal" : "  DIFFER") << "\n";
        } else {
            const TwoComplex& c = body_of(e);
            WilsonState before = boundary_table(cm, c, gerbe);
            WilsonState after = boundary_table(cm, pachner_subdivide(c, 0), gerbe);
            report = json{{"move", "pachner_13"},
                          {"before", to_json(before)},
                          {"after", to_json(after)},
                          {"equal", before == after}};
            table << "pachner_13  " << (before == after ? "equal" : "DIFFER") << "\n";
        }
        emit(opt, report, table.str());
        return report["equal"].get<bool>() ? 0 : 1;
    }
    throw Error("cli", "unresolved_reference", "unknown task " + opt.task);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decorated 2-complex and 2-ribbon state sums"};
    Options opt;
    app.add_option("--task", opt.task,
                   "validate|enumerate|holonomy|orbits|evaluate|compose|sum|pair|partition|"
                   "move|gallery|selftest")
        ->required();
    app.add_option("--cm", opt.cm_ref, "builtin crossed-module name or JSON file");
    app.add_option("--geometry", opt.geometry, "gallery name or JSON file; a,b for binary tasks");
    app.add_option("--fix-boundary", opt.fix_boundary, "JSON file pinning boundary edges");
    app.add_option("--gerbe", opt.gerbe_file, "JSON gerbe datum");
    app.add_option("--out", opt.out_path, "output path (default stdout)");
    app.add_option("--format", opt.format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));
    app.add_option("--workers", opt.workers, "enumeration worker bound (output-invariant)");
    CLI11_PARSE(app, argc, argv);
    if (opt.workers <= 0) opt.workers = (int)std::thread::hardware_concurrency();

    try {
        return run_task(opt);
    } catch (const Error& e) {
        json err{{"error", {{"module", e.module_name()},
                            {"precondition", e.precondition()},
                            {"detail", e.what()}}}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err{{"error", {{"module", "cli"}, {"precondition", "internal"}, {"detail", e.what()}}}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    }
}
