#include "twohol/selftest.hpp"

#include <array>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "twohol/errors.hpp"
#include "twohol/gallery.hpp"
#include "twohol/gauge.hpp"
#include "twohol/gerbe.hpp"
#include "twohol/group_core.hpp"
#include "twohol/holonomy.hpp"
#include "twohol/wilson.hpp"

namespace twohol {

namespace {

struct Check {
    bool ok = true;
    std::ostringstream why;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok) why << "; ";
            ok = false;
            why << what;
        }
    }
};

// ---- independent crossed-module oracle (no reliance on cached tables) ----

bool oracle_group(const FiniteGroup& g) {
    int n = g.order;
    if ((int)g.mul.size() != n) return false;
    for (const auto& row : g.mul) {
        if ((int)row.size() != n) return false;
        for (int x : row)
            if (x < 0 || x >= n) return false;
    }
    for (int a = 0; a < n; ++a)
        if (g.mul[0][a] != a || g.mul[a][0] != a) return false;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul[g.mul[a][b]][c] != g.mul[a][g.mul[b][c]]) return false;
    for (int a = 0; a < n; ++a) {
        bool has_inv = false;
        for (int b = 0; b < n; ++b)
            if (g.mul[a][b] == 0 && g.mul[b][a] == 0) has_inv = true;
        if (!has_inv) return false;
    }
    return true;
}

int oracle_inverse(const FiniteGroup& g, int a) {
    for (int b = 0; b < g.order; ++b)
        if (g.mul[a][b] == 0) return b;
    return -1;
}

bool oracle_crossed_module(const CrossedModule& cm) {
    if (!oracle_group(cm.base) || !oracle_group(cm.fiber)) return false;
    int n = cm.base.order, m = cm.fiber.order;
    if ((int)cm.t.size() != m || (int)cm.act.size() != n) return false;
    for (int h : cm.t)
        if (h < 0 || h >= n) return false;
    for (const auto& row : cm.act) {
        if ((int)row.size() != m) return false;
        for (int x : row)
            if (x < 0 || x >= m) return false;
    }
    for (int h = 0; h < m; ++h)
        for (int k = 0; k < m; ++k)
            if (cm.t[cm.fiber.mul[h][k]] != cm.base.mul[cm.t[h]][cm.t[k]]) return false;
    for (int h = 0; h < m; ++h)
        if (cm.act[0][h] != h) return false;
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < m; ++h)
            for (int k = 0; k < m; ++k)
                if (cm.act[g][cm.fiber.mul[h][k]] != cm.fiber.mul[cm.act[g][h]][cm.act[g][k]])
                    return false;
    for (int g = 0; g < n; ++g)
        for (int gp = 0; gp < n; ++gp)
            for (int h = 0; h < m; ++h)
                if (cm.act[cm.base.mul[g][gp]][h] != cm.act[g][cm.act[gp][h]]) return false;
    for (int g = 0; g < n; ++g) {
        int gi = oracle_inverse(cm.base, g);
        for (int h = 0; h < m; ++h)
            if (cm.t[cm.act[g][h]] != cm.base.mul[cm.base.mul[g][cm.t[h]]][gi]) return false;
    }
    for (int h = 0; h < m; ++h) {
        int hi = oracle_inverse(cm.fiber, h);
        for (int k = 0; k < m; ++k)
            if (cm.act[cm.t[h]][k] != cm.fiber.mul[cm.fiber.mul[h][k]][hi]) return false;
    }
    return true;
}

// ---- shared geometry ----

TwoComplex square_complex() { return make_unbroken(assemble(2, {{0, 1, 1, 2, +1}})).complex; }

TwoComplex fan_complex() { return pachner_subdivide(assemble(1, {}), 0); }

TwoComplex doubled_triangle() {
    return assemble(2, {{0, 0, 1, 0, +1}, {0, 1, 1, 1, +1}, {0, 2, 1, 2, +1}});
}

TwoComplex doubled_square() {
    TwoComplex c = square_complex();
    int diag = -1;
    auto counts = c.edge_face_count();
    for (int e = 0; e < (int)c.edges.size(); ++e)
        if (counts[e] == 2) diag = e;
    int mirror = (int)c.edges.size();
    c.edges.push_back(c.edges[diag]);
    for (int f : {0, 1}) {
        Face g = c.faces[f];
        for (auto& s : g.slots)
            if (s.edge == diag) s.edge = mirror;
        g.eps = -g.eps;
        c.faces.push_back(g);
    }
    return c;
}

TwoComplex torus_complex() {
    TwoComplex t;
    t.n_vertices = 1;
    t.edges = {{0, 0}, {0, 0}, {0, 0}};
    t.faces.push_back({{EdgeRef{0, +1}, EdgeRef{2, +1}, EdgeRef{1, +1}}, +1});
    t.faces.push_back({{EdgeRef{1, +1}, EdgeRef{2, +1}, EdgeRef{0, +1}}, +1});
    return make_unbroken(t).complex;
}

// one triangle seen as a ribbon from its base edge to the two-edge path
Ribbon triangle_ribbon_up() {
    Ribbon r;
    r.body.n_vertices = 3;
    r.body.edges = {{0, 1, +1}, {0, 2, +1}, {1, 2, +1}};
    r.body.faces.push_back({{EdgeRef{0, +1}, EdgeRef{1, +1}, EdgeRef{2, +1}}, +1});
    r.source.n_vertices = 2;
    r.source.edges = {{0, 1, +1}};
    r.source.incoming = {0};
    r.source.outgoing = {1};
    r.target.n_vertices = 3;
    r.target.edges = {{0, 2, +1}, {1, 2, +1}};
    r.target.incoming = {0};
    r.target.outgoing = {1};
    r.source_vertices = {0, 1};
    r.source_edges = {0};
    r.target_vertices = {0, 1, 2};
    r.target_edges = {1, 2};
    return r;
}

// the mirror triangle, from the two-edge path back to a single edge
Ribbon triangle_ribbon_down() {
    Ribbon r = triangle_ribbon_up();
    std::swap(r.source, r.target);
    std::swap(r.source_vertices, r.target_vertices);
    std::swap(r.source_edges, r.target_edges);
    return r;
}

// ---- criteria ----

void criterion_axioms(Check& c) {
    for (auto& [name, make] : builtin_crossed_modules()) {
        CrossedModule cm = make();
        c.expect(cm.validate().empty(), name + std::string(" rejected"));
        c.expect(check_interchange(cm), name + std::string(" breaks interchange"));
        int n = cm.base.order, m = cm.fiber.order;
        auto agree = [&](const CrossedModule& mut, const char* site) {
            bool accepted = mut.validate().empty();
            bool truth = oracle_crossed_module(mut);
            c.expect(accepted == truth,
                     name + std::string(": validate disagrees with the oracle at ") + site);
        };
        for (int h = 0; h < m; ++h)
            for (int v = 0; v < n; ++v) {
                if (v == cm.t[h]) continue;
                CrossedModule mut = cm;
                mut.t[h] = v;
                agree(mut, "t");
            }
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < m; ++h)
                for (int v = 0; v < m; ++v) {
                    if (v == cm.act[g][h]) continue;
                    CrossedModule mut = cm;
                    mut.act[g][h] = v;
                    agree(mut, "act");
                }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int v = 0; v < n; ++v) {
                    if (v == cm.base.mul[a][b]) continue;
                    CrossedModule mut = cm;
                    mut.base.mul[a][b] = v;
                    agree(mut, "base mul");
                }
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int v = 0; v < m; ++v) {
                    if (v == cm.fiber.mul[a][b]) continue;
                    CrossedModule mut = cm;
                    mut.fiber.mul[a][b] = v;
                    agree(mut, "fiber mul");
                }
    }
}

void criterion_source_path(Check& c) {
    // every chain of k simplices glued along one slot pair per consecutive
    // face, all slot assignments and orientations
    for (int k = 2; k <= 5; ++k) {
        std::vector<std::array<int, 3>> choice(k - 1, {0, 0, 0});
        long tested = 0;
        while (true) {
            bool regular = true;
            for (int j = 0; j + 1 < k - 1 && regular; ++j)
                if (choice[j][1] == choice[j + 1][0]) regular = false;
            if (regular) {
                GluingSet gl;
                for (int j = 0; j < k - 1; ++j)
                    gl.push_back({j, choice[j][0], j + 1, choice[j][1], choice[j][2] ? -1 : +1});
                TwoComplex cx = assemble(k, gl);
                if (cx.is_valid() && is_regular(cx) && cx.is_connected()) {
                    auto r = make_unbroken(cx);
                    if (r.path.size() > (size_t)(k - 1)) {
                        c.expect(false, "source path too long at k=" + std::to_string(k));
                        return;
                    }
                    ++tested;
                }
            }
            int j = k - 2;
            while (j >= 0) {
                if (++choice[j][2] < 2) break;
                choice[j][2] = 0;
                if (++choice[j][1] < 3) break;
                choice[j][1] = 0;
                if (++choice[j][0] < 3) break;
                choice[j] = {0, 0, 0};
                --j;
            }
            if (j < 0) break;
        }
        c.expect(tested > 0, "no gluing sets tested at k=" + std::to_string(k));
    }
}

void criterion_triangle_count(Check& c) {
    TwoComplex tri = assemble(1, {});
    for (auto& [name, make] : builtin_crossed_modules()) {
        CrossedModule cm = make();
        unsigned long long seen = 0;
        enumerate_fake_flat(cm, tri, {}, [&](const Decoration&) { ++seen; });
        unsigned long long expect = (unsigned long long)cm.base.order * cm.base.order *
                                    cm.fiber.order;
        c.expect(seen == expect, name + std::string(": triangle count off"));
        c.expect(count_fake_flat(cm, tri, {}) == seen,
                 name + std::string(": count and stream disagree"));
    }
}

void criterion_pachner(Check& c) {
    TwoComplex sq = square_complex();
    TwoComplex fan = fan_complex();
    for (auto cm : {cm_02(), cm_id2(), cm_s3()}) {
        for (const TwoComplex& cx : {sq, fan}) {
            int interior = -1;
            for (int e = 0; e < (int)cx.edges.size(); ++e)
                if (!cx.edge_is_boundary(e)) interior = e;
            WilsonState base = boundary_table(cm, cx);
            c.expect(boundary_table(cm, pachner_flip(cx, interior)) == base,
                     "flip changed a table");
            c.expect(boundary_table(cm, pachner_subdivide(cx, 0)) == base,
                     "1-3 changed a table");
        }
    }
}

void criterion_gauge(Check& c) {
    TwoComplex sq = square_complex();
    TwoComplex cross = gamma_plus().body;
    for (auto cm : {cm_02(), cm_s3()}) {
        enumerate_fake_flat(cm, sq, {}, [&](const Decoration& d) {
            if (c.ok && !check_internal_invariance(cm, sq, d))
                c.expect(false, "square invariance failed");
        });
        enumerate_fake_flat(cm, cross, {}, [&](const Decoration& d) {
            if (c.ok && !check_internal_invariance(cm, cross, d))
                c.expect(false, "crossing invariance failed");
        });
    }
}

void criterion_functoriality(Check& c) {
    auto cm = cm_02();
    Ribbon up = triangle_ribbon_up(), down = triangle_ribbon_down();
    WilsonState square = evaluate(cm, stack(up, down));
    WilsonState composed = compose_states(cm, evaluate(cm, up), evaluate(cm, down), up.target);
    c.expect(square == composed, "triangle pair breaks functoriality");
    Ribbon bt = b_times();
    WilsonState w = evaluate(cm, bt);
    Ribbon composite = stack(bt, identity_cylinder(bt.target));
    WilsonState lhs = evaluate(cm, composite);
    WilsonState rhs =
        compose_states(cm, w, evaluate(cm, identity_cylinder(bt.target)), bt.target);
    c.expect(lhs == rhs, "b_times/identity breaks functoriality");
    c.expect(rhs == w, "identity cylinder is not a unit");
}

void criterion_monoidality(Check& c) {
    auto cm = cm_02();
    c.expect(evaluate(cm, connected_sum(cup(), cap(), 0, 0)) ==
                 tensor_with_collar(cm, cup(), cap(), 0, 0),
             "collar tensor disagrees with the connected sum");
    Ribbon sa = sheet_cylinder(one_strand());
    Ribbon sb = sheet_cylinder(cup_graph());
    WilsonState wa = evaluate(cm, sa), wb = evaluate(cm, sb);
    WilsonState tc = disjoint_tensor(cm, compose_states(cm, wa, wa, one_strand()),
                                     compose_states(cm, wb, wb, cup_graph()));
    WilsonState ct = compose_states(cm, disjoint_tensor(cm, wa, wb),
                                    disjoint_tensor(cm, wa, wb),
                                    disjoint_graph(one_strand(), cup_graph()));
    c.expect(tc == ct, "tensor/compose interchange fails");
    c.expect(evaluate(cm, stack(disjoint_union(sa, sb), disjoint_union(sa, sb))) == tc,
             "geometric interchange fails");
}

void criterion_handlebody(Check& c) {
    auto cm = cm_02();
    SimplePolyhedron p = coordinate_planes_s3();
    Rational z = partition_function(cm, p).value;
    int face = -1;
    for (int f = 0; f < (int)p.body.faces.size() && face < 0; ++f) {
        bool plain = true;
        for (auto s : p.body.faces[f].slots)
            if (p.edge_strata[s.edge] == EdgeStratum::triple) plain = false;
        if (plain) face = f;
    }
    SimplePolyhedron blown = handle_move_02(p, PillowSite{face});
    c.expect(partition_function(cm, blown).value == z, "0-2 move changed the value");
    int pillow = (int)blown.body.faces.size() - 1;
    bool expanded = false;
    for (int g = 0; g < (int)blown.body.faces.size() && !expanded; ++g) {
        if (g == pillow) continue;
        try {
            SimplePolyhedron after = handle_move_23(blown, MembraneSite{pillow, g});
            c.expect(partition_function(cm, after).value == z, "2-3 move changed the value");
            expanded = true;
        } catch (const Error&) {
        }
    }
    c.expect(expanded, "no 2-3 site found");
}

void criterion_doubles(Check& c) {
    TwoComplex tri = doubled_triangle();
    TwoComplex sq = doubled_square();
    for (auto& [name, make] : builtin_crossed_modules()) {
        CrossedModule cm = make();
        c.expect(partition_function(cm, stratify(tri)).value == 1,
                 name + std::string(": doubled triangle is not 1"));
        c.expect(partition_function(cm, stratify(sq)).value == 1,
                 name + std::string(": doubled square is not 1"));
    }
}

void criterion_reflection(Check& c) {
    for (auto cm : {cm_02(), cm_id2(), cm_s3()}) {
        // gallery ribbons with empty target, grouped by shared source graph
        std::map<std::string, std::vector<Ribbon>> groups;
        for (const auto& e : builtin_gallery()) {
            if (!e.ribbon || e.ribbon->target.n_vertices != 0 || e.ribbon->body.n_vertices == 0)
                continue;
            std::ostringstream key;
            key << e.ribbon->source.n_vertices << ":" << e.ribbon->source.edges.size();
            groups[key.str()].push_back(*e.ribbon);
        }
        c.expect(!groups.empty(), "no closed-target gallery ribbons");
        for (auto& [key, rs] : groups) {
            for (const Ribbon& r : rs)
                c.expect(reflection_positivity_check(cm, {r}).is_psd, "singleton Gram not PSD");
        }
        // a genuine 2x2 family over one source graph
        Ribbon capped = stack(sheet_cylinder(cap_graph()), cap());
        c.expect(reflection_positivity_check(cm, {cap(), capped}).is_psd,
                 "cap family Gram not PSD");
    }
}

void criterion_classical(Check& c) {
    // the torus standard graph arises from the closed crossing generator
    BoundaryGraph closed = close_off(b_times_graph());
    int non_loop = -1;
    for (int e = 0; e < (int)closed.edges.size(); ++e)
        if (closed.edges[e].src != closed.edges[e].dst) non_loop = e;
    c.expect(non_loop >= 0, "closed b_times has no contractible edge");
    BoundaryGraph standard = contract_edge(closed, non_loop);
    while (true) {
        int again = -1;
        for (int e = 0; e < (int)standard.edges.size(); ++e)
            if (standard.edges[e].src != standard.edges[e].dst) again = e;
        if (again < 0) break;
        standard = contract_edge(standard, again);
    }
    c.expect(standard.n_vertices == 1 && standard.edges.size() == 2,
             "standard torus graph is not a wedge of two loops");

    auto cm = cm_discrete(FiniteGroup::symmetric3());
    TwoComplex torus = torus_complex();
    std::vector<Decoration> states;
    enumerate_fake_flat(cm, torus, {}, [&](const Decoration& d) { states.push_back(d); });
    c.expect(states.size() == 18, "flat count is not the commuting-pair count");
    unsigned long long brute = 0;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            if (cm.base.mul[a][b] == cm.base.mul[b][a]) ++brute;
    c.expect(brute == states.size(), "brute-force commuting pairs disagree");

    auto census = orbit_count(cm, torus, {});
    unsigned long long fixed_total = 0;
    for (int a = 0; a < cm.base.order; ++a) {
        GaugeParam z = identity_gauge(torus);
        z.vertex_part[0] = a;
        for (const auto& d : states)
            if (apply_gauge(cm, torus, z, d) == d) ++fixed_total;
    }
    c.expect(fixed_total == census.orbits * (unsigned long long)cm.base.order,
             "orbit census fails Burnside");
}

void criterion_gerbe(Check& c) {
    std::vector<Triple> triples;
    std::vector<Quad> quads;
    const int n = 6;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                triples.push_back({i, j, k});
                for (int l = k + 1; l < n; ++l) quads.push_back({i, j, k, l});
            }
    std::mt19937 rng(20240817);
    auto random_cochain = [&] {
        PhaseCochain g;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                g[{i, j}] = RotationNumber::of((long long)(rng() % 12), 12);
        return g;
    };
    for (int trial = 0; trial < 10; ++trial) {
        GerbeDatum s = coboundary(random_cochain(), triples);
        c.expect(check_pentagon(s, quads), "coboundary fails the pentagon");
        GerbeDatum bad = s;
        Triple t = triples[trial % triples.size()];
        bad.phases[t] = bad.phases[t] + RotationNumber::of(1, 2);
        c.expect(!check_pentagon(bad, quads), "seeded violation accepted");
    }
    for (int trial = 0; trial < 10; ++trial) {
        GerbeDatum dot = coboundary(random_cochain(), triples);
        PhaseCochain planted = random_cochain();
        GerbeDatum cup_d = gerbe_dot(dot, coboundary(planted, triples));
        auto gamma = check_gerbe_interchange(cup_d, dot);
        if (!gamma) {
            c.expect(false, "interchange failed to recover a planted cochain");
            return;
        }
        GerbeDatum dg = coboundary(*gamma, triples);
        for (auto t : triples)
            c.expect(dg.phases.at(t) == cup_d.phases.at(t) - dot.phases.at(t),
                     "recovered cochain has the wrong coboundary");
    }
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
    using Fn = void (*)(Check&);
    std::vector<std::pair<std::string, Fn>> criteria = {
        {"crossed-module axioms and corruption rejection", criterion_axioms},
        {"source-path bound on regular gluing chains", criterion_source_path},
        {"triangle fake-flat count |G|^2 |H|", criterion_triangle_count},
        {"Pachner invariance of boundary tables", criterion_pachner},
        {"internal gauge invariance of surface holonomy", criterion_gauge},
        {"functoriality of evaluation under stacking", criterion_functoriality},
        {"monoidality of the collar tensor and interchange", criterion_monoidality},
        {"handlebody-move invariance of the partition function", criterion_handlebody},
        {"doubled disks normalize to one", criterion_doubles},
        {"reflection positivity of gallery Gram matrices", criterion_reflection},
        {"classical torus recovery and Burnside census", criterion_classical},
        {"gerbe pentagon and interchange recovery", criterion_gerbe},
    };
    std::vector<CriterionResult> out;
    for (int i = 0; i < (int)criteria.size(); ++i) {
        CriterionResult r;
        r.number = i + 1;
        r.name = criteria[i].first;
        Check c;
        try {
            criteria[i].second(c);
            r.pass = c.ok;
            r.detail = c.why.str();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace twohol
