#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "twohol/errors.hpp"
#include "twohol/polyhedron.hpp"

using namespace twohol;

namespace {

int count_trisections(const SimplePolyhedron& p) {
    return (int)std::count(p.vertex_strata.begin(), p.vertex_strata.end(),
                           VertexStratum::trisection);
}

int count_triples(const SimplePolyhedron& p) {
    return (int)std::count(p.edge_strata.begin(), p.edge_strata.end(), EdgeStratum::triple);
}

int max_edge_degree(const TwoComplex& c) {
    auto counts = c.edge_face_count();
    return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

}  // namespace

TEST_CASE("disc-like builders are entirely nonsingular") {
    for (const SimplePolyhedron& p : {triangle(), square(), gamma_plus()}) {
        CHECK(p.is_valid());
        CHECK(count_triples(p) == 0);
        auto g = singular_graph(p);
        CHECK(g.triple_edges.empty());
    }
    CHECK(singular_graph(triangle()).trisection_vertices.empty());
    CHECK(singular_graph(square()).trisection_vertices.empty());
}

TEST_CASE("gamma_plus carries exactly one trisection vertex") {
    auto p = gamma_plus();
    CHECK(p.is_valid());
    CHECK(count_trisections(p) == 1);
    auto g = singular_graph(p);
    REQUIRE(g.trisection_vertices.size() == 1);
    int x = g.trisection_vertices[0];
    CHECK(is_crossing_center(p.body, x));
    // the crossing vertex is the interior one: all four incident edges interior
    for (int e = 0; e < (int)p.body.edges.size(); ++e)
        if (p.body.edges[e].src == x || p.body.edges[e].dst == x)
            CHECK_FALSE(p.body.edge_is_boundary(e));
}

TEST_CASE("triple_point has one triple edge and is not regular") {
    auto p = triple_point();
    CHECK(p.is_valid());
    CHECK_FALSE(is_regular(p.body));
    CHECK(p.body.n_vertices == 5);
    CHECK(p.body.edges.size() == 7);
    CHECK(p.body.faces.size() == 3);
    CHECK(count_triples(p) == 1);
    CHECK(count_trisections(p) == 0);
    auto g = singular_graph(p);
    REQUIRE(g.triple_edges.size() == 1);
    CHECK(p.body.faces_of_edge(g.triple_edges[0]).size() == 3);
}

TEST_CASE("coordinate_planes_s3: closed sphere-like polyhedron from eight simplices") {
    auto p = coordinate_planes_s3();
    CHECK(p.is_valid());
    CHECK(p.body.is_closed());
    CHECK(p.body.is_connected());
    CHECK(is_regular(p.body));
    CHECK(p.body.n_vertices == 6);
    CHECK(p.body.edges.size() == 12);
    CHECK(p.body.faces.size() == 8);
    CHECK(p.body.euler_characteristic() == 2);
    // four crossing patterns around the rim, none at the two cone points
    CHECK(count_trisections(p) == 4);
    CHECK(count_triples(p) == 0);
    // complement filling: two genus-0 sides
    CHECK(complement_regions(p) == 2);
}

TEST_CASE("torus_partition: one-vertex two-triangle torus") {
    auto p = torus_partition();
    CHECK(p.is_valid());
    CHECK(p.body.is_closed());
    CHECK(p.body.n_vertices == 1);
    CHECK(p.body.edges.size() == 3);
    CHECK(p.body.faces.size() == 2);
    CHECK(p.body.euler_characteristic() == 0);
    CHECK(is_regular(p.body));
    CHECK(count_trisections(p) == 0);
    CHECK(count_triples(p) == 0);
    CHECK(complement_regions(p) == 2);
}

TEST_CASE("stratify rejects nothing that validate accepts") {
    for (const SimplePolyhedron& p :
         {triangle(), square(), gamma_plus(), triple_point(), coordinate_planes_s3(),
          torus_partition()}) {
        CHECK(p.is_valid());
        // tampered labels are caught
        if (!p.edge_strata.empty()) {
            SimplePolyhedron bad = p;
            bad.edge_strata[0] = bad.edge_strata[0] == EdgeStratum::triple
                                     ? EdgeStratum::nonsingular
                                     : EdgeStratum::triple;
            CHECK_FALSE(bad.is_valid());
        }
        if (p.body.n_vertices > 0) {
            SimplePolyhedron bad = p;
            bad.vertex_strata[0] = bad.vertex_strata[0] == VertexStratum::trisection
                                       ? VertexStratum::regular
                                       : VertexStratum::trisection;
            CHECK_FALSE(bad.is_valid());
        }
    }
}

TEST_CASE("0-2 pillow move: strata census and exact inverse") {
    auto p = coordinate_planes_s3();
    auto q = handle_move_02(p, PillowSite{0});
    CHECK(q.is_valid());
    CHECK(q.body.faces.size() == p.body.faces.size() + 1);
    CHECK(q.body.edges.size() == p.body.edges.size());
    CHECK(q.body.n_vertices == p.body.n_vertices);
    // the site face boundary became one triple circle
    CHECK(count_triples(q) == 3);
    std::set<int> circle;
    for (auto s : p.body.faces[0].slots) circle.insert(s.edge);
    for (int e = 0; e < (int)q.body.edges.size(); ++e)
        CHECK((q.edge_strata[e] == EdgeStratum::triple) == (circle.count(e) > 0));
    CHECK(max_edge_degree(q.body) == 3);
    CHECK(q.body.boundary_signature() == p.body.boundary_signature());
    CHECK(complement_regions(q) == complement_regions(p) + 1);

    auto back = handle_move_20(q, PillowCells{(int)q.body.faces.size() - 1});
    CHECK(back.body == p.body);
    CHECK(back.is_valid());
}

TEST_CASE("0-2 move respects its preconditions") {
    auto p = coordinate_planes_s3();
    CHECK_THROWS_AS(handle_move_02(p, PillowSite{99}), Error);
    // blowing a second pillow over the same face is blocked (edges singular)
    auto q = handle_move_02(p, PillowSite{0});
    CHECK_THROWS_AS(handle_move_02(q, PillowSite{0}), Error);
    // a sphere face with edges disjoint from the first bubble still works
    CHECK(handle_move_02(q, PillowSite{5}).is_valid());
    // 2-0 on a non-pillow face is refused
    CHECK_THROWS_AS(handle_move_20(p, PillowCells{0}), Error);
    // boundary faces are not bulk discs
    CHECK_THROWS_AS(handle_move_02(square(), PillowSite{0}), Error);
}

TEST_CASE("2-3 membrane move: census, strata locality, inverse up to iso") {
    auto p = coordinate_planes_s3();
    auto q = handle_move_02(p, PillowSite{0});
    int pillow = (int)q.body.faces.size() - 1;

    // the partner sheet across the shared source edge of face 0
    int base = 0;
    int e0 = q.body.faces[base].slots[0].edge;
    int across = -1;
    for (int f : q.body.faces_of_edge(e0))
        if (f != base && f != pillow) across = f;
    REQUIRE(across >= 0);

    auto r = handle_move_23(q, MembraneSite{pillow, across});
    CHECK(r.is_valid());
    CHECK(r.body.n_vertices == q.body.n_vertices + 1);
    CHECK(r.body.edges.size() == q.body.edges.size() + 3);
    CHECK(r.body.faces.size() == q.body.faces.size() + 3);
    CHECK(max_edge_degree(r.body) == 3);
    CHECK(r.body.boundary_signature() == q.body.boundary_signature());
    // the enlarged bubble with its membrane bounds one more lens
    CHECK(complement_regions(r) == complement_regions(q) + 1);
    // triple strata: the outer circle of the doubled two-face region plus the
    // bigon pair e, e'
    CHECK(count_triples(r) == 6);
    // the bigon endpoints became trisection vertices (four triple edges each)
    CHECK(count_trisections(r) == 4);
    int u = r.body.edges[e0].src, v = r.body.edges[e0].dst;
    CHECK(r.vertex_strata[u] == VertexStratum::trisection);
    CHECK(r.vertex_strata[v] == VertexStratum::trisection);

    // fold the bubble sheet over the original base back into a pillow
    int x = r.body.n_vertices - 1;
    int keep = -1;
    for (int f = 0; f < (int)r.body.faces.size(); ++f) {
        bool on_eprime = false, parallel_to_base = true;
        for (int s = 0; s < 3; ++s) {
            if (r.body.faces[f].slots[s].edge == q.body.faces[base].slots[s].edge) continue;
            if (s == 0)
                on_eprime = true;
            else
                parallel_to_base = false;
        }
        if (on_eprime && parallel_to_base && f != base) keep = f;
    }
    REQUIRE(keep >= 0);
    auto back = handle_move_32(r, MembraneCells{x, keep});
    CHECK(back.is_valid());
    CHECK(isomorphic(back.body, q.body));

    // bad sites are refused
    CHECK_THROWS_AS(handle_move_23(p, MembraneSite{0, 1}), Error);
    CHECK_THROWS_AS(handle_move_32(q, MembraneCells{0, 0}), Error);
}

TEST_CASE("moves keep every test polyhedron simple") {
    auto p = coordinate_planes_s3();
    for (int f = 0; f < (int)p.body.faces.size(); ++f) {
        auto q = handle_move_02(p, PillowSite{f});
        CHECK(q.is_valid());
        CHECK(max_edge_degree(q.body) <= 3);
    }
    auto t = torus_partition();
    for (int f = 0; f < (int)t.body.faces.size(); ++f) {
        auto q = handle_move_02(t, PillowSite{f});
        CHECK(q.is_valid());
        CHECK(max_edge_degree(q.body) <= 3);
    }
}
