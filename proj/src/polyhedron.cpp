#include "twohol/polyhedron.hpp"

#include <algorithm>
#include <set>

#include "twohol/errors.hpp"

namespace twohol {

namespace {

// For each edge, the (face, slot) pairs using it, with multiplicity.
std::vector<std::vector<std::pair<int, int>>> edge_uses(const TwoComplex& c) {
    std::vector<std::vector<std::pair<int, int>>> uses(c.edges.size());
    for (int f = 0; f < (int)c.faces.size(); ++f)
        for (int s = 0; s < 3; ++s) uses[c.faces[f].slots[s].edge].push_back({f, s});
    return uses;
}

}  // namespace

bool is_crossing_center(const TwoComplex& c, int v) {
    auto uses = edge_uses(c);
    std::vector<int> star_edges;
    for (int e = 0; e < (int)c.edges.size(); ++e)
        if (c.edges[e].src == v || c.edges[e].dst == v) star_edges.push_back(e);
    if ((int)star_edges.size() != 4) return false;

    std::set<int> star_faces;
    int shared_source = 0, mixed = 0;
    for (int e : star_edges) {
        if (c.edges[e].src == v && c.edges[e].dst == v) return false;
        if ((int)uses[e].size() != 2) return false;
        for (auto [f, s] : uses[e]) star_faces.insert(f);
        std::array<int, 2> slots = {uses[e][0].second, uses[e][1].second};
        std::sort(slots.begin(), slots.end());
        if (slots == std::array<int, 2>{0, 0})
            ++shared_source;
        else if (slots == std::array<int, 2>{1, 2})
            ++mixed;
        else
            return false;
    }
    return shared_source == 2 && mixed == 2 && star_faces.size() == 4;
}

SimplePolyhedron stratify(const TwoComplex& body) {
    SimplePolyhedron p;
    p.body = body;
    auto counts = body.edge_face_count();
    p.edge_strata.assign(body.edges.size(), EdgeStratum::nonsingular);
    for (int e = 0; e < (int)body.edges.size(); ++e)
        if (counts[e] == 3) p.edge_strata[e] = EdgeStratum::triple;

    p.vertex_strata.assign(body.n_vertices, VertexStratum::regular);
    for (int v = 0; v < body.n_vertices; ++v) {
        int triple_here = 0;
        for (int e = 0; e < (int)body.edges.size(); ++e)
            if (p.edge_strata[e] == EdgeStratum::triple &&
                (body.edges[e].src == v || body.edges[e].dst == v))
                ++triple_here;
        if (triple_here >= 3 || is_crossing_center(body, v))
            p.vertex_strata[v] = VertexStratum::trisection;
    }
    return p;
}

std::vector<Violation> SimplePolyhedron::validate() const {
    std::vector<Violation> out = body.validate();
    if (!out.empty()) return out;
    if (edge_strata.size() != body.edges.size() || vertex_strata.size() != (size_t)body.n_vertices) {
        out.push_back({"strata_shape", {}, "stratum label arrays do not match the cell counts"});
        return out;
    }
    auto counts = body.edge_face_count();
    for (int e = 0; e < (int)body.edges.size(); ++e) {
        if (counts[e] >= 4)
            out.push_back({"simple_degree", {e}, "interior edge lies on four or more faces"});
        EdgeStratum want = counts[e] == 3 ? EdgeStratum::triple : EdgeStratum::nonsingular;
        if (edge_strata[e] != want)
            out.push_back({"edge_stratum", {e}, "edge label disagrees with its face census"});
    }
    SimplePolyhedron census = stratify(body);
    for (int v = 0; v < body.n_vertices; ++v)
        if (vertex_strata[v] != census.vertex_strata[v])
            out.push_back({"vertex_stratum", {v}, "vertex label disagrees with its star census"});
    return out;
}

SingularGraph singular_graph(const SimplePolyhedron& p) {
    SingularGraph g;
    for (int v = 0; v < p.body.n_vertices; ++v)
        if (p.vertex_strata[v] == VertexStratum::trisection) g.trisection_vertices.push_back(v);
    for (int e = 0; e < (int)p.body.edges.size(); ++e)
        if (p.edge_strata[e] == EdgeStratum::triple) g.triple_edges.push_back(e);
    return g;
}

int complement_regions(const SimplePolyhedron& p) {
    // Mod-2 kernel of the (edge x face) incidence matrix: each independent
    // 2-cycle bounds one more complementary region.
    int E = (int)p.body.edges.size(), F = (int)p.body.faces.size();
    std::vector<std::vector<int>> m(E, std::vector<int>(F, 0));
    for (int f = 0; f < F; ++f)
        for (int s = 0; s < 3; ++s) m[p.body.faces[f].slots[s].edge][f] ^= 1;
    int rank = 0;
    for (int col = 0; col < F && rank < E; ++col) {
        int pivot = -1;
        for (int r = rank; r < E; ++r)
            if (m[r][col]) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        for (int r = 0; r < E; ++r)
            if (r != rank && m[r][col])
                for (int cc = 0; cc < F; ++cc) m[r][cc] ^= m[rank][cc];
        ++rank;
    }
    return 1 + (F - rank);
}

// ---- builders ----

SimplePolyhedron triangle() { return stratify(assemble(1, {})); }

SimplePolyhedron square() {
    return stratify(make_unbroken(assemble(2, {{0, 1, 1, 2, +1}})).complex);
}

SimplePolyhedron gamma_plus() {
    GluingSet g = {{0, 1, 1, 2, +1}, {2, 1, 3, 2, +1}, {0, 0, 2, 0, +1}, {1, 0, 3, 0, +1}};
    return stratify(make_unbroken(assemble(4, g)).complex);
}

SimplePolyhedron triple_point() {
    // Three sheets fanned around one shared e3 edge.
    GluingSet g = {{0, 2, 1, 2, +1}, {1, 2, 2, 2, +1}};
    return stratify(make_unbroken(assemble(3, g)).complex);
}

SimplePolyhedron coordinate_planes_s3() {
    // Eight 2-simplices: 0..3 and their partners 4..7.  Consecutive unprimed
    // (resp. primed) simplices share e2/e3 edges cyclically, and each simplex
    // shares its source edge with its partner.  The four overlapping crossing
    // patterns close up into a sphere-like polyhedron whose four rim vertices
    // are trisection vertices.
    GluingSet g;
    for (int i = 0; i < 4; ++i) {
        g.push_back({i, 1, (i + 1) % 4, 2, +1});
        g.push_back({4 + i, 1, 4 + (i + 1) % 4, 2, +1});
        g.push_back({i, 0, 4 + i, 0, +1});
    }
    return stratify(make_unbroken(assemble(8, g)).complex);
}

SimplePolyhedron torus_partition() {
    // One vertex, edges a, b, d (all loops), faces with boundary words
    // a.b.d^-1 and b.a.d^-1: the classical two-triangle torus.
    TwoComplex c;
    c.n_vertices = 1;
    c.root = 0;
    c.edges = {{0, 0, +1}, {0, 0, +1}, {0, 0, +1}};
    c.faces.push_back({{EdgeRef{0, +1}, EdgeRef{2, +1}, EdgeRef{1, +1}}, +1});
    c.faces.push_back({{EdgeRef{1, +1}, EdgeRef{2, +1}, EdgeRef{0, +1}}, +1});
    return stratify(make_unbroken(c).complex);
}

// ---- handlebody moves ----

namespace {

void require(bool ok, const char* code, const char* msg) {
    if (!ok) throw Error("polyhedron", code, msg);
}

}  // namespace

SimplePolyhedron handle_move_02(const SimplePolyhedron& p, const PillowSite& site) {
    const TwoComplex& c = p.body;
    require(site.face >= 0 && site.face < (int)c.faces.size(), "move_inapplicable",
            "0-2 site face does not exist");
    const Face& f = c.faces[site.face];
    auto counts = c.edge_face_count();
    std::set<int> es;
    for (int s = 0; s < 3; ++s) {
        int e = f.slots[s].edge;
        es.insert(e);
        require(counts[e] == 2, "move_inapplicable",
                "0-2 site is not a nonsingular disc region in the bulk");
    }
    require(es.size() == 3, "move_inapplicable", "0-2 site face has a repeated edge");

    TwoComplex out = c;
    Face pillow = f;
    pillow.eps = -f.eps;  // the parallel sheet faces the other way
    out.faces.push_back(pillow);
    return stratify(out);
}

SimplePolyhedron handle_move_20(const SimplePolyhedron& p, const PillowCells& site) {
    const TwoComplex& c = p.body;
    int fp = site.pillow_face;
    require(fp >= 0 && fp < (int)c.faces.size(), "move_inapplicable",
            "2-0 site face does not exist");
    bool has_base = false;
    for (int f = 0; f < (int)c.faces.size(); ++f)
        if (f != fp && c.faces[f].slots == c.faces[fp].slots) has_base = true;
    require(has_base, "move_inapplicable", "2-0 site face is not a pillow sheet");

    TwoComplex out = c;
    out.faces.erase(out.faces.begin() + fp);
    return stratify(out);
}

SimplePolyhedron handle_move_23(const SimplePolyhedron& p, const MembraneSite& site) {
    const TwoComplex& c = p.body;
    int fp = site.pillow_face, g = site.across_face;
    require(fp >= 0 && fp < (int)c.faces.size() && g >= 0 && g < (int)c.faces.size() && fp != g,
            "move_inapplicable", "2-3 site faces do not exist");
    int base = -1;
    for (int f = 0; f < (int)c.faces.size(); ++f)
        if (f != fp && c.faces[f].slots == c.faces[fp].slots) base = f;
    require(base >= 0 && base != g, "move_inapplicable", "2-3 site has no pillow over a base face");

    // The base and the across-face must share exactly one edge e.
    std::set<int> be, ge;
    for (int s = 0; s < 3; ++s) {
        be.insert(c.faces[base].slots[s].edge);
        ge.insert(c.faces[g].slots[s].edge);
    }
    std::vector<int> shared;
    std::set_intersection(be.begin(), be.end(), ge.begin(), ge.end(), std::back_inserter(shared));
    require(shared.size() == 1, "move_inapplicable",
            "2-3 base and across-face do not share exactly one edge");
    int e = shared[0];
    auto counts = c.edge_face_count();
    require(counts[e] == 3, "move_inapplicable", "2-3 shared edge is not on exactly three faces");
    for (int s = 0; s < 3; ++s) {
        int eg = c.faces[g].slots[s].edge;
        if (eg != e)
            require(counts[eg] == 2, "move_inapplicable",
                    "2-3 across-face boundary must be nonsingular bulk");
    }

    int u = c.edges[e].src, v = c.edges[e].dst;
    require(u != v, "move_inapplicable", "2-3 shared edge is a loop");

    TwoComplex out = c;
    int x = out.n_vertices++;
    int e2 = (int)out.edges.size();
    out.edges.push_back({u, v, c.edges[e].framing});  // e', parallel to e
    int p1 = (int)out.edges.size();
    out.edges.push_back({u, x, +1});
    int p2 = (int)out.edges.size();
    out.edges.push_back({x, v, +1});

    // Membrane bigon between e and e', split into two triangles at x:
    // corners (u, x, v) with e1 = p1, e2-slot = e or e', e3 = p2.
    Face m1{{EdgeRef{p1, +1}, EdgeRef{e, +1}, EdgeRef{p2, +1}}, +1};
    Face m2{{EdgeRef{p1, +1}, EdgeRef{e2, +1}, EdgeRef{p2, +1}}, -1};

    // The bubble sheet now covers both base faces: the pillow re-attaches
    // along e' and a parallel copy of the across-face joins it there.  The
    // base sheets stay; e and e' become the triple-edge bigon between the two
    // new trisection vertices u and v.
    Face fprime = c.faces[fp];
    Face gprime = c.faces[g];
    gprime.eps = -c.faces[g].eps;
    for (int s = 0; s < 3; ++s) {
        if (fprime.slots[s].edge == e) fprime.slots[s].edge = e2;
        if (gprime.slots[s].edge == e) gprime.slots[s].edge = e2;
    }

    out.faces.erase(out.faces.begin() + fp);
    out.faces.push_back(fprime);
    out.faces.push_back(gprime);
    out.faces.push_back(m1);
    out.faces.push_back(m2);
    return stratify(out);
}

SimplePolyhedron handle_move_32(const SimplePolyhedron& p, const MembraneCells& site) {
    const TwoComplex& c = p.body;
    int x = site.vertex;
    require(x >= 0 && x < c.n_vertices, "move_inapplicable", "3-2 site vertex does not exist");
    require(x != c.root, "move_inapplicable", "3-2 cannot collapse the root vertex");

    // Star of x must be exactly the membrane local model: two edges p1: u->x,
    // p2: x->v and two faces m1 = (p1, e, p2), m2 = (p1, e', p2).
    std::vector<int> star;
    for (int e = 0; e < (int)c.edges.size(); ++e)
        if (c.edges[e].src == x || c.edges[e].dst == x) star.push_back(e);
    require(star.size() == 2, "move_inapplicable", "3-2 vertex star is not a membrane");
    auto uses = edge_uses(c);
    require(uses[star[0]].size() == 2 && uses[star[1]].size() == 2 &&
                uses[star[0]][0].first == uses[star[1]][0].first &&
                uses[star[0]][1].first == uses[star[1]][1].first,
            "move_inapplicable", "3-2 vertex star is not a membrane");
    int fm1 = uses[star[0]][0].first, fm2 = uses[star[0]][1].first;
    require(fm1 != fm2, "move_inapplicable", "3-2 vertex star is not a membrane");
    const Face &m1 = c.faces[fm1], &m2 = c.faces[fm2];
    require(m1.slots[0] == m2.slots[0] && m1.slots[2] == m2.slots[2] &&
                m1.slots[1].edge != m2.slots[1].edge && m1.slots[1].sign == m2.slots[1].sign,
            "move_inapplicable", "3-2 membrane faces do not span a bigon");
    int e = m1.slots[1].edge, e2 = m2.slots[1].edge;
    require(c.edges[e] == c.edges[e2], "move_inapplicable",
            "3-2 bigon edges are not parallel");

    // The two bigon edges each carry two bubble-level sheets besides their
    // membrane face.  The chosen pillow sheet folds back onto the other bigon
    // edge; its parallel partner on that side is absorbed.
    auto other_faces = [&](int edge, int skip) {
        std::vector<int> fs;
        for (int fi : c.faces_of_edge(edge))
            if (fi != skip) fs.push_back(fi);
        return fs;
    };
    auto side1 = other_faces(e, fm1), side2 = other_faces(e2, fm2);
    require(side1.size() == 2 && side2.size() == 2, "move_inapplicable",
            "3-2 bigon edges are not triple edges of the bubble local model");
    int keep = site.pillow_face;
    int fold_from = -1, fold_to = -1;
    if (keep == side1[0] || keep == side1[1]) {
        fold_from = e;
        fold_to = e2;
    } else if (keep == side2[0] || keep == side2[1]) {
        fold_from = e2;
        fold_to = e;
    }
    require(fold_from >= 0, "move_inapplicable",
            "3-2 pillow face is not attached to the bigon");
    // the absorbed sheet is the parallel copy sharing the fold edge with keep
    auto side = other_faces(fold_from, -1);
    int absorbed = -1;
    for (int fi : side)
        if (fi != keep && fi != fm1 && fi != fm2) absorbed = fi;
    require(absorbed >= 0, "move_inapplicable", "3-2 local model has no absorbed sheet");
    // the absorbed sheet must be a parallel copy of a face on the other edge
    {
        Face folded = c.faces[absorbed];
        for (int s = 0; s < 3; ++s)
            if (folded.slots[s].edge == fold_from) folded.slots[s].edge = fold_to;
        bool parallel = false;
        for (int fi : other_faces(fold_to, -1))
            if (c.faces[fi].slots == folded.slots) parallel = true;
        require(parallel, "move_inapplicable",
                "3-2 absorbed sheet is not a parallel copy of a base face");
    }

    TwoComplex out;
    out.n_vertices = c.n_vertices;
    out.root = c.root;
    out.edges = c.edges;
    for (int f = 0; f < (int)c.faces.size(); ++f) {
        if (f == fm1 || f == fm2 || f == absorbed) continue;
        Face nf = c.faces[f];
        if (f == keep)
            for (int s = 0; s < 3; ++s)
                if (nf.slots[s].edge == fold_from) nf.slots[s].edge = fold_to;
        out.faces.push_back(nf);
    }

    // Drop the two membrane edges, the folded bigon edge and the vertex x.
    std::vector<int> emap(c.edges.size(), -1);
    TwoComplex packed;
    packed.n_vertices = c.n_vertices - 1;
    packed.root = c.root > x ? c.root - 1 : c.root;
    for (int ei = 0; ei < (int)c.edges.size(); ++ei) {
        if (ei == fold_from || ei == star[0] || ei == star[1]) continue;
        emap[ei] = (int)packed.edges.size();
        auto edge = c.edges[ei];
        if (edge.src > x) --edge.src;
        if (edge.dst > x) --edge.dst;
        packed.edges.push_back(edge);
    }
    for (Face nf : out.faces) {
        for (int s = 0; s < 3; ++s) {
            require(emap[nf.slots[s].edge] >= 0, "move_inapplicable",
                    "3-2 membrane edges are used outside the membrane");
            nf.slots[s].edge = emap[nf.slots[s].edge];
        }
        packed.faces.push_back(nf);
    }
    return stratify(packed);
}

}  // namespace twohol
