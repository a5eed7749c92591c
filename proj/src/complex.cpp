#include "twohol/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace twohol {

namespace {

// Union-find; optionally with a Z2 parity relative to the parent (used to
// track relative stored-directions of identified edges).
struct ParityUF {
    std::vector<int> parent;
    std::vector<int> parity;  // 0 = aligned with parent, 1 = reversed

    explicit ParityUF(int n) : parent(n), parity(n, 0) { std::iota(parent.begin(), parent.end(), 0); }

    std::pair<int, int> find(int x) {
        if (parent[x] == x) return {x, 0};
        auto [r, p] = find(parent[x]);
        parent[x] = r;
        parity[x] ^= p;
        return {r, parity[x]};
    }

    // Returns false on a parity conflict.
    bool unite(int a, int b, int rel /*0 aligned, 1 reversed*/) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return (pa ^ pb) == rel;
        parent[rb] = ra;
        parity[rb] = pa ^ pb ^ rel;
        return true;
    }
};

EdgeRef reversed(EdgeRef r) { return {r.edge, -r.sign}; }

// Boundary loop of a face based at its root: e1 . e3 . e2^-1.
std::array<EdgeRef, 3> face_loop(const Face& f) {
    return {f.slots[0], f.slots[2], reversed(f.slots[1])};
}

}  // namespace

std::vector<int> TwoComplex::edge_face_count() const {
    std::vector<int> cnt(edges.size(), 0);
    for (const auto& f : faces) {
        std::set<int> seen;  // a face may use an edge in several slots
        for (auto s : f.slots)
            if (seen.insert(s.edge).second) ++cnt[s.edge];
    }
    return cnt;
}

std::vector<int> TwoComplex::faces_of_edge(int e) const {
    std::vector<int> out;
    for (int f = 0; f < (int)faces.size(); ++f)
        for (auto s : faces[f].slots)
            if (s.edge == e) {
                out.push_back(f);
                break;
            }
    return out;
}

bool TwoComplex::edge_is_boundary(int e) const { return edge_face_count()[e] == 1; }

std::vector<int> TwoComplex::boundary_edges() const {
    auto cnt = edge_face_count();
    std::vector<int> out;
    for (int e = 0; e < (int)edges.size(); ++e)
        if (cnt[e] == 1) out.push_back(e);
    return out;
}

bool TwoComplex::is_closed() const { return boundary_edges().empty(); }

bool TwoComplex::is_connected() const {
    if (n_vertices == 0) return true;
    ParityUF uf(n_vertices);
    for (const auto& e : edges) uf.unite(e.src, e.dst, 0);
    int rep = uf.find(0).first;
    for (int v = 1; v < n_vertices; ++v)
        if (uf.find(v).first != rep) return false;
    return true;
}

std::vector<Violation> TwoComplex::validate() const {
    std::vector<Violation> v;
    if (root < 0 || root >= n_vertices) v.push_back({"structure", {root}, "root out of range"});
    for (int e = 0; e < (int)edges.size(); ++e) {
        const auto& ed = edges[e];
        if (ed.src < 0 || ed.src >= n_vertices || ed.dst < 0 || ed.dst >= n_vertices)
            v.push_back({"structure", {e}, "edge endpoint out of range"});
        if (ed.framing != 1 && ed.framing != -1)
            v.push_back({"structure", {e}, "framing must be +1 or -1"});
    }
    for (int fi = 0; fi < (int)faces.size(); ++fi) {
        const auto& f = faces[fi];
        bool structural_ok = true;
        if (f.eps != 1 && f.eps != -1) v.push_back({"structure", {fi}, "eps must be +1 or -1"});
        for (auto s : f.slots)
            if (s.edge < 0 || s.edge >= (int)edges.size() || (s.sign != 1 && s.sign != -1)) {
                v.push_back({"structure", {fi}, "bad slot reference"});
                structural_ok = false;
            }
        if (!structural_ok) continue;
        // slot closure: e1: a->b, e2: a->c, e3: b->c
        int a = tail(f.slots[0]), b = head(f.slots[0]);
        int a2 = tail(f.slots[1]), c = head(f.slots[1]);
        int b2 = tail(f.slots[2]), c2 = head(f.slots[2]);
        if (a != a2 || b != b2 || c != c2)
            v.push_back({"face_closure", {fi}, "slot triple does not close into a triangle"});
    }
    return v;
}

std::vector<std::array<int, 3>> TwoComplex::boundary_signature() const {
    std::vector<std::array<int, 3>> sig;
    for (int e : boundary_edges()) {
        int a = edges[e].src, b = edges[e].dst;
        if (a > b) std::swap(a, b);
        sig.push_back({a, b, edges[e].framing});
    }
    std::sort(sig.begin(), sig.end());
    return sig;
}

TwoComplex assemble(int simplices, const GluingSet& gluing) {
    if (simplices <= 0) throw Error("complex", "simplices_positive", "need at least one simplex");
    const int k = simplices;

    for (const auto& g : gluing) {
        auto bad = [&](int f, int s) { return f < 0 || f >= k || s < 0 || s > 2; };
        if (bad(g.face_a, g.slot_a) || bad(g.face_b, g.slot_b))
            throw Error("complex", "gluing_in_range", "gluing refers to a missing face slot");
        if (g.face_a == g.face_b && g.slot_a == g.slot_b)
            throw Error("complex", "distinct_slots", "cannot glue a slot to itself");
        if (g.orient != 1 && g.orient != -1)
            throw Error("complex", "orientation_flag", "gluing orientation must be +1 or -1");
    }

    // Disjoint triangles: triangle j has vertices (3j, 3j+1, 3j+2) = (a, b, c)
    // and edges 3j+0: a->b, 3j+1: a->c, 3j+2: b->c (slot roles, all signs +).
    auto role_tail = [&](int face, int slot) {
        int a = 3 * face, b = a + 1;
        return slot == 2 ? b : a;
    };
    auto role_head = [&](int face, int slot) {
        int a = 3 * face, b = a + 1, c = a + 2;
        return slot == 0 ? b : c;
    };

    ParityUF euf(3 * k), vuf(3 * k);
    for (const auto& g : gluing) {
        int ea = 3 * g.face_a + g.slot_a, eb = 3 * g.face_b + g.slot_b;
        if (!euf.unite(ea, eb, g.orient > 0 ? 0 : 1))
            throw Error("complex", "orientation_consistent",
                        "orientation conflict on an identified edge chain");
        if (g.orient > 0) {
            vuf.unite(role_tail(g.face_a, g.slot_a), role_tail(g.face_b, g.slot_b), 0);
            vuf.unite(role_head(g.face_a, g.slot_a), role_head(g.face_b, g.slot_b), 0);
        } else {
            vuf.unite(role_tail(g.face_a, g.slot_a), role_head(g.face_b, g.slot_b), 0);
            vuf.unite(role_head(g.face_a, g.slot_a), role_tail(g.face_b, g.slot_b), 0);
        }
    }

    // Renumber vertex classes in order of smallest member.
    std::map<int, int> vclass;
    std::vector<int> vmap(3 * k);
    for (int v = 0; v < 3 * k; ++v) {
        int r = vuf.find(v).first;
        if (!vclass.count(r)) vclass[r] = -1;
    }
    {
        // order classes by their smallest member
        std::map<int, int> smallest;
        for (int v = 0; v < 3 * k; ++v) {
            int r = vuf.find(v).first;
            if (!smallest.count(r)) smallest[r] = v;
        }
        std::vector<std::pair<int, int>> order;  // (smallest member, rep)
        for (auto [r, s] : smallest) order.push_back({s, r});
        std::sort(order.begin(), order.end());
        for (int i = 0; i < (int)order.size(); ++i) vclass[order[i].second] = i;
    }
    for (int v = 0; v < 3 * k; ++v) vmap[v] = vclass[vuf.find(v).first];

    // Edge classes, ordered by smallest member; representative = smallest.
    std::map<int, std::pair<int, int>> eclass;  // rep -> (new index, representative member)
    {
        std::map<int, int> smallest;
        for (int e = 0; e < 3 * k; ++e) {
            int r = euf.find(e).first;
            auto it = smallest.find(r);
            if (it == smallest.end()) smallest[r] = e;
        }
        std::vector<std::pair<int, int>> order;
        for (auto [r, s] : smallest) order.push_back({s, r});
        std::sort(order.begin(), order.end());
        for (int i = 0; i < (int)order.size(); ++i) eclass[order[i].second] = {i, order[i].first};
    }

    TwoComplex out;
    out.n_vertices = (int)vclass.size();
    out.edges.resize(eclass.size());
    for (auto& [rep, idx_member] : eclass) {
        auto [idx, member] = idx_member;
        int face = member / 3, slot = member % 3;
        // stored direction = the representative member's role direction,
        // adjusted by its parity relative to the class representative
        int t = vmap[role_tail(face, slot)], h = vmap[role_head(face, slot)];
        int p = euf.find(member).second;
        (void)p;  // representative member: parity 0 relative to class rep by choice below
        out.edges[idx] = {t, h, +1};
    }
    out.faces.resize(k);
    for (int f = 0; f < k; ++f) {
        for (int s = 0; s < 3; ++s) {
            int e = 3 * f + s;
            auto [rep, parity] = euf.find(e);
            auto [idx, member] = eclass[rep];
            int mem_parity = euf.find(member).second;
            // sign relative to the chosen representative member's direction
            out.faces[f].slots[s] = {idx, (parity ^ mem_parity) ? -1 : +1};
        }
        out.faces[f].eps = +1;
    }
    out.root = vmap[0];

    auto viol = out.validate();
    if (!viol.empty())
        throw Error("complex", "quotient_valid", "assembled complex failed validation: " + viol[0].axiom);
    return out;
}

bool is_regular(const TwoComplex& c) {
    for (int cnt : c.edge_face_count())
        if (cnt > 2) return false;
    return true;
}

Face rotate_face(const Face& f) {
    // roots a -> b: new roles  e1' = e3,  e2' = e1^-1,  e3' = e2^-1
    Face g;
    g.slots[0] = f.slots[2];
    g.slots[1] = reversed(f.slots[0]);
    g.slots[2] = reversed(f.slots[1]);
    g.eps = f.eps;
    return g;
}

Face reflect_face(const Face& f) {
    // corners (a, b, c) -> (a, c, b):  e1' = e2,  e2' = e1,  e3' = e3^-1
    Face g;
    g.slots[0] = f.slots[1];
    g.slots[1] = f.slots[0];
    g.slots[2] = reversed(f.slots[2]);
    g.eps = -f.eps;
    return g;
}

namespace {

// Try to order the distinct directed edges into a single head-to-tail chain.
// Returns the chain or nullopt.  Deterministic: starts are tried in input
// order, extensions in input order.
std::optional<std::vector<EdgeRef>> chain_order(const TwoComplex& c, std::vector<EdgeRef> d) {
    const int r = (int)d.size();
    if (r == 0) return std::vector<EdgeRef>{};
    std::vector<char> used(r, 0);
    std::vector<EdgeRef> chain;
    auto dfs = [&](auto&& self, int last_head, int depth) -> bool {
        if (depth == r) return true;
        for (int i = 0; i < r; ++i) {
            if (used[i] || c.tail(d[i]) != last_head) continue;
            used[i] = 1;
            chain.push_back(d[i]);
            if (self(self, c.head(d[i]), depth + 1)) return true;
            chain.pop_back();
            used[i] = 0;
        }
        return false;
    };
    for (int s = 0; s < r; ++s) {
        used[s] = 1;
        chain.push_back(d[s]);
        if (dfs(dfs, c.head(d[s]), 1)) return chain;
        chain.pop_back();
        used[s] = 0;
    }
    return std::nullopt;
}

}  // namespace

UnbrokenResult make_unbroken(const TwoComplex& c) {
    if (!c.is_connected())
        throw Error("complex", "connected", "make_unbroken requires a connected complex");
    const int k = (int)c.faces.size();
    if (k == 0) return {c, {}, {}};
    if (k > 14)
        throw Error("complex", "desk_scale", "make_unbroken: exhaustive search capped at 14 faces");

    // A face may take any of its 3 directed loop edges as source, in either
    // orientation: 3 rotations, then the 3 rotations of the reflection.
    // Rotation-only variants come first so orientations are kept when possible.
    std::vector<std::array<Face, 6>> vars(k);
    for (int f = 0; f < k; ++f) {
        Face g = c.faces[f];
        for (int i = 0; i < 3; ++i, g = rotate_face(g)) vars[f][i] = g;
        g = reflect_face(c.faces[f]);
        for (int i = 0; i < 3; ++i, g = rotate_face(g)) vars[f][3 + i] = g;
    }

    // Backtracking over per-face variants; the chosen distinct directed source
    // edges are kept a vertex-simple partial path family (in/out degree <= 1,
    // no edge in both directions), then chained at the end.
    std::vector<Face> chosen(k);
    std::vector<int> cnt(c.edges.size() * 2, 0);  // directed-edge selection counts
    std::vector<int> indeg(c.n_vertices, 0), outdeg(c.n_vertices, 0);
    std::optional<std::vector<EdgeRef>> chain;

    auto rec = [&](auto&& self, int f) -> bool {
        if (f == k) {
            std::vector<EdgeRef> distinct;
            for (int i = 0; i < k; ++i) {
                EdgeRef s = chosen[i].slots[0];
                bool seen = false;
                for (auto d : distinct) seen = seen || d.edge == s.edge;
                if (!seen) distinct.push_back(s);
            }
            chain = chain_order(c, distinct);
            return chain.has_value();
        }
        for (int v = 0; v < 6; ++v) {
            const Face& cand = vars[f][v];
            EdgeRef s = cand.slots[0];
            int dir = s.sign > 0 ? 0 : 1;
            if (cnt[2 * s.edge + (1 - dir)] > 0) continue;  // edge used both ways
            bool fresh = cnt[2 * s.edge + dir] == 0;
            int tl = c.tail(s), hd = c.head(s);
            if (fresh && (outdeg[tl] > 0 || indeg[hd] > 0)) continue;
            ++cnt[2 * s.edge + dir];
            if (fresh) ++outdeg[tl], ++indeg[hd];
            chosen[f] = cand;
            if (self(self, f + 1)) return true;
            --cnt[2 * s.edge + dir];
            if (fresh) --outdeg[tl], --indeg[hd];
        }
        return false;
    };
    if (!rec(rec, 0))
        throw Error("complex", "unbroken_exists", "no unbroken source-slot assignment found");

    TwoComplex out = c;
    for (int f = 0; f < k; ++f) out.faces[f] = chosen[f];
    out.root = out.tail((*chain)[0]);
    UnbrokenResult res;
    res.path.assign(chain->begin(), chain->end() - 1);
    // faces ordered by chain position of their source edge
    std::vector<int> pos_of_edge(out.edges.size(), -1);
    for (int i = 0; i < (int)chain->size(); ++i) pos_of_edge[(*chain)[i].edge] = i;
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return pos_of_edge[out.faces[x].slots[0].edge] < pos_of_edge[out.faces[y].slots[0].edge];
    });
    res.face_order = std::move(order);
    res.complex = std::move(out);
    return res;
}

TwoComplex dagger1(const TwoComplex& c) {
    TwoComplex out = c;
    for (auto& e : out.edges) std::swap(e.src, e.dst);
    for (auto& f : out.faces) {
        // stored-direction reversal flips every slot sign (roles unchanged)...
        for (auto& s : f.slots) s.sign = -s.sign;
        // ...then reverse the face orientation: (e1,e2,e3) -> (e2, e1, e3^-1)
        std::swap(f.slots[0], f.slots[1]);
        f.slots[2].sign = -f.slots[2].sign;
        f.eps = -f.eps;
    }
    return out;
}

TwoComplex dagger2(const TwoComplex& c) {
    TwoComplex out = c;
    for (auto& e : out.edges) e.framing = -e.framing;
    return out;
}

TwoComplex pachner_flip(const TwoComplex& c, int edge) {
    if (edge < 0 || edge >= (int)c.edges.size())
        throw Error("complex", "edge_exists", "no such edge");
    auto fs = c.faces_of_edge(edge);
    if (fs.size() != 2)
        throw Error("complex", "interior_edge", "flip edge must lie in exactly two faces");
    int f1 = fs[0], f2 = fs[1];

    auto occurrences = [&](int f) {
        std::vector<int> occ;
        auto loop = face_loop(c.faces[f]);
        for (int i = 0; i < 3; ++i)
            if (loop[i].edge == edge) occ.push_back(i);
        return occ;
    };
    if (occurrences(f1).size() != 1 || occurrences(f2).size() != 1)
        throw Error("complex", "nondegenerate_quad", "flip edge repeats inside one face");

    auto quad_half = [&](int f) {
        auto loop = face_loop(c.faces[f]);
        int i = occurrences(f)[0];
        std::array<EdgeRef, 2> q = {loop[(i + 1) % 3], loop[(i + 2) % 3]};
        EdgeRef d = loop[i];
        return std::pair(d, q);
    };
    auto [d1, q1] = quad_half(f1);
    auto [d2, q2] = quad_half(f2);
    if (d2.sign != -d1.sign)
        throw Error("complex", "oriented_quad",
                    "both faces traverse the flip edge the same way; the flip "
                    "would have to reverse one orientation");
    std::array<EdgeRef, 4> cyc = {q1[0], q1[1], q2[0], q2[1]};
    // cyc runs v -> m1 -> u -> m2 -> v
    for (int i = 0; i < 4; ++i) {
        if (cyc[i].edge == edge)
            throw Error("complex", "nondegenerate_quad", "flip edge lies on the quadrilateral rim");
        if (c.head(cyc[i]) != c.tail(cyc[(i + 1) % 4]))
            throw Error("complex", "nondegenerate_quad", "faces do not close into a quadrilateral");
    }
    if (q1[0].edge == q2[0].edge || q1[0].edge == q2[1].edge || q1[1].edge == q2[0].edge ||
        q1[1].edge == q2[1].edge)
        throw Error("complex", "nondegenerate_quad", "faces share more than one edge");

    int m1 = c.head(cyc[0]);
    int m2 = c.head(cyc[2]);

    TwoComplex out = c;
    out.edges[edge] = {m1, m2, c.edges[edge].framing};
    Face F1, F2;
    // F1: root m1, loop m1 -> u -> m2 -> m1:  e1 = cyc[1], e3 = cyc[2], e2 = diag
    F1.slots = {cyc[1], EdgeRef{edge, +1}, cyc[2]};
    F1.eps = c.faces[f1].eps;
    // F2: root m2, loop m2 -> v -> m1 -> m2:  e1 = cyc[3], e3 = cyc[0], e2 = diag^-1
    F2.slots = {cyc[3], EdgeRef{edge, -1}, cyc[0]};
    F2.eps = c.faces[f2].eps;
    out.faces[f1] = F1;
    out.faces[f2] = F2;

    auto viol = out.validate();
    if (!viol.empty()) throw Error("complex", "flip_valid", "flip produced invalid complex");
    return out;
}

TwoComplex pachner_subdivide(const TwoComplex& c, int face) {
    if (face < 0 || face >= (int)c.faces.size())
        throw Error("complex", "face_exists", "no such face");
    const Face f = c.faces[face];
    int a = c.tail(f.slots[0]), b = c.head(f.slots[0]), cc = c.head(f.slots[1]);

    TwoComplex out = c;
    int w = out.n_vertices++;
    int ea = (int)out.edges.size();
    out.edges.push_back({a, w, +1});
    int eb = (int)out.edges.size();
    out.edges.push_back({b, w, +1});
    int ec = (int)out.edges.size();
    out.edges.push_back({cc, w, +1});

    Face F1{{f.slots[0], EdgeRef{ea, +1}, EdgeRef{eb, +1}}, f.eps};
    Face F2{{f.slots[2], EdgeRef{eb, +1}, EdgeRef{ec, +1}}, f.eps};
    Face F3{{reversed(f.slots[1]), EdgeRef{ec, +1}, EdgeRef{ea, +1}}, f.eps};
    out.faces[face] = F1;
    out.faces.push_back(F2);
    out.faces.push_back(F3);

    auto viol = out.validate();
    if (!viol.empty()) throw Error("complex", "subdivide_valid", "subdivision produced invalid complex");
    return out;
}

TwoComplex pachner_merge(const TwoComplex& c, int vertex) {
    if (vertex < 0 || vertex >= c.n_vertices)
        throw Error("complex", "vertex_exists", "no such vertex");

    std::vector<int> star_edges;
    for (int e = 0; e < (int)c.edges.size(); ++e)
        if (c.edges[e].src == vertex || c.edges[e].dst == vertex) star_edges.push_back(e);
    if (star_edges.size() != 3)
        throw Error("complex", "degree_three", "merge vertex must have exactly 3 incident edges");

    std::set<int> star_faces;
    for (int e : star_edges) {
        auto fs = c.faces_of_edge(e);
        if (fs.size() != 2)
            throw Error("complex", "interior_star", "star edges must be interior");
        for (int f : fs) star_faces.insert(f);
    }
    if (star_faces.size() != 3)
        throw Error("complex", "disc_star", "vertex star is not a 3-face disc");

    // One outer directed edge per star face.
    std::vector<EdgeRef> outer;
    std::vector<int> outer_face;
    for (int f : star_faces) {
        auto loop = face_loop(c.faces[f]);
        std::vector<EdgeRef> ext;
        for (auto r : loop) {
            const auto& ed = c.edges[r.edge];
            if (ed.src != vertex && ed.dst != vertex) ext.push_back(r);
        }
        if (ext.size() != 1)
            throw Error("complex", "disc_star", "star face must have exactly one outer edge");
        outer.push_back(ext[0]);
        outer_face.push_back(f);
    }

    auto chain = chain_order(c, outer);
    if (!chain || c.head(chain->back()) != c.tail(chain->front()))
        throw Error("complex", "disc_star", "outer edges do not close into a triangle");
    // Loop x -> y -> z -> x; merged face: e1 = (x->y), e3 = (y->z), e2 = (x->z) = rev(z->x).
    Face merged;
    merged.slots = {(*chain)[0], reversed((*chain)[2]), (*chain)[1]};
    // inherit eps from the face contributing the new source edge
    for (int i = 0; i < 3; ++i)
        if (outer[i] == (*chain)[0]) merged.eps = c.faces[outer_face[i]].eps;

    TwoComplex out;
    out.n_vertices = c.n_vertices - 1;
    auto vmap = [&](int v) { return v > vertex ? v - 1 : v; };
    if (c.root == vertex)
        throw Error("complex", "root_kept", "cannot merge away the complex root");
    out.root = vmap(c.root);
    std::vector<int> emap(c.edges.size(), -1);
    for (int e = 0; e < (int)c.edges.size(); ++e) {
        if (std::find(star_edges.begin(), star_edges.end(), e) != star_edges.end()) continue;
        emap[e] = (int)out.edges.size();
        out.edges.push_back({vmap(c.edges[e].src), vmap(c.edges[e].dst), c.edges[e].framing});
    }
    for (int f = 0; f < (int)c.faces.size(); ++f) {
        if (star_faces.count(f)) continue;
        Face nf = c.faces[f];
        for (auto& s : nf.slots) s.edge = emap[s.edge];
        out.faces.push_back(nf);
    }
    for (auto& s : merged.slots) s.edge = emap[s.edge];
    out.faces.push_back(merged);

    auto viol = out.validate();
    if (!viol.empty()) throw Error("complex", "merge_valid", "merge produced invalid complex");
    return out;
}

namespace {

struct IsoState {
    std::vector<int> vmap, emap, epar;  // a -> b maps; -1 unknown
    std::vector<char> vused, eused, fused;
};

bool match_faces(const TwoComplex& A, const TwoComplex& B, IsoState& st, int fa) {
    if (fa == (int)A.faces.size()) {
        // leftover edges (edges in no face) must pair up consistently
        std::vector<int> freeB;
        for (int e = 0; e < (int)B.edges.size(); ++e)
            if (!st.eused[e] && B.faces_of_edge(e).empty()) freeB.push_back(e);
        std::vector<int> freeA;
        for (int e = 0; e < (int)A.edges.size(); ++e)
            if (st.emap[e] < 0) freeA.push_back(e);
        if (freeA.size() != freeB.size()) return false;
        // small: try all assignments
        std::vector<char> used(freeB.size(), 0);
        auto rec = [&](auto&& self, size_t i) -> bool {
            if (i == freeA.size()) return true;
            for (size_t j = 0; j < freeB.size(); ++j) {
                if (used[j]) continue;
                int ea = freeA[i], eb = freeB[j];
                if (A.edges[ea].framing != B.edges[eb].framing) continue;
                for (int par : {0, 1}) {
                    int sa = A.edges[ea].src, da = A.edges[ea].dst;
                    int sb = par ? B.edges[eb].dst : B.edges[eb].src;
                    int db = par ? B.edges[eb].src : B.edges[eb].dst;
                    if (st.vmap[sa] >= 0 && st.vmap[sa] != sb) continue;
                    if (st.vmap[da] >= 0 && st.vmap[da] != db) continue;
                    if (st.vmap[sa] < 0 && st.vused[sb]) continue;
                    if (st.vmap[da] < 0 && (st.vused[db] || (sb == db ? false : db == sb)))
                        continue;
                    auto saved = st;
                    bool ok = true;
                    if (st.vmap[sa] < 0) {
                        if (st.vused[sb] && st.vmap[sa] != sb) ok = false;
                        st.vmap[sa] = sb;
                        st.vused[sb] = 1;
                    }
                    if (ok && st.vmap[da] < 0) {
                        if (st.vused[db]) ok = (st.vmap[da] == db);
                        if (ok) {
                            st.vmap[da] = db;
                            st.vused[db] = 1;
                        }
                    }
                    if (ok) {
                        used[j] = 1;
                        if (self(self, i + 1)) return true;
                        used[j] = 0;
                    }
                    st = saved;
                }
            }
            return false;
        };
        if (!rec(rec, 0)) return false;
        // root must correspond
        return st.vmap[A.root] < 0 || st.vmap[A.root] == B.root;
    }

    const Face& Fa = A.faces[fa];
    for (int fb = 0; fb < (int)B.faces.size(); ++fb) {
        if (st.fused[fb]) continue;
        Face Gb = B.faces[fb];
        for (int r = 0; r < 3; ++r, Gb = rotate_face(Gb)) {
            if (Gb.eps != Fa.eps) continue;
            auto saved = st;
            bool ok = true;
            for (int s = 0; s < 3 && ok; ++s) {
                int ea = Fa.slots[s].edge, eb = Gb.slots[s].edge;
                int par = Fa.slots[s].sign == Gb.slots[s].sign ? 0 : 1;
                if (A.edges[ea].framing != B.edges[eb].framing) {
                    ok = false;
                    break;
                }
                if (st.emap[ea] >= 0) {
                    if (st.emap[ea] != eb || st.epar[ea] != par) ok = false;
                } else if (st.eused[eb]) {
                    ok = false;
                } else {
                    st.emap[ea] = eb;
                    st.epar[ea] = par;
                    st.eused[eb] = 1;
                }
                if (!ok) break;
                // vertex consistency via role direction
                int ta = A.tail(Fa.slots[s]), ha = A.head(Fa.slots[s]);
                int tb = B.tail(Gb.slots[s]), hb = B.head(Gb.slots[s]);
                for (auto [va, vb] : {std::pair(ta, tb), std::pair(ha, hb)}) {
                    if (st.vmap[va] >= 0) {
                        if (st.vmap[va] != vb) {
                            ok = false;
                            break;
                        }
                    } else if (st.vused[vb]) {
                        ok = false;
                        break;
                    } else {
                        st.vmap[va] = vb;
                        st.vused[vb] = 1;
                    }
                }
            }
            if (ok) {
                st.fused[fb] = 1;
                if (match_faces(A, B, st, fa + 1)) return true;
                st.fused[fb] = 0;
            }
            st = saved;
        }
    }
    return false;
}

}  // namespace

bool isomorphic(const TwoComplex& a, const TwoComplex& b) {
    if (a.n_vertices != b.n_vertices || a.edges.size() != b.edges.size() ||
        a.faces.size() != b.faces.size())
        return false;
    IsoState st;
    st.vmap.assign(a.n_vertices, -1);
    st.emap.assign(a.edges.size(), -1);
    st.epar.assign(a.edges.size(), 0);
    st.vused.assign(b.n_vertices, 0);
    st.eused.assign(b.edges.size(), 0);
    st.fused.assign(b.faces.size(), 0);
    return match_faces(a, b, st, 0);
}

}  // namespace twohol
