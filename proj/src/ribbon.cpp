#include "twohol/ribbon.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "twohol/errors.hpp"

namespace twohol {

namespace {

// union-find with stable min-representative compaction
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[b] = a;  // keep the smaller index as representative
    }
};

// union-find on edges carrying a relative direction sign
struct SignedUnionFind {
    std::vector<int> parent, sign;
    explicit SignedUnionFind(int n) : parent(n), sign(n, +1) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::pair<int, int> find(int x) {
        int s = +1;
        while (parent[x] != x) {
            s *= sign[x];
            x = parent[x];
        }
        return {x, s};
    }
    // declare a ~ s * b
    void unite(int a, int b, int s) {
        auto [ra, sa] = find(a);
        auto [rb, sb] = find(b);
        if (ra == rb) return;
        if (ra > rb) {
            std::swap(ra, rb);
            std::swap(sa, sb);
        }
        parent[rb] = ra;
        sign[rb] = sa * s * sb;
    }
};

struct GlueResult {
    TwoComplex complex;
    std::vector<int> vmap_a, vmap_b;        // vertex index maps
    std::vector<EdgeRef> emap_a, emap_b;    // edge maps with relative sign
};

// Quotient of the disjoint union of two bodies by vertex and (signed) edge
// identifications.  Compaction is stable: surviving cells keep the relative
// order of their smallest original index, so sequential gluings agree with
// the one-shot quotient on the nose.
GlueResult glue_bodies(const TwoComplex& a, const TwoComplex& b,
                       const std::vector<std::pair<int, int>>& vertex_pairs,
                       const std::vector<std::pair<int, EdgeRef>>& edge_pairs) {
    int nv = a.n_vertices + b.n_vertices;
    int ne = (int)a.edges.size() + (int)b.edges.size();
    UnionFind vuf(nv);
    SignedUnionFind euf(ne);
    auto bvert = [&](int v) { return a.n_vertices + v; };
    auto bedge = [&](int e) { return (int)a.edges.size() + e; };
    for (auto [av, bv] : vertex_pairs) vuf.unite(av, bvert(bv));
    for (auto [ae, br] : edge_pairs) {
        euf.unite(ae, bedge(br.edge), br.sign);
        const auto& ea = a.edges[ae];
        const auto& eb = b.edges[br.edge];
        if (br.sign > 0) {
            vuf.unite(ea.src, bvert(eb.src));
            vuf.unite(ea.dst, bvert(eb.dst));
        } else {
            vuf.unite(ea.src, bvert(eb.dst));
            vuf.unite(ea.dst, bvert(eb.src));
        }
    }

    auto all_edge = [&](int i) -> const TwoComplex::Edge& {
        return i < (int)a.edges.size() ? a.edges[i] : b.edges[i - (int)a.edges.size()];
    };

    std::vector<int> vnew(nv, -1);
    int vcount = 0;
    for (int v = 0; v < nv; ++v) {
        int r = vuf.find(v);
        if (vnew[r] < 0) vnew[r] = vcount++;
        vnew[v] = vnew[r];
    }
    std::vector<int> enew(ne, -1);
    std::vector<int> esign(ne, +1);
    GlueResult out;
    out.complex.n_vertices = vcount;
    for (int e = 0; e < ne; ++e) {
        auto [r, s] = euf.find(e);
        if (enew[r] < 0) {
            enew[r] = (int)out.complex.edges.size();
            const auto& src = all_edge(r);
            int off = r < (int)a.edges.size() ? 0 : a.n_vertices;
            out.complex.edges.push_back({vnew[off + src.src], vnew[off + src.dst], src.framing});
        }
        enew[e] = enew[r];
        esign[e] = s;
    }
    for (int which = 0; which < 2; ++which) {
        int off = which == 0 ? 0 : (int)a.edges.size();
        const auto& face_list = which == 0 ? a.faces : b.faces;
        for (const Face& f : face_list) {
            Face g = f;
            for (auto& slot : g.slots) {
                int e = slot.edge + off;
                slot = {enew[e], slot.sign * esign[e]};
            }
            out.complex.faces.push_back(g);
        }
    }
    out.complex.root = a.n_vertices > 0 ? vnew[a.root]
                                        : (b.n_vertices > 0 ? vnew[bvert(b.root)] : 0);
    out.vmap_a.assign(vnew.begin(), vnew.begin() + a.n_vertices);
    out.vmap_b.assign(vnew.begin() + a.n_vertices, vnew.end());
    for (int e = 0; e < (int)a.edges.size(); ++e) out.emap_a.push_back({enew[e], esign[e]});
    for (int e = (int)a.edges.size(); e < ne; ++e) out.emap_b.push_back({enew[e], esign[e]});
    return out;
}

std::vector<EdgeRef> remap_path(const std::vector<EdgeRef>& path,
                                const std::vector<EdgeRef>& emap) {
    std::vector<EdgeRef> out;
    out.reserve(path.size());
    for (EdgeRef r : path) out.push_back({emap[r.edge].edge, r.sign * emap[r.edge].sign});
    return out;
}

int path_start(const TwoComplex& c, const std::vector<EdgeRef>& p) { return c.tail(p.front()); }
int path_end(const TwoComplex& c, const std::vector<EdgeRef>& p) { return c.head(p.back()); }

std::vector<EdgeRef> reversed_path(const std::vector<EdgeRef>& p) {
    std::vector<EdgeRef> out(p.rbegin(), p.rend());
    for (auto& r : out) r.sign = -r.sign;
    return out;
}

BoundaryGraph reversed_graph(const BoundaryGraph& b) {
    BoundaryGraph out = b;
    for (auto& e : out.edges) std::swap(e.src, e.dst);
    std::swap(out.incoming, out.outgoing);
    return out;
}

BoundaryGraph frame_flipped_graph(const BoundaryGraph& b) {
    BoundaryGraph out = b;
    for (auto& e : out.edges) e.framing = -e.framing;
    std::swap(out.incoming, out.outgoing);
    return out;
}

struct WedgeResult {
    BoundaryGraph graph;
    std::vector<int> vmap_a, vmap_b;
};

WedgeResult wedge_with_maps(const BoundaryGraph& a, const BoundaryGraph& b,
                            const std::vector<std::pair<int, int>>& identify) {
    int nv = a.n_vertices + b.n_vertices;
    UnionFind uf(nv);
    for (auto [av, bv] : identify) uf.unite(av, a.n_vertices + bv);
    std::vector<int> vnew(nv, -1);
    int count = 0;
    for (int v = 0; v < nv; ++v) {
        int r = uf.find(v);
        if (vnew[r] < 0) vnew[r] = count++;
        vnew[v] = vnew[r];
    }
    WedgeResult out;
    out.graph.n_vertices = count;
    for (const auto& e : a.edges) out.graph.edges.push_back({vnew[e.src], vnew[e.dst], e.framing});
    for (const auto& e : b.edges)
        out.graph.edges.push_back(
            {vnew[a.n_vertices + e.src], vnew[a.n_vertices + e.dst], e.framing});
    auto push_anchors = [&](const std::vector<int>& av, const std::vector<int>& bv,
                            std::vector<int>& dst) {
        for (int v : av)
            if (std::find(dst.begin(), dst.end(), vnew[v]) == dst.end()) dst.push_back(vnew[v]);
        for (int v : bv) {
            int w = vnew[a.n_vertices + v];
            if (std::find(dst.begin(), dst.end(), w) == dst.end()) dst.push_back(w);
        }
    };
    push_anchors(a.incoming, b.incoming, out.graph.incoming);
    push_anchors(a.outgoing, b.outgoing, out.graph.outgoing);
    // a wedge point where a strand end meets a strand start is smoothed over
    // and stops being an anchor
    std::vector<int> both;
    for (int v : out.graph.incoming)
        if (std::find(out.graph.outgoing.begin(), out.graph.outgoing.end(), v) !=
            out.graph.outgoing.end())
            both.push_back(v);
    for (int v : both) {
        std::erase(out.graph.incoming, v);
        std::erase(out.graph.outgoing, v);
    }
    if (a.base_point)
        out.graph.base_point = vnew[*a.base_point];
    else if (b.base_point)
        out.graph.base_point = vnew[a.n_vertices + *b.base_point];
    out.vmap_a.assign(vnew.begin(), vnew.begin() + a.n_vertices);
    out.vmap_b.assign(vnew.begin() + a.n_vertices, vnew.end());
    return out;
}

std::vector<int> remap_indices(const std::vector<int>& v, const std::vector<int>& map) {
    std::vector<int> out;
    out.reserve(v.size());
    for (int x : v) out.push_back(map[x]);
    return out;
}

std::vector<int> remap_edge_indices(const std::vector<int>& v, const std::vector<EdgeRef>& map) {
    std::vector<int> out;
    out.reserve(v.size());
    for (int x : v) out.push_back(map[x].edge);
    return out;
}

// Join markings that meet head-to-head at an interface vertex; keeps going
// until no open marking ends where another begins or ends.
std::vector<Marking> join_markings(const TwoComplex& body, std::vector<Marking> ms,
                                   const std::set<int>& junctions) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < ms.size() && !changed; ++i) {
            if (ms[i].path.empty()) continue;
            int ei = path_end(body, ms[i].path);
            int si = path_start(body, ms[i].path);
            if (si == ei) continue;
            bool at_end = junctions.count(ei), at_start = junctions.count(si);
            if (!at_end && !at_start) continue;
            for (size_t j = 0; j < ms.size(); ++j) {
                if (j == i || ms[j].path.empty()) continue;
                int sj = path_start(body, ms[j].path);
                int ej = path_end(body, ms[j].path);
                if (sj == ej) continue;
                if (at_end && sj == ei) {
                    ms[i].path.insert(ms[i].path.end(), ms[j].path.begin(), ms[j].path.end());
                } else if (at_end && ej == ei) {
                    std::vector<EdgeRef> tail = reversed_path(ms[j].path);
                    ms[i].path.insert(ms[i].path.end(), tail.begin(), tail.end());
                } else if (at_start && ej == si) {
                    std::vector<EdgeRef> head = ms[j].path;
                    head.insert(head.end(), ms[i].path.begin(), ms[i].path.end());
                    ms[i].path = std::move(head);
                } else if (at_start && sj == si) {
                    std::vector<EdgeRef> head = reversed_path(ms[j].path);
                    head.insert(head.end(), ms[i].path.begin(), ms[i].path.end());
                    ms[i].path = std::move(head);
                } else {
                    continue;
                }
                ms.erase(ms.begin() + j);
                changed = true;
                break;
            }
        }
    }
    return ms;
}

void check_path(const TwoComplex& c, const std::vector<EdgeRef>& p, const char* what) {
    if (p.empty()) throw Error("ribbon", "marking", std::string(what) + ": empty path");
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i].edge < 0 || p[i].edge >= (int)c.edges.size() ||
            (p[i].sign != 1 && p[i].sign != -1))
            throw Error("ribbon", "marking", std::string(what) + ": bad edge reference");
        if (i + 1 < p.size() && c.head(p[i]) != c.tail(p[i + 1]))
            throw Error("ribbon", "marking", std::string(what) + ": not a chained path");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// boundary graphs

std::vector<Violation> BoundaryGraph::validate() const {
    std::vector<Violation> out;
    for (const auto& e : edges)
        if (e.src < 0 || e.src >= n_vertices || e.dst < 0 || e.dst >= n_vertices ||
            (e.framing != 1 && e.framing != -1))
            out.push_back({"structure", {e.src, e.dst}, "edge out of range"});
    std::set<int> seen;
    for (const auto* list : {&incoming, &outgoing})
        for (int v : *list) {
            if (v < 0 || v >= n_vertices)
                out.push_back({"structure", {v}, "anchor out of range"});
            else if (!seen.insert(v).second)
                out.push_back({"structure", {v}, "anchor vertices must be distinct"});
        }
    if (base_point && (*base_point < 0 || *base_point >= n_vertices))
        out.push_back({"structure", {*base_point}, "base point out of range"});
    return out;
}

std::pair<int, int> signature(const BoundaryGraph& b) {
    return {(int)b.incoming.size(), (int)b.outgoing.size()};
}

BoundaryGraph disjoint_graph(const BoundaryGraph& a, const BoundaryGraph& b) {
    return wedge(a, b, {});
}

BoundaryGraph wedge(const BoundaryGraph& a, const BoundaryGraph& b,
                    const std::vector<std::pair<int, int>>& identify) {
    return wedge_with_maps(a, b, identify).graph;
}

BoundaryGraph contract_edge(const BoundaryGraph& b, int edge) {
    if (edge < 0 || edge >= (int)b.edges.size())
        throw Error("ribbon", "contraction", "edge index out of range");
    const auto& e = b.edges[edge];
    if (e.src == e.dst) throw Error("ribbon", "contraction", "cannot contract a loop edge");
    int keep = std::min(e.src, e.dst), drop = std::max(e.src, e.dst);
    auto vmap = [&](int v) { return v == drop ? keep : (v > drop ? v - 1 : v); };
    BoundaryGraph out;
    out.n_vertices = b.n_vertices - 1;
    for (int i = 0; i < (int)b.edges.size(); ++i)
        if (i != edge)
            out.edges.push_back({vmap(b.edges[i].src), vmap(b.edges[i].dst), b.edges[i].framing});
    auto remap_anchors = [&](const std::vector<int>& src, std::vector<int>& dst) {
        for (int v : src)
            if (std::find(dst.begin(), dst.end(), vmap(v)) == dst.end()) dst.push_back(vmap(v));
    };
    remap_anchors(b.incoming, out.incoming);
    remap_anchors(b.outgoing, out.outgoing);
    if (b.base_point) out.base_point = vmap(*b.base_point);
    return out;
}

BoundaryGraph close_off(const BoundaryGraph& b) {
    if (b.incoming.size() != b.outgoing.size())
        throw Error("ribbon", "closure", "anchor counts differ; identity strands do not fit");
    UnionFind uf(b.n_vertices);
    for (size_t i = 0; i < b.incoming.size(); ++i) uf.unite(b.outgoing[i], b.incoming[i]);
    std::vector<int> vnew(b.n_vertices, -1);
    int count = 0;
    for (int v = 0; v < b.n_vertices; ++v) {
        int r = uf.find(v);
        if (vnew[r] < 0) vnew[r] = count++;
        vnew[v] = vnew[r];
    }
    BoundaryGraph g;
    g.n_vertices = count;
    for (const auto& e : b.edges) g.edges.push_back({vnew[e.src], vnew[e.dst], e.framing});
    std::set<int> joints;
    for (int v : b.incoming) joints.insert(vnew[v]);

    // smooth the two-valent joints: merge their unique in/out edge pair
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v : std::set<int>(joints)) {
            std::vector<int> ins, outs;
            for (int i = 0; i < (int)g.edges.size(); ++i) {
                if (g.edges[i].src == v && g.edges[i].dst == v) { ins.clear(); break; }
                if (g.edges[i].dst == v) ins.push_back(i);
                if (g.edges[i].src == v) outs.push_back(i);
            }
            if (ins.size() != 1 || outs.size() != 1) continue;
            int ei = ins[0], eo = outs[0];
            TwoComplex::Edge merged{g.edges[ei].src, g.edges[eo].dst, g.edges[ei].framing};
            BoundaryGraph h;
            h.n_vertices = g.n_vertices - 1;
            auto vm = [&](int w) { return w > v ? w - 1 : w; };
            for (int i = 0; i < (int)g.edges.size(); ++i) {
                if (i == ei || i == eo) continue;
                h.edges.push_back({vm(g.edges[i].src), vm(g.edges[i].dst), g.edges[i].framing});
            }
            h.edges.push_back({vm(merged.src), vm(merged.dst), merged.framing});
            std::set<int> next;
            for (int j : joints)
                if (j != v) next.insert(vm(j));
            joints = next;
            g = h;
            changed = true;
            break;
        }
    }
    return g;
}

BoundaryGraph empty_graph() { return {}; }

BoundaryGraph one_strand() {
    BoundaryGraph g;
    g.n_vertices = 2;
    g.edges = {{0, 1, +1}};
    g.incoming = {0};
    g.outgoing = {1};
    return g;
}

BoundaryGraph two_strands() {
    BoundaryGraph g;
    g.n_vertices = 4;
    g.edges = {{0, 1, +1}, {2, 3, +1}};
    g.incoming = {0, 2};
    g.outgoing = {1, 3};
    return g;
}

BoundaryGraph cup_graph() {
    BoundaryGraph g;
    g.n_vertices = 2;
    g.edges = {{0, 1, +1}};
    g.outgoing = {0, 1};
    return g;
}

BoundaryGraph cap_graph() {
    BoundaryGraph g = cup_graph();
    std::swap(g.incoming, g.outgoing);
    return g;
}

BoundaryGraph circle_graph() {
    BoundaryGraph g;
    g.n_vertices = 2;
    g.edges = {{0, 1, +1}, {0, 1, -1}};  // the two fold strands
    return g;
}

BoundaryGraph b_plus_graph() {
    // a1=0 a2=1 u=2 w=3 b1=4 b2=5; legs attach at opposite ends of the middle
    BoundaryGraph g;
    g.n_vertices = 6;
    g.edges = {{0, 2, +1}, {1, 3, +1}, {2, 3, +1}, {2, 4, +1}, {3, 5, +1}};
    g.incoming = {0, 1};
    g.outgoing = {4, 5};
    return g;
}

BoundaryGraph b_times_graph() {
    // both inputs meet the top crossing vertex, both outputs leave the bottom
    BoundaryGraph g;
    g.n_vertices = 6;
    g.edges = {{0, 2, +1}, {1, 2, +1}, {2, 3, +1}, {3, 4, +1}, {3, 5, +1}};
    g.incoming = {0, 1};
    g.outgoing = {4, 5};
    return g;
}

// ---------------------------------------------------------------------------
// ribbon validation

void validate_ribbon(const Ribbon& r) {
    bool empty_body = r.body.n_vertices == 0 && r.body.edges.empty() && r.body.faces.empty();
    if (!empty_body && !r.body.is_valid())
        throw Error("ribbon", "body", "body complex fails validation");
    if (!r.source.is_valid() || !r.target.is_valid())
        throw Error("ribbon", "layer", "boundary graph fails validation");

    auto check_layer = [&](const BoundaryGraph& g, const std::vector<int>& vmap,
                           const std::vector<int>& emap, const char* which) {
        if ((int)vmap.size() != g.n_vertices || emap.size() != g.edges.size())
            throw Error("ribbon", "layer", std::string(which) + ": map sizes do not match");
        for (int v : vmap)
            if (v < 0 || v >= r.body.n_vertices)
                throw Error("ribbon", "layer", std::string(which) + ": vertex map out of range");
        std::set<int> used;
        for (size_t i = 0; i < emap.size(); ++i) {
            int e = emap[i];
            if (e < 0 || e >= (int)r.body.edges.size())
                throw Error("ribbon", "layer", std::string(which) + ": edge map out of range");
            if (!used.insert(e).second)
                throw Error("ribbon", "layer", std::string(which) + ": edge map not injective");
            if (r.body.edges[e].src != vmap[g.edges[i].src] ||
                r.body.edges[e].dst != vmap[g.edges[i].dst] ||
                r.body.edges[e].framing != g.edges[i].framing)
                throw Error("ribbon", "layer",
                            std::string(which) + ": body edge disagrees with the graph");
        }
    };
    check_layer(r.source, r.source_vertices, r.source_edges, "source");
    check_layer(r.target, r.target_vertices, r.target_edges, "target");

    std::map<int, int> anchor_frame;  // body vertex -> framing
    std::set<int> layer_vertices;
    for (int v : r.source_vertices) layer_vertices.insert(v);
    for (int v : r.target_vertices) layer_vertices.insert(v);
    for (int v : r.source.incoming) anchor_frame[r.source_vertices[v]] = +1;
    for (int v : r.source.outgoing) anchor_frame[r.source_vertices[v]] = -1;
    for (int v : r.target.incoming) anchor_frame[r.target_vertices[v]] = +1;
    for (int v : r.target.outgoing) anchor_frame[r.target_vertices[v]] = -1;

    for (const Marking& m : r.markings) {
        check_path(r.body, m.path, "marking");
        if (m.sign != 1 && m.sign != -1)
            throw Error("ribbon", "marking", "sign must be +1 or -1");
        int s = path_start(r.body, m.path), e = path_end(r.body, m.path);
        if (s == e) continue;  // closed fold loop
        std::vector<int> frames;
        for (int v : {s, e}) {
            auto it = anchor_frame.find(v);
            if (it != anchor_frame.end())
                frames.push_back(it->second);
            else if (!layer_vertices.count(v))
                throw Error("ribbon", "marking",
                            "marking endpoint is neither an anchor nor a layer vertex");
        }
        // a side line between anchors of opposite framing is a twisted strand
        // and carries either sign; otherwise the sign must match the framing
        bool twisted = frames.size() == 2 && frames[0] != frames[1];
        if (!twisted)
            for (int f : frames)
                if (f != m.sign)
                    throw Error("ribbon", "marking", "sign does not match anchor framing");
    }

    // every thin body edge must be accounted for by a layer or a marking
    std::set<int> covered(r.source_edges.begin(), r.source_edges.end());
    covered.insert(r.target_edges.begin(), r.target_edges.end());
    for (const Marking& m : r.markings)
        for (EdgeRef ref : m.path) covered.insert(ref.edge);
    auto counts = empty_body ? std::vector<int>{} : r.body.edge_face_count();
    for (int e = 0; e < (int)counts.size(); ++e)
        if (counts[e] <= 1 && !covered.count(e))
            throw Error("ribbon", "boundary",
                        "boundary edge lies on no layer and no marking");
}

std::pair<int, int> ribbon_signature(const Ribbon& r) {
    return {(int)r.source.incoming.size(), (int)r.target.outgoing.size()};
}

// ---------------------------------------------------------------------------
// stacking

Ribbon stack(const Ribbon& r, const Ribbon& rp) {
    GraphIso f;
    f.vertex_map.resize(r.target.n_vertices);
    std::iota(f.vertex_map.begin(), f.vertex_map.end(), 0);
    f.edge_map.resize(r.target.edges.size());
    for (size_t e = 0; e < f.edge_map.size(); ++e) f.edge_map[e] = {(int)e, +1};
    return stack(r, rp, f);
}

Ribbon stack(const Ribbon& r, const Ribbon& rp, const GraphIso& f) {
    const BoundaryGraph& mid = r.target;
    const BoundaryGraph& mid2 = rp.source;
    int anchors_a = (int)(mid.incoming.size() + mid.outgoing.size());
    int anchors_b = (int)(mid2.incoming.size() + mid2.outgoing.size());
    if (anchors_a != anchors_b)
        throw Error("ribbon", "stacking", "anchor counts do not match across the interface");
    if ((int)f.vertex_map.size() != mid.n_vertices || mid.n_vertices != mid2.n_vertices ||
        f.edge_map.size() != mid.edges.size() || mid.edges.size() != mid2.edges.size())
        throw Error("ribbon", "stacking", "interface graphs are not identified");
    std::vector<char> vseen(mid2.n_vertices, 0), eseen(mid2.edges.size(), 0);
    for (int v : f.vertex_map) {
        if (v < 0 || v >= mid2.n_vertices || vseen[v])
            throw Error("ribbon", "stacking", "vertex identification is not a bijection");
        vseen[v] = 1;
    }
    for (size_t e = 0; e < f.edge_map.size(); ++e) {
        EdgeRef img = f.edge_map[e];
        if (img.edge < 0 || img.edge >= (int)mid2.edges.size() || eseen[img.edge] ||
            (img.sign != 1 && img.sign != -1))
            throw Error("ribbon", "stacking", "edge identification is not a bijection");
        eseen[img.edge] = 1;
        const auto& ea = mid.edges[e];
        const auto& eb = mid2.edges[img.edge];
        int want_src = img.sign > 0 ? eb.src : eb.dst;
        int want_dst = img.sign > 0 ? eb.dst : eb.src;
        if (f.vertex_map[ea.src] != want_src || f.vertex_map[ea.dst] != want_dst)
            throw Error("ribbon", "stacking", "identification does not preserve the graphs");
    }
    std::set<int> anchors_mid2(mid2.incoming.begin(), mid2.incoming.end());
    anchors_mid2.insert(mid2.outgoing.begin(), mid2.outgoing.end());
    for (const auto* list : {&mid.incoming, &mid.outgoing})
        for (int v : *list)
            if (!anchors_mid2.count(f.vertex_map[v]))
                throw Error("ribbon", "stacking", "identification does not match the anchors");

    std::vector<std::pair<int, int>> vertex_pairs;
    for (int v = 0; v < mid.n_vertices; ++v)
        vertex_pairs.push_back({r.target_vertices[v], rp.source_vertices[f.vertex_map[v]]});
    std::vector<std::pair<int, EdgeRef>> edge_pairs;
    for (size_t e = 0; e < mid.edges.size(); ++e)
        edge_pairs.push_back({r.target_edges[e],
                              {rp.source_edges[f.edge_map[e].edge], f.edge_map[e].sign}});
    GlueResult glued = glue_bodies(r.body, rp.body, vertex_pairs, edge_pairs);

    Ribbon out;
    out.body = glued.complex;
    out.source = r.source;
    out.source_vertices = remap_indices(r.source_vertices, glued.vmap_a);
    out.source_edges = remap_edge_indices(r.source_edges, glued.emap_a);
    out.target = rp.target;
    out.target_vertices = remap_indices(rp.target_vertices, glued.vmap_b);
    out.target_edges = remap_edge_indices(rp.target_edges, glued.emap_b);
    out.twist = r.twist + rp.twist;

    std::set<int> junctions;
    for (const auto* list : {&mid.incoming, &mid.outgoing})
        for (int v : *list) junctions.insert(glued.vmap_a[r.target_vertices[v]]);
    std::vector<Marking> ms;
    for (const Marking& m : r.markings) ms.push_back({remap_path(m.path, glued.emap_a), m.sign});
    for (const Marking& m : rp.markings) ms.push_back({remap_path(m.path, glued.emap_b), m.sign});
    out.markings = join_markings(out.body, std::move(ms), junctions);
    return out;
}

// ---------------------------------------------------------------------------
// connected sum

Ribbon connected_sum(const Ribbon& r, const Ribbon& rp, int neg, int pos) {
    if (r.markings.empty() || rp.markings.empty())
        throw Error("ribbon", "summability", "both ribbons need markings to sum along");
    if (neg < 0 || neg >= (int)r.markings.size() || pos < 0 || pos >= (int)rp.markings.size())
        throw Error("ribbon", "summability", "marking index out of range");
    const Marking& la = r.markings[neg];
    const Marking& lb = rp.markings[pos];
    if (la.sign != -1) throw Error("ribbon", "summability", "first marking is not negative");
    if (lb.sign != +1) throw Error("ribbon", "summability", "second marking is not positive");
    int k = (int)la.path.size();
    if ((int)lb.path.size() != k)
        throw Error("ribbon", "summability", "collar rectangle needs equal marking lengths");
    if (k < 2)
        throw Error("ribbon", "summability",
                    "marking too short for a triangulated collar (length >= 2)");
    int sa = path_start(r.body, la.path), ea = path_end(r.body, la.path);
    int sb = path_start(rp.body, lb.path), eb = path_end(rp.body, lb.path);
    if (sa == ea || sb == eb)
        throw Error("ribbon", "summability", "cannot sum along a closed marking");

    GlueResult glued = glue_bodies(r.body, rp.body, {{sa, sb}, {ea, eb}}, {});
    TwoComplex body = glued.complex;

    // glued vertex runs of the two marking paths
    std::vector<EdgeRef> pa = remap_path(la.path, glued.emap_a);
    std::vector<EdgeRef> pb = remap_path(lb.path, glued.emap_b);
    std::vector<int> va(k + 1), vb(k + 1);
    va[0] = body.tail(pa[0]);
    vb[0] = body.tail(pb[0]);
    for (int s = 0; s < k; ++s) {
        va[s + 1] = body.head(pa[s]);
        vb[s + 1] = body.head(pb[s]);
    }

    // collar ladder: rungs at interior levels, diagonals between them
    std::vector<int> rung(k, -1), diag(k, -1);
    for (int s = 1; s < k; ++s) {
        rung[s] = (int)body.edges.size();
        body.edges.push_back({va[s], vb[s], +1});
    }
    for (int s = 1; s + 1 < k; ++s) {
        diag[s] = (int)body.edges.size();
        body.edges.push_back({va[s], vb[s + 1], +1});
    }
    body.faces.push_back({{pa[0], pb[0], EdgeRef{rung[1], +1}}, +1});
    for (int s = 1; s + 1 < k; ++s) {
        body.faces.push_back({{pa[s], EdgeRef{diag[s], +1}, EdgeRef{rung[s + 1], +1}}, +1});
        body.faces.push_back({{EdgeRef{rung[s], +1}, EdgeRef{diag[s], +1}, pb[s]}, +1});
    }
    body.faces.push_back({{EdgeRef{rung[k - 1], +1}, pa[k - 1], pb[k - 1]}, +1});

    // wedge layer graphs wherever both consumed endpoints live in them
    auto locate = [&](const std::vector<int>& vmap, int body_vertex) {
        for (int i = 0; i < (int)vmap.size(); ++i)
            if (vmap[i] == body_vertex) return i;
        return -1;
    };
    std::vector<std::pair<int, int>> src_pairs, tgt_pairs;
    struct EndPair { int a_body, b_body; };
    for (EndPair p : {EndPair{sa, sb}, EndPair{ea, eb}}) {
        int gs_a = locate(r.source_vertices, p.a_body);
        int gs_b = locate(rp.source_vertices, p.b_body);
        if (gs_a >= 0 && gs_b >= 0) src_pairs.push_back({gs_a, gs_b});
        int gt_a = locate(r.target_vertices, p.a_body);
        int gt_b = locate(rp.target_vertices, p.b_body);
        if (gt_a >= 0 && gt_b >= 0) tgt_pairs.push_back({gt_a, gt_b});
    }
    WedgeResult src = wedge_with_maps(r.source, rp.source, src_pairs);
    WedgeResult tgt = wedge_with_maps(r.target, rp.target, tgt_pairs);

    Ribbon out;
    out.body = std::move(body);
    out.source = src.graph;
    out.target = tgt.graph;
    out.source_vertices.assign(src.graph.n_vertices, -1);
    out.target_vertices.assign(tgt.graph.n_vertices, -1);
    for (int v = 0; v < r.source.n_vertices; ++v)
        out.source_vertices[src.vmap_a[v]] = glued.vmap_a[r.source_vertices[v]];
    for (int v = 0; v < rp.source.n_vertices; ++v)
        out.source_vertices[src.vmap_b[v]] = glued.vmap_b[rp.source_vertices[v]];
    for (int v = 0; v < r.target.n_vertices; ++v)
        out.target_vertices[tgt.vmap_a[v]] = glued.vmap_a[r.target_vertices[v]];
    for (int v = 0; v < rp.target.n_vertices; ++v)
        out.target_vertices[tgt.vmap_b[v]] = glued.vmap_b[rp.target_vertices[v]];
    out.source_edges = remap_edge_indices(r.source_edges, glued.emap_a);
    {
        auto more = remap_edge_indices(rp.source_edges, glued.emap_b);
        out.source_edges.insert(out.source_edges.end(), more.begin(), more.end());
    }
    out.target_edges = remap_edge_indices(r.target_edges, glued.emap_a);
    {
        auto more = remap_edge_indices(rp.target_edges, glued.emap_b);
        out.target_edges.insert(out.target_edges.end(), more.begin(), more.end());
    }
    for (int i = 0; i < (int)r.markings.size(); ++i)
        if (i != neg) out.markings.push_back({remap_path(r.markings[i].path, glued.emap_a),
                                              r.markings[i].sign});
    for (int i = 0; i < (int)rp.markings.size(); ++i)
        if (i != pos) out.markings.push_back({remap_path(rp.markings[i].path, glued.emap_b),
                                              rp.markings[i].sign});
    out.twist = r.twist + rp.twist;
    return out;
}

// ---------------------------------------------------------------------------
// pairs, twists, daggers

Ribbon disjoint_union(const Ribbon& a, const Ribbon& b) {
    GlueResult glued = glue_bodies(a.body, b.body, {}, {});
    Ribbon out;
    out.body = glued.complex;
    out.source = disjoint_graph(a.source, b.source);
    out.target = disjoint_graph(a.target, b.target);
    out.source_vertices = remap_indices(a.source_vertices, glued.vmap_a);
    {
        auto more = remap_indices(b.source_vertices, glued.vmap_b);
        out.source_vertices.insert(out.source_vertices.end(), more.begin(), more.end());
    }
    out.target_vertices = remap_indices(a.target_vertices, glued.vmap_a);
    {
        auto more = remap_indices(b.target_vertices, glued.vmap_b);
        out.target_vertices.insert(out.target_vertices.end(), more.begin(), more.end());
    }
    out.source_edges = remap_edge_indices(a.source_edges, glued.emap_a);
    {
        auto more = remap_edge_indices(b.source_edges, glued.emap_b);
        out.source_edges.insert(out.source_edges.end(), more.begin(), more.end());
    }
    out.target_edges = remap_edge_indices(a.target_edges, glued.emap_a);
    {
        auto more = remap_edge_indices(b.target_edges, glued.emap_b);
        out.target_edges.insert(out.target_edges.end(), more.begin(), more.end());
    }
    for (const Marking& m : a.markings)
        out.markings.push_back({remap_path(m.path, glued.emap_a), m.sign});
    for (const Marking& m : b.markings)
        out.markings.push_back({remap_path(m.path, glued.emap_b), m.sign});
    out.twist = a.twist + b.twist;
    out.pair = Ribbon::PairSplit{a.source.n_vertices,
                                 (int)a.source.edges.size(),
                                 (int)a.source.incoming.size(),
                                 (int)a.source.outgoing.size(),
                                 a.target.n_vertices,
                                 (int)a.target.edges.size(),
                                 (int)a.target.incoming.size(),
                                 (int)a.target.outgoing.size()};
    return out;
}

Ribbon pi_twist(const Ribbon& p) {
    if (!p.pair)
        throw Error("ribbon", "twist", "pi_twist acts on recorded disjoint pairs only");
    const auto& s = *p.pair;
    int n1 = s.tgt_vertices, n = p.target.n_vertices, n2 = n - n1;
    int e1 = s.tgt_edges, ne = (int)p.target.edges.size(), e2 = ne - e1;
    auto vm = [&](int v) { return v < n1 ? v + n2 : v - n1; };
    auto em = [&](int e) { return e < e1 ? e + e2 : e - e1; };

    Ribbon out = p;
    BoundaryGraph t;
    t.n_vertices = n;
    t.edges.resize(ne);
    for (int e = 0; e < ne; ++e) {
        const auto& old = p.target.edges[e];
        t.edges[em(e)] = {vm(old.src), vm(old.dst), old.framing};
    }
    auto swap_anchors = [&](const std::vector<int>& old, int first_count) {
        std::vector<int> fresh;
        for (int i = first_count; i < (int)old.size(); ++i) fresh.push_back(vm(old[i]));
        for (int i = 0; i < first_count; ++i) fresh.push_back(vm(old[i]));
        return fresh;
    };
    t.incoming = swap_anchors(p.target.incoming, s.tgt_incoming);
    t.outgoing = swap_anchors(p.target.outgoing, s.tgt_outgoing);
    if (p.target.base_point) t.base_point = vm(*p.target.base_point);
    out.target = t;
    out.target_vertices.resize(n);
    for (int v = 0; v < n; ++v) out.target_vertices[vm(v)] = p.target_vertices[v];
    out.target_edges.resize(ne);
    for (int e = 0; e < ne; ++e) out.target_edges[em(e)] = p.target_edges[e];
    out.twist = p.twist + 1;
    out.pair = Ribbon::PairSplit{s.src_vertices, s.src_edges, s.src_incoming, s.src_outgoing,
                                 n2, e2,
                                 (int)p.target.incoming.size() - s.tgt_incoming,
                                 (int)p.target.outgoing.size() - s.tgt_outgoing};
    return out;
}

Ribbon dagger1(const Ribbon& r) {
    Ribbon out;
    out.body = dagger1(r.body);
    out.source = reversed_graph(r.target);
    out.target = reversed_graph(r.source);
    out.source_vertices = r.target_vertices;
    out.source_edges = r.target_edges;
    out.target_vertices = r.source_vertices;
    out.target_edges = r.source_edges;
    for (const Marking& m : r.markings) {
        // stored directions reverse with the body, so the reversed traversal
        // keeps its reference signs
        Marking rev;
        rev.path.assign(m.path.rbegin(), m.path.rend());
        rev.sign = -m.sign;
        out.markings.push_back(rev);
    }
    out.twist = r.twist;
    if (r.pair) {
        const auto& s = *r.pair;
        out.pair = Ribbon::PairSplit{s.tgt_vertices, s.tgt_edges, s.tgt_outgoing, s.tgt_incoming,
                                     s.src_vertices, s.src_edges, s.src_outgoing, s.src_incoming};
    }
    return out;
}

Ribbon dagger2(const Ribbon& r) {
    Ribbon out = r;
    out.body = dagger2(r.body);
    out.source = frame_flipped_graph(r.source);
    out.target = frame_flipped_graph(r.target);
    for (Marking& m : out.markings) m.sign = -m.sign;
    if (r.pair) {
        const auto& s = *r.pair;
        out.pair = Ribbon::PairSplit{s.src_vertices, s.src_edges, s.src_outgoing, s.src_incoming,
                                     s.tgt_vertices, s.tgt_edges, s.tgt_outgoing, s.tgt_incoming};
    }
    return out;
}

Ribbon contract_edge(const Ribbon& r, int edge) {
    if (edge < 0 || edge >= (int)r.body.edges.size())
        throw Error("ribbon", "contraction", "edge index out of range");
    const auto& e = r.body.edges[edge];
    if (e.src == e.dst) throw Error("ribbon", "contraction", "cannot contract a loop edge");
    for (const Face& f : r.body.faces)
        for (const auto& slot : f.slots)
            if (slot.edge == edge)
                throw Error("ribbon", "contraction", "edge lies on a face of the body");
    for (const auto* layer : {&r.source_edges, &r.target_edges})
        for (int le : *layer)
            if (le == edge)
                throw Error("ribbon", "contraction", "cannot contract a layer edge");

    int keep = std::min(e.src, e.dst), drop = std::max(e.src, e.dst);
    auto vm = [&](int v) { return v == drop ? keep : (v > drop ? v - 1 : v); };
    auto em = [&](int x) { return x > edge ? x - 1 : x; };
    Ribbon out = r;
    out.body.n_vertices = r.body.n_vertices - 1;
    out.body.root = vm(r.body.root);
    out.body.edges.clear();
    for (int i = 0; i < (int)r.body.edges.size(); ++i)
        if (i != edge)
            out.body.edges.push_back(
                {vm(r.body.edges[i].src), vm(r.body.edges[i].dst), r.body.edges[i].framing});
    for (Face& f : out.body.faces)
        for (auto& slot : f.slots) slot.edge = em(slot.edge);
    for (auto& v : out.source_vertices) v = vm(v);
    for (auto& v : out.target_vertices) v = vm(v);
    for (auto& le : out.source_edges) le = em(le);
    for (auto& le : out.target_edges) le = em(le);
    for (Marking& m : out.markings) {
        std::vector<EdgeRef> fresh;
        for (EdgeRef ref : m.path)
            if (ref.edge != edge) fresh.push_back({em(ref.edge), ref.sign});
        m.path = std::move(fresh);
    }
    std::erase_if(out.markings, [](const Marking& m) { return m.path.empty(); });
    return out;
}

// ---------------------------------------------------------------------------
// generators

Ribbon identity_cylinder(const BoundaryGraph& b) {
    Ribbon out;
    out.source = b;
    out.target = b;
    out.body.n_vertices = b.n_vertices;
    out.body.edges = b.edges;
    out.body.root = 0;
    out.source_vertices.resize(b.n_vertices);
    std::iota(out.source_vertices.begin(), out.source_vertices.end(), 0);
    out.target_vertices = out.source_vertices;
    out.source_edges.resize(b.edges.size());
    std::iota(out.source_edges.begin(), out.source_edges.end(), 0);
    out.target_edges = out.source_edges;
    return out;
}

Ribbon sheet_cylinder(const BoundaryGraph& b) {
    int n = b.n_vertices;
    Ribbon out;
    out.source = b;
    out.target = b;
    out.body.n_vertices = 2 * n;
    out.body.root = 0;
    for (int v = 0; v < n; ++v) out.body.edges.push_back({v, n + v, +1});  // verticals
    for (int e = 0; e < (int)b.edges.size(); ++e) {
        const auto& ge = b.edges[e];
        int bottom = (int)out.body.edges.size();
        out.body.edges.push_back({ge.src, ge.dst, ge.framing});
        out.body.edges.push_back({n + ge.src, n + ge.dst, ge.framing});  // top
        out.body.edges.push_back({ge.src, n + ge.dst, +1});              // diagonal
        int top = bottom + 1, diag = bottom + 2;
        out.body.faces.push_back(
            {{EdgeRef{bottom, +1}, EdgeRef{diag, +1}, EdgeRef{ge.dst, +1}}, +1});
        out.body.faces.push_back(
            {{EdgeRef{ge.src, +1}, EdgeRef{diag, +1}, EdgeRef{top, +1}}, +1});
        out.source_edges.push_back(bottom);
        out.target_edges.push_back(top);
    }
    out.source_vertices.resize(n);
    std::iota(out.source_vertices.begin(), out.source_vertices.end(), 0);
    out.target_vertices.resize(n);
    std::iota(out.target_vertices.begin(), out.target_vertices.end(), n);
    for (int v : b.incoming) out.markings.push_back({{{v, +1}}, +1});
    for (int v : b.outgoing) out.markings.push_back({{{v, +1}}, -1});
    return out;
}

Ribbon empty_ribbon() { return {}; }

Ribbon b_plus() { return sheet_cylinder(b_plus_graph()); }
Ribbon b_times() { return sheet_cylinder(b_times_graph()); }

namespace {

// one triangle x, y, apex with the arc x -> y as its source edge
Ribbon fold_triangle(bool birth) {
    Ribbon out;
    out.body.n_vertices = 3;
    out.body.root = 0;
    out.body.edges = {{0, 1, +1}, {0, 2, +1}, {1, 2, +1}};
    out.body.faces.push_back({{EdgeRef{0, +1}, EdgeRef{1, +1}, EdgeRef{2, +1}}, +1});
    Marking fold{{{1, +1}, {2, -1}}, birth ? -1 : +1};
    out.markings.push_back(fold);
    if (birth) {
        out.target = cup_graph();
        out.target_vertices = {0, 1};
        out.target_edges = {0};
    } else {
        out.source = cap_graph();
        out.source_vertices = {0, 1};
        out.source_edges = {0};
    }
    return out;
}

}  // namespace

Ribbon cup() { return fold_triangle(true); }
Ribbon cap() { return fold_triangle(false); }

Ribbon house() {
    Ribbon out;
    out.body.n_vertices = 3;
    out.body.root = 0;
    out.body.edges = {{0, 1, +1}, {0, 1, -1}, {0, 2, +1}, {1, 2, +1}};
    out.body.faces.push_back({{EdgeRef{0, +1}, EdgeRef{2, +1}, EdgeRef{3, +1}}, +1});
    out.body.faces.push_back({{EdgeRef{1, +1}, EdgeRef{2, +1}, EdgeRef{3, +1}}, -1});
    out.source = circle_graph();
    out.source_vertices = {0, 1};
    out.source_edges = {0, 1};
    return out;
}

Ribbon saddle() {
    Ribbon out;
    // boundary octagon i1 o1 x1 y1 o2 i2 y2 x2, coned from an apex
    out.body.n_vertices = 9;
    out.body.root = 0;
    out.body.edges = {
        {0, 1, +1},  // s1
        {1, 2, +1},  // side o1 - x1
        {2, 3, +1},  // m1
        {3, 4, +1},  // side y1 - o2
        {5, 4, +1},  // s2
        {5, 6, +1},  // side i2 - y2
        {7, 6, +1},  // m2
        {7, 0, +1},  // side x2 - i1
    };
    for (int v = 0; v < 8; ++v) out.body.edges.push_back({v, 8, +1});  // spokes
    EdgeRef cycle[8] = {{0, +1}, {1, +1}, {2, +1}, {3, +1}, {4, -1}, {5, +1}, {6, -1}, {7, +1}};
    for (int s = 0; s < 8; ++s)
        out.body.faces.push_back({{cycle[s], EdgeRef{8 + s, +1}, EdgeRef{8 + (s + 1) % 8, +1}}, +1});

    BoundaryGraph b0;  // c_- (outgoing fold) next to c_+ (incoming fold)
    b0.n_vertices = 4;
    b0.edges = {{0, 1, +1}, {2, 3, +1}};
    b0.outgoing = {0, 1};
    b0.incoming = {2, 3};
    out.source = b0;
    out.source_vertices = {2, 3, 7, 6};
    out.source_edges = {2, 6};
    out.target = two_strands();
    out.target_vertices = {0, 1, 5, 4};
    out.target_edges = {0, 4};
    out.markings = {
        {{{1, -1}}, -1},  // x1 -> o1
        {{{3, +1}}, -1},  // y1 -> o2
        {{{5, -1}}, +1},  // y2 -> i2
        {{{7, +1}}, +1},  // x2 -> i1
    };
    return out;
}

Ribbon cusp() {
    Ribbon out;
    // boundary pentagon s y1 o i y2, coned from an apex
    out.body.n_vertices = 6;
    out.body.root = 0;
    out.body.edges = {
        {0, 1, +1},  // m1
        {1, 2, +1},  // side y1 - o
        {3, 2, +1},  // s1
        {4, 3, +1},  // side y2 - i
        {0, 4, +1},  // m2
    };
    for (int v = 0; v < 5; ++v) out.body.edges.push_back({v, 5, +1});  // spokes
    EdgeRef cycle[5] = {{0, +1}, {1, +1}, {2, -1}, {3, -1}, {4, -1}};
    for (int s = 0; s < 5; ++s)
        out.body.faces.push_back({{cycle[s], EdgeRef{5 + s, +1}, EdgeRef{5 + (s + 1) % 5, +1}}, +1});

    BoundaryGraph b0;  // c_- wedged onto c_+ at one endpoint
    b0.n_vertices = 3;
    b0.edges = {{0, 1, +1}, {0, 2, +1}};
    b0.outgoing = {1};
    b0.incoming = {2};
    out.source = b0;
    out.source_vertices = {0, 1, 4};
    out.source_edges = {0, 4};
    out.target = one_strand();
    out.target_vertices = {3, 2};
    out.target_edges = {2};
    out.markings = {
        {{{1, +1}}, -1},  // y1 -> o
        {{{3, +1}}, +1},  // y2 -> i
    };
    return out;
}

Ribbon fold_crossing() {
    Ribbon out = sheet_cylinder(b_plus_graph());
    // cap sheet under the outgoing legs, cup sheet over the incoming legs:
    // the strand pair slides across the fold from one side to the other
    int c1 = out.body.n_vertices, c2 = c1 + 1;
    out.body.n_vertices += 2;
    int cap_e = (int)out.body.edges.size();
    out.body.edges.push_back({4, 5, +1});    // cap arc between b1, b2 (bottom)
    out.body.edges.push_back({4, c1, +1});   // cap fold lines
    out.body.edges.push_back({5, c1, +1});
    int cup_e = (int)out.body.edges.size();
    out.body.edges.push_back({6, 7, +1});    // cup arc between a1, a2 (top)
    out.body.edges.push_back({6, c2, +1});   // cup fold lines
    out.body.edges.push_back({7, c2, +1});
    out.body.faces.push_back(
        {{EdgeRef{cap_e, +1}, EdgeRef{cap_e + 1, +1}, EdgeRef{cap_e + 2, +1}}, +1});
    out.body.faces.push_back(
        {{EdgeRef{cup_e, +1}, EdgeRef{cup_e + 1, +1}, EdgeRef{cup_e + 2, +1}}, +1});

    BoundaryGraph b0 = b_plus_graph();
    b0.edges.push_back({4, 5, +1});
    b0.outgoing.clear();  // the outgoing legs end on the cap fold
    out.source = b0;
    out.source_edges.push_back(cap_e);
    BoundaryGraph b1 = b_plus_graph();
    b1.edges.push_back({0, 1, +1});
    b1.incoming.clear();  // the incoming legs start on the cup fold
    out.target = b1;
    out.target_edges.push_back(cup_e);
    // the sheet verticals keep marking the strand sides; add the fold lines
    out.markings.push_back({{{cap_e + 1, +1}, {cap_e + 2, -1}}, +1});
    out.markings.push_back({{{cup_e + 1, +1}, {cup_e + 2, -1}}, -1});
    return out;
}

Ribbon reidemeister(int which) {
    BoundaryGraph g;
    switch (which) {
        case 1: {
            // kinked strand: i -> u -> w with the kink loop w -> u
            g.n_vertices = 4;
            g.edges = {{0, 1, +1}, {1, 2, +1}, {2, 1, +1}, {2, 3, +1}};
            g.incoming = {0};
            g.outgoing = {3};
            break;
        }
        case 2: {
            // two strands crossing twice
            g.n_vertices = 8;
            g.edges = {{0, 2, +1}, {1, 2, +1}, {2, 3, +1}, {3, 4, +1}, {3, 4, -1},
                       {4, 5, +1}, {5, 6, +1}, {5, 7, +1}};
            g.incoming = {0, 1};
            g.outgoing = {6, 7};
            break;
        }
        case 3: {
            // three strands, three crossings
            g.n_vertices = 12;
            g.edges = {{0, 3, +1}, {1, 3, +1}, {3, 4, +1},  // first crossing
                       {4, 7, +1}, {4, 5, +1}, {2, 5, +1},  // strand 3 joins
                       {5, 6, +1}, {6, 7, +1}, {6, 11, +1},
                       {7, 8, +1}, {8, 9, +1}, {8, 10, +1}};
            g.incoming = {0, 1, 2};
            g.outgoing = {9, 10, 11};
            break;
        }
        default:
            throw Error("ribbon", "generator", "reidemeister moves are numbered 1, 2, 3");
    }
    return sheet_cylinder(g);
}

// ---------------------------------------------------------------------------
// comparison

bool same_presentation(const Ribbon& a, const Ribbon& b) { return a == b; }

namespace {

struct IsoState {
    std::vector<int> v_ab, v_ba;  // body vertex maps, -1 = unset
    std::vector<int> e_ab, e_ba;  // body edge maps
    std::vector<int> f_ab, f_ba;
};

bool bind_vertex(IsoState& st, int va, int vb) {
    if (st.v_ab[va] >= 0) return st.v_ab[va] == vb;
    if (st.v_ba[vb] >= 0) return false;
    st.v_ab[va] = vb;
    st.v_ba[vb] = va;
    return true;
}

bool bind_edge(const TwoComplex& A, const TwoComplex& B, IsoState& st, int ea, int eb) {
    if (st.e_ab[ea] >= 0) return st.e_ab[ea] == eb;
    if (st.e_ba[eb] >= 0) return false;
    const auto& x = A.edges[ea];
    const auto& y = B.edges[eb];
    if (x.framing != y.framing) return false;
    IsoState save = st;
    st.e_ab[ea] = eb;
    st.e_ba[eb] = ea;
    if (bind_vertex(st, x.src, y.src) && bind_vertex(st, x.dst, y.dst)) return true;
    st = save;
    return false;
}

bool match_faces(const Ribbon& a, const Ribbon& b, IsoState& st, int fa);

bool try_face(const Ribbon& a, const Ribbon& b, IsoState& st, int fa, int fb) {
    const Face& x = a.body.faces[fa];
    const Face& y = b.body.faces[fb];
    if (x.eps != y.eps) return false;
    IsoState save = st;
    st.f_ab[fa] = fb;
    st.f_ba[fb] = fa;
    for (int s = 0; s < 3; ++s) {
        if (x.slots[s].sign != y.slots[s].sign ||
            !bind_edge(a.body, b.body, st, x.slots[s].edge, y.slots[s].edge)) {
            st = save;
            return false;
        }
    }
    if (match_faces(a, b, st, fa + 1)) return true;
    st = save;
    return false;
}

bool finish_cells(const Ribbon& a, const Ribbon& b, IsoState& st);

bool match_faces(const Ribbon& a, const Ribbon& b, IsoState& st, int fa) {
    if (fa == (int)a.body.faces.size()) return finish_cells(a, b, st);
    for (int fb = 0; fb < (int)b.body.faces.size(); ++fb)
        if (st.f_ba[fb] < 0 && try_face(a, b, st, fa, fb)) return true;
    return false;
}

bool verify_structure(const Ribbon& a, const Ribbon& b, const IsoState& st);

bool match_edges(const Ribbon& a, const Ribbon& b, IsoState& st, int ea) {
    while (ea < (int)a.body.edges.size() && st.e_ab[ea] >= 0) ++ea;
    if (ea == (int)a.body.edges.size()) {
        // leftover isolated vertices: any bijection works structurally, but
        // the layer maps must correspond; bind via the layer images first
        IsoState save = st;
        for (size_t i = 0; i < a.source_vertices.size() && i < b.source_vertices.size(); ++i)
            bind_vertex(st, a.source_vertices[i], b.source_vertices[i]);
        for (size_t i = 0; i < a.target_vertices.size() && i < b.target_vertices.size(); ++i)
            bind_vertex(st, a.target_vertices[i], b.target_vertices[i]);
        std::vector<int> free_b;
        for (int v = 0; v < (int)st.v_ba.size(); ++v)
            if (st.v_ba[v] < 0) free_b.push_back(v);
        size_t next = 0;
        for (int v = 0; v < (int)st.v_ab.size(); ++v)
            if (st.v_ab[v] < 0) {
                if (next == free_b.size()) break;
                bind_vertex(st, v, free_b[next++]);
            }
        if (verify_structure(a, b, st)) return true;
        st = save;
        return false;
    }
    for (int eb = 0; eb < (int)b.body.edges.size(); ++eb) {
        if (st.e_ba[eb] >= 0) continue;
        IsoState save = st;
        if (bind_edge(a.body, b.body, st, ea, eb) && match_edges(a, b, st, ea + 1)) return true;
        st = save;
    }
    return false;
}

bool finish_cells(const Ribbon& a, const Ribbon& b, IsoState& st) {
    return match_edges(a, b, st, 0);
}

// Given a full body correspondence, check layers, anchors and markings.
bool verify_structure(const Ribbon& a, const Ribbon& b, const IsoState& st) {
    auto layer_ok = [&](const BoundaryGraph& ga, const std::vector<int>& va,
                        const std::vector<int>& ea, const BoundaryGraph& gb,
                        const std::vector<int>& vb, const std::vector<int>& eb) {
        if (ga.n_vertices != gb.n_vertices || ga.edges.size() != gb.edges.size()) return false;
        // graph edge correspondence forced by the body edge map
        std::vector<int> gmap(ga.edges.size(), -1);   // a-graph edge -> b-graph edge
        std::vector<int> gvmap(ga.n_vertices, -1);    // a-graph vertex -> b-graph vertex
        std::vector<char> used(gb.edges.size(), 0);
        for (size_t i = 0; i < ea.size(); ++i) {
            int want = st.e_ab[ea[i]];
            int found = -1;
            for (size_t j = 0; j < eb.size(); ++j)
                if (!used[j] && eb[j] == want) {
                    found = (int)j;
                    break;
                }
            if (found < 0) return false;
            used[found] = 1;
            gmap[i] = found;
        }
        auto bind = [&](int x, int y) {
            if (gvmap[x] >= 0) return gvmap[x] == y;
            gvmap[x] = y;
            return true;
        };
        for (size_t i = 0; i < gmap.size(); ++i) {
            const auto& xe = ga.edges[i];
            const auto& ye = gb.edges[gmap[i]];
            if (xe.framing != ye.framing) return false;
            if (!bind(xe.src, ye.src) || !bind(xe.dst, ye.dst)) return false;
        }
        for (int v = 0; v < ga.n_vertices; ++v) {
            int body_b = st.v_ab[va[v]];
            if (gvmap[v] < 0) {
                for (int w = 0; w < gb.n_vertices; ++w)
                    if (vb[w] == body_b) {
                        gvmap[v] = w;
                        break;
                    }
                if (gvmap[v] < 0) return false;
            }
            if (vb[gvmap[v]] != body_b) return false;
        }
        auto anchors_match = [&](const std::vector<int>& xa, const std::vector<int>& xb) {
            if (xa.size() != xb.size()) return false;
            std::set<int> want(xb.begin(), xb.end());
            for (int v : xa)
                if (!want.count(gvmap[v])) return false;
            return true;
        };
        return anchors_match(ga.incoming, gb.incoming) && anchors_match(ga.outgoing, gb.outgoing);
    };
    if (!layer_ok(a.source, a.source_vertices, a.source_edges, b.source, b.source_vertices,
                  b.source_edges))
        return false;
    if (!layer_ok(a.target, a.target_vertices, a.target_edges, b.target, b.target_vertices,
                  b.target_edges))
        return false;

    auto canonical = [&](const Marking& m, bool mapped) {
        std::vector<std::pair<int, int>> path;
        for (EdgeRef r : m.path)
            path.push_back({mapped ? st.e_ab[r.edge] : r.edge, r.sign});
        std::vector<std::pair<int, int>> rev;
        for (auto it = path.rbegin(); it != path.rend(); ++it) rev.push_back({it->first, -it->second});
        if (rev < path) path = rev;  // direction-insensitive fingerprint
        return std::make_pair(m.sign, path);
    };
    std::multiset<std::pair<int, std::vector<std::pair<int, int>>>> ma, mb;
    for (const Marking& m : a.markings) ma.insert(canonical(m, true));
    for (const Marking& m : b.markings) mb.insert(canonical(m, false));
    return ma == mb;
}

}  // namespace

bool ribbon_isomorphic(const Ribbon& a, const Ribbon& b) {
    if (a.body.n_vertices != b.body.n_vertices || a.body.edges.size() != b.body.edges.size() ||
        a.body.faces.size() != b.body.faces.size() || a.markings.size() != b.markings.size() ||
        a.twist != b.twist)
        return false;
    IsoState st;
    st.v_ab.assign(a.body.n_vertices, -1);
    st.v_ba.assign(b.body.n_vertices, -1);
    st.e_ab.assign(a.body.edges.size(), -1);
    st.e_ba.assign(b.body.edges.size(), -1);
    st.f_ab.assign(a.body.faces.size(), -1);
    st.f_ba.assign(b.body.faces.size(), -1);
    return match_faces(a, b, st, 0);
}

}  // namespace twohol
