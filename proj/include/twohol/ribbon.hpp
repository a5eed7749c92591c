#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "twohol/complex.hpp"
#include "twohol/polyhedron.hpp"

namespace twohol {

// Directed graph sitting in a boundary layer of a slab, with framed anchor
// vertices where ribbon strands enter (incoming, framing +1) or leave
// (outgoing, framing -1).
struct BoundaryGraph {
    int n_vertices = 0;
    std::vector<TwoComplex::Edge> edges;
    std::vector<int> incoming;  // anchor vertices, framing +1
    std::vector<int> outgoing;  // anchor vertices, framing -1
    std::optional<int> base_point;

    bool operator==(const BoundaryGraph&) const = default;

    std::vector<Violation> validate() const;
    bool is_valid() const { return validate().empty(); }
};

// (n, m) = (#incoming, #outgoing)
std::pair<int, int> signature(const BoundaryGraph& b);

BoundaryGraph disjoint_graph(const BoundaryGraph& a, const BoundaryGraph& b);

// Disjoint union with the listed vertex pairs (index in a, index in b)
// identified; a merged anchor is listed once.
BoundaryGraph wedge(const BoundaryGraph& a, const BoundaryGraph& b,
                    const std::vector<std::pair<int, int>>& identify);

// Identify the endpoints of a non-loop edge and drop it.  Throws
// Error("ribbon", "contraction", ...) on a loop edge.
BoundaryGraph contract_edge(const BoundaryGraph& b, int edge);

// Glue identity strands into the anchors: outgoing anchor i is identified
// with incoming anchor i, and the resulting two-valent joints are smoothed
// (their edge pairs merged).  Requires equal anchor counts.
BoundaryGraph close_off(const BoundaryGraph& b);

// ---- graph builders ----
BoundaryGraph empty_graph();
BoundaryGraph one_strand();     // 1_1: one edge in -> out
BoundaryGraph two_strands();    // 1_2: two parallel strands
BoundaryGraph cup_graph();      // c_-: one arc, both endpoints outgoing
BoundaryGraph cap_graph();      // c_+: one arc, both endpoints incoming
BoundaryGraph circle_graph();   // c_+ wedged onto c_- at both endpoints
BoundaryGraph b_plus_graph();   // 2 -> 2 merge/split (s-channel)
BoundaryGraph b_times_graph();  // 2 -> 2 crossing (t-channel)

// Framed side line of a ribbon: an edge path on the body running between
// anchors (or, past a fold, from a layer vertex).  The sign tags the strand
// as positively (incoming side) or negatively (outgoing side) framed.
struct Marking {
    std::vector<EdgeRef> path;
    int sign = +1;
    bool operator==(const Marking&) const = default;
};

// Marked PL 2-ribbon presentation: a polyhedral body spanning the slab from
// the source layer B0 to the target layer B1.  The layer graphs are embedded
// in the body by the *_vertices / *_edges maps (graph cell index -> body cell
// index); a cell may lie in both layers (degenerate cylinders).  All body
// boundary edges are either layer edges or lie on a marking.
struct Ribbon {
    BoundaryGraph source;  // B0
    BoundaryGraph target;  // B1
    TwoComplex body;
    std::vector<int> source_vertices, target_vertices;
    std::vector<int> source_edges, target_edges;
    std::vector<Marking> markings;
    int twist = 0;  // half-twist marker on disjoint pairs

    // Set by disjoint_union: sizes of the first factor's layer cells, so a
    // later pi_twist can swap the factors (and daggers can carry the split).
    struct PairSplit {
        int src_vertices = 0, src_edges = 0, src_incoming = 0, src_outgoing = 0;
        int tgt_vertices = 0, tgt_edges = 0, tgt_incoming = 0, tgt_outgoing = 0;
        bool operator==(const PairSplit&) const = default;
    };
    std::optional<PairSplit> pair;

    bool operator==(const Ribbon&) const = default;

    SimplePolyhedron body_polyhedron() const { return stratify(body); }
};

// Throws Error("ribbon", ...) when a layer map is inconsistent, a marking is
// not a path, or a boundary edge is left uncovered.
void validate_ribbon(const Ribbon& r);

// n -> m read off the layers: n = #incoming(B0), m = #outgoing(B1).
std::pair<int, int> ribbon_signature(const Ribbon& r);

// Identification f : target(R) -> source(R') for stacking.  edge_map entries
// may carry sign -1 to glue an edge against its stored direction.
struct GraphIso {
    std::vector<int> vertex_map;
    std::vector<EdgeRef> edge_map;
};

// Glue R' on top of R along f (default: identity identification, requiring
// structurally equal interface graphs).  Markings are concatenated through
// the interface anchors.  Throws Error("ribbon", "stacking", ...) on anchor
// count mismatch or a non-isomorphism.
Ribbon stack(const Ribbon& r, const Ribbon& rp);
Ribbon stack(const Ribbon& r, const Ribbon& rp, const GraphIso& f);

// Connected sum along a rectangular collar joining marking `neg` of r (sign
// -1) to marking `pos` of rp (sign +1).  The marking paths must have equal
// length >= 2; their endpoints are identified (the wedge points) and the
// collar ladder fills the strip between the paths.  Boundary graphs are
// wedged at identified same-layer anchors; the consumed markings disappear.
// Throws Error("ribbon", "summability", ...) on sign/length violations.
Ribbon connected_sum(const Ribbon& r, const Ribbon& rp, int neg, int pos);

// Side-by-side pair; records the split so pi_twist can act.
Ribbon disjoint_union(const Ribbon& a, const Ribbon& b);

// Half-rotation of the slab around the pair: swaps the target factors and
// increments the twist marker.  Applying it twice restores the factor order
// but leaves twist = 2: the 2pi-twisted pair is not the untwisted one.
Ribbon pi_twist(const Ribbon& pair);

Ribbon dagger1(const Ribbon& r);  // reverse orientations, swap in/out roles
Ribbon dagger2(const Ribbon& r);  // flip framings

// Contract an interior non-loop body edge (not a layer edge); markings
// through it shorten.  Throws Error("ribbon", "contraction", ...).
Ribbon contract_edge(const Ribbon& r, int edge);

// ---- generators ----
// Degenerate product B x [0,1]: the body is the graph itself, both layers
// mapping onto the same cells.  The strict unit for stack.
Ribbon identity_cylinder(const BoundaryGraph& b);
// Honest product body: one square (two triangles) per graph edge, one
// vertical edge per vertex, anchor verticals marked.
Ribbon sheet_cylinder(const BoundaryGraph& b);

Ribbon empty_ribbon();
Ribbon b_plus();
Ribbon b_times();
Ribbon cup();   // birth of a fold: {} => c_-
Ribbon cap();   // death of a fold: c_+ => {}
Ribbon house();         // death of an unknotted circle
Ribbon saddle();        // c_- v_0 c_+ => 1_2
Ribbon cusp();          // c_- v_1 c_+ => 1_1
Ribbon fold_crossing(); // strand pair sliding across a fold
Ribbon reidemeister(int which);  // 1, 2, 3: cylinders over the move graphs

// Field-wise equality after the construction-order normalization the ops
// already perform.
bool same_presentation(const Ribbon& a, const Ribbon& b);

// Equality up to a relabeling of body cells and graph cells preserving the
// slot structure, layers, anchors and markings (backtracking; desk scale).
bool ribbon_isomorphic(const Ribbon& a, const Ribbon& b);

}  // namespace twohol
