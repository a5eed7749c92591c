#pragma once

#include <array>
#include <optional>
#include <vector>

#include "twohol/group_core.hpp"  // for Violation

namespace twohol {

// Directed reference to an edge: sign +1 means the stored direction, -1 the
// reverse.
struct EdgeRef {
    int edge = -1;
    int sign = +1;
    bool operator==(const EdgeRef&) const = default;
};

// A triangle.  Slot roles are fixed: with corners (a, b, c) determined by the
// slot directions,
//   slot 0 (source edge e1):  a -> b
//   slot 1 (e2):              a -> c
//   slot 2 (e3):              b -> c
// so the boundary loop based at the root a is  e1 . e3 . e2^-1, matching the
// signed chain  e1 - e2 + e3.  The face root is a.
struct Face {
    std::array<EdgeRef, 3> slots;
    int eps = +1;  // orientation
    bool operator==(const Face&) const = default;
};

struct TwoComplex {
    struct Edge {
        int src = 0, dst = 0;
        int framing = +1;
        bool operator==(const Edge&) const = default;
    };

    int n_vertices = 0;
    int root = 0;  // base-point vertex
    std::vector<Edge> edges;
    std::vector<Face> faces;

    bool operator==(const TwoComplex&) const = default;

    // tail/head of a directed slot edge
    int tail(EdgeRef r) const { return r.sign > 0 ? edges[r.edge].src : edges[r.edge].dst; }
    int head(EdgeRef r) const { return r.sign > 0 ? edges[r.edge].dst : edges[r.edge].src; }
    int face_root(int f) const { return tail(faces[f].slots[0]); }

    std::vector<int> edge_face_count() const;
    std::vector<int> faces_of_edge(int e) const;
    bool edge_is_boundary(int e) const;
    std::vector<int> boundary_edges() const;
    bool is_closed() const;
    int euler_characteristic() const { return n_vertices - (int)edges.size() + (int)faces.size(); }
    bool is_connected() const;

    // Structural invariants: slot closure, root coherence, index ranges.
    std::vector<Violation> validate() const;
    bool is_valid() const { return validate().empty(); }

    // A stable fingerprint of the boundary subcomplex (sorted edge endpoint
    // pairs with framings), used to assert moves leave the boundary alone.
    std::vector<std::array<int, 3>> boundary_signature() const;
};

// One identification of two face-slots.  orient +1 glues the slot-role
// directions head-to-head/tail-to-tail, -1 reverses.
struct Gluing {
    int face_a = 0, slot_a = 0;
    int face_b = 0, slot_b = 0;
    int orient = +1;
};
using GluingSet = std::vector<Gluing>;

// Quotient of k disjoint triangles by the gluing set (union-find with
// direction parities).  Throws Error("complex", ...) on inconsistent data.
TwoComplex assemble(int simplices, const GluingSet& gluing);

bool is_regular(const TwoComplex& c);

struct UnbrokenResult {
    TwoComplex complex;          // source slots reassigned, root updated
    std::vector<EdgeRef> path;   // the source path p (|p| <= k-1 edges)
    std::vector<int> face_order; // faces in path order
};

// Re-roots faces (cyclic slot rotation, optionally with an orientation
// reversal -- the path fixes each face's eps) so the distinct directed source
// edges chain head-to-tail into a single path through every face root.
// Throws on disconnected input or when no assignment exists.
UnbrokenResult make_unbroken(const TwoComplex& c);

// Rotate a face's slot roles one step (root a -> root b); orientation kept.
Face rotate_face(const Face& f);
// Reverse a face's orientation in place (root kept, corners b and c swap).
Face reflect_face(const Face& f);

TwoComplex dagger1(const TwoComplex& c);  // reverse orientations + edge directions
TwoComplex dagger2(const TwoComplex& c);  // flip framings

// Pachner 2-2 flip across an interior edge shared by exactly two faces.
TwoComplex pachner_flip(const TwoComplex& c, int edge);
// Pachner 1-3: subdivide face f with one new interior vertex.
TwoComplex pachner_subdivide(const TwoComplex& c, int face);
// Inverse 3-1: merge the 3-face star of an interior degree-3 vertex.
TwoComplex pachner_merge(const TwoComplex& c, int vertex);

// Combinatorial isomorphism up to relabeling of vertices/edges/faces
// (backtracking; intended for desk-scale test inputs).
bool isomorphic(const TwoComplex& a, const TwoComplex& b);

}  // namespace twohol
