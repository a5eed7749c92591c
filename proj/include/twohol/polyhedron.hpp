#pragma once

#include "twohol/complex.hpp"

namespace twohol {

enum class EdgeStratum { nonsingular, triple };
enum class VertexStratum { regular, trisection };

// A 2-complex together with its stratification into nonsingular sheets,
// triple edges (interior edges on three faces) and trisection vertices.
struct SimplePolyhedron {
    TwoComplex body;
    std::vector<EdgeStratum> edge_strata;
    std::vector<VertexStratum> vertex_strata;

    std::vector<Violation> validate() const;
    bool is_valid() const { return validate().empty(); }
};

// Recompute the stratification by census:
//  - an edge is a triple edge iff it lies in exactly three faces;
//  - a vertex is a trisection vertex iff at least three triple edges meet
//    there, or its star is the crossing-pattern local model: four incident
//    two-face edges and four incident faces, where exactly two of the edges
//    are shared source-slot edges of their face pairs and the other two are
//    shared e2/e3 edges.
SimplePolyhedron stratify(const TwoComplex& body);

// Does vertex v carry the crossing-pattern (interchanger) local model?
bool is_crossing_center(const TwoComplex& c, int v);

struct SingularGraph {
    std::vector<int> trisection_vertices;
    std::vector<int> triple_edges;
};
SingularGraph singular_graph(const SimplePolyhedron& p);

// Number of complementary regions a closed polyhedron cuts a 3-sphere into:
// 1 + dim of the mod-2 cycle space of the face boundary map.
int complement_regions(const SimplePolyhedron& p);

// ---- builders (stratified, source paths already assigned) ----
SimplePolyhedron triangle();
SimplePolyhedron square();
SimplePolyhedron gamma_plus();
SimplePolyhedron triple_point();
// Eight 2-simplices forming four overlapping crossing patterns that close up
// into a sphere-like polyhedron with four trisection vertices.
SimplePolyhedron coordinate_planes_s3();
// Two triangles with the classical a.b.a^-1.b^-1 square identification.
SimplePolyhedron torus_partition();

// ---- handlebody moves ----
// 0-2: blow a pillow over a nonsingular face: a parallel sheet with the same
// boundary, turning the face boundary into a triple-edge circle.
struct PillowSite {
    int face = -1;
};
// 2-0 site: the pillow sheet to remove.
struct PillowCells {
    int pillow_face = -1;
};
// 2-3: expand a pillow across a face adjacent to its base; a membrane bigon
// (split in two by a new vertex) separates the enlarged bubble into two
// lenses.
struct MembraneSite {
    int pillow_face = -1;
    int across_face = -1;
};
// 3-2 site: the membrane vertex to collapse, and which bubble sheet survives
// as the pillow after the collapse (the other parallel copy is absorbed).
struct MembraneCells {
    int vertex = -1;
    int pillow_face = -1;
};

SimplePolyhedron handle_move_02(const SimplePolyhedron& p, const PillowSite& site);
SimplePolyhedron handle_move_20(const SimplePolyhedron& p, const PillowCells& site);
SimplePolyhedron handle_move_23(const SimplePolyhedron& p, const MembraneSite& site);
SimplePolyhedron handle_move_32(const SimplePolyhedron& p, const MembraneCells& site);

}  // namespace twohol
