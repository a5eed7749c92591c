#pragma once

#include <functional>
#include <map>
#include <vector>

#include "twohol/complex.hpp"
#include "twohol/group_core.hpp"

namespace twohol {

// Crossed-module decoration of a 2-complex: one base element per edge, one
// fiber element per face.
struct Decoration {
    std::vector<int> edge_hol;  // G-element index per edge
    std::vector<int> face_hol;  // H-element index per face
    bool operator==(const Decoration&) const = default;
    auto operator<=>(const Decoration&) const = default;
};

// Boundary word of face f at its root: w(f) = h_{e1} . h_{e3} . h_{e2}^-1
// with the stored slot signs applied.
int face_word(const CrossedModule& cm, const TwoComplex& c, int f,
              const std::vector<int>& edge_hol);

// True iff t(b_f) = w(f) on every face.  Throws Error("holonomy",
// "incomplete", ...) when the decoration does not cover the complex.
bool is_fake_flat(const CrossedModule& cm, const TwoComplex& c, const Decoration& d);

struct EnumOptions {
    bool allow_interior_fixed = false;  // debug: permit fixing interior edges
};

// Exact number of fake-flat decorations extending the fixed boundary-edge
// assignment.  fixed maps edge index -> G element.
unsigned long long count_fake_flat(const CrossedModule& cm, const TwoComplex& c,
                                   const std::map<int, int>& fixed,
                                   const EnumOptions& opts = {});

// Stream every fake-flat completion, lexicographic in (edge index, element
// index) and then in face fibers (face index, fiber element index).
void enumerate_fake_flat(const CrossedModule& cm, const TwoComplex& c,
                         const std::map<int, int>& fixed,
                         const std::function<void(const Decoration&)>& sink,
                         const EnumOptions& opts = {});

// Holonomy of an edge path (validated to run from start_vertex head-to-tail).
int path_holonomy(const CrossedModule& cm, const TwoComplex& c,
                  const std::vector<EdgeRef>& p, const std::vector<int>& edge_hol,
                  int start_vertex);

// Whisker the whole decoration by the holonomy a = h_p of a path p from the
// root: edges conjugate h_e -> a h_e a^-1, faces act b_f -> a |> b_f.
// Fake-flatness is preserved.  Throws Error("holonomy", "path", ...) if p is
// not a path from the root.
Decoration whisker_decoration(const CrossedModule& cm, const TwoComplex& c,
                              const std::vector<EdgeRef>& p, const Decoration& d);

// Composite 2-holonomy of a disc-like unbroken complex: the horizontal
// product, in source-path order, of the face arrows (b_f, h_{e1(f)})
// whiskered to the root by the source-path prefixes.  Composition reads
// right-to-left, so source(result) is the path-ordered product of the
// decorated source edges.
TwoGroupElement total_surface_holonomy(const CrossedModule& cm, const TwoComplex& c,
                                       const Decoration& d);

// For a closed sphere-like complex: whisker-ordered fiber product of all face
// decorations equals the fiber identity.
bool check_two_flat(const CrossedModule& cm, const TwoComplex& c, const Decoration& d);

}  // namespace twohol
