#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "twohol/gerbe.hpp"
#include "twohol/group_core.hpp"
#include "twohol/polyhedron.hpp"
#include "twohol/ribbon.hpp"

namespace twohol {

using Rational = boost::multiprecision::cpp_rational;

// Amplitude with an exact unit-modulus phase split off; the phase is global
// to a state sum (gerbe phases do not depend on the decoration).
struct Amplitude {
    Rational value = 0;
    RotationNumber phase;
    bool operator==(const Amplitude&) const = default;
};

// Boundary-decoration-indexed amplitude table of a decorated 2-ribbon.
// Decorations of a layer are encoded as mixed-radix indices over the layer's
// graph edges, edge 0 least significant, base |G|.  Missing entries are 0.
struct WilsonState {
    int src_edges = 0;
    int tgt_edges = 0;
    std::map<std::pair<long long, long long>, Rational> table;
    RotationNumber phase;

    bool operator==(const WilsonState&) const = default;
};

// Refinement of a WilsonState by the traversal decoration of one marking
// path (third index, mixed-radix over the path steps).
struct MarkedState {
    int src_edges = 0;
    int tgt_edges = 0;
    int mark_edges = 0;
    std::map<std::tuple<long long, long long, long long>, Rational> table;
    RotationNumber phase;

    bool operator==(const MarkedState&) const = default;
};

// Per-interior-cell weights of the state sum: 1/|G| per edge in no layer,
// 1/|ker t| per face, lambda per interior vertex; cells lying in BOTH layers
// weigh inversely (degenerate cylinders).  lambda = |G / im t|^2; see
// derive_lambda.
Rational lambda_weight(const CrossedModule& cm);

// Recover lambda from scratch by imposing exact 1-3 invariance on the
// triangle/fan pair; throws Error("wilson", "lambda", ...) if no single
// value fits every boundary decoration.
Rational derive_lambda(const CrossedModule& cm);

// Weighted fake-flat sum over the interior of a ribbon, one entry per pair
// of boundary-layer decorations.  A gerbe contributes one phase per triple
// edge of the body and must satisfy the pentagon on the trisection quads
// (else Error("wilson", "inconsistent_gerbe", ...)).
WilsonState evaluate(const CrossedModule& cm, const Ribbon& r,
                     const std::optional<GerbeDatum>& gerbe = std::nullopt);

// All-boundary evaluation of a bare complex: pins the boundary edges
// (ascending index order) as the source space, sums over interior cells.
// Used for triangulation-invariance checks.
WilsonState boundary_table(const CrossedModule& cm, const TwoComplex& c,
                           const std::optional<GerbeDatum>& gerbe = std::nullopt);

// As evaluate, but refined by the traversal decoration of marking `mark`
// (whose cells then carry no interior weights of their own).
MarkedState evaluate_marked(const CrossedModule& cm, const Ribbon& r, int mark,
                            const std::optional<GerbeDatum>& gerbe = std::nullopt);

// (w o wp)(b0, b2) = sum_{b1} weight(B1) w(b0,b1) wp(b1,b2) with
// weight(B1) = |G|^{-#E(B1)} lambda^{#non-anchor vertices of B1}.
// Throws Error("wilson", "composition", ...) on a space mismatch.
WilsonState compose_states(const CrossedModule& cm, const WilsonState& w, const WilsonState& wp,
                           const BoundaryGraph& b1);

// Outer product over a disjoint union of boundary graphs (first factor's
// digits least significant).
WilsonState disjoint_tensor(const CrossedModule& cm, const WilsonState& w, const WilsonState& wp);

// Collar joining two marked states: the triangulated ladder between markings
// of lengths `length` (signs -1 / +1), summed over its rungs and diagonals.
struct CollarSpec {
    int length = 0;
};

// Block product of the two marked tables against the collar kernel; equals
// evaluate(connected_sum(...)) of the underlying ribbons.  Throws
// Error("wilson", "summability", ...) on incompatible marking spaces.
WilsonState tensor_with_collar(const CrossedModule& cm, const MarkedState& wa,
                               const MarkedState& wb, const CollarSpec& h);

// Convenience form computing the marked refinements itself.
WilsonState tensor_with_collar(const CrossedModule& cm, const Ribbon& r, const Ribbon& rp, int neg,
                               int pos);

// <wp, w> = sum_b wp(iota(b)) w(b) with iota the digit-wise group inversion
// induced by the dagger; wp lives on the dagger image spaces (orientation:
// roles swapped; framing: roles kept).  Phases conjugate on wp.
// Throws Error("wilson", "pairing", ...) on a space mismatch.
Amplitude orientation_pairing(const CrossedModule& cm, const WilsonState& wp, const WilsonState& w);
Amplitude framing_pairing(const CrossedModule& cm, const WilsonState& wp, const WilsonState& w);

struct ReflectionReport {
    std::vector<std::vector<Rational>> gram;
    bool is_psd = false;
};

// Gram matrix G_ij = <evaluate(dagger1(R_i)), evaluate(R_j)> for ribbons
// with empty target sharing one source graph; exact PSD decision.
ReflectionReport reflection_positivity_check(const CrossedModule& cm,
                                             const std::vector<Ribbon>& ribbons);

// Exact PSD test for a symmetric rational matrix (pivoted elimination).
bool is_psd_matrix(std::vector<std::vector<Rational>> m);

// Normalized state sum of a closed polyhedron: the raw weighted fake-flat
// count divided by the round-sphere value |G/im t|^5 once per connected
// component, so orientation-doubled complexes evaluate to 1.  Throws
// Error("wilson", "domain", ...) when P has boundary.
Amplitude partition_function(const CrossedModule& cm, const SimplePolyhedron& p,
                             const std::optional<GerbeDatum>& gerbe = std::nullopt);

// Raw (unnormalized) closed state sum, exposed for move-invariance tests.
Amplitude raw_partition_sum(const CrossedModule& cm, const TwoComplex& c,
                            const std::optional<GerbeDatum>& gerbe = std::nullopt);

}  // namespace twohol
