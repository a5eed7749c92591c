#pragma once

#include <map>
#include <vector>

#include "twohol/complex.hpp"
#include "twohol/group_core.hpp"
#include "twohol/holonomy.hpp"

namespace twohol {

// 2-gauge parameter: a base element a_v per vertex (ordinary gauge) and a
// fiber element gamma_e per edge (surface gauge).
struct GaugeParam {
    std::vector<int> vertex_part;  // a_v
    std::vector<int> edge_part;    // gamma_e
    bool operator==(const GaugeParam&) const = default;
};

// Fiber shift per vertex (secondary / vertical gauge freedom).
struct SecondaryGauge {
    std::vector<int> vertex_part;  // m_v
};

GaugeParam identity_gauge(const TwoComplex& c);

// Throws Error("gauge", "invalid_parameter", ...) when the shapes are wrong
// or an index is out of range.
void validate_gauge(const CrossedModule& cm, const TwoComplex& c, const GaugeParam& z);

// Normalized parameters have t(gamma_e) = a_src^-1 * a_dst on every edge;
// vertical conjugation (apply_secondary) preserves this class.
bool is_normalized_gauge(const CrossedModule& cm, const TwoComplex& c, const GaugeParam& z);

// Product in the gauge group; apply_gauge of the product equals
// apply_gauge(z') after apply_gauge(z).
GaugeParam compose_gauge(const CrossedModule& cm, const TwoComplex& c, const GaugeParam& z,
                         const GaugeParam& zp);

// Horizontal conjugation of a decoration:
//   h_e -> a_src^-1 * t(gamma_e) * h_e * a_dst
//   b_f -> a_root(f)^-1 |> (gamma-word around del f  *  b_f)
// where the gamma-word whiskers each boundary step's gamma by the partial
// old boundary holonomy; this is the unique correction making fake-flatness
// automatic for every parameter.
Decoration apply_gauge(const CrossedModule& cm, const TwoComplex& c, const GaugeParam& z,
                       const Decoration& d);

// Vertical conjugation of a parameter: a'_v = a_v * t(m_v) and
// gamma'_e = m_src^-1 * gamma_e * m_dst.  Preserves normalization.
GaugeParam apply_secondary(const CrossedModule& cm, const TwoComplex& c,
                           const SecondaryGauge& m, const GaugeParam& z);

struct OrbitCensus {
    unsigned long long orbits = 0;
    std::vector<unsigned long long> sizes;  // ascending
};

// Orbits of the fake-flat decorations extending `fixed` under gauge
// parameters that are trivial on every fixed edge and every vertex incident
// to one.
OrbitCensus orbit_count(const CrossedModule& cm, const TwoComplex& c,
                        const std::map<int, int>& fixed);

// True iff every gauge parameter supported on the interior cells leaves
// total_surface_holonomy(c, d) unchanged.  Quantifies over a free on
// vertices all of whose edges are interior and gamma in ker t on interior
// edges (pure conjugation on edges), identity elsewhere; this is the
// subgroup of parameters that fix every boundary decoration.  Requires what
// total_surface_holonomy requires.
bool check_internal_invariance(const CrossedModule& cm, const TwoComplex& c,
                               const Decoration& d);

}  // namespace twohol
