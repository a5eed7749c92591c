#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace twohol {

// A phase e^{2*pi*i*v} stored as its exact rotation number v in Q/Z,
// normalized to [0, 1).
struct RotationNumber {
    boost::multiprecision::cpp_rational v = 0;

    RotationNumber() = default;
    RotationNumber(boost::multiprecision::cpp_rational r);
    static RotationNumber of(long long p, long long q);

    RotationNumber operator+(const RotationNumber& o) const;
    RotationNumber operator-(const RotationNumber& o) const;
    RotationNumber operator-() const;
    bool operator==(const RotationNumber&) const = default;
    auto operator<=>(const RotationNumber&) const = default;
    bool is_zero() const { return v == 0; }
};

using Triple = std::array<int, 3>;  // sorted sheet-index triple (triple-point config)
using Pair = std::array<int, 2>;    // sorted sheet-index pair
using Quad = std::array<int, 4>;    // sorted quadruple configuration

// A gerbe datum: one rotation number per local triple-point configuration,
// keyed by the strictly increasing sheet-index triple.
struct GerbeDatum {
    std::map<Triple, RotationNumber> phases;
};

// 1-cochain on sheet-index pairs.
using PhaseCochain = std::map<Pair, RotationNumber>;

// (delta sigma)(ijkl) = s_jkl - s_ikl + s_ijl - s_ijk.
// Throws Error("polyhedron", "incomplete_datum", ...) on a missing triple.
RotationNumber gerbe_delta(const GerbeDatum& s, const Quad& q);

bool check_pentagon(const GerbeDatum& s, const std::vector<Quad>& quads);

// (delta gamma)(ijk) = g_jk - g_ik + g_ij on the given triples.
GerbeDatum coboundary(const PhaseCochain& g, const std::vector<Triple>& triples);

// Decategorified cup and dot: pointwise sums of rotation numbers.  The two
// data must be defined on exactly the same configurations.
GerbeDatum gerbe_cup(const GerbeDatum& a, const GerbeDatum& b);
GerbeDatum gerbe_dot(const GerbeDatum& a, const GerbeDatum& b);

// Find a 1-cochain gamma with cup - dot = delta gamma over Q/Z, if one
// exists.  Solved exactly via the Smith normal form of the integer
// coboundary matrix on the pairs occurring in the configurations.
std::optional<PhaseCochain> check_gerbe_interchange(const GerbeDatum& cup, const GerbeDatum& dot);

}  // namespace twohol
