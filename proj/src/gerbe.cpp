#include "twohol/gerbe.hpp"

#include <algorithm>

#include "twohol/errors.hpp"

namespace twohol {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

cpp_rational mod1(cpp_rational r) {
    cpp_int n = numerator(r), d = denominator(r);  // d > 0, gcd(n,d)=1
    cpp_int q = n / d;
    if (n < 0 && q * d != n) --q;  // floor division
    return r - cpp_rational(q);
}

}  // namespace

RotationNumber::RotationNumber(cpp_rational r) : v(mod1(std::move(r))) {}

RotationNumber RotationNumber::of(long long p, long long q) {
    if (q == 0) throw Error("polyhedron", "rotation_number", "zero denominator");
    return RotationNumber(cpp_rational(p, q));
}

RotationNumber RotationNumber::operator+(const RotationNumber& o) const {
    return RotationNumber(v + o.v);
}
RotationNumber RotationNumber::operator-(const RotationNumber& o) const {
    return RotationNumber(v - o.v);
}
RotationNumber RotationNumber::operator-() const { return RotationNumber(-v); }

RotationNumber gerbe_delta(const GerbeDatum& s, const Quad& q) {
    auto at = [&](int a, int b, int c) {
        auto it = s.phases.find(Triple{a, b, c});
        if (it == s.phases.end())
            throw Error("polyhedron", "incomplete_datum",
                        "gerbe datum is missing a triple of the quadruple");
        return it->second;
    };
    auto [i, j, k, l] = q;
    return at(j, k, l) - at(i, k, l) + at(i, j, l) - at(i, j, k);
}

bool check_pentagon(const GerbeDatum& s, const std::vector<Quad>& quads) {
    for (const auto& q : quads)
        if (!gerbe_delta(s, q).is_zero()) return false;
    return true;
}

GerbeDatum coboundary(const PhaseCochain& g, const std::vector<Triple>& triples) {
    auto at = [&](int a, int b) {
        auto it = g.find(Pair{a, b});
        return it == g.end() ? RotationNumber{} : it->second;
    };
    GerbeDatum out;
    for (auto [i, j, k] : triples) out.phases[{i, j, k}] = at(j, k) - at(i, k) + at(i, j);
    return out;
}

namespace {

GerbeDatum pointwise_sum(const GerbeDatum& a, const GerbeDatum& b) {
    if (a.phases.size() != b.phases.size())
        throw Error("polyhedron", "incompatible_configuration",
                    "gerbe data live on different configuration sets");
    GerbeDatum out;
    for (const auto& [key, val] : a.phases) {
        auto it = b.phases.find(key);
        if (it == b.phases.end())
            throw Error("polyhedron", "incompatible_configuration",
                        "gerbe data live on different configuration sets");
        out.phases[key] = val + it->second;
    }
    return out;
}

using Mat = std::vector<std::vector<cpp_int>>;

Mat identity(int n) {
    Mat m(n, std::vector<cpp_int>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// U * A * V = S with S diagonal; U, V unimodular.
void smith(Mat a, Mat& u, Mat& s, Mat& v) {
    int rows = (int)a.size(), cols = rows ? (int)a[0].size() : 0;
    u = identity(rows);
    v = identity(cols);
    int t = 0;
    while (t < rows && t < cols) {
        // find a nonzero pivot in the remaining block
        int pr = -1, pc = -1;
        for (int i = t; i < rows && pr < 0; ++i)
            for (int j = t; j < cols; ++j)
                if (a[i][j] != 0) {
                    pr = i;
                    pc = j;
                    break;
                }
        if (pr < 0) break;
        std::swap(a[t], a[pr]);
        std::swap(u[t], u[pr]);
        for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pc]);
        for (int i = 0; i < cols; ++i) std::swap(v[i][t], v[i][pc]);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = t + 1; i < rows; ++i)
                while (a[i][t] != 0) {
                    cpp_int q = a[i][t] / a[t][t];
                    for (int j = 0; j < cols; ++j) a[i][j] -= q * a[t][j];
                    for (int j = 0; j < rows; ++j) u[i][j] -= q * u[t][j];
                    if (a[i][t] != 0) {
                        std::swap(a[i], a[t]);
                        std::swap(u[i], u[t]);
                        dirty = true;
                    }
                }
            for (int j = t + 1; j < cols; ++j)
                while (a[t][j] != 0) {
                    cpp_int q = a[t][j] / a[t][t];
                    for (int i = 0; i < rows; ++i) a[i][j] -= q * a[i][t];
                    for (int i = 0; i < cols; ++i) v[i][j] -= q * v[i][t];
                    if (a[t][j] != 0) {
                        for (int i = 0; i < rows; ++i) std::swap(a[i][j], a[i][t]);
                        for (int i = 0; i < cols; ++i) std::swap(v[i][j], v[i][t]);
                        dirty = true;
                    }
                }
        }
        ++t;
    }
    s = std::move(a);
}

}  // namespace

GerbeDatum gerbe_cup(const GerbeDatum& a, const GerbeDatum& b) { return pointwise_sum(a, b); }
GerbeDatum gerbe_dot(const GerbeDatum& a, const GerbeDatum& b) { return pointwise_sum(a, b); }

std::optional<PhaseCochain> check_gerbe_interchange(const GerbeDatum& cup, const GerbeDatum& dot) {
    if (cup.phases.size() != dot.phases.size())
        throw Error("polyhedron", "incompatible_configuration",
                    "gerbe data live on different configuration sets");

    // Unknowns: one rotation number per pair occurring in some triple.
    std::map<Pair, int> col_of;
    std::vector<Pair> pairs;
    for (const auto& [tr, val] : cup.phases)
        for (Pair pr : {Pair{tr[0], tr[1]}, Pair{tr[0], tr[2]}, Pair{tr[1], tr[2]}})
            if (col_of.emplace(pr, (int)pairs.size()).second) pairs.push_back(pr);

    int rows = (int)cup.phases.size(), cols = (int)pairs.size();
    Mat a(rows, std::vector<cpp_int>(cols, 0));
    std::vector<cpp_rational> d(rows);
    int r = 0;
    for (const auto& [tr, val] : cup.phases) {
        auto it = dot.phases.find(tr);
        if (it == dot.phases.end())
            throw Error("polyhedron", "incompatible_configuration",
                        "gerbe data live on different configuration sets");
        a[r][col_of[{tr[1], tr[2]}]] += 1;
        a[r][col_of[{tr[0], tr[2]}]] -= 1;
        a[r][col_of[{tr[0], tr[1]}]] += 1;
        d[r] = (val - it->second).v;
        ++r;
    }

    Mat u, s, v;
    smith(a, u, s, v);

    std::vector<cpp_rational> ud(rows, 0);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j)
            if (u[i][j] != 0) ud[i] += cpp_rational(u[i][j]) * d[j];

    std::vector<cpp_rational> w(cols, 0);
    for (int i = 0; i < rows; ++i) {
        cpp_int si = (i < cols) ? s[i][i] : cpp_int(0);
        if (si != 0) {
            w[i] = ud[i] / cpp_rational(si);
        } else if (denominator(ud[i]) != 1) {
            return std::nullopt;  // obstruction: this component must be integral
        }
    }

    PhaseCochain gamma;
    for (int j = 0; j < cols; ++j) {
        cpp_rational gj = 0;
        for (int i = 0; i < cols; ++i)
            if (v[j][i] != 0) gj += cpp_rational(v[j][i]) * w[i];
        RotationNumber rn(gj);
        if (!rn.is_zero()) gamma[pairs[j]] = rn;
    }
    return gamma;
}

}  // namespace twohol
