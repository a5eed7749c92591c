#include "twohol/group_core.hpp"

#include <algorithm>
#include <array>

namespace twohol {

namespace {

bool table_well_formed(const FiniteGroup& G, std::vector<Violation>& out) {
    bool ok = true;
    if (G.order <= 0) {
        out.push_back({"structure", {}, "order must be positive"});
        return false;
    }
    if ((int)G.mul.size() != G.order) {
        out.push_back({"structure", {}, "mul table has wrong number of rows"});
        ok = false;
    }
    for (int a = 0; a < (int)G.mul.size(); ++a) {
        if ((int)G.mul[a].size() != G.order) {
            out.push_back({"structure", {a}, "mul row has wrong length"});
            ok = false;
            continue;
        }
        for (int b = 0; b < G.order; ++b) {
            int c = G.mul[a][b];
            if (c < 0 || c >= G.order) {
                out.push_back({"structure", {a, b}, "mul entry out of range"});
                ok = false;
            }
        }
    }
    return ok;
}

}  // namespace

std::vector<Violation> FiniteGroup::validate() const {
    std::vector<Violation> v;
    if (!table_well_formed(*this, v)) return v;
    for (int a = 0; a < order; ++a) {
        if (mul[0][a] != a || mul[a][0] != a)
            v.push_back({"identity", {a}, "index 0 is not a two-sided identity"});
    }
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            for (int c = 0; c < order; ++c)
                if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) {
                    v.push_back({"associativity", {a, b, c}, "(ab)c != a(bc)"});
                    return v;  // one witness suffices; tables get large
                }
    for (int a = 0; a < order; ++a) {
        bool has_inverse = false;
        for (int b = 0; b < order; ++b)
            if (mul[a][b] == 0 && mul[b][a] == 0) has_inverse = true;
        if (!has_inverse) v.push_back({"inverses", {a}, "element has no two-sided inverse"});
    }
    if (!inv.empty()) {
        if ((int)inv.size() != order) {
            v.push_back({"structure", {}, "inv table has wrong length"});
        } else {
            for (int a = 0; a < order; ++a)
                if (inv[a] < 0 || inv[a] >= order || mul[a][inv[a]] != 0 || mul[inv[a]][a] != 0)
                    v.push_back({"inverses", {a}, "stored inverse is wrong"});
        }
    }
    return v;
}

void FiniteGroup::finalize() {
    inv.assign(order, -1);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            if (mul[a][b] == 0 && mul[b][a] == 0) inv[a] = b;
    for (int a = 0; a < order; ++a)
        if (inv[a] < 0) throw Error("group_core", "group_tables", "element without inverse");
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(int n) {
    FiniteGroup G;
    G.order = n;
    G.mul.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) G.mul[a][b] = (a + b) % n;
    G.finalize();
    return G;
}

FiniteGroup FiniteGroup::symmetric3() {
    // Permutations of {0,1,2}; identity first, then the two 3-cycles, then the
    // transpositions.  Composition convention: (p*q)(i) = p(q(i)).
    static const std::array<std::array<int, 3>, 6> perms = {{
        {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0},
    }};
    auto index_of = [&](const std::array<int, 3>& p) {
        for (int i = 0; i < 6; ++i)
            if (perms[i] == p) return i;
        return -1;
    };
    FiniteGroup G;
    G.order = 6;
    G.mul.assign(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            std::array<int, 3> c;
            for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
            G.mul[a][b] = index_of(c);
        }
    G.finalize();
    return G;
}

std::vector<Violation> CrossedModule::validate() const {
    std::vector<Violation> v = base.validate();
    {
        auto fv = fiber.validate();
        v.insert(v.end(), fv.begin(), fv.end());
    }
    if (!v.empty()) return v;  // group tables must be sane first

    const int n = base.order, m = fiber.order;
    if ((int)t.size() != m) {
        v.push_back({"structure", {}, "t has wrong length"});
        return v;
    }
    for (int h = 0; h < m; ++h)
        if (t[h] < 0 || t[h] >= n) {
            v.push_back({"structure", {h}, "t entry out of range"});
            return v;
        }
    if ((int)act.size() != n) {
        v.push_back({"structure", {}, "act has wrong number of rows"});
        return v;
    }
    for (int g = 0; g < n; ++g) {
        if ((int)act[g].size() != m) {
            v.push_back({"structure", {g}, "act row has wrong length"});
            return v;
        }
        for (int h = 0; h < m; ++h)
            if (act[g][h] < 0 || act[g][h] >= m) {
                v.push_back({"structure", {g, h}, "act entry out of range"});
                return v;
            }
    }

    // t is a homomorphism.
    if (t[0] != 0) v.push_back({"t_homomorphism", {0}, "t(1) != 1"});
    for (int h = 0; h < m; ++h)
        for (int k = 0; k < m; ++k)
            if (t[fiber.op(h, k)] != base.op(t[h], t[k]))
                v.push_back({"t_homomorphism", {h, k}, "t(hk) != t(h)t(k)"});

    // act is a left action by automorphisms.
    for (int h = 0; h < m; ++h)
        if (act[0][h] != h) v.push_back({"action_identity", {h}, "1 |> h != h"});
    for (int g = 0; g < n; ++g) {
        if (act[g][0] != 0) v.push_back({"action_automorphism", {g, 0}, "g |> 1 != 1"});
        for (int h = 0; h < m; ++h)
            for (int k = 0; k < m; ++k)
                if (act[g][fiber.op(h, k)] != fiber.op(act[g][h], act[g][k]))
                    v.push_back({"action_automorphism", {g, h, k}, "g |> (hk) != (g|>h)(g|>k)"});
    }
    for (int g = 0; g < n; ++g)
        for (int g2 = 0; g2 < n; ++g2)
            for (int h = 0; h < m; ++h)
                if (act[base.op(g, g2)][h] != act[g][act[g2][h]])
                    v.push_back({"action_composition", {g, g2, h}, "(gg') |> h != g |> (g' |> h)"});

    // Equivariance: t(g |> h) = g t(h) g^-1.
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < m; ++h)
            if (t[act[g][h]] != base.op(base.op(g, t[h]), base.inverse(g)))
                v.push_back({"equivariance", {g, h}, "t(g|>h) != g t(h) g^-1"});

    // Peiffer: t(h) |> h' = h h' h^-1.
    for (int h = 0; h < m; ++h)
        for (int k = 0; k < m; ++k)
            if (act[t[h]][k] != fiber.op(fiber.op(h, k), fiber.inverse(h)))
                v.push_back({"peiffer", {h, k}, "t(h) |> h' != h h' h^-1"});

    return v;
}

std::vector<int> CrossedModule::kernel_t() const {
    std::vector<int> ker;
    for (int h = 0; h < fiber.order; ++h)
        if (t[h] == 0) ker.push_back(h);
    return ker;
}

std::vector<int> CrossedModule::image_t() const {
    std::vector<char> seen(base.order, 0);
    for (int h = 0; h < fiber.order; ++h) seen[t[h]] = 1;
    std::vector<int> im;
    for (int g = 0; g < base.order; ++g)
        if (seen[g]) im.push_back(g);
    return im;
}

int CrossedModule::coimage_order() const { return base.order / (int)image_t().size(); }

TwoGroupElement identity_arrow(int g) { return {0, g}; }

int source(const CrossedModule&, TwoGroupElement x) { return x.g; }

int target(const CrossedModule& cm, TwoGroupElement x) { return cm.base.op(cm.tmap(x.h), x.g); }

TwoGroupElement horizontal_mult(const CrossedModule& cm, TwoGroupElement x, TwoGroupElement y) {
    return {cm.fiber.op(x.h, cm.action(x.g, y.h)), cm.base.op(x.g, y.g)};
}

TwoGroupElement horizontal_inv(const CrossedModule& cm, TwoGroupElement x) {
    int gi = cm.base.inverse(x.g);
    return {cm.action(gi, cm.fiber.inverse(x.h)), gi};
}

TwoGroupElement vertical_compose(const CrossedModule& cm, TwoGroupElement x, TwoGroupElement y) {
    if (source(cm, y) != target(cm, x))
        throw Error("group_core", "composable", "vertical_compose: source(y) != target(x)");
    return {cm.fiber.op(y.h, x.h), x.g};
}

TwoGroupElement vertical_inv(const CrossedModule& cm, TwoGroupElement x) {
    return {cm.fiber.inverse(x.h), target(cm, x)};
}

bool check_interchange(const CrossedModule& cm) {
    const int n = cm.base.order, m = cm.fiber.order;
    // Quadruples (x o y) and (x' o y') with x, x' free and y, y' determined up
    // to their fiber parts by composability.
    for (int gx = 0; gx < n; ++gx)
        for (int hx = 0; hx < m; ++hx)
            for (int hy = 0; hy < m; ++hy)
                for (int gx2 = 0; gx2 < n; ++gx2)
                    for (int hx2 = 0; hx2 < m; ++hx2)
                        for (int hy2 = 0; hy2 < m; ++hy2) {
                            TwoGroupElement x{hx, gx}, x2{hx2, gx2};
                            TwoGroupElement y{hy, target(cm, x)}, y2{hy2, target(cm, x2)};
                            TwoGroupElement lhs = horizontal_mult(
                                cm, vertical_compose(cm, x, y), vertical_compose(cm, x2, y2));
                            TwoGroupElement rhs = vertical_compose(
                                cm, horizontal_mult(cm, x, x2), horizontal_mult(cm, y, y2));
                            if (lhs != rhs) return false;
                        }
    return true;
}

TwoGroupElement whisker(const CrossedModule& cm, int a, TwoGroupElement x) {
    return {cm.action(a, x.h), cm.base.op(cm.base.op(a, x.g), cm.base.inverse(a))};
}

CrossedModule cm_triv() {
    CrossedModule cm;
    cm.base = FiniteGroup::trivial();
    cm.fiber = FiniteGroup::trivial();
    cm.t = {0};
    cm.act = {{0}};
    return cm;
}

namespace {

CrossedModule abelian_cm(FiniteGroup G, FiniteGroup H, std::vector<int> t) {
    CrossedModule cm;
    cm.base = std::move(G);
    cm.fiber = std::move(H);
    cm.t = std::move(t);
    cm.act.assign(cm.base.order, {});
    for (int g = 0; g < cm.base.order; ++g) {
        cm.act[g].resize(cm.fiber.order);
        for (int h = 0; h < cm.fiber.order; ++h) cm.act[g][h] = h;
    }
    return cm;
}

}  // namespace

CrossedModule cm_id2() { return abelian_cm(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2), {0, 1}); }

CrossedModule cm_02() { return abelian_cm(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2), {0, 0}); }

CrossedModule cm_z2z4() { return abelian_cm(FiniteGroup::cyclic(4), FiniteGroup::cyclic(2), {0, 2}); }

CrossedModule cm_s3() {
    // G = S3 with the table of FiniteGroup::symmetric3 (indices 1,2 are the
    // 3-cycles).  H = A3 = {0,1,2} included as those indices; action is
    // conjugation.
    CrossedModule cm;
    cm.base = FiniteGroup::symmetric3();
    cm.fiber = FiniteGroup::cyclic(3);
    // A3 as a subgroup of S3: fiber index k corresponds to base index k for
    // k in {0,1,2}; cyclic(3) has the same multiplication as the 3-cycles.
    cm.t = {0, 1, 2};
    cm.act.assign(6, std::vector<int>(3));
    for (int g = 0; g < 6; ++g)
        for (int h = 0; h < 3; ++h) {
            int conj = cm.base.op(cm.base.op(g, h), cm.base.inverse(g));
            cm.act[g][h] = conj;  // conj is again a 3-cycle (or identity)
        }
    return cm;
}

CrossedModule cm_discrete(FiniteGroup g) {
    CrossedModule cm;
    cm.base = std::move(g);
    cm.fiber = FiniteGroup::trivial();
    cm.t = {0};
    cm.act.assign(cm.base.order, {0});
    return cm;
}

const std::map<std::string, CrossedModule (*)()>& builtin_crossed_modules() {
    static const std::map<std::string, CrossedModule (*)()> table = {
        {"cm_triv", cm_triv}, {"cm_id2", cm_id2},   {"cm_02", cm_02},
        {"cm_z2z4", cm_z2z4}, {"cm_s3", cm_s3},
    };
    return table;
}

}  // namespace twohol
