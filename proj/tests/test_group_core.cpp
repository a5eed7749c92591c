#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "twohol/group_core.hpp"

using namespace twohol;

namespace {

// Independent re-check of the crossed-module axioms, written as directly as
// possible so it can serve as an oracle against CrossedModule::validate.
bool oracle_is_crossed_module(const CrossedModule& cm) {
    const auto& G = cm.base;
    const auto& H = cm.fiber;
    if (!G.is_valid() || !H.is_valid()) return false;
    if ((int)cm.t.size() != H.order || (int)cm.act.size() != G.order) return false;
    for (auto& row : cm.act)
        if ((int)row.size() != H.order) return false;
    for (int h = 0; h < H.order; ++h)
        if (cm.t[h] < 0 || cm.t[h] >= G.order) return false;
    for (int g = 0; g < G.order; ++g)
        for (int h = 0; h < H.order; ++h)
            if (cm.act[g][h] < 0 || cm.act[g][h] >= H.order) return false;
    for (int h = 0; h < H.order; ++h)
        for (int k = 0; k < H.order; ++k)
            if (cm.t[H.op(h, k)] != G.op(cm.t[h], cm.t[k])) return false;
    for (int h = 0; h < H.order; ++h)
        if (cm.act[0][h] != h) return false;
    for (int g = 0; g < G.order; ++g)
        for (int h = 0; h < H.order; ++h)
            for (int k = 0; k < H.order; ++k)
                if (cm.act[g][H.op(h, k)] != H.op(cm.act[g][h], cm.act[g][k])) return false;
    for (int g = 0; g < G.order; ++g)
        for (int g2 = 0; g2 < G.order; ++g2)
            for (int h = 0; h < H.order; ++h)
                if (cm.act[G.op(g, g2)][h] != cm.act[g][cm.act[g2][h]]) return false;
    for (int g = 0; g < G.order; ++g)
        for (int h = 0; h < H.order; ++h)
            if (cm.t[cm.act[g][h]] != G.op(G.op(g, cm.t[h]), G.inverse(g))) return false;
    for (int h = 0; h < H.order; ++h)
        for (int k = 0; k < H.order; ++k)
            if (cm.act[cm.t[h]][k] != H.op(H.op(h, k), H.inverse(h))) return false;
    return true;
}

std::vector<CrossedModule> all_builtins() {
    std::vector<CrossedModule> v;
    for (auto& [name, make] : builtin_crossed_modules()) v.push_back(make());
    return v;
}

}  // namespace

TEST_CASE("builtin crossed modules validate") {
    for (auto& [name, make] : builtin_crossed_modules()) {
        CAPTURE(name);
        auto cm = make();
        auto v = cm.validate();
        CHECK(v.empty());
        CHECK(oracle_is_crossed_module(cm));
    }
    CHECK(cm_s3().base.order == 6);
    CHECK(cm_s3().fiber.order == 3);
}

TEST_CASE("single-entry corruptions are rejected when an axiom witness exists") {
    std::mt19937 rng(20240817);
    for (auto& [name, make] : builtin_crossed_modules()) {
        CAPTURE(name);
        for (int trial = 0; trial < 200; ++trial) {
            auto cm = make();
            const int n = cm.base.order, m = cm.fiber.order;
            int which = (int)(rng() % 3);
            if (which == 0 && n > 1) {
                int a = (int)(rng() % n), b = (int)(rng() % n);
                cm.base.mul[a][b] = (cm.base.mul[a][b] + 1 + (int)(rng() % (n - 1))) % n;
            } else if (which == 1 && n > 1) {
                int h = (int)(rng() % m);
                cm.t[h] = (cm.t[h] + 1 + (int)(rng() % (n - 1))) % n;
            } else if (m > 1) {
                int g = (int)(rng() % n), h = (int)(rng() % m);
                cm.act[g][h] = (cm.act[g][h] + 1 + (int)(rng() % (m - 1))) % m;
            } else {
                continue;
            }
            bool oracle_ok = oracle_is_crossed_module(cm);
            bool accepted = cm.validate().empty();
            // validate must agree with the oracle in both directions.
            CHECK(accepted == oracle_ok);
        }
    }
}

TEST_CASE("worked arrow products on the builtin modules") {
    // CM_02: (h=1,g=0) * (h=1,g=1) = (h=0,g=1)
    auto cm = cm_02();
    CHECK(horizontal_mult(cm, {1, 0}, {1, 1}) == TwoGroupElement{0, 1});

    // CM_id2: (1,0) o (1,1) = (0,0), an endo-arrow of g=0.
    auto cmi = cm_id2();
    TwoGroupElement x{1, 0};
    CHECK(target(cmi, x) == 1);
    auto z = vertical_compose(cmi, x, {1, 1});
    CHECK(z == TwoGroupElement{0, 0});
    CHECK(target(cmi, z) == 0);
}

TEST_CASE("source and target are multiplicative; units behave") {
    for (auto& cm : all_builtins()) {
        const int n = cm.base.order, m = cm.fiber.order;
        for (int gx = 0; gx < n; ++gx)
            for (int hx = 0; hx < m; ++hx)
                for (int gy = 0; gy < n; ++gy)
                    for (int hy = 0; hy < m; ++hy) {
                        TwoGroupElement x{hx, gx}, y{hy, gy};
                        auto xy = horizontal_mult(cm, x, y);
                        CHECK(source(cm, xy) == cm.base.op(source(cm, x), source(cm, y)));
                        CHECK(target(cm, xy) == cm.base.op(target(cm, x), target(cm, y)));
                    }
        // identity arrows multiply to identity arrows
        for (int g = 0; g < n; ++g)
            for (int g2 = 0; g2 < n; ++g2)
                CHECK(horizontal_mult(cm, identity_arrow(g), identity_arrow(g2)) ==
                      identity_arrow(cm.base.op(g, g2)));
        // horizontal inverses
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < m; ++h) {
                TwoGroupElement x{h, g};
                CHECK(horizontal_mult(cm, x, horizontal_inv(cm, x)) == identity_arrow(0));
                CHECK(horizontal_mult(cm, horizontal_inv(cm, x), x) == identity_arrow(0));
            }
    }
}

TEST_CASE("vertical composition: units, associativity, inverses") {
    for (auto& cm : all_builtins()) {
        const int n = cm.base.order, m = cm.fiber.order;
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < m; ++h) {
                TwoGroupElement x{h, g};
                CHECK(vertical_compose(cm, x, identity_arrow(target(cm, x))) == x);
                CHECK(vertical_compose(cm, identity_arrow(g), x) == x);
                auto xi = vertical_inv(cm, x);
                CHECK(vertical_compose(cm, x, xi) == identity_arrow(g));
                CHECK(vertical_compose(cm, xi, x) == identity_arrow(target(cm, x)));
            }
        // associativity over all composable triples
        for (int g = 0; g < n; ++g)
            for (int h1 = 0; h1 < m; ++h1)
                for (int h2 = 0; h2 < m; ++h2)
                    for (int h3 = 0; h3 < m; ++h3) {
                        TwoGroupElement x{h1, g};
                        TwoGroupElement y{h2, target(cm, x)};
                        TwoGroupElement z{h3, target(cm, y)};
                        CHECK(vertical_compose(cm, vertical_compose(cm, x, y), z) ==
                              vertical_compose(cm, x, vertical_compose(cm, y, z)));
                    }
        // target of a composite is the target of the second factor
        for (int g = 0; g < n; ++g)
            for (int h1 = 0; h1 < m; ++h1)
                for (int h2 = 0; h2 < m; ++h2) {
                    TwoGroupElement x{h1, g};
                    TwoGroupElement y{h2, target(cm, x)};
                    CHECK(target(cm, vertical_compose(cm, x, y)) == target(cm, y));
                }
    }
    CHECK_THROWS_AS(vertical_compose(cm_id2(), {1, 0}, {0, 0}), Error);
}

TEST_CASE("interchange law holds for all builtins") {
    for (auto& [name, make] : builtin_crossed_modules()) {
        CAPTURE(name);
        CHECK(check_interchange(make()));
    }
}

TEST_CASE("whiskering laws") {
    for (auto& cm : all_builtins()) {
        const int n = cm.base.order, m = cm.fiber.order;
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < m; ++h) {
                TwoGroupElement x{h, g};
                CHECK(whisker(cm, 0, x) == x);
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        CHECK(whisker(cm, cm.base.op(a, b), x) ==
                              whisker(cm, a, whisker(cm, b, x)));
            }
        // whisker commutes with vertical composition
        for (int a = 0; a < n; ++a)
            for (int g = 0; g < n; ++g)
                for (int h1 = 0; h1 < m; ++h1)
                    for (int h2 = 0; h2 < m; ++h2) {
                        TwoGroupElement x{h1, g};
                        TwoGroupElement y{h2, target(cm, x)};
                        CHECK(whisker(cm, a, vertical_compose(cm, x, y)) ==
                              vertical_compose(cm, whisker(cm, a, x), whisker(cm, a, y)));
                    }
    }
}

TEST_CASE("im(t) is normal in G") {
    for (auto& cm : all_builtins()) {
        auto im = cm.image_t();
        std::vector<char> in_im(cm.base.order, 0);
        for (int g : im) in_im[g] = 1;
        for (int g = 0; g < cm.base.order; ++g)
            for (int x : im)
                CHECK(in_im[cm.base.op(cm.base.op(g, x), cm.base.inverse(g))]);
    }
}

TEST_CASE("kernel and coimage sizes of the samples") {
    CHECK(cm_triv().kernel_t().size() == 1);
    CHECK(cm_id2().kernel_t().size() == 1);
    CHECK(cm_02().kernel_t().size() == 2);
    CHECK(cm_z2z4().kernel_t().size() == 1);
    CHECK(cm_s3().kernel_t().size() == 1);
    CHECK(cm_triv().coimage_order() == 1);
    CHECK(cm_id2().coimage_order() == 1);
    CHECK(cm_02().coimage_order() == 2);
    CHECK(cm_z2z4().coimage_order() == 2);
    CHECK(cm_s3().coimage_order() == 2);
}
