#pragma once

#include <map>
#include <string>
#include <vector>

#include "twohol/errors.hpp"

namespace twohol {

// A reported axiom failure.  `witness` holds the element indices of the
// offending tuple, `axiom` names the violated law.
struct Violation {
    std::string axiom;
    std::vector<int> witness;
    std::string detail;
};

// Finite group as an explicit Cayley table on indices 0..order-1.
// Identity is index 0 by convention; inv is derived from mul.
struct FiniteGroup {
    int order = 1;
    std::vector<std::vector<int>> mul;
    std::vector<int> inv;

    int op(int a, int b) const { return mul[a][b]; }
    int inverse(int a) const { return inv[a]; }

    // Structural problems (non-total / out-of-range tables) are reported with
    // axiom == "structure"; group-law failures with their law name.
    std::vector<Violation> validate() const;
    bool is_valid() const { return validate().empty(); }

    // Recompute inv from mul (throws if mul has no inverses).
    void finalize();

    static FiniteGroup trivial();
    static FiniteGroup cyclic(int n);
    static FiniteGroup symmetric3();
};

// Crossed module (G, H, t : H -> G, act : G x H -> H).
struct CrossedModule {
    FiniteGroup base;   // G
    FiniteGroup fiber;  // H
    std::vector<int> t;                  // indexed by fiber element
    std::vector<std::vector<int>> act;   // act[g][h]

    int tmap(int h) const { return t[h]; }
    int action(int g, int h) const { return act[g][h]; }

    std::vector<Violation> validate() const;
    bool is_valid() const { return validate().empty(); }

    std::vector<int> kernel_t() const;
    std::vector<int> image_t() const;
    // |G / im t|
    int coimage_order() const;
};

// Arrow (h, g) of the strict 2-group H x| G.
//
// Conventions (fixed once, used everywhere):
//   source(h, g) = g
//   target(h, g) = t(h) * g
//   (h, g) * (h', g')  = (h * (g |> h'), g * g')        horizontal
//   (h, g) o (h', t(h) g) = (h' * h, g)                 vertical
// With the stored horizontal product these are the unique source/target and
// vertical fiber order making source and target multiplicative and
// target(x o y) = target(y); validated exhaustively in tests.
struct TwoGroupElement {
    int h = 0;
    int g = 0;
    bool operator==(const TwoGroupElement&) const = default;
    auto operator<=>(const TwoGroupElement&) const = default;
};

TwoGroupElement identity_arrow(int g);
int source(const CrossedModule& cm, TwoGroupElement x);
int target(const CrossedModule& cm, TwoGroupElement x);

TwoGroupElement horizontal_mult(const CrossedModule& cm, TwoGroupElement x, TwoGroupElement y);
TwoGroupElement horizontal_inv(const CrossedModule& cm, TwoGroupElement x);
// Throws Error("group_core", "composable", ...) if source(y) != target(x).
TwoGroupElement vertical_compose(const CrossedModule& cm, TwoGroupElement x, TwoGroupElement y);
TwoGroupElement vertical_inv(const CrossedModule& cm, TwoGroupElement x);

bool check_interchange(const CrossedModule& cm);

// whisker(a, (h,g)) = (a |> h, a g a^-1)
TwoGroupElement whisker(const CrossedModule& cm, int a, TwoGroupElement x);

// Built-in crossed modules.
CrossedModule cm_triv();   // 1 -> 1
CrossedModule cm_id2();    // Z2 -(id)-> Z2, trivial action
CrossedModule cm_02();     // Z2 -(0)-> Z2, trivial action
CrossedModule cm_z2z4();   // Z2 -(h -> 2h)-> Z4, trivial action
CrossedModule cm_s3();     // A3 -(incl)-> S3, conjugation action

// Trivial fiber over an arbitrary base: ordinary lattice gauge theory for g.
CrossedModule cm_discrete(FiniteGroup g);

// Name -> builder for the CLI; keys sorted.
const std::map<std::string, CrossedModule (*)()>& builtin_crossed_modules();

}  // namespace twohol
