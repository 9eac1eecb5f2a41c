#pragma once

#include <optional>
#include <vector>

#include "geitip/heuristic.hpp"

namespace geitip {

// Feasibility system over the combination coefficients p_1..p_r (implicitly
// nonnegative): each row constrains an affine expression in p to be >= 0 or
// == 0. Row k constrains the coefficient that the k-th tracked variable
// receives in the combined objective.
struct FeasibilitySystem {
    struct Row {
        std::vector<Rational> coef;  // length = unknowns
        Rational constant;
        bool equality = false;       // true: expression must vanish
        Variable tracked{};          // which slack's coefficient this is
    };
    std::size_t unknowns = 0;
    std::vector<Row> rows;
};

// Symbolically forms objective + sum p_l * row_l and collects, per non-pivot
// variable, its coefficient as an affine expression in p. Bounded variables
// contribute >= 0 rows, unbounded ones == 0 rows. Requires the residual
// system's solved-form invariants (unit pivot coefficients, pivots absent
// elsewhere); violations raise domain_error.
FeasibilitySystem build_system(const ResidualProblem& p);

// Exact phase-1 simplex with Bland's rule. Returns a witness assignment for
// p on feasibility, nullopt otherwise. Never misreports: cycling is ruled
// out by the pivot rule and a hard iteration cap raises internal_error.
std::optional<std::vector<Rational>> feasible(const FeasibilitySystem& sys);

// The combined objective for a witness: objective + sum p_l * row_l. All its
// coefficients are nonnegative and land on bounded variables.
LinearForm conic_from_witness(const ResidualProblem& p, const std::vector<Rational>& witness);

}  // namespace geitip
