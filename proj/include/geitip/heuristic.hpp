#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "geitip/elimination.hpp"

namespace geitip {

// Pivot-selection policy for the elimination search. The deterministic
// default targets the lowest-indexed negative term and the smallest row;
// randomized strategies permute both choices, one RNG stream per seed, so a
// run is a pure function of (problem, strategy).
struct Strategy {
    enum class Mode { deterministic, randomized };
    enum class VarChoice { lowest_index, highest_index };

    Mode mode = Mode::deterministic;
    VarChoice var_choice = VarChoice::lowest_index;
    std::uint64_t seed = 0;

    static Strategy deterministic(VarChoice vc = VarChoice::lowest_index) {
        return {Mode::deterministic, vc, 0};
    }
    static Strategy randomized(std::uint64_t seed) {
        return {Mode::randomized, VarChoice::lowest_index, seed};
    }
};

// The transformed objective is a nonnegative combination of bounded slacks.
struct ConicSuccess {
    LinearForm combination;
};

// The search stalled: the objective still carries negative terms. The
// working rows and the elimination trail are merged into one solved system
// equivalent to the input equalities, ready for further reduction or for the
// feasibility fallback. Each row has a designated pivot with coefficient 1
// that appears in no other row and not in the objective; pivots of trail
// rows are the eliminated variables, which need not lead their row under the
// global order.
struct ResidualProblem {
    LinearForm objective;             // remainder after reduction by the rows
    std::vector<Variable> pivots;     // designated pivot per row
    std::vector<LinearForm> echelon;  // normalized: coeff(pivot) == 1
    SlackSet bounded;

    std::size_t variable_count() const;    // free dimension: |V| - rank
    std::size_t inequality_count() const;  // |V({objective} + echelon)|
};

using SearchOutcome = std::variant<ConicSuccess, ResidualProblem>;

// One pass of the elimination search: repeatedly removes a negative term of
// the objective by solving an equality row for it, until no negative term
// can be eliminated. Terminates after at most one step per slack.
SearchOutcome heuristic_search(const SlackProblem& p, const Strategy& strategy);

struct RetryOutcome {
    std::optional<ConicSuccess> success;
    int attempts_used = 0;
    std::vector<ResidualProblem> failures;  // one per failed attempt
};

// Deterministic strategy first, then seeded strategies (attempt k uses
// base_seed + k); stops at the first success.
RetryOutcome retry_until_success(const SlackProblem& p, int max_attempts,
                                 std::uint64_t base_seed);

}  // namespace geitip
