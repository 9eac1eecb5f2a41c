#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "geitip/heuristic.hpp"
#include "geitip/report.hpp"

namespace geitip {

struct ProvabilityJudgment {
    bool via_lp = false;  // settled by the feasibility fallback
    int attempts = 0;     // elimination-search attempts spent (0: syntactic rule)
};

struct ReductionEvent {
    enum class Kind { implied_equality, redundant };
    Kind kind{Kind::implied_equality};
    Variable slack{};
    LinearForm solved;  // redundant: the substituted form A; implied: zero
    ProvabilityJudgment how;
};

// Replaying the events against the input problem, followed by the final
// normalization, reproduces the reducer's output exactly.
struct ReductionTrace {
    std::vector<ReductionEvent> events;
};

struct ReducerOptions {
    int retry_budget = 3;  // inner provability tests: search attempts before the LP
    std::uint64_t base_seed = 0;
};

// Tries to prove `p.objective >= 0` with bounded retries of the elimination
// search and then the exact feasibility fallback; returns the nonnegative
// combination coefficients on success. Performs no reductions of its own.
std::optional<ConicCoeffs> prove_conic(const SlackProblem& p, const ReducerOptions& opt,
                                       RunStats* stats);

// Removes every implied equality: each slack provably zero on the feasible
// set is fixed to zero (the zeroing is reported to the trail). Ends with the
// system in reduced row echelon form, the objective reduced by it, and the
// bound set shrunk to the variables still mentioned.
SlackProblem remove_implied_equalities(SlackProblem p, CertTrail* trail, ReductionTrace* trace,
                                       const ReducerOptions& opt, RunStats* stats);

// Removes every redundant bound: a slack whose solved form is provably
// nonnegative without its own bound is substituted out. Same final
// normalization as above.
SlackProblem remove_redundant_inequalities(SlackProblem p, CertTrail* trail,
                                           ReductionTrace* trace, const ReducerOptions& opt,
                                           RunStats* stats);

// Both reductions in sequence; the result has no implied equalities and no
// redundant bounds.
SlackProblem reduce_to_minimal(SlackProblem p, CertTrail* trail, ReductionTrace* trace,
                               const ReducerOptions& opt, RunStats* stats);

// Test support: applies the trace to the input and normalizes.
SlackProblem replay(SlackProblem p, const ReductionTrace& trace);

// The minimal problem as a solved system (rows are a true echelon basis), in
// the shape the feasibility fallback consumes.
ResidualProblem as_residual(const SlackProblem& p);

}  // namespace geitip
