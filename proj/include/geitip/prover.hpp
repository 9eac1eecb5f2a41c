#pragma once

#include <optional>

#include "geitip/certificate.hpp"
#include "geitip/reducer.hpp"
#include "geitip/report.hpp"
#include "geitip/shannon.hpp"

namespace geitip {

// A problem statement expanded into joint-entropy coordinates. The
// inequality list holds the elemental inequalities first, then the
// additional ">="/"<=" constraints (oriented as >= 0); certificates index
// into these two lists.
struct ExpandedProblem {
    VariableUniverse universe;
    LinearForm objective;  // claim: objective >= 0, or objective == 0
    bool identity = false;
    std::size_t elemental_count = 0;
    std::vector<LinearForm> ineqs;
    std::vector<LinearForm> eqs;
    std::vector<std::string> extra_ineq_labels;  // labels for ineqs beyond the elementals
    std::vector<std::string> eq_labels;

    std::string ineq_label(std::size_t i) const;
    std::size_t coordinate_count() const;  // joint entropies + scalars
};

ExpandedProblem expand_problem(const ProblemStatement& ps);

// The fully reduced system, for reporting.
struct MinimalSummary {
    LinearForm objective;
    std::vector<LinearForm> rows;
    std::vector<Variable> bounded;
    std::size_t variable_count = 0;    // free dimension of the system
    std::size_t inequality_count = 0;  // surviving slack bounds
};

struct ProofReport {
    bool proved = false;
    std::string reason;  // set when not proved
    std::optional<Certificate> certificate;          // combination for objective >= 0
    std::optional<Certificate> reverse_certificate;  // identities: for -objective >= 0
    RunStats stats;
    std::optional<MinimalSummary> minimal;
};

struct ProverOptions {
    int max_attempts = 16;
    std::uint64_t seed = 0;
    bool want_minimal = false;      // attach the reduced system even on success
    int reducer_retry_budget = 3;   // inner provability tests
    bool collect_wall_time = true;
};

// Routes on the objective relation: "=" runs the identity procedure,
// ">="/"<=" the inequality procedure.
ProofReport prove(const ProblemStatement& ps, const ProverOptions& opt = {});
ProofReport prove_inequality(const ProblemStatement& ps, const ProverOptions& opt = {});
ProofReport prove_identity(const ProblemStatement& ps, const ProverOptions& opt = {});

// Native slack-space entry: prove p.objective >= 0 subject to p.rows = 0 and
// the bounds in p.bounded. Certificate inequality index i refers to the
// bound of a_{i+1}; equality index k to p.rows[k].
ProofReport prove_slack_problem(const SlackProblem& p, const ProverOptions& opt = {});

bool verify_certificate(const Certificate& cert, const ExpandedProblem& ex, bool reverse = false);
bool verify_report(const ProofReport& report, const ProblemStatement& ps);
bool verify_report(const ProofReport& report, const SlackProblem& p);

}  // namespace geitip
