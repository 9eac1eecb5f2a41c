#include "geitip/prover.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "geitip/errors.hpp"
#include "geitip/lp.hpp"

namespace geitip {

std::string ExpandedProblem::ineq_label(std::size_t i) const {
    if (i >= ineqs.size())
        throw domain_error("inequality index out of range");
    if (i < elemental_count)
        return print(elemental_measure(universe.rv_count(), i, universe)) + " >= 0";
    return extra_ineq_labels[i - elemental_count];
}

std::size_t ExpandedProblem::coordinate_count() const {
    return ((std::size_t(1) << universe.rv_count()) - 1) + universe.scalar_names().size();
}

ExpandedProblem expand_problem(const ProblemStatement& ps) {
    ExpandedProblem ex;
    ex.universe = ps.universe();

    auto obj = expand_statement(ps.objective, ex.universe);
    ex.objective = std::move(obj.form);
    ex.identity = obj.equality;

    ex.ineqs = elemental_inequalities(ex.universe.rv_count());
    ex.elemental_count = ex.ineqs.size();
    for (const auto& c : ps.constraints) {
        auto e = expand_statement(c, ex.universe);
        if (e.equality) {
            ex.eqs.push_back(std::move(e.form));
            ex.eq_labels.push_back(print(c));
        } else {
            ex.ineqs.push_back(std::move(e.form));
            ex.extra_ineq_labels.push_back(print(c));
        }
    }
    return ex;
}

namespace {

ConicCoeffs coeffs_of(const LinearForm& f) {
    ConicCoeffs out;
    for (const auto& t : f.terms())
        out[t.var] = t.coeff;
    return out;
}

SlackSet all_slacks(std::size_t count) {
    SlackSet s;
    for (std::size_t i = 1; i <= count; ++i)
        s.insert(Variable::slack(static_cast<std::uint32_t>(i)));
    return s;
}

MinimalSummary summarize(const SlackProblem& p) {
    MinimalSummary out;
    out.objective = p.objective;
    out.rows = p.rows;
    out.bounded.assign(p.bounded.begin(), p.bounded.end());
    ResidualProblem r = as_residual(p);
    out.variable_count = r.variable_count();
    out.inequality_count = r.inequality_count();
    return out;
}

struct Timer {
    explicit Timer(bool enabled) : enabled(enabled), start(std::chrono::steady_clock::now()) {}
    double seconds() const {
        if (!enabled)
            return 0;
        auto now = std::chrono::steady_clock::now();
        return std::chrono::duration<double>(now - start).count();
    }
    bool enabled;
    std::chrono::steady_clock::time_point start;
};

std::string join_names(const std::vector<Variable>& vars, const VariableUniverse& u) {
    std::ostringstream out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i)
            out << ", ";
        out << u.display(vars[i]);
    }
    return out.str();
}

// Shared slack-space tail of both pipelines: presolve, retried elimination
// search, then reduce-and-fall-back. Returns the conic coefficients of the
// transformed objective or the minimal problem that defeated the run.
struct SlackOutcome {
    std::optional<ConicCoeffs> conic;
    std::optional<SlackProblem> minimal;
    ReductionTrace trace;
};

SlackOutcome run_slack_pipeline(SlackProblem sp, CertTrail& trail, const ProverOptions& opt,
                                RunStats& stats) {
    SlackOutcome out;
    sp = presolve(std::move(sp), &trail);
    stats.stages.push_back(
        {"presolved", sp.bounded.size(), sp.rows.size(), sp.bounded.size()});

    RetryOutcome retry = retry_until_success(sp, opt.max_attempts, opt.seed);
    stats.attempts = retry.attempts_used;
    if (retry.success) {
        out.conic = coeffs_of(retry.success->combination);
        if (opt.want_minimal) {
            CertTrail scratch = trail;
            ReducerOptions ropt{opt.reducer_retry_budget, opt.seed};
            ReductionTrace trace;
            SlackProblem minimal =
                reduce_to_minimal(sp, &scratch, &trace, ropt, &stats);
            out.minimal = std::move(minimal);
        }
        return out;
    }

    // Every attempt stalled: reduce each residue to its minimal equivalent,
    // keep the smallest, and decide it exactly.
    ReducerOptions ropt{opt.reducer_retry_budget, opt.seed};
    std::optional<SlackProblem> best;
    std::optional<CertTrail> best_trail;
    ReductionTrace best_trace;
    for (const auto& failure : retry.failures) {
        SlackProblem candidate{failure.objective, failure.echelon,
                               failure.bounded};
        CertTrail scratch = trail;
        ReductionTrace trace;
        SlackProblem reduced = reduce_to_minimal(std::move(candidate), &scratch, &trace, ropt,
                                                 &stats);
        ResidualProblem r = as_residual(reduced);
        if (!best || r.inequality_count() < as_residual(*best).inequality_count() ||
            (r.inequality_count() == as_residual(*best).inequality_count() &&
             r.echelon.size() < as_residual(*best).echelon.size())) {
            best = std::move(reduced);
            best_trail = std::move(scratch);
            best_trace = std::move(trace);
        }
    }

    stats.lp_calls += 1;
    ResidualProblem residual = as_residual(*best);
    auto witness = feasible(build_system(residual));
    out.minimal = std::move(best);
    out.trace = std::move(best_trace);
    if (witness) {
        trail = std::move(*best_trail);
        out.conic = coeffs_of(conic_from_witness(residual, *witness));
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Entropy-space pipeline
// ---------------------------------------------------------------------------

namespace {

struct EntropyPipeline {
    const ExpandedProblem& ex;
    const ProverOptions& opt;
    ProofReport report;

    Rref eq_rref;
    std::vector<ReducedConstraint> reduced;
    LinearForm f5;

    explicit EntropyPipeline(const ExpandedProblem& ex, const ProverOptions& opt)
        : ex(ex), opt(opt) {}

    void eliminate() {
        report.stats.stages.push_back({"expanded", ex.coordinate_count(), ex.eqs.size(),
                                       ex.ineqs.size()});
        eq_rref = Rref(ex.eqs);
        reduced = dimension_reduce(ex.ineqs, eq_rref);
        f5 = eq_rref.reduce(ex.objective);
        report.stats.stages.push_back({"eliminated",
                                       ex.coordinate_count() - eq_rref.rank(), 0,
                                       reduced.size()});
    }

    // Maps multipliers on reduced constraints back to original indices and
    // recovers the equality multipliers by solving in the span of the
    // original equality forms.
    Certificate close_certificate(const CertTrail::Mults& mults, bool reverse) {
        Certificate cert;
        for (const auto& [i, mu] : mults.ineq)
            cert.ineq_mults[reduced[i].origin] += mu;
        if (!mults.eq.empty())
            throw internal_error("entropy-space layer has no tracked equalities");

        LinearForm target = reverse ? -ex.objective : ex.objective;
        LinearForm residue = target;
        for (const auto& [i, mu] : cert.ineq_mults)
            residue.add_scaled(-mu, ex.ineqs[i]);
        SpanSolver eq_span;
        for (std::size_t k = 0; k < ex.eqs.size(); ++k)
            eq_span.add_source(static_cast<int>(k), ex.eqs[k]);
        auto nu = eq_span.solve(residue);
        if (!nu)
            throw internal_error("certificate does not close over the equality constraints");
        for (const auto& [k, q] : *nu)
            cert.eq_mults[static_cast<std::size_t>(k)] = q;

        LinearForm recon;
        for (const auto& [i, mu] : cert.ineq_mults)
            recon.add_scaled(mu, ex.ineqs[i]);
        for (const auto& [k, q] : cert.eq_mults)
            recon.add_scaled(q, ex.eqs[k]);
        cert.reconstructed = std::move(recon);
        return cert;
    }
};

}  // namespace

ProofReport prove_inequality(const ProblemStatement& ps, const ProverOptions& opt) {
    ExpandedProblem ex = expand_problem(ps);
    if (ex.identity)
        throw domain_error("objective is an identity; use the identity procedure");
    Timer timer(opt.collect_wall_time);
    EntropyPipeline pipe(ex, opt);
    pipe.eliminate();

    SlackReduction lr = lp_reduce(pipe.f5, pipe.reduced);
    pipe.report.stats.stages.push_back(
        {"slack", lr.slack_count, lr.slack_rows.size(), lr.slack_count});
    if (!lr.blocked.empty()) {
        pipe.report.proved = false;
        pipe.report.reason = "free variable(s) remain in the reduced objective: " +
                             join_names(lr.blocked, ex.universe);
        pipe.report.stats.wall_seconds = timer.seconds();
        return std::move(pipe.report);
    }

    std::vector<LinearForm> cforms;
    cforms.reserve(pipe.reduced.size());
    for (const auto& rc : pipe.reduced)
        cforms.push_back(rc.form);
    CertTrail trail(std::move(cforms));

    SlackProblem sp{lr.objective, lr.slack_rows, all_slacks(lr.slack_count)};
    SlackOutcome outcome = run_slack_pipeline(std::move(sp), trail, opt, pipe.report.stats);

    if (outcome.minimal) {
        pipe.report.minimal = summarize(*outcome.minimal);
        pipe.report.stats.stages.push_back({"minimal", pipe.report.minimal->variable_count,
                                            pipe.report.minimal->rows.size(),
                                            pipe.report.minimal->inequality_count});
    }
    if (outcome.conic) {
        pipe.report.proved = true;
        pipe.report.certificate = pipe.close_certificate(trail.assemble(pipe.f5, *outcome.conic),
                                                         false);
    } else {
        pipe.report.proved = false;
        pipe.report.reason = "the reduced feasibility system has no nonnegative solution";
    }
    pipe.report.stats.wall_seconds = timer.seconds();
    return std::move(pipe.report);
}

ProofReport prove_identity(const ProblemStatement& ps, const ProverOptions& opt) {
    ExpandedProblem ex = expand_problem(ps);
    if (!ex.identity)
        throw domain_error("objective is not an identity");
    Timer timer(opt.collect_wall_time);
    EntropyPipeline pipe(ex, opt);
    pipe.eliminate();

    auto finish_proved = [&](CertTrail* trail) {
        pipe.report.proved = true;
        if (trail) {
            pipe.report.certificate =
                pipe.close_certificate(trail->assemble(pipe.f5, {}), false);
            pipe.report.reverse_certificate =
                pipe.close_certificate(trail->assemble(-pipe.f5, {}), true);
        } else {
            CertTrail empty({});
            pipe.report.certificate = pipe.close_certificate(empty.assemble(pipe.f5, {}), false);
            pipe.report.reverse_certificate =
                pipe.close_certificate(empty.assemble(-pipe.f5, {}), true);
        }
        pipe.report.stats.wall_seconds = timer.seconds();
    };

    if (pipe.f5.is_zero()) {
        // The constraints alone cancel the objective.
        finish_proved(nullptr);
        return std::move(pipe.report);
    }

    SlackReduction lr = lp_reduce(pipe.f5, pipe.reduced);
    pipe.report.stats.stages.push_back(
        {"slack", lr.slack_count, lr.slack_rows.size(), lr.slack_count});
    if (!lr.blocked.empty()) {
        pipe.report.proved = false;
        pipe.report.reason = "free variable(s) remain in the reduced objective: " +
                             join_names(lr.blocked, ex.universe);
        pipe.report.stats.wall_seconds = timer.seconds();
        return std::move(pipe.report);
    }

    std::vector<LinearForm> cforms;
    for (const auto& rc : pipe.reduced)
        cforms.push_back(rc.form);
    CertTrail trail(std::move(cforms));

    SlackProblem sp{lr.objective, lr.slack_rows, all_slacks(lr.slack_count)};
    sp = presolve(std::move(sp), &trail);
    pipe.report.stats.stages.push_back(
        {"presolved", sp.bounded.size(), sp.rows.size(), sp.bounded.size()});

    ReducerOptions ropt{opt.reducer_retry_budget, opt.seed};
    ReductionTrace trace;
    SlackProblem pure =
        remove_implied_equalities(std::move(sp), &trail, &trace, ropt, &pipe.report.stats);
    pipe.report.minimal = summarize(pure);
    pipe.report.stats.stages.push_back({"purified", pipe.report.minimal->variable_count,
                                        pure.rows.size(),
                                        pipe.report.minimal->inequality_count});

    if (pure.objective.is_zero()) {
        finish_proved(&trail);
    } else {
        pipe.report.proved = false;
        pipe.report.reason = "objective does not vanish on the purified system";
        pipe.report.stats.wall_seconds = timer.seconds();
    }
    return std::move(pipe.report);
}

ProofReport prove(const ProblemStatement& ps, const ProverOptions& opt) {
    if (ps.objective.rel == Relation::eq)
        return prove_identity(ps, opt);
    return prove_inequality(ps, opt);
}

// ---------------------------------------------------------------------------
// Native slack-space problems
// ---------------------------------------------------------------------------

namespace {

std::size_t max_slack_index(const SlackProblem& p) {
    std::size_t m = 0;
    auto scan = [&m](const LinearForm& f) {
        for (const auto& t : f.terms())
            if (t.var.kind == VarKind::slack)
                m = std::max(m, static_cast<std::size_t>(t.var.payload));
    };
    scan(p.objective);
    for (const auto& r : p.rows)
        scan(r);
    for (Variable v : p.bounded)
        m = std::max(m, static_cast<std::size_t>(v.payload));
    return m;
}

}  // namespace

ProofReport prove_slack_problem(const SlackProblem& p, const ProverOptions& opt) {
    Timer timer(opt.collect_wall_time);
    ProofReport report;
    report.stats.stages.push_back({"input", p.bounded.size(), p.rows.size(), p.bounded.size()});

    std::size_t m = max_slack_index(p);
    std::vector<LinearForm> cforms;
    cforms.reserve(m);
    for (std::size_t i = 1; i <= m; ++i)
        cforms.push_back(LinearForm::unit(Variable::slack(static_cast<std::uint32_t>(i))));
    CertTrail trail(std::move(cforms), p.rows);

    SlackOutcome outcome = run_slack_pipeline(p, trail, opt, report.stats);
    if (outcome.minimal) {
        report.minimal = summarize(*outcome.minimal);
        report.stats.stages.push_back({"minimal", report.minimal->variable_count,
                                       report.minimal->rows.size(),
                                       report.minimal->inequality_count});
    }
    if (outcome.conic) {
        report.proved = true;
        CertTrail::Mults mults = trail.assemble(p.objective, *outcome.conic);
        Certificate cert;
        cert.ineq_mults = std::move(mults.ineq);
        cert.eq_mults = std::move(mults.eq);
        for (const auto& [i, mu] : cert.ineq_mults)
            cert.reconstructed.add_term(Variable::slack(static_cast<std::uint32_t>(i + 1)), mu);
        for (const auto& [k, q] : cert.eq_mults)
            cert.reconstructed.add_scaled(q, p.rows[k]);
        report.certificate = std::move(cert);
    } else {
        report.proved = false;
        report.reason = "the reduced feasibility system has no nonnegative solution";
    }
    report.stats.wall_seconds = timer.seconds();
    return report;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

bool verify_certificate(const Certificate& cert, const ExpandedProblem& ex, bool reverse) {
    LinearForm target = reverse ? -ex.objective : ex.objective;
    return verify_combination(cert, ex.ineqs, ex.eqs, target);
}

bool verify_report(const ProofReport& report, const ProblemStatement& ps) {
    if (!report.proved)
        return false;
    ExpandedProblem ex = expand_problem(ps);
    if (!report.certificate || !verify_certificate(*report.certificate, ex, false))
        return false;
    if (ex.identity &&
        (!report.reverse_certificate || !verify_certificate(*report.reverse_certificate, ex, true)))
        return false;
    return true;
}

bool verify_report(const ProofReport& report, const SlackProblem& p) {
    if (!report.proved || !report.certificate)
        return false;
    std::size_t m = max_slack_index(p);
    std::vector<LinearForm> bounds;
    for (std::size_t i = 1; i <= m; ++i)
        bounds.push_back(LinearForm::unit(Variable::slack(static_cast<std::uint32_t>(i))));
    return verify_combination(*report.certificate, bounds, p.rows, p.objective);
}

}  // namespace geitip
