#include "geitip/reducer.hpp"

#include <algorithm>

#include "geitip/errors.hpp"
#include "geitip/lp.hpp"

namespace geitip {

namespace {

ConicCoeffs coeffs_of(const LinearForm& f) {
    ConicCoeffs out;
    for (const auto& t : f.terms())
        out[t.var] = t.coeff;
    return out;
}

// Final normalization shared by both reducers: echelonize the rows, reduce
// the objective, and keep only the mentioned bounds.
SlackProblem normalize(SlackProblem p) {
    Rref rr(p.rows);
    p.objective = rr.reduce(p.objective);
    p.rows = rr.rows();
    SlackSet mentioned;
    for (const auto& t : p.objective.terms())
        if (p.bounded.count(t.var))
            mentioned.insert(t.var);
    for (const auto& r : p.rows)
        for (const auto& t : r.terms())
            if (p.bounded.count(t.var))
                mentioned.insert(t.var);
    p.bounded = std::move(mentioned);
    return p;
}

void apply_zero(SlackProblem& p, Variable z) {
    LinearForm zero;
    for (auto& r : p.rows)
        r = substitute(r, z, zero);
    std::erase_if(p.rows, [](const LinearForm& r) { return r.is_zero(); });
    p.objective = substitute(p.objective, z, zero);
    p.bounded.erase(z);
}

void apply_substitution(SlackProblem& p, Variable v, const LinearForm& repl) {
    for (auto& r : p.rows)
        r = substitute(r, v, repl);
    std::erase_if(p.rows, [](const LinearForm& r) { return r.is_zero(); });
    p.objective = substitute(p.objective, v, repl);
    p.bounded.erase(v);
}

// Slacks scanned in ascending index order.
std::vector<Variable> bounded_snapshot(const SlackProblem& p) {
    return {p.bounded.begin(), p.bounded.end()};
}

const LinearForm* pick_row_with(const SlackProblem& p, Variable v) {
    const LinearForm* best = nullptr;
    for (const auto& r : p.rows) {
        if (!r.contains(v))
            continue;
        if (!best || r.size() < best->size() ||
            (r.size() == best->size() && lex_compare(r, *best) < 0))
            best = &r;
    }
    return best;
}

// Entry presolve with trace recording, so a trace replay can follow the
// same path.
struct TraceObserver : PresolveObserver {
    explicit TraceObserver(ReductionTrace* trace) : trace(trace) {}
    void on_zero(Variable z) override {
        if (trace)
            trace->events.push_back(
                {ReductionEvent::Kind::implied_equality, z, LinearForm{}, {false, 0}});
    }
    void on_substitute(Variable s, const LinearForm& repl) override {
        if (trace)
            trace->events.push_back({ReductionEvent::Kind::redundant, s, repl, {false, 0}});
    }
    ReductionTrace* trace;
};

SlackProblem presolve_traced(SlackProblem p, CertTrail* trail, ReductionTrace* trace) {
    TraceObserver obs(trace);
    return presolve(std::move(p), trail, &obs);
}

}  // namespace

std::optional<ConicCoeffs> prove_conic(const SlackProblem& p, const ReducerOptions& opt,
                                       RunStats* stats) {
    RetryOutcome r = retry_until_success(p, opt.retry_budget, opt.base_seed);
    if (r.success)
        return coeffs_of(r.success->combination);
    if (stats)
        stats->lp_calls += 1;
    const ResidualProblem& residual = r.failures.back();
    auto witness = feasible(build_system(residual));
    if (!witness)
        return std::nullopt;
    return coeffs_of(conic_from_witness(residual, *witness));
}

SlackProblem remove_implied_equalities(SlackProblem p, CertTrail* trail, ReductionTrace* trace,
                                       const ReducerOptions& opt, RunStats* stats) {
    p = presolve_traced(std::move(p), trail, trace);
    for (Variable a : bounded_snapshot(p)) {
        if (!p.bounded.count(a))
            continue;
        // A slack absent from every equality row cannot be an implied zero:
        // no conic combination reaches a negative coefficient without a row.
        bool in_rows = false;
        for (const auto& r : p.rows)
            if (r.contains(a)) {
                in_rows = true;
                break;
            }
        if (!in_rows)
            continue;

        SlackProblem test{-LinearForm::unit(a), p.rows, p.bounded};
        auto conic = prove_conic(test, opt, stats);
        if (!conic)
            continue;
        if (trail)
            trail->record_zero(a, *conic);
        if (trace)
            trace->events.push_back({ReductionEvent::Kind::implied_equality, a, LinearForm{},
                                     {true, opt.retry_budget}});
        apply_zero(p, a);
    }
    return normalize(std::move(p));
}

SlackProblem remove_redundant_inequalities(SlackProblem p, CertTrail* trail,
                                           ReductionTrace* trace, const ReducerOptions& opt,
                                           RunStats* stats) {
    p = presolve_traced(std::move(p), trail, trace);
    for (Variable a : bounded_snapshot(p)) {
        if (!p.bounded.count(a))
            continue;
        const LinearForm* row = pick_row_with(p, a);
        LinearForm solved = row ? solve_for(*row, a) : LinearForm::unit(a);

        SlackProblem test;
        test.objective = solved;
        test.bounded = p.bounded;
        test.bounded.erase(a);
        if (row) {
            for (const auto& r : p.rows) {
                LinearForm s = substitute(r, a, solved);
                if (!s.is_zero())
                    test.rows.push_back(std::move(s));
            }
        } else {
            test.rows = p.rows;
        }

        auto conic = prove_conic(test, opt, stats);
        if (!conic)
            continue;
        if (trace)
            trace->events.push_back(
                {ReductionEvent::Kind::redundant, a, solved, {true, opt.retry_budget}});
        if (row)
            apply_substitution(p, a, solved);
        else
            p.bounded.erase(a);
    }
    return normalize(std::move(p));
}

SlackProblem reduce_to_minimal(SlackProblem p, CertTrail* trail, ReductionTrace* trace,
                               const ReducerOptions& opt, RunStats* stats) {
    p = remove_implied_equalities(std::move(p), trail, trace, opt, stats);
    return remove_redundant_inequalities(std::move(p), trail, trace, opt, stats);
}

SlackProblem replay(SlackProblem p, const ReductionTrace& trace) {
    for (const auto& e : trace.events) {
        if (e.kind == ReductionEvent::Kind::implied_equality) {
            apply_zero(p, e.slack);
        } else if (e.solved == LinearForm::unit(e.slack)) {
            p.bounded.erase(e.slack);
        } else {
            apply_substitution(p, e.slack, e.solved);
        }
    }
    return normalize(std::move(p));
}

ResidualProblem as_residual(const SlackProblem& p) {
    ResidualProblem out;
    out.objective = p.objective;
    out.bounded = p.bounded;
    for (const auto& r : p.rows) {
        out.pivots.push_back(r.leading().var);
        out.echelon.push_back(r);
    }
    return out;
}

}  // namespace geitip
