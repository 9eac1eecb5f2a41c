#include "geitip/elimination.hpp"

#include <algorithm>

#include "geitip/errors.hpp"

namespace geitip {

// ---------------------------------------------------------------------------
// Rref
// ---------------------------------------------------------------------------

namespace {

// Back-substitution sweep over an echelon system, lowest pivot first: by the
// time a row is processed every pivot row below it is already clean, so each
// row is finalized in one pass. Leaves the unique reduced form.
void back_substitute(std::map<Variable, LinearForm, VarPrecedes>& rows) {
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        LinearForm& row = it->second;
        bool hit = true;
        while (hit) {
            hit = false;
            for (const auto& t : row.terms()) {
                if (t.var == it->first)
                    continue;
                auto lower = rows.find(t.var);
                if (lower != rows.end()) {
                    row.add_scaled(-t.coeff, lower->second);
                    hit = true;
                    break;
                }
            }
        }
    }
}

}  // namespace

Rref::Rref(const std::vector<LinearForm>& input) {
    // Forward echelon pass, sparsest rows first (the reduced form is unique,
    // so insertion order is a free choice; short rows first limits fill-in).
    // Unclean tails make elimination chains grow on large systems, so the
    // rows are re-reduced whenever the merge work since the last cleanup
    // gets out of hand; cleanups only keep the chains short.
    std::vector<const LinearForm*> order;
    order.reserve(input.size());
    for (const auto& f : input)
        order.push_back(&f);
    std::stable_sort(order.begin(), order.end(),
                     [](const LinearForm* a, const LinearForm* b) { return a->size() < b->size(); });

    std::size_t ops_since_cleanup = 0;
    for (const LinearForm* f : order) {
        LinearForm r = *f;
        while (!r.is_zero()) {
            auto it = rows_.find(r.leading().var);
            if (it == rows_.end())
                break;
            ops_since_cleanup += it->second.size();
            r.add_scaled(-r.leading().coeff, it->second);
        }
        if (r.is_zero())
            continue;
        r.scale(Rational(1) / r.leading().coeff);
        rows_.emplace(r.leading().var, std::move(r));
        if (ops_since_cleanup > 2'000'000) {
            back_substitute(rows_);
            ops_since_cleanup = 0;
        }
    }
    back_substitute(rows_);
}

void Rref::insert(LinearForm f) {
    while (!f.is_zero()) {
        auto it = rows_.find(f.leading().var);
        if (it == rows_.end())
            break;
        f.add_scaled(-f.leading().coeff, it->second);
    }
    if (f.is_zero())
        return;
    f.scale(Rational(1) / f.leading().coeff);
    rows_.emplace(f.leading().var, std::move(f));
}

std::vector<LinearForm> Rref::rows() const {
    std::vector<LinearForm> out;
    out.reserve(rows_.size());
    for (const auto& [pivot, row] : rows_)
        out.push_back(row);
    return out;
}

std::vector<Variable> Rref::pivots() const {
    std::vector<Variable> out;
    out.reserve(rows_.size());
    for (const auto& [pivot, row] : rows_)
        out.push_back(pivot);
    return out;
}

std::vector<Variable> Rref::free_variables() const {
    std::set<Variable, VarPrecedes> seen;
    for (const auto& [pivot, row] : rows_)
        for (const auto& t : row.terms())
            if (t.var != pivot)
                seen.insert(t.var);
    return {seen.begin(), seen.end()};
}

LinearForm Rref::solved(Variable pivot) const {
    auto it = rows_.find(pivot);
    if (it == rows_.end())
        throw domain_error("variable is not a pivot of this system");
    LinearForm u = it->second;
    u.remove(pivot);
    u.scale(Rational(-1));
    return u;
}

LinearForm Rref::reduce(LinearForm f) const {
    while (!f.is_zero()) {
        const LinearForm* row = nullptr;
        Variable hit{};
        for (const auto& t : f.terms()) {
            auto it = rows_.find(t.var);
            if (it != rows_.end()) {
                row = &it->second;
                hit = t.var;
                break;
            }
        }
        if (!row)
            break;
        f.add_scaled(-f.coeff(hit), *row);
    }
    return f;
}

// ---------------------------------------------------------------------------
// dimension_reduce
// ---------------------------------------------------------------------------

std::vector<ReducedConstraint> dimension_reduce(const std::vector<LinearForm>& ineqs,
                                                const Rref& eqs) {
    std::vector<ReducedConstraint> out;
    std::map<LinearForm, std::size_t, FormLexLess> seen;
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
        LinearForm r = eqs.reduce(ineqs[i]);
        if (r.is_zero())
            continue;
        auto [it, fresh] = seen.try_emplace(std::move(r), i);
        if (fresh)
            out.push_back({it->first, i});
    }
    return out;
}

// ---------------------------------------------------------------------------
// lp_reduce
// ---------------------------------------------------------------------------

namespace {

bool is_slack_coordinate(Variable v) {
    return v.kind == VarKind::slack || v.kind == VarKind::comb_coeff;
}

}  // namespace

SlackReduction lp_reduce(const LinearForm& objective,
                         const std::vector<ReducedConstraint>& constraints) {
    SlackReduction out;
    out.slack_count = constraints.size();

    // Work in the original coordinates with provenance over the constraint
    // indices instead of echelonizing the full slack-extended system. Each
    // dependency sum d_i C_i == 0 turns into the slack row sum d_i a_i; each
    // pivot relation form_v == sum m_i C_i turns into the mixed row
    // form_v - sum m_i a_i. Same row space, one pass.
    SpanSolver solver;
    auto slack_form = [](const SpanSolver::Multipliers& m) {
        LinearForm f;
        for (const auto& [i, q] : m)
            f.add_term(Variable::slack(static_cast<std::uint32_t>(i) + 1), q);
        return f;
    };

    std::vector<LinearForm> kernel;
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        auto dep = solver.add_source_dependency(static_cast<int>(i), constraints[i].form);
        if (dep)
            kernel.push_back(slack_form(*dep));
    }

    // Canonicalize: the unique reduced form of the slack block, and every
    // tail reduced against it.
    Rref slack_rref(kernel);
    out.slack_rows = slack_rref.rows();
    for (auto& [form, prov] : solver.pivot_rows()) {
        LinearForm row = std::move(form);
        row -= slack_form(prov);
        out.mixed_rows.push_back(slack_rref.reduce(std::move(row)));
    }

    SpanSolver::Multipliers used;
    LinearForm residual = solver.reduce_tracked(objective, used);
    out.objective = slack_rref.reduce(residual + slack_form(used));
    for (const auto& t : residual.terms())
        out.blocked.push_back(t.var);
    return out;
}

// ---------------------------------------------------------------------------
// Row classification and presolve
// ---------------------------------------------------------------------------

RowClass classify_row(const LinearForm& f) {
    if (f.is_zero())
        throw domain_error("cannot classify the zero row");
    int pos = 0, neg = 0;
    Variable lone_pos{}, lone_neg{};
    for (const auto& t : f.terms()) {
        if (t.var.kind != VarKind::slack)
            throw domain_error("row classification applies to slack-space rows only");
        if (sgn(t.coeff) > 0) {
            ++pos;
            lone_pos = t.var;
        } else {
            ++neg;
            lone_neg = t.var;
        }
    }
    if (pos == 0 || neg == 0)
        return {RowPattern::forcing, {}};
    // On a +/- pair either side may serve as the odd one out; take the
    // positive side for determinism.
    if (pos == 1)
        return {RowPattern::implied_free, lone_pos};
    if (neg == 1)
        return {RowPattern::implied_free, lone_neg};
    return {RowPattern::mixed, {}};
}

SlackProblem presolve(SlackProblem p, CertTrail* trail, PresolveObserver* observer) {
    std::erase_if(p.rows, [](const LinearForm& r) { return r.is_zero(); });

    // Occurrence index so a substitution touches only the rows that mention
    // the variable.
    std::map<Variable, std::set<std::size_t>, VarPrecedes> occ;
    for (std::size_t id = 0; id < p.rows.size(); ++id)
        for (const auto& t : p.rows[id].terms())
            occ[t.var].insert(id);

    auto substitute_everywhere = [&](Variable v, const LinearForm& repl) {
        auto it = occ.find(v);
        if (it != occ.end()) {
            auto ids = it->second;  // copy: the index mutates below
            for (std::size_t id : ids) {
                LinearForm next = substitute(p.rows[id], v, repl);
                for (const auto& t : p.rows[id].terms())
                    occ[t.var].erase(id);
                p.rows[id] = std::move(next);
                for (const auto& t : p.rows[id].terms())
                    occ[t.var].insert(id);
            }
        }
        p.objective = substitute(p.objective, v, repl);
        p.bounded.erase(v);
    };

    bool changed = true;
    while (changed) {
        changed = false;
        // One pass over the current row list; rows are refetched before each
        // rule so a firing always sees the up-to-date form. Rows rewritten
        // by an earlier firing are reconsidered in the next pass.
        for (std::size_t idx = 0; idx < p.rows.size(); ++idx) {
            LinearForm f = p.rows[idx];
            if (f.is_zero())
                continue;
            RowClass rc = classify_row(f);
            if (rc.pattern == RowPattern::mixed)
                continue;
            changed = true;
            if (rc.pattern == RowPattern::forcing) {
                // Every variable of the row is pinned to zero, lowest slack
                // index first; each zeroing is justified from the row's
                // residual form so the recorded identities stay exact.
                while (!f.is_zero()) {
                    Variable z = f.leading().var;
                    if (trail) {
                        ConicCoeffs conic;
                        Rational pivot_coeff = f.coeff(z);
                        for (const auto& t : f.terms())
                            if (t.var != z)
                                conic[t.var] = t.coeff / pivot_coeff;
                        trail->record_zero(z, conic);
                    }
                    if (observer)
                        observer->on_zero(z);
                    substitute_everywhere(z, LinearForm{});
                    f = p.rows[idx];
                }
            } else {
                Variable s = rc.free_var;
                LinearForm repl = solve_for(f, s);
                if (observer)
                    observer->on_substitute(s, repl);
                substitute_everywhere(s, repl);
            }
        }
        std::erase_if(p.rows, [](const LinearForm& r) { return r.is_zero(); });
        if (changed) {
            occ.clear();
            for (std::size_t id = 0; id < p.rows.size(); ++id)
                for (const auto& t : p.rows[id].terms())
                    occ[t.var].insert(id);
        }
    }
    return p;
}

}  // namespace geitip
