#include "geitip/heuristic.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "geitip/errors.hpp"

namespace geitip {

std::size_t ResidualProblem::variable_count() const {
    std::set<Variable, VarPrecedes> vars;
    for (const auto& t : objective.terms())
        vars.insert(t.var);
    for (const auto& r : echelon)
        for (const auto& t : r.terms())
            vars.insert(t.var);
    return vars.size() - echelon.size();
}

std::size_t ResidualProblem::inequality_count() const {
    std::set<Variable, VarPrecedes> vars;
    for (const auto& t : objective.terms())
        vars.insert(t.var);
    for (const auto& r : echelon)
        for (const auto& t : r.terms())
            vars.insert(t.var);
    return vars.size();
}

namespace {

// Working copy of the equality rows with a variable-occurrence index.
class WorkingRows {
public:
    explicit WorkingRows(const std::vector<LinearForm>& rows) {
        rows_.reserve(rows.size());
        for (const auto& r : rows) {
            if (r.is_zero())
                continue;
            std::size_t id = rows_.size();
            rows_.push_back(r);
            for (const auto& t : r.terms())
                occ_[t.var].insert(id);
        }
    }

    const std::set<std::size_t>* holders(Variable v) const {
        auto it = occ_.find(v);
        return it == occ_.end() || it->second.empty() ? nullptr : &it->second;
    }

    const LinearForm& row(std::size_t id) const { return rows_[id]; }

    // Substitute v -> repl everywhere; rows that vanish are dropped.
    void substitute_all(Variable v, const LinearForm& repl) {
        auto it = occ_.find(v);
        if (it == occ_.end())
            return;
        auto ids = it->second;  // copy: occ_ mutates below
        for (std::size_t id : ids) {
            LinearForm next = substitute(rows_[id], v, repl);
            for (const auto& t : rows_[id].terms())
                occ_[t.var].erase(id);
            rows_[id] = std::move(next);
            for (const auto& t : rows_[id].terms())
                occ_[t.var].insert(id);
        }
    }

    std::vector<LinearForm> live() const {
        std::vector<LinearForm> out;
        for (const auto& r : rows_)
            if (!r.is_zero())
                out.push_back(r);
        return out;
    }

private:
    std::vector<LinearForm> rows_;
    std::map<Variable, std::set<std::size_t>, VarPrecedes> occ_;
};

}  // namespace

SearchOutcome heuristic_search(const SlackProblem& p, const Strategy& strategy) {
    WorkingRows rows(p.rows);
    LinearForm objective = p.objective;
    // Eliminated rows v - A keyed by the eliminated variable; later
    // substitutions keep them mutually pivot-free.
    std::vector<std::pair<Variable, LinearForm>> trail;

    std::mt19937_64 rng(strategy.seed);
    auto pick_index = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    while (true) {
        // Negative terms whose variable still occurs in some row.
        std::vector<Variable> candidates;
        for (const auto& t : objective.terms())
            if (sgn(t.coeff) < 0 && rows.holders(t.var))
                candidates.push_back(t.var);
        if (candidates.empty())
            break;

        Variable target{};
        switch (strategy.mode) {
            case Strategy::Mode::deterministic:
                // Terms are ordered by rank, so the first candidate carries
                // the lowest slack index.
                target = strategy.var_choice == Strategy::VarChoice::lowest_index
                             ? candidates.front()
                             : candidates.back();
                break;
            case Strategy::Mode::randomized:
                target = candidates[pick_index(candidates.size())];
                break;
        }

        const auto& holder_ids = *rows.holders(target);
        std::size_t chosen = *holder_ids.begin();
        if (strategy.mode == Strategy::Mode::randomized) {
            std::vector<std::size_t> ids(holder_ids.begin(), holder_ids.end());
            chosen = ids[pick_index(ids.size())];
        } else {
            for (std::size_t id : holder_ids) {
                const auto& cand = rows.row(id);
                const auto& best = rows.row(chosen);
                if (cand.size() < best.size() ||
                    (cand.size() == best.size() && lex_compare(cand, best) < 0))
                    chosen = id;
            }
        }

        LinearForm repl = solve_for(rows.row(chosen), target);
        objective = substitute(objective, target, repl);
        for (auto& [pivot, row] : trail)
            row = substitute(row, target, repl);
        LinearForm eliminated = LinearForm::unit(target) - repl;
        rows.substitute_all(target, repl);
        trail.emplace_back(target, std::move(eliminated));
    }

    bool conic = true;
    for (const auto& t : objective.terms())
        if (sgn(t.coeff) < 0 || !p.bounded.count(t.var))
            conic = false;
    if (conic)
        return ConicSuccess{std::move(objective)};

    // Merge the remaining rows and the elimination trail into one solved
    // system. Eliminated variables are gone from the working rows, so the
    // trail rows keep their unit pivot coefficient; only their tails need
    // reducing.
    Rref remaining(rows.live());
    ResidualProblem out;
    out.objective = remaining.reduce(objective);
    out.bounded = p.bounded;
    std::map<Variable, LinearForm, VarPrecedes> merged;
    for (auto& r : remaining.rows())
        merged.emplace(r.leading().var, std::move(r));
    for (auto& [pivot, row] : trail)
        merged.emplace(pivot, remaining.reduce(row));
    for (auto& [pivot, r] : merged) {
        out.pivots.push_back(pivot);
        out.echelon.push_back(std::move(r));
    }
    return out;
}

RetryOutcome retry_until_success(const SlackProblem& p, int max_attempts,
                                 std::uint64_t base_seed) {
    if (max_attempts < 1)
        throw domain_error("at least one attempt is required");
    RetryOutcome out;
    for (int k = 1; k <= max_attempts; ++k) {
        Strategy s = k == 1 ? Strategy::deterministic()
                            : Strategy::randomized(base_seed + static_cast<std::uint64_t>(k));
        SearchOutcome res = heuristic_search(p, s);
        out.attempts_used = k;
        if (auto* ok = std::get_if<ConicSuccess>(&res)) {
            out.success = std::move(*ok);
            return out;
        }
        out.failures.push_back(std::move(std::get<ResidualProblem>(res)));
    }
    return out;
}

}  // namespace geitip
