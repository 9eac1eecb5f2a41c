#include "geitip/span_solver.hpp"

namespace geitip {

namespace {

void merge_scaled(SpanSolver::Multipliers& into, const Rational& c,
                  const SpanSolver::Multipliers& from) {
    for (const auto& [tag, q] : from) {
        auto [it, fresh] = into.try_emplace(tag, 0);
        it->second += c * q;
        if (sgn(it->second) == 0)
            into.erase(it);
    }
}

}  // namespace

void SpanSolver::add_source(int tag, const LinearForm& f) {
    add_source_dependency(tag, f);
}

std::optional<SpanSolver::Multipliers> SpanSolver::add_source_dependency(int tag,
                                                                         const LinearForm& f) {
    LinearForm r = f;
    Multipliers prov{{tag, Rational(1)}};

    // Eliminate existing pivots; each step strictly lowers the highest
    // remaining pivot variable in r. Invariant: r == sum prov * sources.
    while (!r.is_zero()) {
        const Row* hit = nullptr;
        Variable hit_var{};
        for (const auto& t : r.terms()) {
            auto it = rows_.find(t.var);
            if (it != rows_.end()) {
                hit = &it->second;
                hit_var = t.var;
                break;
            }
        }
        if (!hit)
            break;
        Rational c = r.coeff(hit_var);
        r.add_scaled(-c, hit->form);
        merge_scaled(prov, -c, hit->prov);
    }
    if (r.is_zero())
        return prov;

    Rational lead = r.leading().coeff;
    r.scale(Rational(1) / lead);
    for (auto& [tag2, q] : prov)
        q /= lead;
    Variable pivot = r.leading().var;

    // Back-substitute into rows that mention the new pivot.
    for (auto& [pv, row] : rows_) {
        Rational c = row.form.coeff(pivot);
        if (sgn(c) != 0) {
            row.form.add_scaled(-c, r);
            merge_scaled(row.prov, -c, prov);
        }
    }
    rows_.emplace(pivot, Row{std::move(r), std::move(prov)});
    return std::nullopt;
}

std::optional<SpanSolver::Multipliers> SpanSolver::solve(const LinearForm& f) const {
    LinearForm r = f;
    Multipliers acc;
    while (!r.is_zero()) {
        auto it = rows_.find(r.leading().var);
        if (it == rows_.end()) {
            // Rows contain no pivot variables of other rows, so any later
            // term that hits a pivot would already have been the leading one.
            bool reducible = false;
            for (const auto& t : r.terms()) {
                if (rows_.count(t.var)) {
                    reducible = true;
                    it = rows_.find(t.var);
                    break;
                }
            }
            if (!reducible)
                return std::nullopt;
        }
        Rational c = r.coeff(it->first);
        r.add_scaled(-c, it->second.form);
        merge_scaled(acc, c, it->second.prov);
    }
    return acc;
}

bool SpanSolver::in_span(const LinearForm& f) const {
    return solve(f).has_value();
}

LinearForm SpanSolver::reduce_tracked(LinearForm f, Multipliers& used) const {
    while (!f.is_zero()) {
        const Row* hit = nullptr;
        Variable hit_var{};
        for (const auto& t : f.terms()) {
            auto it = rows_.find(t.var);
            if (it != rows_.end()) {
                hit = &it->second;
                hit_var = t.var;
                break;
            }
        }
        if (!hit)
            break;
        Rational c = f.coeff(hit_var);
        f.add_scaled(-c, hit->form);
        merge_scaled(used, c, hit->prov);
    }
    return f;
}

std::vector<std::pair<LinearForm, SpanSolver::Multipliers>> SpanSolver::pivot_rows() const {
    std::vector<std::pair<LinearForm, Multipliers>> out;
    out.reserve(rows_.size());
    for (const auto& [pivot, row] : rows_)
        out.emplace_back(row.form, row.prov);
    return out;
}

}  // namespace geitip
