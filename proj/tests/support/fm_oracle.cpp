#include "fm_oracle.hpp"

#include <algorithm>
#include <set>

#include "geitip/elimination.hpp"
#include "geitip/errors.hpp"

namespace geitip::oracle {

namespace {

// Canonical scaling: divide by the absolute value of the first nonzero
// entry, so duplicate rows (up to positive scale) collapse.
void normalize(AffineRow& r) {
    Rational scale(0);
    if (!r.form.is_zero())
        scale = abs(r.form.leading().coeff);
    else if (sgn(r.constant) != 0)
        scale = abs(r.constant);
    if (sgn(scale) > 0 && scale != 1) {
        r.form.scale(Rational(1) / scale);
        r.constant /= scale;
    }
}

struct RowLess {
    bool operator()(const AffineRow& a, const AffineRow& b) const {
        int c = lex_compare(a.form, b.form);
        if (c != 0)
            return c < 0;
        return cmp(a.constant, b.constant) < 0;
    }
};

}  // namespace

bool fm_feasible(std::vector<AffineRow> rows) {
    std::set<Variable, VarPrecedes> vars;
    for (const auto& r : rows)
        for (const auto& t : r.form.terms())
            vars.insert(t.var);
    if (vars.size() > 12)
        throw domain_error("oracle instance too large (more than 12 variables)");

    for (Variable v : vars) {
        std::vector<AffineRow> pos, neg, rest;
        for (auto& r : rows) {
            int s = sgn(r.form.coeff(v));
            if (s > 0)
                pos.push_back(std::move(r));
            else if (s < 0)
                neg.push_back(std::move(r));
            else
                rest.push_back(std::move(r));
        }
        std::set<AffineRow, RowLess> next(rest.begin(), rest.end());
        for (const auto& p : pos) {
            Rational cp = p.form.coeff(v);
            for (const auto& n : neg) {
                Rational cn = n.form.coeff(v);  // < 0
                // cp*n - cn*p cancels v and preserves the >= 0 orientation.
                AffineRow combo;
                combo.form = p.form;
                combo.form.scale(-cn);
                combo.form.add_scaled(cp, n.form);
                combo.constant = -cn * p.constant + cp * n.constant;
                if (combo.form.is_zero() && sgn(combo.constant) < 0)
                    return false;
                normalize(combo);
                next.insert(std::move(combo));
            }
        }
        rows.assign(next.begin(), next.end());
        if (rows.size() > 200000)
            throw domain_error("oracle blow-up cap exceeded");
    }

    for (const auto& r : rows)
        if (sgn(r.constant) < 0)
            return false;
    return true;
}

bool fm_implies(const LinearForm& target, const std::vector<LinearForm>& ineqs,
                const std::vector<LinearForm>& eqs) {
    // Substitute the equalities away, then ask whether the inequalities plus
    // "target <= -1" are infeasible (homogeneity makes -1 a free choice of
    // scale).
    Rref er(eqs);
    std::vector<AffineRow> rows;
    for (const auto& f : ineqs) {
        LinearForm r = er.reduce(f);
        rows.push_back({std::move(r), Rational(0)});
    }
    LinearForm t = er.reduce(target);
    rows.push_back({-t, Rational(-1)});
    return !fm_feasible(std::move(rows));
}

}  // namespace geitip::oracle
