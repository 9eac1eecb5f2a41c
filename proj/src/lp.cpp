#include "geitip/lp.hpp"

#include <algorithm>
#include <map>

#include "geitip/errors.hpp"

namespace geitip {

FeasibilitySystem build_system(const ResidualProblem& p) {
    const std::size_t r = p.echelon.size();
    if (p.pivots.size() != r)
        throw domain_error("residual system is missing pivot designations");
    for (std::size_t l = 0; l < r; ++l) {
        if (p.echelon[l].coeff(p.pivots[l]) != 1)
            throw domain_error("residual row is not normalized on its pivot");
        if (p.objective.contains(p.pivots[l]))
            throw domain_error("residual objective mentions a pivot");
        for (std::size_t k = 0; k < r; ++k)
            if (k != l && p.echelon[k].contains(p.pivots[l]))
                throw domain_error("residual rows are not mutually solved");
    }

    // Coefficient of each non-pivot variable in objective + sum p_l row_l.
    std::map<Variable, FeasibilitySystem::Row, VarPrecedes> coeffs;
    auto row_for = [&](Variable v) -> FeasibilitySystem::Row& {
        auto [it, fresh] = coeffs.try_emplace(v);
        if (fresh) {
            it->second.coef.assign(r, Rational(0));
            it->second.tracked = v;
            it->second.equality = p.bounded.count(v) == 0;
        }
        return it->second;
    };

    for (const auto& t : p.objective.terms())
        row_for(t.var).constant = t.coeff;
    for (std::size_t l = 0; l < r; ++l)
        for (const auto& t : p.echelon[l].terms())
            if (t.var != p.pivots[l])
                row_for(t.var).coef[l] = t.coeff;

    FeasibilitySystem sys;
    sys.unknowns = r;
    for (auto& [v, row] : coeffs)
        sys.rows.push_back(std::move(row));
    // An unbounded pivot pins its multiplier to zero.
    for (std::size_t l = 0; l < r; ++l) {
        if (p.bounded.count(p.pivots[l]) == 0) {
            FeasibilitySystem::Row pin;
            pin.coef.assign(r, Rational(0));
            pin.coef[l] = 1;
            pin.equality = true;
            pin.tracked = p.pivots[l];
            sys.rows.push_back(std::move(pin));
        }
    }
    return sys;
}

namespace {

// Dense exact tableau for min sum(artificials) s.t. Ax = b, x >= 0.
class PhaseOne {
public:
    PhaseOne(const FeasibilitySystem& sys) : unknowns_(sys.unknowns) {
        // Columns: p variables, then one surplus per inequality row, then
        // artificials as needed.
        std::size_t surplus_count = 0;
        for (const auto& row : sys.rows)
            if (!row.equality)
                ++surplus_count;
        std::size_t cols = unknowns_ + surplus_count;

        std::size_t next_surplus = unknowns_;
        for (const auto& row : sys.rows) {
            std::vector<Rational> a(cols, Rational(0));
            for (std::size_t j = 0; j < unknowns_; ++j)
                a[j] = row.coef[j];
            // expression + surplus-free form: sum c p >= -constant
            Rational rhs = -row.constant;
            std::size_t surplus = cols;  // none
            if (!row.equality) {
                surplus = next_surplus++;
                a[surplus] = -1;  // sum c p - s = -constant
            }
            if (sgn(rhs) < 0) {
                for (auto& q : a)
                    q = -q;
                rhs = -rhs;
            }
            rows_.push_back(std::move(a));
            rhs_.push_back(std::move(rhs));
            basis_.push_back(SIZE_MAX);
            if (surplus < cols && rows_.back()[surplus] == 1)
                basis_.back() = surplus;
        }

        // Artificials for rows without a ready-made basic column.
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (basis_[i] != SIZE_MAX)
                continue;
            std::size_t art = cols++;
            for (auto& r : rows_)
                r.push_back(Rational(0));
            rows_[i][cols - 1] = 1;
            basis_[i] = art;
            artificial_from_ = std::min(artificial_from_, art);
        }
        cols_ = cols;
    }

    std::optional<std::vector<Rational>> run() {
        // Reduced-cost row d_j = c_B T_j - c_j for min sum(art):
        // start with identity basis, so d_j = sum over artificial rows of a_ij
        // minus (1 if j is artificial).
        std::vector<Rational> d(cols_, Rational(0));
        Rational w(0);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (basis_[i] >= artificial_from_) {
                for (std::size_t j = 0; j < cols_; ++j)
                    d[j] += rows_[i][j];
                w += rhs_[i];
            }
        }
        for (std::size_t j = artificial_from_; j < cols_; ++j)
            d[j] -= 1;

        const std::size_t cap = 10 * (rows_.size() + 1) * (cols_ + 1);
        for (std::size_t iter = 0;; ++iter) {
            if (iter > cap)
                throw internal_error("simplex iteration cap exceeded");
            // Bland: smallest improving column.
            std::size_t enter = SIZE_MAX;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (sgn(d[j]) > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == SIZE_MAX)
                break;
            // Ratio test; Bland tie-break on the leaving basis variable.
            std::size_t leave = SIZE_MAX;
            Rational best;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (sgn(rows_[i][enter]) <= 0)
                    continue;
                Rational ratio = rhs_[i] / rows_[i][enter];
                if (leave == SIZE_MAX || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == SIZE_MAX)
                throw internal_error("phase-1 objective unbounded");
            pivot(leave, enter, d, w);
        }

        if (sgn(w) != 0)
            return std::nullopt;
        std::vector<Rational> p(unknowns_, Rational(0));
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (basis_[i] < unknowns_)
                p[basis_[i]] = rhs_[i];
        return p;
    }

private:
    void pivot(std::size_t pr, std::size_t pc, std::vector<Rational>& d, Rational& w) {
        Rational inv = Rational(1) / rows_[pr][pc];
        for (auto& q : rows_[pr])
            q *= inv;
        rhs_[pr] *= inv;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == pr || sgn(rows_[i][pc]) == 0)
                continue;
            Rational f = rows_[i][pc];
            for (std::size_t j = 0; j < cols_; ++j)
                rows_[i][j] -= f * rows_[pr][j];
            rhs_[i] -= f * rhs_[pr];
        }
        if (sgn(d[pc]) != 0) {
            Rational f = d[pc];
            for (std::size_t j = 0; j < cols_; ++j)
                d[j] -= f * rows_[pr][j];
            w -= f * rhs_[pr];
        }
        basis_[pr] = pc;
    }

    std::size_t unknowns_;
    std::size_t cols_ = 0;
    std::size_t artificial_from_ = SIZE_MAX;
    std::vector<std::vector<Rational>> rows_;
    std::vector<Rational> rhs_;
    std::vector<std::size_t> basis_;
};

}  // namespace

std::optional<std::vector<Rational>> feasible(const FeasibilitySystem& sys) {
    if (sys.rows.empty())
        return std::vector<Rational>(sys.unknowns, Rational(0));
    return PhaseOne(sys).run();
}

LinearForm conic_from_witness(const ResidualProblem& p, const std::vector<Rational>& witness) {
    if (witness.size() != p.echelon.size())
        throw domain_error("witness length does not match the system rank");
    LinearForm combined = p.objective;
    for (std::size_t l = 0; l < witness.size(); ++l)
        combined.add_scaled(witness[l], p.echelon[l]);
    for (const auto& t : combined.terms()) {
        if (sgn(t.coeff) < 0 || p.bounded.count(t.var) == 0)
            throw internal_error("witness does not induce a conic combination");
    }
    return combined;
}

}  // namespace geitip
