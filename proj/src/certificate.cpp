#include "geitip/certificate.hpp"

#include "geitip/errors.hpp"

namespace geitip {

bool verify_combination(const Certificate& cert, const std::vector<LinearForm>& ineqs,
                        const std::vector<LinearForm>& eqs, const LinearForm& target) {
    LinearForm sum;
    for (const auto& [i, mu] : cert.ineq_mults) {
        if (i >= ineqs.size())
            throw domain_error("certificate references inequality index out of range");
        if (sgn(mu) < 0)
            return false;
        sum.add_scaled(mu, ineqs[i]);
    }
    for (const auto& [k, nu] : cert.eq_mults) {
        if (k >= eqs.size())
            throw domain_error("certificate references equality index out of range");
        sum.add_scaled(nu, eqs[k]);
    }
    return sum == target;
}

CertTrail::CertTrail(std::vector<LinearForm> constraint_forms,
                     std::vector<LinearForm> equality_forms)
    : cforms_(std::move(constraint_forms)), qforms_(std::move(equality_forms)) {
    // Equality sources get tags 0..|Q|-1; zeroed constraints follow.
    for (std::size_t k = 0; k < qforms_.size(); ++k)
        span_.add_source(static_cast<int>(k), qforms_[k]);
}

std::size_t CertTrail::constraint_index(Variable slack) const {
    if (slack.kind != VarKind::slack || slack.payload == 0 || slack.payload > cforms_.size())
        throw internal_error("slack variable does not name a constraint");
    return slack.payload - 1;
}

void CertTrail::record_zero(Variable slack, const ConicCoeffs& conic) {
    std::size_t z = constraint_index(slack);
    // Close -C_z == sum conic C + (span residue), then fix residue signs so
    // the stored identity is conic in the constraints.
    Mults fix = assemble(-cforms_[z], conic);
    events_.push_back({z, std::move(fix)});
    span_.add_source(static_cast<int>(qforms_.size() + events_.size() - 1), cforms_[z]);
}

CertTrail::Mults CertTrail::assemble(const LinearForm& base, const ConicCoeffs& conic) const {
    Mults out;
    LinearForm residue = base;
    for (const auto& [v, c] : conic) {
        if (sgn(c) == 0)
            continue;
        if (sgn(c) < 0)
            throw internal_error("conic coefficients must be nonnegative");
        std::size_t i = constraint_index(v);
        out.ineq[i] += c;
        residue.add_scaled(-c, cforms_[i]);
    }

    auto sol = span_.solve(residue);
    if (!sol)
        throw internal_error("certificate assembly: residue escapes the tracked span");

    // Split the solution into equality multipliers and per-event amounts.
    std::vector<Rational> amount(events_.size(), Rational(0));
    for (const auto& [tag, q] : *sol) {
        if (tag < static_cast<int>(qforms_.size()))
            out.eq[static_cast<std::size_t>(tag)] += q;
        else
            amount[static_cast<std::size_t>(tag) - qforms_.size()] = q;
    }

    // Sweep events in order. A nonnegative net amount stays a plain
    // multiplier on the zeroed constraint; a negative one is rewritten via
    // the stored identity for -C_z, which only adds nonnegative mass (onto
    // constraints whose turn has not yet come, or onto already-settled ones,
    // both safe).
    for (std::size_t e = 0; e < events_.size(); ++e) {
        std::size_t z = events_[e].constraint;
        Rational have = amount[e];
        auto it = out.ineq.find(z);
        if (it != out.ineq.end()) {
            have += it->second;
            out.ineq.erase(it);
        }
        if (sgn(have) >= 0) {
            if (sgn(have) > 0)
                out.ineq[z] = have;
            continue;
        }
        Rational need = -have;  // rewrite need * (-C_z)
        for (const auto& [j, l] : events_[e].fix.ineq)
            out.ineq[j] += need * l;
        for (const auto& [k, x] : events_[e].fix.eq)
            out.eq[k] += need * x;
    }

    for (auto it = out.ineq.begin(); it != out.ineq.end();)
        it = sgn(it->second) == 0 ? out.ineq.erase(it) : std::next(it);
    for (auto it = out.eq.begin(); it != out.eq.end();)
        it = sgn(it->second) == 0 ? out.eq.erase(it) : std::next(it);
    return out;
}

}  // namespace geitip
