#pragma once

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "geitip/elimination.hpp"
#include "geitip/shannon.hpp"

namespace geitip::testgen {

// Random slack-space problem: up to max_slacks slacks, up to max_rows
// equality rows, integer coefficients in [-3, 3].
inline SlackProblem random_slack_problem(std::mt19937_64& rng, int max_slacks = 8,
                                         int max_rows = 5) {
    auto pick = [&rng](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    int m = pick(2, max_slacks);
    int rows = pick(0, max_rows);
    auto random_form = [&]() {
        LinearForm f;
        int terms = pick(1, std::min(m, 5));
        for (int t = 0; t < terms; ++t) {
            int idx = pick(1, m);
            int c = pick(-3, 3);
            if (c != 0)
                f.add_term(Variable::slack(static_cast<std::uint32_t>(idx)), Rational(c));
        }
        return f;
    };
    SlackProblem p;
    p.objective = random_form();
    for (int r = 0; r < rows; ++r) {
        LinearForm f = random_form();
        if (!f.is_zero())
            p.rows.push_back(std::move(f));
    }
    for (int i = 1; i <= m; ++i)
        p.bounded.insert(Variable::slack(static_cast<std::uint32_t>(i)));
    return p;
}

// Random information-measure problem over n <= 3 random variables: a random
// objective inequality and a few random constraints (equalities and
// inequalities over random measures).
inline ProblemStatement random_entropy_problem(std::mt19937_64& rng, int n = 3) {
    auto pick = [&rng](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i)
        names.push_back("X" + std::to_string(i));
    auto random_group = [&]() {
        VarGroup g;
        int mask = pick(1, (1 << n) - 1);
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i))
                g.push_back(names[static_cast<std::size_t>(i)]);
        return g;
    };
    auto random_measure = [&]() {
        switch (pick(0, 2)) {
            case 0:
                return Measure::entropy_of(random_group());
            case 1:
                return Measure::entropy_of(random_group(), random_group());
            default:
                return Measure::mutual(random_group(), random_group(),
                                       pick(0, 1) ? random_group() : VarGroup{});
        }
    };
    auto random_expr = [&]() {
        Expr e;
        int terms = pick(1, 3);
        for (int t = 0; t < terms; ++t) {
            int c = pick(-2, 2);
            if (c == 0)
                c = 1;
            e.push_back({Rational(c), random_measure()});
        }
        return e;
    };

    ProblemStatement ps;
    ps.vars = names;
    ps.objective.lhs = random_expr();
    ps.objective.rel = Relation::ge;
    ps.objective.rhs = pick(0, 1) ? random_expr() : Expr{};
    int constraints = pick(0, 3);
    for (int c = 0; c < constraints; ++c) {
        Statement s;
        s.lhs = random_expr();
        s.rel = pick(0, 1) ? Relation::eq : Relation::ge;
        s.rhs = Expr{};
        ps.constraints.push_back(std::move(s));
    }
    return ps;
}

// All 2^n - 1 joint entropies of a random joint distribution of n binary
// random variables (natural log base 2). Test-only; floating point.
inline std::map<std::uint32_t, double> random_entropy_vector(std::mt19937_64& rng, int n) {
    std::size_t outcomes = std::size_t(1) << n;
    std::vector<double> pmf(outcomes);
    std::uniform_real_distribution<double> unif(0.02, 1.0);
    double total = 0;
    for (auto& p : pmf) {
        p = unif(rng);
        total += p;
    }
    for (auto& p : pmf)
        p /= total;

    std::map<std::uint32_t, double> h;
    for (std::uint32_t mask = 1; mask < outcomes; ++mask) {
        // Marginal over the variables in mask.
        std::map<std::uint32_t, double> marginal;
        for (std::uint32_t w = 0; w < outcomes; ++w)
            marginal[w & mask] += pmf[w];
        double ent = 0;
        for (const auto& [w, p] : marginal)
            if (p > 0)
                ent -= p * std::log2(p);
        h[mask] = ent;
    }
    return h;
}

// Evaluates a joint-entropy form against a sampled entropy vector.
inline double evaluate(const LinearForm& f, const std::map<std::uint32_t, double>& h) {
    double v = 0;
    for (const auto& t : f.terms())
        v += t.coeff.get_d() * h.at(t.var.payload);
    return v;
}

}  // namespace geitip::testgen
