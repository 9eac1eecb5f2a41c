#include <doctest.h>

#include <random>

#include "fm_oracle.hpp"
#include "geitip/errors.hpp"
#include "geitip/lp.hpp"

using namespace geitip;

namespace {

Variable a(int i) { return Variable::slack(static_cast<std::uint32_t>(i)); }

LinearForm slacks(std::initializer_list<std::pair<int, Rational>> terms) {
    LinearForm f;
    for (const auto& [idx, c] : terms)
        f.add_term(a(idx), c);
    return f;
}

SlackSet range(std::initializer_list<int> ids) {
    SlackSet s;
    for (int i : ids)
        s.insert(a(i));
    return s;
}

}  // namespace

TEST_CASE("coefficient system for the twelve-slack reduced problem") {
    // F3 = 1/2 a1 - a10 + a11 + a12 with one solved row a9 = -a10 + a11 + a12.
    ResidualProblem p;
    p.objective = slacks({{1, make_rational(1, 2)}, {10, -1}, {11, 1}, {12, 1}});
    p.pivots = {a(9)};
    p.echelon = {slacks({{9, 1}, {10, 1}, {11, -1}, {12, -1}})};
    p.bounded = range({1, 9, 10, 11, 12});

    FeasibilitySystem sys = build_system(p);
    CHECK(sys.unknowns == 1);
    REQUIRE(sys.rows.size() == 4);
    // Tracked variables arrive in rank order: a1, a10, a11, a12.
    CHECK(sys.rows[0].tracked == a(1));
    CHECK(sys.rows[0].constant == make_rational(1, 2));
    CHECK(sys.rows[0].coef[0] == Rational(0));
    CHECK(sys.rows[1].tracked == a(10));
    CHECK(sys.rows[1].constant == Rational(-1));
    CHECK(sys.rows[1].coef[0] == Rational(1));  // p1 - 1 >= 0
    CHECK(sys.rows[2].constant == Rational(1));
    CHECK(sys.rows[2].coef[0] == Rational(-1));  // 1 - p1 >= 0
    CHECK(sys.rows[3].constant == Rational(1));
    CHECK(sys.rows[3].coef[0] == Rational(-1));

    auto witness = feasible(sys);
    REQUIRE(witness);
    CHECK((*witness)[0] == Rational(1));
    CHECK(conic_from_witness(p, *witness) == slacks({{1, make_rational(1, 2)}, {9, 1}}));
}

TEST_CASE("system without solved rows decides by the sign pattern") {
    ResidualProblem p;
    p.objective = slacks({{1, 1}, {2, 2}});
    p.bounded = range({1, 2});
    auto w = feasible(build_system(p));
    REQUIRE(w);
    CHECK(w->empty());

    ResidualProblem bad;
    bad.objective = slacks({{1, -1}});
    bad.bounded = range({1});
    CHECK_FALSE(feasible(build_system(bad)));
}

TEST_CASE("a fixed negative coefficient is infeasible regardless of multipliers") {
    // F3 = -a2 with solved row a1 = a3: a2's coefficient stays -1.
    ResidualProblem p;
    p.objective = slacks({{2, -1}});
    p.pivots = {a(1)};
    p.echelon = {slacks({{1, 1}, {3, -1}})};
    p.bounded = range({1, 2, 3});
    CHECK_FALSE(feasible(build_system(p)));
}

TEST_CASE("empty system is feasible with the empty witness") {
    FeasibilitySystem sys;
    sys.unknowns = 0;
    auto w = feasible(sys);
    REQUIRE(w);
    CHECK(w->empty());
}

TEST_CASE("unbounded variables pin their coefficient to zero") {
    // Objective a1 with a1 unbounded and no rows: its coefficient 1 cannot
    // vanish, so the system is infeasible.
    ResidualProblem p;
    p.objective = LinearForm::unit(a(1));
    p.bounded = range({2});
    CHECK_FALSE(feasible(build_system(p)));
}

TEST_CASE("solved-form contract violations are rejected") {
    ResidualProblem p;
    p.objective = slacks({{3, 1}});
    p.pivots = {a(1)};
    p.echelon = {slacks({{1, 2}, {2, -1}})};  // pivot coefficient 2
    p.bounded = range({1, 2, 3});
    CHECK_THROWS_AS(build_system(p), domain_error);

    ResidualProblem q;
    q.objective = LinearForm::unit(a(1));  // objective mentions the pivot
    q.pivots = {a(1)};
    q.echelon = {slacks({{1, 1}, {2, -1}})};
    q.bounded = range({2});
    CHECK_THROWS_AS(build_system(q), domain_error);
}

TEST_CASE("feasibility agrees with the elimination oracle") {
    std::mt19937_64 rng(99);
    auto pick = [&rng](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    int checked = 0;
    for (int round = 0; round < 600; ++round) {
        // Random affine system over up to 4 nonnegative unknowns.
        FeasibilitySystem sys;
        sys.unknowns = static_cast<std::size_t>(pick(1, 4));
        int rows = pick(1, 5);
        for (int r = 0; r < rows; ++r) {
            FeasibilitySystem::Row row;
            row.coef.assign(sys.unknowns, Rational(0));
            for (std::size_t j = 0; j < sys.unknowns; ++j)
                row.coef[j] = Rational(pick(-3, 3));
            row.constant = Rational(pick(-3, 3));
            row.equality = pick(0, 4) == 0;
            row.tracked = a(r + 1);
            sys.rows.push_back(std::move(row));
        }

        // Oracle formulation over combination-coefficient variables.
        std::vector<oracle::AffineRow> orows;
        for (const auto& row : sys.rows) {
            oracle::AffineRow orow;
            for (std::size_t j = 0; j < sys.unknowns; ++j)
                orow.form.add_term(Variable::coeff(static_cast<std::uint32_t>(j + 1)),
                                   row.coef[j]);
            orow.constant = row.constant;
            orows.push_back(orow);
            if (row.equality) {
                oracle::AffineRow neg;
                neg.form = -orow.form;
                neg.constant = -orow.constant;
                orows.push_back(std::move(neg));
            }
        }
        for (std::size_t j = 0; j < sys.unknowns; ++j) {
            oracle::AffineRow bound;
            bound.form.add_term(Variable::coeff(static_cast<std::uint32_t>(j + 1)), Rational(1));
            bound.constant = 0;
            orows.push_back(std::move(bound));
        }

        auto witness = feasible(sys);
        bool oracle_says = oracle::fm_feasible(orows);
        CHECK(witness.has_value() == oracle_says);
        ++checked;

        // Witnesses must satisfy every row exactly.
        if (witness) {
            for (const auto& row : sys.rows) {
                Rational v = row.constant;
                for (std::size_t j = 0; j < sys.unknowns; ++j)
                    v += row.coef[j] * (*witness)[j];
                if (row.equality)
                    CHECK(sgn(v) == 0);
                else
                    CHECK(sgn(v) >= 0);
            }
            for (const auto& pj : *witness)
                CHECK(sgn(pj) >= 0);
        }
    }
    CHECK(checked == 600);
}
