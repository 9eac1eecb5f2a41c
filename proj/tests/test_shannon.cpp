#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "geitip/errors.hpp"
#include "geitip/shannon.hpp"

using namespace geitip;

namespace {

LinearForm ent_form(std::initializer_list<std::pair<std::uint32_t, Rational>> terms) {
    LinearForm f;
    for (const auto& [mask, c] : terms)
        f.add_term(Variable::entropy(mask), c);
    return f;
}

}  // namespace

TEST_CASE("parsing statements and declarations") {
    ProblemStatement ps = parse(
        "# data processing\n"
        "vars X Y Z T\n"
        "I(X;T) <= I(Y;Z)\n"
        "I(X;Z|Y) = 0\n"
        "I(X,Y;T|Z) = 0\n");
    CHECK(ps.vars == std::vector<std::string>{"X", "Y", "Z", "T"});
    CHECK(ps.constraints.size() == 2);
    CHECK(ps.objective.rel == Relation::le);
    for (const auto& c : ps.constraints)
        CHECK(c.rel == Relation::eq);

    ProblemStatement ps2 = parse("vars X1 X2 X3 X4\nH(X1) >= H(X4)\n");
    CHECK(ps2.objective.rel == Relation::ge);
    CHECK(ps2.constraints.empty());
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse("vars X\nH(\n"), parse_error);
    CHECK_THROWS_AS(parse("vars X\nH(X) >\n"), parse_error);
    CHECK_THROWS_AS(parse("vars X\nH(Y) >= 0\n"), error);        // undeclared
    CHECK_THROWS_AS(parse("vars X\nH(X) >= 1\n"), parse_error);  // nonzero constant
    CHECK_THROWS_AS(parse("vars X\n"), error);                   // no objective
    try {
        parse("vars X\nH( >= 0\n");
        CHECK(false);
    } catch (const parse_error& e) {
        CHECK(e.line == 2);
        CHECK(e.column > 1);
    }
}

TEST_CASE("coefficients, scalars and juxtaposition") {
    ProblemStatement ps = parse(
        "vars W1 W2\n"
        "scalars alpha beta B\n"
        "4 alpha + 6 beta >= 3 B\n"
        "H(W1) <= alpha\n"
        "1/2 H(W1,W2) >= 0\n");
    CHECK(ps.scalars == std::vector<std::string>{"alpha", "beta", "B"});
    CHECK(ps.objective.lhs.size() == 2);
    CHECK(ps.objective.lhs[0].coeff == Rational(4));
    CHECK(ps.constraints[1].lhs[0].coeff == make_rational(1, 2));
}

TEST_CASE("print/parse round trip") {
    const char* text =
        "vars X Y Z T\n"
        "scalars alpha\n"
        "I(X;T) <= I(Y;Z)\n"
        "I(X;Z|Y) = 0\n"
        "-2 H(X|Y) + 1/2 I(X,Y;T|Z) >= alpha\n";
    ProblemStatement ps = parse(text);
    CHECK(parse(print(ps)) == ps);
}

TEST_CASE("measure expansion") {
    VariableUniverse u({"X1", "X2", "X3"});
    // I(X1;X2|X3) = h13 + h23 - h123 - h3
    CHECK(expand_measure(Measure::mutual({"X1"}, {"X2"}, {"X3"}), u) ==
          ent_form({{0b101, 1}, {0b110, 1}, {0b111, -1}, {0b100, -1}}));
    CHECK(expand_measure(Measure::entropy_of({"X1"}), u) == ent_form({{0b001, 1}}));
    // Empty condition drops the empty-set entropy.
    CHECK(expand_measure(Measure::mutual({"X1"}, {"X2"}), u) ==
          ent_form({{0b001, 1}, {0b010, 1}, {0b011, -1}}));
    CHECK(expand_measure(Measure::entropy_of({"X1"}, {"X2"}), u) ==
          ent_form({{0b011, 1}, {0b010, -1}}));
    CHECK_THROWS_AS(expand_measure(Measure::mutual({}, {"X1"}), u), domain_error);
}

TEST_CASE("self-information degenerates to conditional entropy") {
    VariableUniverse u({"X1", "X2", "X3"});
    CHECK(expand_measure(Measure::mutual({"X1"}, {"X1"}, {"X2", "X3"}), u) ==
          expand_measure(Measure::entropy_of({"X1"}, {"X2", "X3"}), u));
}

TEST_CASE("statement expansion orients the claim") {
    VariableUniverse u4({"X1", "X2", "X3", "X4"});
    Statement s;
    s.lhs = {{Rational(1), Measure::entropy_of({"X1"})}};
    s.rel = Relation::ge;
    s.rhs = {{Rational(1), Measure::entropy_of({"X4"})}};
    auto e = expand_statement(s, u4);
    CHECK_FALSE(e.equality);
    CHECK(e.form == ent_form({{0b0001, 1}, {0b1000, -1}}));

    // "<=" flips the sides.
    VariableUniverse udp({"X", "Y", "Z", "T"});
    Statement dp;
    dp.lhs = {{Rational(1), Measure::mutual({"X"}, {"T"})}};
    dp.rel = Relation::le;
    dp.rhs = {{Rational(1), Measure::mutual({"Y"}, {"Z"})}};
    auto edp = expand_statement(dp, udp);
    CHECK(edp.form == ent_form({{0b0010, 1}, {0b0100, 1}, {0b0110, -1},
                                {0b0001, -1}, {0b1000, -1}, {0b1001, 1}}));

    Statement trivial;
    trivial.lhs = {{Rational(1), Measure::entropy_of({"X"})}};
    trivial.rel = Relation::eq;
    trivial.rhs = trivial.lhs;
    auto et = expand_statement(trivial, udp);
    CHECK(et.equality);
    CHECK(et.form.is_zero());
}

TEST_CASE("elemental counts match the closed form") {
    auto closed = [](int n) -> std::size_t {
        if (n == 1)
            return 1;
        std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
        return static_cast<std::size_t>(n) + pairs * (std::size_t(1) << (n - 2));
    };
    for (int n = 1; n <= 10; ++n) {
        CHECK(elemental_count(n) == closed(n));
        if (n <= 8)
            CHECK(elemental_inequalities(n).size() == closed(n));
    }
    CHECK(elemental_count(4) == 28);
    CHECK(elemental_count(8) == 1800);
    CHECK(elemental_count(12) == 67596);
    CHECK(elemental_inequalities(12).size() == 67596);
    CHECK_THROWS_AS(elemental_count(0), domain_error);
    CHECK_THROWS_AS(elemental_count(21), domain_error);
}

TEST_CASE("elemental forms for two variables") {
    auto forms = elemental_inequalities(2);
    REQUIRE(forms.size() == 3);
    CHECK(forms[0] == ent_form({{0b11, 1}, {0b01, -1}}));             // H(X2|X1)
    CHECK(forms[1] == ent_form({{0b11, 1}, {0b10, -1}}));             // H(X1|X2)
    CHECK(forms[2] == ent_form({{0b01, 1}, {0b10, 1}, {0b11, -1}}));  // I(X1;X2)
    CHECK(elemental_inequalities(1) == std::vector<LinearForm>{ent_form({{0b1, 1}})});
}

TEST_CASE("elemental labels enumerate in step with the forms") {
    VariableUniverse u({"X1", "X2", "X3", "X4"});
    auto forms = elemental_inequalities(4);
    for (std::size_t i : {std::size_t(0), std::size_t(3), std::size_t(4), std::size_t(27)}) {
        Measure m = elemental_measure(4, i, u);
        CHECK(expand_measure(m, u) == forms[i]);
    }
    CHECK(print(elemental_measure(4, 0, u)) == "H(X4|X1,X2,X3)");
    CHECK(print(elemental_measure(4, 3, u)) == "H(X1|X2,X3,X4)");
    CHECK(print(elemental_measure(4, 27, u)) == "I(X1;X2)");
}

TEST_CASE("elemental forms are nonnegative on sampled distributions") {
    std::mt19937_64 rng(2024);
    for (int n = 2; n <= 4; ++n) {
        auto forms = elemental_inequalities(n);
        for (int round = 0; round < 8; ++round) {
            auto h = testgen::random_entropy_vector(rng, n);
            for (const auto& f : forms)
                CHECK(testgen::evaluate(f, h) >= -1e-9);
        }
    }
}

TEST_CASE("markov chains expand to interior constraints") {
    VariableUniverse u({"X", "Y", "Z", "T"});
    auto cs = markov_to_constraints({{"X"}, {"Y"}, {"Z"}, {"T"}}, u);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0] == expand_measure(Measure::mutual({"X"}, {"Z"}, {"Y"}), u));
    CHECK(cs[1] == expand_measure(Measure::mutual({"X", "Y"}, {"T"}, {"Z"}), u));

    CHECK(markov_to_constraints({{"X"}, {"Y"}, {"Z"}}, u).size() == 1);
    CHECK(markov_to_constraints({{"X"}, {"Y"}}, u).empty());
    CHECK_THROWS_AS(markov_to_constraints({{"X"}, {"X"}, {"Z"}}, u), domain_error);
}
