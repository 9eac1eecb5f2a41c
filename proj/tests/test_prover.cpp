#include <doctest.h>

#include <random>

#include "fm_oracle.hpp"
#include "generators.hpp"
#include "geitip/bench.hpp"
#include "geitip/errors.hpp"
#include "geitip/prover.hpp"

using namespace geitip;

namespace {

Variable a(int i) { return Variable::slack(static_cast<std::uint32_t>(i)); }

ProofReport prove_text(const std::string& text, ProverOptions opt = {}) {
    return prove(parse(text), opt);
}

bool oracle_says(const ProblemStatement& ps) {
    ExpandedProblem ex = expand_problem(ps);
    return oracle::fm_implies(ex.objective, ex.ineqs, ex.eqs);
}

}  // namespace

TEST_CASE("data processing inequality is proved with a verified certificate") {
    NamedProblem np = fixture("data_processing");
    ProofReport r = prove(np.statement());
    CHECK(r.proved);
    CHECK(r.stats.lp_calls == 0);
    CHECK(verify_report(r, np.statement()));
}

TEST_CASE("four-variable fixture proves with a three-term unit certificate") {
    NamedProblem np = fixture("example_IV_1");
    ProofReport r = prove(np.statement(), {});
    REQUIRE(r.proved);
    CHECK(r.stats.attempts == 1);
    CHECK(r.stats.lp_calls == 0);
    REQUIRE(r.certificate);
    CHECK(r.certificate->ineq_mults.size() == 3);
    for (const auto& [i, mu] : r.certificate->ineq_mults)
        CHECK(mu == Rational(1));
    CHECK(verify_report(r, np.statement()));
}

TEST_CASE("slack fixtures prove with verified certificates") {
    for (const char* name : {"example_III_4", "example_III_5"}) {
        NamedProblem np = fixture(name);
        ProofReport r = prove_slack_problem(np.slack());
        CHECK(r.proved);
        CHECK(verify_report(r, np.slack()));
    }
}

TEST_CASE("the five-slack example reduces by presolve alone") {
    NamedProblem np = fixture("example_III_4");
    ProofReport r = prove_slack_problem(np.slack());
    REQUIRE(r.proved);
    CHECK(r.stats.attempts == 1);
    CHECK(r.stats.lp_calls == 0);
    REQUIRE(r.certificate);
    for (const auto& [i, mu] : r.certificate->ineq_mults)
        CHECK(sgn(mu) > 0);
    CHECK(verify_report(r, np.slack()));
}

TEST_CASE("unprovable objectives report the reduced system") {
    ProofReport r = prove_text("vars X1 X2\nH(X1) >= H(X1,X2)\n");
    CHECK_FALSE(r.proved);
    CHECK_FALSE(r.reason.empty());
    CHECK(r.minimal.has_value());
}

TEST_CASE("free variables defeat the run before any search") {
    ProofReport r = prove_text("vars X1 X2\nH(X1) + H(X2) >= 3 H(X1)\n");
    CHECK_FALSE(r.proved);
}

TEST_CASE("identities from pure expansion") {
    ProofReport r = prove_text("vars X Y\nH(X) = H(X|Y) + I(X;Y)\n");
    CHECK(r.proved);
    REQUIRE(r.certificate);
    CHECK(r.certificate->ineq_mults.empty());
    CHECK(r.certificate->eq_mults.empty());
    REQUIRE(r.reverse_certificate);
}

TEST_CASE("identities via implied equalities") {
    const char* text =
        "vars X1 X2\n"
        "H(X1) = 0\n"
        "I(X1;X2) = 0\n"
        "H(X1|X2) = 0\n";
    ProofReport r = prove_text(text);
    REQUIRE(r.proved);
    CHECK(verify_report(r, parse(text)));
}

TEST_CASE("unprovable identities are rejected") {
    ProofReport r = prove_text("vars X Y\nH(X) = H(Y)\n");
    CHECK_FALSE(r.proved);
}

TEST_CASE("identity proofs certify both directions") {
    ProblemStatement ps = parse(
        "vars X Y\n"
        "I(X;Y) = H(X)\n"
        "H(X|Y) = 0\n");
    ProofReport r = prove(ps);
    REQUIRE(r.proved);
    REQUIRE(r.certificate);
    REQUIRE(r.reverse_certificate);
    ExpandedProblem ex = expand_problem(ps);
    CHECK(verify_certificate(*r.certificate, ex, false));
    CHECK(verify_certificate(*r.reverse_certificate, ex, true));

    ProblemStatement forward = ps;
    forward.objective.rel = Relation::ge;
    CHECK(prove(forward).proved);
    ProblemStatement backward = ps;
    backward.objective.rel = Relation::le;
    CHECK(prove(backward).proved);
}

TEST_CASE("scaling the objective scales the certificate") {
    NamedProblem np = fixture("example_IV_1");
    ProofReport base = prove(np.statement());

    ProblemStatement scaled = np.statement();
    for (auto& t : scaled.objective.lhs)
        t.coeff *= make_rational(3, 2);
    for (auto& t : scaled.objective.rhs)
        t.coeff *= make_rational(3, 2);
    ProofReport r = prove(scaled);
    REQUIRE(r.proved);
    REQUIRE(base.proved);
    CHECK(verify_report(r, scaled));
    REQUIRE(r.certificate);
    REQUIRE(base.certificate);
    for (const auto& [i, mu] : base.certificate->ineq_mults) {
        auto it = r.certificate->ineq_mults.find(i);
        REQUIRE(it != r.certificate->ineq_mults.end());
        CHECK(it->second == mu * make_rational(3, 2));
    }
}

TEST_CASE("negated bounds are rejected with a verdict, not an error") {
    SlackProblem p;
    p.objective = -LinearForm::unit(a(1));
    p.bounded = {a(1), a(2)};
    ProofReport r = prove_slack_problem(p);
    CHECK_FALSE(r.proved);
}

TEST_CASE("verdicts agree with the elimination oracle on slack problems") {
    std::mt19937_64 rng(2025);
    int provable = 0, total = 0;
    for (int round = 0; round < 150; ++round) {
        SlackProblem p = testgen::random_slack_problem(rng, 7, 4);
        std::vector<LinearForm> units;
        for (Variable v : p.bounded)
            units.push_back(LinearForm::unit(v));
        bool truth = oracle::fm_implies(p.objective, units, p.rows);

        ProverOptions opt;
        opt.max_attempts = 4;
        opt.seed = round;
        ProofReport r = prove_slack_problem(p, opt);
        CHECK(r.proved == truth);
        if (r.proved) {
            ++provable;
            CHECK(verify_report(r, p));
        }
        ++total;
    }
    CHECK(provable > 10);
    CHECK(provable < total);
}

TEST_CASE("verdicts agree with the elimination oracle on entropy problems") {
    std::mt19937_64 rng(424242);
    int provable = 0;
    for (int round = 0; round < 60; ++round) {
        ProblemStatement ps = testgen::random_entropy_problem(rng, 3);
        bool truth = oracle_says(ps);
        ProverOptions opt;
        opt.max_attempts = 4;
        opt.seed = round;
        ProofReport r = prove(ps, opt);
        CHECK(r.proved == truth);
        if (r.proved) {
            ++provable;
            CHECK(verify_report(r, ps));
        }
    }
    CHECK(provable > 5);
}

TEST_CASE("certificates with tampered multipliers fail verification") {
    NamedProblem np = fixture("example_IV_1");
    ExpandedProblem ex = expand_problem(np.statement());
    ProofReport r = prove(np.statement());
    REQUIRE(r.proved);
    Certificate bad = *r.certificate;
    auto it = bad.ineq_mults.begin();
    it->second = -it->second;
    CHECK_FALSE(verify_certificate(bad, ex, false));

    Certificate out_of_range = *r.certificate;
    out_of_range.ineq_mults[ex.ineqs.size() + 5] = Rational(1);
    CHECK_THROWS_AS(verify_certificate(out_of_range, ex, false), domain_error);
}

TEST_CASE("requesting the minimal system on success attaches it") {
    NamedProblem np = fixture("example_IV_1");
    ProverOptions opt;
    opt.want_minimal = true;
    ProofReport r = prove(np.statement(), opt);
    REQUIRE(r.proved);
    REQUIRE(r.minimal);
    CHECK(r.minimal->rows.size() <= 2);
}
