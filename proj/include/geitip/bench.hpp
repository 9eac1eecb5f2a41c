#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geitip/elimination.hpp"
#include "geitip/shannon.hpp"

namespace geitip {

// A bijection on {1,2,3,4}, acting on storage-problem variable names:
// W_i -> W_{pi(i)} and S_{i,j} -> S_{pi(i),pi(j)}.
struct Permutation {
    std::array<int, 4> map;  // map[i-1] = image of i

    int apply(int i) const;
    static std::vector<Permutation> all();
};

// Applies the permutation to a variable name of the form "Wi" or "Sij".
std::string apply_permutation(const Permutation& pi, const std::string& rv_name);

struct ExpectedMeta {
    std::optional<std::size_t> coordinates;            // joint entropies + scalars
    std::optional<std::size_t> equalities;             // expanded equality constraints
    std::optional<std::size_t> inequalities;           // elementals + extra inequalities
    std::optional<std::size_t> reduced_inequalities;   // after equality elimination
    std::optional<std::size_t> slack_rows;             // equality rows after slack conversion
    bool provable = true;
};

struct NamedProblem {
    std::string name;
    std::variant<ProblemStatement, SlackProblem> payload;
    ExpectedMeta expected;

    bool is_statement() const { return std::holds_alternative<ProblemStatement>(payload); }
    const ProblemStatement& statement() const { return std::get<ProblemStatement>(payload); }
    const SlackProblem& slack() const { return std::get<SlackProblem>(payload); }

    // The problem in the accepted input grammar (statement payloads only).
    std::string to_input_text() const;
};

// The 8-variable network-coding inequality with fourteen equality
// constraints; provable without any feasibility fallback.
NamedProblem dfz_problem();

// The (4,3,3) exact-repair storage bound 4*alpha + 6*beta >= 3B on twelve
// variables, with symmetry, encoding and rank constraints. Large: 4098
// coordinates, 22945 equalities, 67608 inequalities.
NamedProblem tian_problem();

// Built-in worked examples: example_III_4, example_III_5 (slack space),
// example_IV_1, data_processing (information measures).
NamedProblem fixture(const std::string& name);
std::vector<std::string> fixture_names();

// All --bench names accepted by the CLI.
std::vector<std::string> bench_names();
NamedProblem bench(const std::string& name);

}  // namespace geitip
