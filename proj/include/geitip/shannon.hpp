#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "geitip/linear_form.hpp"

namespace geitip {

// ---------------------------------------------------------------------------
// Statement syntax tree. The printer reproduces the accepted input grammar,
// so parse(print(ps)) == ps.
// ---------------------------------------------------------------------------

using VarGroup = std::vector<std::string>;  // nonempty list of declared names

struct Measure {
    enum class Kind { entropy, mutual_info, scalar };
    Kind kind{Kind::entropy};
    VarGroup left;         // H(left | cond), I(left; right | cond)
    VarGroup right;        // mutual information only
    VarGroup cond;         // may be empty
    std::string scalar;    // Kind::scalar only

    static Measure entropy_of(VarGroup g, VarGroup cond = {});
    static Measure mutual(VarGroup a, VarGroup b, VarGroup cond = {});
    static Measure scalar_named(std::string name);

    friend bool operator==(const Measure&, const Measure&) = default;
};

struct ExprTerm {
    Rational coeff{1};
    Measure measure;
    friend bool operator==(const ExprTerm&, const ExprTerm&) = default;
};

// A sum of terms; an empty list encodes the literal 0.
using Expr = std::vector<ExprTerm>;

enum class Relation { ge, le, eq };

struct Statement {
    Expr lhs;
    Relation rel{Relation::ge};
    Expr rhs;
    friend bool operator==(const Statement&, const Statement&) = default;
};

struct ProblemStatement {
    std::vector<std::string> vars;      // declared random variables, in order
    std::vector<std::string> scalars;   // declared auxiliary scalars, in order
    Statement objective;                // first statement in the input
    std::vector<Statement> constraints;

    VariableUniverse universe() const { return VariableUniverse(vars, scalars); }
    friend bool operator==(const ProblemStatement&, const ProblemStatement&) = default;
};

// ---------------------------------------------------------------------------
// Parsing and printing
// ---------------------------------------------------------------------------

// Grammar (one statement per line, '#' starts a comment):
//   vars X1 X2 X3
//   scalars alpha beta
//   <expr> (>=|<=|=) <expr>
// where expr is a signed sum of terms, each an optional rational coefficient
// (3, 1/2, -2) times H(A,B), H(A|B), I(A;B), I(A,B;C|D) or a scalar name.
// The first statement is the objective; the rest are constraints.
ProblemStatement parse(const std::string& text);

std::string print(const ProblemStatement& ps);
std::string print(const Statement& s);
std::string print(const Measure& m);

// ---------------------------------------------------------------------------
// Expansion into joint-entropy coordinates
// ---------------------------------------------------------------------------

// I(G;G'|G'') = h(G,G'') + h(G',G'') - h(G,G',G'') - h(G''), with empty-set
// entropies dropped; H(G|G'') = h(G,G'') - h(G''); H(G) = h(G).
LinearForm expand_measure(const Measure& m, const VariableUniverse& u);

struct ExpandedStatement {
    LinearForm form;  // claim: form >= 0 (or form = 0)
    bool equality{false};
};

// ">=": lhs - rhs;  "<=": rhs - lhs;  "=": lhs - rhs flagged as equality.
ExpandedStatement expand_statement(const Statement& s, const VariableUniverse& u);

// ---------------------------------------------------------------------------
// Elemental inequalities
// ---------------------------------------------------------------------------

// Number of elemental inequalities: n + C(n,2) * 2^(n-2) for n >= 2, 1 for n = 1.
std::size_t elemental_count(int n);

// Canonical order: H(X_i | X_rest) for i = 1..n, then I(X_i;X_j|X_K) with
// i ascending, j ascending (i < j), K enumerated as an ascending bitmask.
std::vector<LinearForm> elemental_inequalities(int n);

// Measure describing the i-th elemental inequality (for reporting).
Measure elemental_measure(int n, std::size_t index, const VariableUniverse& u);

// ---------------------------------------------------------------------------
// Markov chains
// ---------------------------------------------------------------------------

// Z1 -> Z2 -> ... -> Zk as equalities I(Z1..Z_{i-1}; Z_{i+1} | Z_i) = 0 for
// interior i, expanded to joint entropies. Adjacent groups must not overlap.
std::vector<LinearForm> markov_to_constraints(const std::vector<VarGroup>& chain,
                                              const VariableUniverse& u);

// Same chain as syntax-tree statements (used by built-in problems).
std::vector<Statement> markov_statements(const std::vector<VarGroup>& chain);

}  // namespace geitip
