#pragma once

#include <map>
#include <set>
#include <vector>

#include "geitip/certificate.hpp"
#include "geitip/linear_form.hpp"

namespace geitip {

using SlackSet = std::set<Variable, VarPrecedes>;

// A problem in slack space: prove `objective >= 0` subject to the equality
// rows and a_i >= 0 for every slack in `bounded`.
struct SlackProblem {
    LinearForm objective;
    std::vector<LinearForm> rows;
    SlackSet bounded;
};

// Reduced row echelon form of a set of forms under the global variable
// order: rows are monic, pairwise pivot-free, listed pivot-first. Unique for
// a given row space.
class Rref {
public:
    Rref() = default;
    explicit Rref(const std::vector<LinearForm>& input);

    std::size_t rank() const { return rows_.size(); }
    // Rows ordered by pivot, highest first.
    std::vector<LinearForm> rows() const;
    std::vector<Variable> pivots() const;
    bool is_pivot(Variable v) const { return rows_.count(v) != 0; }
    // Non-pivot variables mentioned by the rows.
    std::vector<Variable> free_variables() const;
    // The solved form U with pivot = U (row is pivot - U).
    LinearForm solved(Variable pivot) const;

    // Eliminates every pivot variable from f.
    LinearForm reduce(LinearForm f) const;

private:
    void insert(LinearForm f);
    std::map<Variable, LinearForm, VarPrecedes> rows_;
};

// A surviving inequality constraint after equality elimination, remembering
// the first original constraint it came from.
struct ReducedConstraint {
    LinearForm form;
    std::size_t origin;
};

// Substitutes the equality system's pivots through every inequality form,
// dropping forms that vanish and duplicates (first occurrence wins).
std::vector<ReducedConstraint> dimension_reduce(const std::vector<LinearForm>& ineqs,
                                                const Rref& eqs);

// Outcome of converting `objective >= 0 s.t. constraints >= 0` into slack
// space: constraint i becomes the equality C_i - a_{i+1} = 0; the echelon
// form of those rows splits into rows still touching the original variables
// (mixed_rows, every pivot an original variable) and rows over slacks only
// (slack_rows). The objective is reduced by the mixed rows; any original
// variables it still mentions are free and make the problem unprovable.
struct SlackReduction {
    LinearForm objective;
    std::vector<LinearForm> slack_rows;
    std::vector<LinearForm> mixed_rows;
    std::vector<Variable> blocked;  // original variables left in the objective
    std::size_t slack_count = 0;
};

SlackReduction lp_reduce(const LinearForm& objective,
                         const std::vector<ReducedConstraint>& constraints);

// Sign pattern of an equality row over slacks. A forcing row (all
// coefficients one sign) pins every variable in it to zero; a row with
// exactly one odd-signed coefficient makes that variable's bound redundant
// and lets it be substituted out.
enum class RowPattern { forcing, implied_free, mixed };

struct RowClass {
    RowPattern pattern{RowPattern::mixed};
    Variable free_var{};  // implied_free only
};

RowClass classify_row(const LinearForm& f);

// Observation hook for presolve rewrites (used to build reduction traces).
struct PresolveObserver {
    virtual ~PresolveObserver() = default;
    virtual void on_zero(Variable) {}
    virtual void on_substitute(Variable, const LinearForm&) {}
};

// Runs the forcing / implied-free rewrite rules to their fixed point.
// Zeroings are reported to the trail when given.
SlackProblem presolve(SlackProblem p, CertTrail* trail, PresolveObserver* observer = nullptr);

}  // namespace geitip
