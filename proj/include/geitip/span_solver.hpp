#pragma once

#include <map>
#include <optional>

#include "geitip/linear_form.hpp"

namespace geitip {

// Incremental Gauss-Jordan over a set of tagged source forms that tracks, for
// every pivot row, its expression as a combination of the sources. Used to
// answer "is f in the span, and with which multipliers".
class SpanSolver {
public:
    using Multipliers = std::map<int, Rational>;

    // Adds a source (dependent sources are fine; they produce no pivot).
    void add_source(int tag, const LinearForm& f);

    // Adds a source; when it is dependent on the earlier ones, returns the
    // dependency combination d (including d[tag] = 1) with
    // sum d[t] * source[t] == 0.
    std::optional<Multipliers> add_source_dependency(int tag, const LinearForm& f);

    // Multipliers m with f == sum m[tag] * source[tag], or nullopt.
    std::optional<Multipliers> solve(const LinearForm& f) const;

    bool in_span(const LinearForm& f) const;

    // Eliminates every pivot variable from f, accumulating into `used` the
    // source multipliers of the combination that was subtracted, so that
    // f == residual + sum used[t] * source[t].
    LinearForm reduce_tracked(LinearForm f, Multipliers& used) const;

    std::size_t rank() const { return rows_.size(); }
    // Pivot rows in pivot order (highest first), with their provenance.
    std::vector<std::pair<LinearForm, Multipliers>> pivot_rows() const;

private:
    struct Row {
        LinearForm form;  // monic, leading variable is the pivot
        Multipliers prov;
    };
    std::map<Variable, Row, VarPrecedes> rows_;
};

}  // namespace geitip
