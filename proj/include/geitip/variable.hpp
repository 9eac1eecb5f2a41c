#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace geitip {

// Coordinate kinds, listed in elimination-priority order: a variable of an
// earlier kind outranks every variable of a later kind. Auxiliary scalars
// (rate bounds and the like) must outrank joint entropies so that equality
// constraints tying a scalar to an entropy eliminate the scalar.
enum class VarKind : std::uint8_t {
    aux_scalar = 0,
    joint_entropy = 1,
    slack = 2,
    comb_coeff = 3,
};

// A self-describing coordinate of the ambient space.
//   joint_entropy: nonempty bitmask over the random variables (bit i-1 <-> X_i)
//   aux_scalar:    0-based declaration ordinal
//   slack:         1-based index of a_i
//   comb_coeff:    1-based index of p_l
struct Variable {
    VarKind kind{VarKind::joint_entropy};
    std::uint32_t payload{0};

    static Variable entropy(std::uint32_t subset_mask);
    static Variable scalar(std::uint32_t ordinal);
    static Variable slack(std::uint32_t index);
    static Variable coeff(std::uint32_t index);

    friend bool operator==(const Variable&, const Variable&) = default;
};

// Strict total order; precedes(u, v) means u outranks v (u is listed first
// and eliminated first). Within joint entropies: larger subscript set first;
// on equal cardinality the subscript sequences are compared positionally and
// the larger entry wins. Scalars, slacks and combination coefficients rank by
// declaration order / index.
bool precedes(Variable u, Variable v);

struct VarPrecedes {
    bool operator()(Variable a, Variable b) const { return precedes(a, b); }
};

// The declared coordinate universe of one problem: n random variables plus
// optional named scalars. Slack and combination-coefficient indices are open
// ended; membership checks only validate their shape.
class VariableUniverse {
public:
    VariableUniverse() = default;
    VariableUniverse(std::vector<std::string> rv_names,
                     std::vector<std::string> scalar_names = {});

    int rv_count() const { return static_cast<int>(rv_names_.size()); }
    std::uint32_t full_mask() const;
    const std::vector<std::string>& rv_names() const { return rv_names_; }
    const std::vector<std::string>& scalar_names() const { return scalar_names_; }

    std::optional<int> rv_index(const std::string& name) const;        // 1-based
    std::optional<std::uint32_t> scalar_ordinal(const std::string& name) const;

    bool contains(Variable v) const;
    void require(Variable v) const;  // throws universe_error

    // "h_{1,2}", "alpha", "a_3", "p_2"
    std::string display(Variable v) const;

    // Entire coordinate order, highest priority first, for the given number
    // of slack / combination variables.
    std::vector<Variable> ordered_variables(std::uint32_t slack_count = 0,
                                            std::uint32_t coeff_count = 0) const;

private:
    std::vector<std::string> rv_names_;
    std::vector<std::string> scalar_names_;
};

// Comparison facade bound to a universe; validates membership before
// comparing, unlike the raw container comparator.
class VariableOrder {
public:
    explicit VariableOrder(const VariableUniverse& u) : universe_(&u) {}

    // -1 when a outranks b, 0 on equality, +1 otherwise.
    int compare(Variable a, Variable b) const;
    bool precedes(Variable a, Variable b) const { return compare(a, b) < 0; }

private:
    const VariableUniverse* universe_;
};

}  // namespace geitip
