#include "geitip/variable.hpp"

#include <bit>
#include <sstream>

#include "geitip/errors.hpp"

namespace geitip {

Variable Variable::entropy(std::uint32_t subset_mask) {
    if (subset_mask == 0)
        throw domain_error("joint entropy of the empty set is identically zero");
    return {VarKind::joint_entropy, subset_mask};
}

Variable Variable::scalar(std::uint32_t ordinal) {
    return {VarKind::aux_scalar, ordinal};
}

Variable Variable::slack(std::uint32_t index) {
    if (index == 0)
        throw domain_error("slack indices are 1-based");
    return {VarKind::slack, index};
}

Variable Variable::coeff(std::uint32_t index) {
    if (index == 0)
        throw domain_error("combination-coefficient indices are 1-based");
    return {VarKind::comb_coeff, index};
}

bool precedes(Variable u, Variable v) {
    if (u.kind != v.kind)
        return static_cast<int>(u.kind) < static_cast<int>(v.kind);
    if (u.payload == v.payload)
        return false;
    if (u.kind == VarKind::joint_entropy) {
        int cu = std::popcount(u.payload);
        int cv = std::popcount(v.payload);
        if (cu != cv)
            return cu > cv;
        // Equal cardinality: the first position where the ascending subscript
        // sequences differ decides, larger subscript first. That position's
        // element is the lowest bit of the symmetric difference; the set NOT
        // containing it has the larger entry there.
        std::uint32_t diff = u.payload ^ v.payload;
        std::uint32_t low = diff & (~diff + 1);
        return (v.payload & low) != 0;
    }
    // Scalars by declaration order, slacks and coefficients by index.
    return u.payload < v.payload;
}

VariableUniverse::VariableUniverse(std::vector<std::string> rv_names,
                                   std::vector<std::string> scalar_names)
    : rv_names_(std::move(rv_names)), scalar_names_(std::move(scalar_names)) {
    if (rv_names_.size() > 20)
        throw domain_error("at most 20 random variables are supported");
}

std::uint32_t VariableUniverse::full_mask() const {
    return rv_names_.empty() ? 0u : (rv_names_.size() == 32 ? ~0u : (1u << rv_names_.size()) - 1u);
}

std::optional<int> VariableUniverse::rv_index(const std::string& name) const {
    for (std::size_t i = 0; i < rv_names_.size(); ++i)
        if (rv_names_[i] == name)
            return static_cast<int>(i) + 1;
    return std::nullopt;
}

std::optional<std::uint32_t> VariableUniverse::scalar_ordinal(const std::string& name) const {
    for (std::size_t i = 0; i < scalar_names_.size(); ++i)
        if (scalar_names_[i] == name)
            return static_cast<std::uint32_t>(i);
    return std::nullopt;
}

bool VariableUniverse::contains(Variable v) const {
    switch (v.kind) {
        case VarKind::joint_entropy:
            return v.payload != 0 && (v.payload & ~full_mask()) == 0;
        case VarKind::aux_scalar:
            return v.payload < scalar_names_.size();
        case VarKind::slack:
        case VarKind::comb_coeff:
            return v.payload >= 1;
    }
    return false;
}

void VariableUniverse::require(Variable v) const {
    if (!contains(v))
        throw universe_error("variable " + display(v) + " is not in this universe");
}

std::string VariableUniverse::display(Variable v) const {
    std::ostringstream out;
    switch (v.kind) {
        case VarKind::joint_entropy: {
            out << "h_{";
            bool first = true;
            for (int i = 0; i < 32; ++i) {
                if (v.payload & (1u << i)) {
                    if (!first)
                        out << ",";
                    out << (i + 1);
                    first = false;
                }
            }
            out << "}";
            break;
        }
        case VarKind::aux_scalar:
            if (v.payload < scalar_names_.size())
                out << scalar_names_[v.payload];
            else
                out << "s_" << v.payload;
            break;
        case VarKind::slack:
            out << "a_" << v.payload;
            break;
        case VarKind::comb_coeff:
            out << "p_" << v.payload;
            break;
    }
    return out.str();
}

std::vector<Variable> VariableUniverse::ordered_variables(std::uint32_t slack_count,
                                                          std::uint32_t coeff_count) const {
    std::vector<Variable> order;
    for (std::uint32_t i = 0; i < scalar_names_.size(); ++i)
        order.push_back(Variable::scalar(i));

    // Joint entropies, largest subscript sets first.
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 1; m <= full_mask() && full_mask() != 0; ++m)
        masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        return precedes(Variable::entropy(a), Variable::entropy(b));
    });
    for (auto m : masks)
        order.push_back(Variable::entropy(m));

    for (std::uint32_t i = 1; i <= slack_count; ++i)
        order.push_back(Variable::slack(i));
    for (std::uint32_t i = 1; i <= coeff_count; ++i)
        order.push_back(Variable::coeff(i));
    return order;
}

int VariableOrder::compare(Variable a, Variable b) const {
    universe_->require(a);
    universe_->require(b);
    if (a == b)
        return 0;
    return geitip::precedes(a, b) ? -1 : 1;
}

}  // namespace geitip
