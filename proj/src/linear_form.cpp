#include "geitip/linear_form.hpp"

#include <algorithm>
#include <sstream>

#include "geitip/errors.hpp"

namespace geitip {

LinearForm LinearForm::unit(Variable v) {
    LinearForm f;
    f.terms_.push_back({v, Rational(1)});
    return f;
}

LinearForm LinearForm::term(Variable v, Rational c) {
    LinearForm f;
    if (sgn(c) != 0)
        f.terms_.push_back({v, std::move(c)});
    return f;
}

LinearForm LinearForm::from_terms(std::vector<Term> terms) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const Term& a, const Term& b) { return precedes(a.var, b.var); });
    LinearForm f;
    f.terms_.reserve(terms.size());
    for (auto& t : terms) {
        if (!f.terms_.empty() && f.terms_.back().var == t.var)
            f.terms_.back().coeff += t.coeff;
        else
            f.terms_.push_back(std::move(t));
        if (!f.terms_.empty() && sgn(f.terms_.back().coeff) == 0)
            f.terms_.pop_back();
    }
    return f;
}

const Term& LinearForm::leading() const {
    if (terms_.empty())
        throw domain_error("zero form has no leading term");
    return terms_.front();
}

namespace {

struct TermVarLess {
    bool operator()(const Term& t, Variable v) const { return precedes(t.var, v); }
};

}  // namespace

bool LinearForm::contains(Variable v) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), v, TermVarLess{});
    return it != terms_.end() && it->var == v;
}

Rational LinearForm::coeff(Variable v) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), v, TermVarLess{});
    if (it != terms_.end() && it->var == v)
        return it->coeff;
    return Rational(0);
}

void LinearForm::add_term(Variable v, const Rational& c) {
    if (sgn(c) == 0)
        return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), v, TermVarLess{});
    if (it != terms_.end() && it->var == v) {
        it->coeff += c;
        if (sgn(it->coeff) == 0)
            terms_.erase(it);
    } else {
        terms_.insert(it, {v, c});
    }
}

void LinearForm::add_scaled(const Rational& c, const LinearForm& g) {
    if (sgn(c) == 0 || g.is_zero())
        return;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + g.terms_.size());
    auto a = terms_.begin();
    auto b = g.terms_.begin();
    while (a != terms_.end() || b != g.terms_.end()) {
        if (b == g.terms_.end() || (a != terms_.end() && precedes(a->var, b->var))) {
            merged.push_back(std::move(*a));
            ++a;
        } else if (a == terms_.end() || precedes(b->var, a->var)) {
            merged.push_back({b->var, c * b->coeff});
            ++b;
        } else {
            Rational sum = a->coeff + c * b->coeff;
            if (sgn(sum) != 0)
                merged.push_back({a->var, std::move(sum)});
            ++a;
            ++b;
        }
    }
    terms_ = std::move(merged);
}

void LinearForm::scale(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return;
    }
    for (auto& t : terms_)
        t.coeff *= c;
}

void LinearForm::remove(Variable v) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), v, TermVarLess{});
    if (it != terms_.end() && it->var == v)
        terms_.erase(it);
}

LinearForm& LinearForm::operator+=(const LinearForm& g) {
    add_scaled(Rational(1), g);
    return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& g) {
    add_scaled(Rational(-1), g);
    return *this;
}

LinearForm LinearForm::operator-() const {
    LinearForm f = *this;
    f.scale(Rational(-1));
    return f;
}

bool operator==(const LinearForm& a, const LinearForm& b) {
    if (a.terms_.size() != b.terms_.size())
        return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].var != b.terms_[i].var || a.terms_[i].coeff != b.terms_[i].coeff)
            return false;
    return true;
}

bool LinearForm::all_vars(const std::function<bool(Variable)>& pred) const {
    for (const auto& t : terms_)
        if (!pred(t.var))
            return false;
    return true;
}

LinearForm solve_for(const LinearForm& f, Variable v) {
    auto c = f.coeff(v);
    if (sgn(c) == 0)
        throw domain_error("cannot solve for a variable absent from the form");
    // f = c*v + rest = 0  =>  v = -rest/c
    LinearForm rest = f;
    rest.remove(v);
    rest.scale(Rational(-1) / c);
    return rest;
}

LinearForm substitute(const LinearForm& f, Variable v, const LinearForm& replacement) {
    if (replacement.contains(v))
        throw domain_error("cyclic substitution: replacement contains the variable");
    auto c = f.coeff(v);
    if (sgn(c) == 0)
        return f;
    LinearForm out = f;
    out.remove(v);
    out.add_scaled(c, replacement);
    return out;
}

int lex_compare(const LinearForm& a, const LinearForm& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::size_t n = std::min(ta.size(), tb.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (ta[i].var != tb[i].var)
            return precedes(ta[i].var, tb[i].var) ? -1 : 1;
        int c = cmp(ta[i].coeff, tb[i].coeff);
        if (c != 0)
            return c > 0 ? -1 : 1;  // larger coefficient first
    }
    if (ta.size() != tb.size())
        return ta.size() > tb.size() ? -1 : 1;  // longer form first
    return 0;
}

std::vector<LinearForm> lex_sorted(std::vector<LinearForm> forms) {
    std::sort(forms.begin(), forms.end(), FormLexLess{});
    return forms;
}

std::string to_string(const LinearForm& f, const VariableUniverse& u) {
    if (f.is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : f.terms()) {
        int s = sgn(t.coeff);
        Rational mag = abs(t.coeff);
        if (first) {
            if (s < 0)
                out << "-";
        } else {
            out << (s < 0 ? " - " : " + ");
        }
        if (mag != 1)
            out << to_string(mag) << " ";
        out << u.display(t.var);
        first = false;
    }
    return out.str();
}

}  // namespace geitip
