#pragma once

#include <functional>
#include <vector>

#include "geitip/rational.hpp"
#include "geitip/variable.hpp"

namespace geitip {

struct Term {
    Variable var;
    Rational coeff;
};

// Sparse homogeneous linear form with exact rational coefficients. Terms are
// kept sorted with the leading (highest-ranked) variable first and never
// store a zero coefficient; the zero form has no terms. Forms are values:
// all operations are pure and results are canonical, so equal forms compare
// equal structurally regardless of how they were computed.
class LinearForm {
public:
    LinearForm() = default;

    static LinearForm unit(Variable v);
    static LinearForm term(Variable v, Rational c);
    static LinearForm from_terms(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Term& leading() const;

    bool contains(Variable v) const;
    Rational coeff(Variable v) const;  // zero when absent

    void add_term(Variable v, const Rational& c);
    void add_scaled(const Rational& c, const LinearForm& g);  // *this += c*g
    void scale(const Rational& c);
    void remove(Variable v);

    LinearForm& operator+=(const LinearForm& g);
    LinearForm& operator-=(const LinearForm& g);
    LinearForm operator-() const;

    friend LinearForm operator+(LinearForm f, const LinearForm& g) { return f += g; }
    friend LinearForm operator-(LinearForm f, const LinearForm& g) { return f -= g; }
    friend LinearForm operator*(const Rational& c, LinearForm f) {
        f.scale(c);
        return f;
    }
    friend bool operator==(const LinearForm&, const LinearForm&);

    bool all_vars(const std::function<bool(Variable)>& pred) const;

private:
    std::vector<Term> terms_;
};

// Solves f = 0 for v: returns A with f = 0 <=> v = A and v not in A.
LinearForm solve_for(const LinearForm& f, Variable v);

// Replaces v by `replacement` everywhere in f (identity when v is absent).
// The replacement must not contain v.
LinearForm substitute(const LinearForm& f, Variable v, const LinearForm& replacement);

// Three-way comparison in list order: negative when a is listed before b.
// Leading variables compare first, then leading coefficients (larger first),
// then the tails recursively; a longer form outranks its proper prefix.
int lex_compare(const LinearForm& a, const LinearForm& b);

struct FormLexLess {
    bool operator()(const LinearForm& a, const LinearForm& b) const {
        return lex_compare(a, b) < 0;
    }
};

// Deterministic sequence; the indexing used for sets of forms everywhere.
std::vector<LinearForm> lex_sorted(std::vector<LinearForm> forms);

std::string to_string(const LinearForm& f, const VariableUniverse& u);

}  // namespace geitip
