#include "geitip/rational.hpp"

#include "geitip/errors.hpp"

namespace geitip {

Rational make_rational(long num, long den) {
    if (den == 0)
        throw domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    try {
        Rational q(text);
        if (q.get_den() == 0)
            throw domain_error("rational with zero denominator: " + text);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw domain_error("malformed rational literal: " + text);
    }
}

std::string to_string(const Rational& q) {
    return q.get_str();
}

}  // namespace geitip
