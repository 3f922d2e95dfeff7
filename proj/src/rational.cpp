#include "tspan/rational.hpp"

#include <cctype>

#include "tspan/errors.hpp"

namespace tspan {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

Integer parse_integer(const std::string& text, const std::string& original) {
    std::string body = text;
    bool negative = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        negative = body[0] == '-';
        body = body.substr(1);
    }
    if (!all_digits(body)) {
        throw ParseError("not a rational number: '" + original + "'");
    }
    Integer value(body);
    return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rational(parse_integer(text, text));
    }
    Integer num = parse_integer(text.substr(0, slash), text);
    Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) {
        throw ParseError("zero denominator: '" + text + "'");
    }
    // Division canonicalizes; the raw two-argument constructor does not
    // normalize signs.
    return Rational(num) / Rational(den);
}

std::string to_string(const Rational& value) {
    return value.str();
}

Rational pow2_inverse(unsigned k) {
    Integer den = Integer(1) << k;
    return Rational(1) / Rational(den);
}

std::string to_string(const RationalVector& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ", ";
        out += values[i].str();
    }
    out += "]";
    return out;
}

}  // namespace tspan
