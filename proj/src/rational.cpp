#include "bellvol/rational.hpp"

#include "bellvol/errors.hpp"

#include <cctype>

namespace bellvol {

std::string to_string(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
    std::size_t k = 0;
    if (k < s.size() && (s[k] == '-' || s[k] == '+')) ++k;
    if (k == s.size()) throw DomainError("malformed rational '" + std::string(whole) + "'");
    for (std::size_t m = k; m < s.size(); ++m) {
        if (!std::isdigit(static_cast<unsigned char>(s[m])))
            throw DomainError("malformed rational '" + std::string(whole) + "'");
    }
    std::string digits(s);
    if (digits.front() == '+') digits.erase(0, 1);
    return BigInt(digits);
}

}  // namespace

Rational parse_rational(std::string_view s) {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(s, s));
    const BigInt num = parse_integer(s.substr(0, slash), s);
    const BigInt den = parse_integer(s.substr(slash + 1), s);
    if (den == 0) throw DomainError("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
}

}  // namespace bellvol
