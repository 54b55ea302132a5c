#include "presdist/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace presdist {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty()) throw std::invalid_argument("empty rational literal: '" + text + "'");

    Rational result;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw std::invalid_argument("malformed rational literal: '" + text + "'");
        }
        BigInt d(den);
        if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        result = Rational(BigInt(num), d);
    } else if (dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (!all_digits(whole) || !all_digits(frac)) {
            throw std::invalid_argument("malformed rational literal: '" + text + "'");
        }
        BigInt scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
        result = Rational(BigInt(whole) * scale + BigInt(frac.empty() ? "0" : frac), scale);
    } else {
        if (!all_digits(s)) throw std::invalid_argument("malformed rational literal: '" + text + "'");
        result = Rational(BigInt(s));
    }
    return negative ? Rational(-result) : result;
}

std::string rational_to_string(const Rational& value) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational rational_pow(const Rational& base, unsigned exponent) {
    using boost::multiprecision::pow;
    const BigInt num = pow(boost::multiprecision::numerator(base), exponent);
    const BigInt den = pow(boost::multiprecision::denominator(base), exponent);
    return Rational(num, den);
}

}  // namespace presdist
