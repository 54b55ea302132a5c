#include "presdist/cost.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace presdist {

PExponent PExponent::integer(unsigned p) {
    if (p < 1) throw std::invalid_argument("cost exponent must be >= 1");
    return PExponent(Kind::Integer, p, static_cast<double>(p));
}

PExponent PExponent::real(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("cost exponent must be >= 1");
    if (p == std::floor(p) && p <= 1e9) return integer(static_cast<unsigned>(p));
    return PExponent(Kind::Real, 0, p);
}

PExponent PExponent::infinity() {
    return PExponent(Kind::Infinity, 0, std::numeric_limits<double>::infinity());
}

PExponent PExponent::parse(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "oo") return infinity();
    try {
        size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return real(v);
    } catch (const std::exception&) {
        throw std::invalid_argument("unparsable cost exponent: '" + text + "'");
    }
}

double PExponent::real_value() const {
    return kind_ == Kind::Integer ? static_cast<double>(int_value_) : real_value_;
}

std::string PExponent::to_string() const {
    switch (kind_) {
        case Kind::Integer: return std::to_string(int_value_);
        case Kind::Infinity: return "inf";
        case Kind::Real: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6g", real_value_);
            return buf;
        }
    }
    return "";
}

Cost Cost::zero(const PExponent& p) {
    Cost c;
    c.exact = p.kind() != PExponent::Kind::Real;
    return c;
}

Cost Cost::infinite() {
    Cost c;
    c.unbounded = true;
    return c;
}

Cost Cost::term(const PExponent& p, const Rational& delta) {
    Cost c = zero(p);
    const Rational mag = rational_abs(delta);
    switch (p.kind()) {
        case PExponent::Kind::Integer: c.value = rational_pow(mag, p.integer_value()); break;
        case PExponent::Kind::Infinity: c.value = mag; break;
        case PExponent::Kind::Real: c.approx = std::pow(rational_to_double(mag), p.real_value()); break;
    }
    return c;
}

Cost Cost::term2(const PExponent& p, const Rational& dx, const Rational& dy) {
    Cost c = term(p, dx);
    c.accumulate(p, term(p, dy));
    return c;
}

Cost& Cost::accumulate(const PExponent& p, const Cost& other) {
    if (other.unbounded) unbounded = true;
    if (unbounded) return *this;
    if (p.is_infinite()) {
        value = std::max(value, other.value);
    } else if (p.is_integer()) {
        value += other.value;
    } else {
        approx += other.approx;
    }
    return *this;
}

double Cost::to_double(const PExponent& p) const {
    if (unbounded) return std::numeric_limits<double>::infinity();
    switch (p.kind()) {
        case PExponent::Kind::Integer:
            return std::pow(rational_to_double(value), 1.0 / p.integer_value());
        case PExponent::Kind::Infinity: return rational_to_double(value);
        case PExponent::Kind::Real: return std::pow(approx, 1.0 / p.real_value());
    }
    return 0.0;
}

std::string Cost::payload_string() const {
    if (unbounded) return "inf";
    if (exact) return rational_to_string(value);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", approx);
    return buf;
}

bool Cost::operator==(const Cost& other) const {
    if (unbounded || other.unbounded) return unbounded == other.unbounded;
    if (exact != other.exact) return false;
    return exact ? value == other.value : approx == other.approx;
}

int compare(const Cost& a, const Cost& b) {
    if (a.unbounded && b.unbounded) return 0;
    if (a.unbounded) return 1;
    if (b.unbounded) return -1;
    if (a.exact && b.exact) {
        if (a.value < b.value) return -1;
        if (b.value < a.value) return 1;
        return 0;
    }
    const double x = a.exact ? rational_to_double(a.value) : a.approx;
    const double y = b.exact ? rational_to_double(b.value) : b.approx;
    if (x < y) return -1;
    if (y < x) return 1;
    return 0;
}

}  // namespace presdist
