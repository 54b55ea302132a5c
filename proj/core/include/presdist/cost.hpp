#pragma once

#include "presdist/rational.hpp"

#include <string>

namespace presdist {

/// Cost exponent p in [1, inf]. Integer p keeps all cost arithmetic exact;
/// non-integer finite p falls back to doubles; p = inf switches the
/// aggregation from sums to maxima.
class PExponent {
  public:
    enum class Kind { Integer, Real, Infinity };

    static PExponent integer(unsigned p);
    static PExponent real(double p);
    static PExponent infinity();

    /// Accepts "1", "3", "2.5", "inf". Throws std::invalid_argument for
    /// values below 1 or unparsable text.
    static PExponent parse(const std::string& text);

    Kind kind() const { return kind_; }
    bool is_integer() const { return kind_ == Kind::Integer; }
    bool is_infinite() const { return kind_ == Kind::Infinity; }
    unsigned integer_value() const { return int_value_; }
    double real_value() const;

    std::string to_string() const;

  private:
    PExponent(Kind kind, unsigned iv, double rv) : kind_(kind), int_value_(iv), real_value_(rv) {}

    Kind kind_;
    unsigned int_value_;
    double real_value_;
};

/// A p-cost aggregate. For finite p the payload is the sum of p-th powers of
/// coordinate differences (exact rational for integer p, double otherwise);
/// for p = inf it is the maximum absolute difference (always exact). The
/// `unbounded` flag marks structurally infinite costs, e.g. an infinite
/// interval matched against a finite one.
struct Cost {
    bool exact = true;
    bool unbounded = false;
    Rational value{};
    double approx = 0.0;

    static Cost zero(const PExponent& p);
    static Cost infinite();

    /// |delta|^p for finite p, |delta| for p = inf.
    static Cost term(const PExponent& p, const Rational& delta);
    /// ||(dx, dy)||_p^p for finite p, max(|dx|, |dy|) for p = inf.
    static Cost term2(const PExponent& p, const Rational& dx, const Rational& dy);

    /// Sum for finite p, max for p = inf.
    Cost& accumulate(const PExponent& p, const Cost& other);

    /// The actual cost d^p = payload^{1/p} (payload for p = inf), as a double.
    double to_double(const PExponent& p) const;

    /// Canonical string of the exact payload; decimal repr in float mode.
    std::string payload_string() const;

    bool operator==(const Cost& other) const;
};

/// Total order on costs of the same mode; unbounded compares greatest.
int compare(const Cost& a, const Cost& b);

}  // namespace presdist
