#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "assouad/errors.hpp"

namespace assouad {

using Rational = boost::multiprecision::cpp_rational;
using BigInt   = boost::multiprecision::cpp_int;
using BigFloat = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;

enum class Backend { exact, floating };

constexpr unsigned kDefaultFloatDigits = 60;

/// A number with one of two backends: an exact rational, or an MPFR float
/// carrying its decimal precision.  Rationals are kept in lowest terms with
/// positive denominator (cpp_rational guarantees this).  Arithmetic between
/// different backends, or between floats of different precision, throws
/// backend_mismatch rather than coercing.
class Scalar {
public:
    Scalar() : value_(Rational(0)) {}

    static Scalar exact(long n) { return Scalar(Rational(n)); }
    static Scalar exact(const Rational& q) { return Scalar(q); }
    static Scalar exact(const BigInt& p, const BigInt& q);

    static Scalar floating(double v, unsigned digits = kDefaultFloatDigits);
    static Scalar floating(const BigFloat& v);

    // zero/one/n in the backend of a prototype value
    static Scalar zero_like(const Scalar& proto);
    static Scalar one_like(const Scalar& proto);
    static Scalar int_like(const Scalar& proto, long n);

    // Parses "p/q", an integer, or (float backend only) a decimal string.
    static Scalar parse(const std::string& text, Backend backend,
                        unsigned digits = kDefaultFloatDigits);

    Backend backend() const {
        return std::holds_alternative<Rational>(value_) ? Backend::exact
                                                        : Backend::floating;
    }
    bool is_exact() const { return backend() == Backend::exact; }
    unsigned digits() const;  // float backend only; throws on exact

    const Rational& rational() const;
    const BigFloat& big_float() const;

    double to_double() const;
    std::string str() const;  // exact: "p/q" or "n"; float: shortest round-trip decimal

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;

    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

    bool operator==(const Scalar& o) const { return cmp(o) == 0; }
    bool operator!=(const Scalar& o) const { return cmp(o) != 0; }
    bool operator<(const Scalar& o) const  { return cmp(o) < 0; }
    bool operator<=(const Scalar& o) const { return cmp(o) <= 0; }
    bool operator>(const Scalar& o) const  { return cmp(o) > 0; }
    bool operator>=(const Scalar& o) const { return cmp(o) >= 0; }

    int sign() const;
    Scalar abs() const;
    bool is_zero() const { return sign() == 0; }

    /// Integer power, exponent may be negative (value must be nonzero then).
    Scalar pow_int(long e) const;

    // Trig in degrees.  Exact backend supports quarter-turn angles only
    // (cos/sin land in {-1,0,1}); anything else throws domain_error.
    Scalar cos_deg() const;
    Scalar sin_deg() const;

    /// Canonical key string for dedup tables: exact values render exactly,
    /// floats are rounded to a 1e-12 grid.
    std::string canonical_key() const;

    /// Throws backend_mismatch unless o shares this scalar's backend/precision.
    void check_backend(const Scalar& o, const char* context) const {
        require_same_backend(o, context);
    }

private:
    explicit Scalar(Rational q) : value_(std::move(q)) {}
    explicit Scalar(BigFloat f) : value_(std::move(f)) {}

    int cmp(const Scalar& o) const;
    void require_same_backend(const Scalar& o, const char* op) const;

    std::variant<Rational, BigFloat> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace assouad
