#include "assouad/scalar.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace assouad {

namespace {

unsigned digits_of(const BigFloat& f) {
    return static_cast<unsigned>(f.precision());
}

BigFloat make_bf(unsigned digits) {
    BigFloat v;
    v.precision(digits);
    return v;
}

} // namespace

Scalar Scalar::exact(const BigInt& p, const BigInt& q) {
    if (q == 0) throw domain_error("rational with zero denominator");
    return Scalar(Rational(p, q));
}

Scalar Scalar::floating(double v, unsigned digits) {
    BigFloat f = make_bf(digits);
    f = v;
    return Scalar(f);
}

Scalar Scalar::floating(const BigFloat& v) { return Scalar(v); }

Scalar Scalar::zero_like(const Scalar& proto) {
    if (proto.is_exact()) return exact(0);
    return floating(0.0, proto.digits());
}

Scalar Scalar::one_like(const Scalar& proto) {
    if (proto.is_exact()) return exact(1);
    return floating(1.0, proto.digits());
}

Scalar Scalar::int_like(const Scalar& proto, long n) {
    if (proto.is_exact()) return exact(n);
    return floating(static_cast<double>(n), proto.digits());
}

Scalar Scalar::parse(const std::string& text, Backend backend, unsigned digits) {
    std::string s = text;
    // trim
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw spec_error("empty numeric literal");
    s = s.substr(b, e - b + 1);

    auto slash = s.find('/');
    bool is_decimal = s.find('.') != std::string::npos ||
                      s.find('e') != std::string::npos ||
                      s.find('E') != std::string::npos;
    try {
        if (slash != std::string::npos) {
            BigInt p(s.substr(0, slash));
            BigInt q(s.substr(slash + 1));
            if (backend == Backend::exact) return exact(p, q);
            if (q == 0) throw domain_error("rational with zero denominator");
            BigFloat f = make_bf(digits);
            f.assign(p.str());
            BigFloat d = make_bf(digits);
            d.assign(q.str());
            f /= d;
            return Scalar(f);
        }
        if (is_decimal) {
            if (backend == Backend::exact)
                throw spec_error("decimal literal '" + s +
                                 "' not allowed on the exact backend; write it as a "
                                 "rational p/q (irrational constants such as the "
                                 "bandt-graf t must come from their builtin with an "
                                 "explicit truncation)");
            BigFloat f = make_bf(digits);
            f.assign(s);
            return Scalar(f);
        }
        // plain integer
        BigInt n(s);
        if (backend == Backend::exact) return exact(Rational(n));
        BigFloat f = make_bf(digits);
        f.assign(n.str());
        return Scalar(f);
    } catch (const std::runtime_error& err) {
        throw spec_error("cannot parse numeric literal '" + s + "': " + err.what());
    }
}

unsigned Scalar::digits() const {
    if (is_exact()) throw domain_error("digits() called on exact scalar");
    return digits_of(std::get<BigFloat>(value_));
}

const Rational& Scalar::rational() const {
    if (!is_exact()) throw backend_mismatch("rational() on float scalar");
    return std::get<Rational>(value_);
}

const BigFloat& Scalar::big_float() const {
    if (is_exact()) throw backend_mismatch("big_float() on exact scalar");
    return std::get<BigFloat>(value_);
}

double Scalar::to_double() const {
    if (is_exact()) return std::get<Rational>(value_).convert_to<double>();
    return std::get<BigFloat>(value_).convert_to<double>();
}

std::string Scalar::str() const {
    if (is_exact()) {
        const Rational& q = std::get<Rational>(value_);
        return q.str();
    }
    const BigFloat& f = std::get<BigFloat>(value_);
    return f.str(digits_of(f));
}

void Scalar::require_same_backend(const Scalar& o, const char* op) const {
    if (backend() != o.backend())
        throw backend_mismatch(std::string("backend mismatch in '") + op +
                               "': exact and float scalars cannot mix");
    if (!is_exact() && digits() != o.digits())
        throw backend_mismatch(std::string("precision mismatch in '") + op + "': " +
                               std::to_string(digits()) + " vs " +
                               std::to_string(o.digits()) + " digits");
}

Scalar Scalar::operator-() const {
    if (is_exact()) return Scalar(Rational(-std::get<Rational>(value_)));
    BigFloat f = std::get<BigFloat>(value_);
    f = -f;
    return Scalar(f);
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_backend(o, "+");
    if (is_exact())
        return Scalar(Rational(std::get<Rational>(value_) + std::get<Rational>(o.value_)));
    BigFloat r = std::get<BigFloat>(value_);
    r += std::get<BigFloat>(o.value_);
    return Scalar(r);
}

Scalar Scalar::operator-(const Scalar& o) const {
    require_same_backend(o, "-");
    if (is_exact())
        return Scalar(Rational(std::get<Rational>(value_) - std::get<Rational>(o.value_)));
    BigFloat r = std::get<BigFloat>(value_);
    r -= std::get<BigFloat>(o.value_);
    return Scalar(r);
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_backend(o, "*");
    if (is_exact())
        return Scalar(Rational(std::get<Rational>(value_) * std::get<Rational>(o.value_)));
    BigFloat r = std::get<BigFloat>(value_);
    r *= std::get<BigFloat>(o.value_);
    return Scalar(r);
}

Scalar Scalar::operator/(const Scalar& o) const {
    require_same_backend(o, "/");
    if (o.is_zero()) throw domain_error("division by zero scalar");
    if (is_exact())
        return Scalar(Rational(std::get<Rational>(value_) / std::get<Rational>(o.value_)));
    BigFloat r = std::get<BigFloat>(value_);
    r /= std::get<BigFloat>(o.value_);
    return Scalar(r);
}

int Scalar::cmp(const Scalar& o) const {
    require_same_backend(o, "compare");
    if (is_exact()) {
        const Rational& a = std::get<Rational>(value_);
        const Rational& b = std::get<Rational>(o.value_);
        return a < b ? -1 : (a == b ? 0 : 1);
    }
    const BigFloat& a = std::get<BigFloat>(value_);
    const BigFloat& b = std::get<BigFloat>(o.value_);
    return a < b ? -1 : (a == b ? 0 : 1);
}

int Scalar::sign() const {
    if (is_exact()) {
        const Rational& q = std::get<Rational>(value_);
        return q < 0 ? -1 : (q == 0 ? 0 : 1);
    }
    const BigFloat& f = std::get<BigFloat>(value_);
    return f < 0 ? -1 : (f == 0 ? 0 : 1);
}

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

Scalar Scalar::pow_int(long e) const {
    if (e == 0) return one_like(*this);
    if (is_exact()) {
        const Rational& q = std::get<Rational>(value_);
        if (e < 0 && q == 0) throw domain_error("zero to negative power");
        unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
        BigInt num = boost::multiprecision::pow(boost::multiprecision::numerator(q), mag);
        BigInt den = boost::multiprecision::pow(boost::multiprecision::denominator(q), mag);
        if (e < 0) return Scalar(Rational(den, num));
        return Scalar(Rational(num, den));
    }
    const BigFloat& f = std::get<BigFloat>(value_);
    if (e < 0 && f == 0) throw domain_error("zero to negative power");
    BigFloat r = make_bf(digits_of(f));
    r = boost::multiprecision::pow(f, static_cast<int>(e));
    return Scalar(r);
}

namespace {

// cos/sin of an exact rational angle in degrees when it is a multiple of 90.
bool quarter_turn_cos_sin(const Rational& deg, int& c, int& s) {
    Rational m = deg / 90;
    BigInt num = boost::multiprecision::numerator(m);
    BigInt den = boost::multiprecision::denominator(m);
    if (den != 1) return false;
    long k = static_cast<long>(num % 4);
    if (k < 0) k += 4;
    static const int ctab[4] = {1, 0, -1, 0};
    static const int stab[4] = {0, 1, 0, -1};
    c = ctab[k];
    s = stab[k];
    return true;
}

} // namespace

Scalar Scalar::cos_deg() const {
    if (is_exact()) {
        int c, s;
        if (!quarter_turn_cos_sin(std::get<Rational>(value_), c, s))
            throw domain_error("exact backend supports trig of quarter-turn angles only "
                               "(angle " + str() + " deg)");
        return exact(c);
    }
    const BigFloat& f = std::get<BigFloat>(value_);
    unsigned d = digits_of(f);
    BigFloat pi = make_bf(d);
    mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
    BigFloat rad = pi;
    rad *= f;
    rad /= 180;
    BigFloat r = cos(rad);
    return Scalar(r);
}

Scalar Scalar::sin_deg() const {
    if (is_exact()) {
        int c, s;
        if (!quarter_turn_cos_sin(std::get<Rational>(value_), c, s))
            throw domain_error("exact backend supports trig of quarter-turn angles only "
                               "(angle " + str() + " deg)");
        return exact(s);
    }
    const BigFloat& f = std::get<BigFloat>(value_);
    unsigned d = digits_of(f);
    BigFloat pi = make_bf(d);
    mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
    BigFloat rad = pi;
    rad *= f;
    rad /= 180;
    BigFloat r = sin(rad);
    return Scalar(r);
}

std::string Scalar::canonical_key() const {
    if (is_exact()) return std::get<Rational>(value_).str();
    // round to the 1e-12 grid
    const BigFloat& f = std::get<BigFloat>(value_);
    BigFloat scaled = make_bf(digits_of(f));
    scaled = f * 1000000000000.0;
    BigInt grid = boost::multiprecision::round(scaled).convert_to<BigInt>();
    return "g" + grid.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

} // namespace assouad
