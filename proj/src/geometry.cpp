#include "assouad/geometry.hpp"

#include <sstream>

namespace assouad {

std::string Point::str() const {
    if (dim == 1) return x.str();
    return "(" + x.str() + ", " + y.str() + ")";
}

Point operator+(const Point& a, const Point& b) {
    if (a.dim != b.dim) throw domain_error("point dimension mismatch");
    Point r;
    r.dim = a.dim;
    r.x = a.x + b.x;
    r.y = a.dim == 2 ? a.y + b.y : Scalar::zero_like(r.x);
    return r;
}

Point operator-(const Point& a, const Point& b) {
    if (a.dim != b.dim) throw domain_error("point dimension mismatch");
    Point r;
    r.dim = a.dim;
    r.x = a.x - b.x;
    r.y = a.dim == 2 ? a.y - b.y : Scalar::zero_like(r.x);
    return r;
}

Similarity Similarity::line(Scalar ratio, int sign, Scalar tx) {
    if (ratio.sign() <= 0) throw domain_error("similarity ratio must be positive");
    if (sign != 1 && sign != -1) throw domain_error("1D orthogonal part must be +1 or -1");
    Similarity s;
    s.dim_ = 1;
    s.reflect_ = sign < 0;
    s.angle_deg_ = Scalar::zero_like(ratio);
    s.translation_ = Point::line(std::move(tx));
    s.ratio_ = std::move(ratio);
    s.ratio_.check_backend(s.translation_.x, "similarity fields");
    return s;
}

Similarity Similarity::plane(Scalar ratio, Scalar angle_deg, bool reflect,
                             Scalar tx, Scalar ty) {
    if (ratio.sign() <= 0) throw domain_error("similarity ratio must be positive");
    Similarity s;
    s.dim_ = 2;
    s.reflect_ = reflect;
    s.angle_deg_ = std::move(angle_deg);
    s.translation_ = Point::plane(std::move(tx), std::move(ty));
    s.ratio_ = std::move(ratio);
    s.ratio_.check_backend(s.angle_deg_, "similarity fields");
    s.ratio_.check_backend(s.translation_.x, "similarity fields");
    s.ratio_.check_backend(s.translation_.y, "similarity fields");
    s.normalize_angle();
    return s;
}

Similarity Similarity::identity(int dim, Backend backend, unsigned digits) {
    Scalar one = backend == Backend::exact ? Scalar::exact(1)
                                           : Scalar::floating(1.0, digits);
    Scalar zero = Scalar::zero_like(one);
    if (dim == 1) return line(one, 1, zero);
    return plane(one, zero, false, zero, Scalar::zero_like(one));
}

void Similarity::normalize_angle() {
    if (dim_ != 2) return;
    Scalar full = Scalar::int_like(angle_deg_, 360);
    if (angle_deg_ >= Scalar::zero_like(angle_deg_) && angle_deg_ < full) return;
    if (angle_deg_.is_exact()) {
        Rational a = angle_deg_.rational();
        Rational q = a / 360;
        BigInt k = boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
        if (q < 0 && k * boost::multiprecision::denominator(q) != boost::multiprecision::numerator(q))
            --k;  // floor division
        Rational m = a - Rational(k) * 360;
        angle_deg_ = Scalar::exact(m);
    } else {
        BigFloat a = angle_deg_.big_float();
        BigFloat f = full.big_float();
        BigFloat m = fmod(a, f);
        if (m < 0) m += f;
        angle_deg_ = Scalar::floating(m);
    }
}

Point Similarity::apply(const Point& p) const {
    if (p.dim != dim_) throw domain_error("point/map dimension mismatch");
    if (dim_ == 1) {
        Scalar v = ratio_ * p.x;
        if (reflect_) v = -v;
        return Point::line(v + translation_.x);
    }
    // O = R(angle) * M^reflect
    Scalar px = p.x;
    Scalar py = reflect_ ? -p.y : p.y;
    Scalar c = angle_deg_.cos_deg();
    Scalar s = angle_deg_.sin_deg();
    Scalar rx = ratio_ * (c * px - s * py) + translation_.x;
    Scalar ry = ratio_ * (s * px + c * py) + translation_.y;
    return Point::plane(std::move(rx), std::move(ry));
}

Similarity Similarity::compose(const Similarity& inner) const {
    if (dim_ != inner.dim_) throw domain_error("compose: dimension mismatch");
    ratio_.check_backend(inner.ratio_, "compose");
    Similarity r;
    r.dim_ = dim_;
    r.ratio_ = ratio_ * inner.ratio_;
    if (dim_ == 1) {
        r.reflect_ = reflect_ != inner.reflect_;
        r.angle_deg_ = Scalar::zero_like(ratio_);
        Scalar t = ratio_ * inner.translation_.x;
        if (reflect_) t = -t;
        r.translation_ = Point::line(t + translation_.x);
        return r;
    }
    // angles: R(a) M^f R(b) M^g = R(a + (-1)^f b) M^(f xor g)
    r.reflect_ = reflect_ != inner.reflect_;
    r.angle_deg_ = reflect_ ? angle_deg_ - inner.angle_deg_
                            : angle_deg_ + inner.angle_deg_;
    r.translation_ = apply(inner.translation_);
    r.normalize_angle();
    return r;
}

Similarity Similarity::inverse() const {
    if (ratio_.sign() <= 0) throw domain_error("inverse: ratio must be positive");
    Similarity r;
    r.dim_ = dim_;
    Scalar inv_ratio = Scalar::one_like(ratio_) / ratio_;
    if (dim_ == 1) {
        // S(x) = sigma*c*x + t  =>  S^-1(x) = (sigma/c)*x - sigma*t/c
        r.reflect_ = reflect_;
        r.angle_deg_ = Scalar::zero_like(ratio_);
        Scalar t = inv_ratio * translation_.x;
        r.translation_ = Point::line(reflect_ ? t : -t);
        r.ratio_ = std::move(inv_ratio);
        return r;
    }
    // O^-1 = (R(a) M^f)^-1 = M^f R(-a) = R((-1)^f * -a ... ) normalized to R,M order:
    //   f=0: R(-a); f=1: M R(-a) = R(a) M, so stored angle stays a.
    r.reflect_ = reflect_;
    r.angle_deg_ = reflect_ ? angle_deg_ : -angle_deg_;
    r.ratio_ = inv_ratio;
    r.translation_ = Point::plane(Scalar::zero_like(ratio_), Scalar::zero_like(ratio_));
    r.normalize_angle();
    // translation: S^-1(x) = 1/c O^-1 x - 1/c O^-1 t
    Point ot = r.apply(translation_); // currently translation-free: gives 1/c O^-1 t
    r.translation_ = Point::plane(-ot.x, -ot.y);
    return r;
}

Point Similarity::fixed_point() const {
    if (ratio_ >= Scalar::one_like(ratio_))
        throw domain_error("fixed_point: map is not contracting (ratio >= 1)");
    if (dim_ == 1) {
        // p = t / (1 - s*c)
        Scalar sc = reflect_ ? -ratio_ : ratio_;
        return Point::line(translation_.x / (Scalar::one_like(ratio_) - sc));
    }
    // solve (I - cO) p = t
    Scalar c = angle_deg_.cos_deg();
    Scalar s = angle_deg_.sin_deg();
    // O = R(angle) M^f: columns (c, s),(−s, c) times M
    Scalar o11 = ratio_ * c;
    Scalar o12 = ratio_ * (reflect_ ? s : -s);
    Scalar o21 = ratio_ * s;
    Scalar o22 = ratio_ * (reflect_ ? -c : c);
    Scalar one = Scalar::one_like(ratio_);
    Scalar a11 = one - o11, a12 = -o12;
    Scalar a21 = -o21, a22 = one - o22;
    Scalar det = a11 * a22 - a12 * a21;
    if (det.is_zero()) throw domain_error("fixed_point: singular system");
    Scalar px = (translation_.x * a22 - a12 * translation_.y) / det;
    Scalar py = (a11 * translation_.y - a21 * translation_.x) / det;
    return Point::plane(std::move(px), std::move(py));
}

Scalar Similarity::identity_distance() const {
    // evaluate x -> S(x) - x at the cube corners, take the max norm
    Scalar best = Scalar::zero_like(ratio_);
    Scalar zero = Scalar::zero_like(ratio_);
    Scalar one = Scalar::one_like(ratio_);
    if (dim_ == 1) {
        for (int i = 0; i < 2; ++i) {
            Point corner = Point::line(i ? one : zero);
            Scalar v = (apply(corner) - corner).max_norm();
            if (v > best) best = v;
        }
        return best;
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Point corner = Point::plane(i ? one : zero, j ? one : zero);
            Scalar v = (apply(corner) - corner).max_norm();
            if (v > best) best = v;
        }
    return best;
}

bool Similarity::orthogonal_is_identity() const {
    if (reflect_) return false;
    if (dim_ == 1) return true;
    return angle_deg_.is_zero();
}

bool Similarity::is_identity() const {
    if (!orthogonal_is_identity()) return false;
    if (ratio_ != Scalar::one_like(ratio_)) return false;
    if (!translation_.x.is_zero()) return false;
    if (dim_ == 2 && !translation_.y.is_zero()) return false;
    return true;
}

void Similarity::box_image(Scalar& lo_x, Scalar& hi_x, Scalar& lo_y, Scalar& hi_y) const {
    Scalar zero = Scalar::zero_like(ratio_);
    Scalar one = Scalar::one_like(ratio_);
    bool first = true;
    auto feed = [&](const Point& p) {
        if (first) {
            lo_x = hi_x = p.x;
            if (dim_ == 2) { lo_y = hi_y = p.y; }
            first = false;
            return;
        }
        if (p.x < lo_x) lo_x = p.x;
        if (p.x > hi_x) hi_x = p.x;
        if (dim_ == 2) {
            if (p.y < lo_y) lo_y = p.y;
            if (p.y > hi_y) hi_y = p.y;
        }
    };
    if (dim_ == 1) {
        feed(apply(Point::line(zero)));
        feed(apply(Point::line(one)));
        lo_y = hi_y = zero;
        return;
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            feed(apply(Point::plane(i ? one : zero, j ? one : zero)));
}

std::string Similarity::str() const {
    std::ostringstream os;
    if (dim_ == 1) {
        os << (reflect_ ? "-" : "") << ratio_.str() << "*x";
        if (!translation_.x.is_zero()) os << " + " << translation_.x.str();
    } else {
        os << ratio_.str() << "*R(" << angle_deg_.str() << "deg)";
        if (reflect_) os << "*M";
        os << "*x + (" << translation_.x.str() << ", " << translation_.y.str() << ")";
    }
    return os.str();
}

std::string Similarity::canonical_key() const {
    std::string k = ratio_.canonical_key();
    k += '|';
    k += reflect_ ? 'r' : '.';
    if (dim_ == 2) {
        k += angle_deg_.canonical_key();
        k += '|';
    }
    k += translation_.x.canonical_key();
    if (dim_ == 2) {
        k += '|';
        k += translation_.y.canonical_key();
    }
    return k;
}

bool Similarity::same_map(const Similarity& o) const {
    if (dim_ != o.dim_ || reflect_ != o.reflect_) return false;
    if (ratio_ != o.ratio_) return false;
    if (dim_ == 2 && angle_deg_ != o.angle_deg_) return false;
    if (translation_.x != o.translation_.x) return false;
    if (dim_ == 2 && translation_.y != o.translation_.y) return false;
    return true;
}

} // namespace assouad
