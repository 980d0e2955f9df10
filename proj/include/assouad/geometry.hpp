#pragma once

#include <array>
#include <string>

#include "assouad/scalar.hpp"

namespace assouad {

/// Point in R^d, d in {1,2}.  y is a backend-consistent zero in 1D.
struct Point {
    int dim = 1;
    Scalar x;
    Scalar y;

    static Point line(Scalar x0) {
        Point p;
        p.dim = 1;
        p.y = Scalar::zero_like(x0);
        p.x = std::move(x0);
        return p;
    }
    static Point plane(Scalar x0, Scalar y0) {
        Point p;
        p.dim = 2;
        p.x = std::move(x0);
        p.y = std::move(y0);
        return p;
    }

    /// max-norm of the point as a vector
    Scalar max_norm() const {
        if (dim == 1) return x.abs();
        Scalar ax = x.abs(), ay = y.abs();
        return ax >= ay ? ax : ay;
    }
    Scalar norm_sq() const {
        if (dim == 1) return x * x;
        return x * x + y * y;
    }
    std::string str() const;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);

/// Contracting (or, for derived relative maps, expanding) similarity
///     S(x) = ratio * O * x + translation
/// in ambient dimension 1 or 2.  The orthogonal part O is a sign in 1D; in
/// 2D it is stored as a rotation angle in degrees plus a reflection flag
/// with the convention O = R(angle) * M^reflect, M = diag(1,-1).  On the
/// exact backend the angle is an exact rational number of degrees; applying
/// such a map to a point requires the angle to be a multiple of 90.
class Similarity {
public:
    /// default: the 1D exact identity
    Similarity() = default;

    static Similarity line(Scalar ratio, int sign, Scalar tx);
    static Similarity plane(Scalar ratio, Scalar angle_deg, bool reflect,
                            Scalar tx, Scalar ty);
    static Similarity identity(int dim, Backend backend,
                               unsigned digits = kDefaultFloatDigits);

    int dim() const { return dim_; }
    Backend backend() const { return ratio_.backend(); }
    const Scalar& ratio() const { return ratio_; }
    bool reflect() const { return reflect_; }
    /// 1D orientation sign: +1 or -1
    int sign() const { return reflect_ ? -1 : 1; }
    const Scalar& angle_deg() const { return angle_deg_; }
    const Point& translation() const { return translation_; }

    Point apply(const Point& p) const;
    Similarity compose(const Similarity& inner) const;  // this ∘ inner
    Similarity inverse() const;
    Point fixed_point() const;  // requires ratio < 1

    /// sup over x in [0,1]^d of the max-norm of S(x) - x, computed exactly
    /// by evaluating the affine map at the 2^d cube corners (the sup of a
    /// convex function over a cube is attained at a corner).
    Scalar identity_distance() const;

    bool is_identity() const;
    /// true when the orthogonal part is the identity (angle 0 mod 360, no flip)
    bool orthogonal_is_identity() const;

    /// corner images of [0,1]^d, usable as an exact bounding box for
    /// rotation-free maps and a conservative one otherwise
    void box_image(Scalar& lo_x, Scalar& hi_x, Scalar& lo_y, Scalar& hi_y) const;

    std::string str() const;
    std::string canonical_key() const;

    bool same_map(const Similarity& o) const;  // exact parameter equality

private:
    void normalize_angle();

    int dim_ = 1;
    Scalar ratio_ = Scalar::exact(1);
    Scalar angle_deg_;  // always exact-0 in 1D (backend-matched)
    bool reflect_ = false;
    Point translation_;
};

} // namespace assouad
