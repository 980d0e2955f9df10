#pragma once

#include <cstdint>
#include <vector>

#include "assouad/errors.hpp"

namespace assouad {

using Word = std::vector<int>;  // 1-based indices into the defining IFS

std::string format_word(const Word& w);  // "(1,3,2)"; "()" for the empty word

/// Finite set of points in R^d with optional per-point generating words.
/// This is the double-precision measurement layer; exactness lives in the
/// Scalar-based map algebra that produces these clouds.
struct PointCloud {
    int dim = 1;
    std::vector<double> xs;
    std::vector<double> ys;  // unused in 1D
    std::vector<Word> labels;  // empty or parallel to xs
    double resolution = 0;     // generation resolution, 0 = unknown

    std::size_t size() const { return xs.size(); }
    bool empty() const { return xs.empty(); }
    void push(double x, double y = 0) {
        xs.push_back(x);
        if (dim == 2) ys.push_back(y);
    }
    void check_finite() const;
};

/// rho_H(A, B) = sup_{a in A} inf_{b in B} |a - b|  (Euclidean).
/// The grid-bucket acceleration returns the identical value to the brute
/// force scan (same squared-distance arithmetic, single sqrt at the end).
double one_sided_hausdorff(const PointCloud& a, const PointCloud& b);
double one_sided_hausdorff_brute(const PointCloud& a, const PointCloud& b);
double one_sided_hausdorff_bucket(const PointCloud& a, const PointCloud& b);
double hausdorff_distance(const PointCloud& a, const PointCloud& b);

/// Dimension of the affine hull of the cloud: rank of {p - p0} by pivoted
/// elimination with threshold tol.  Returns k <= dim.
int affine_hull_dimension(const PointCloud& p, double tol);

/// Uniform grid cloud on [0,1] (1D) with n points, or [0,1]^2 with n^2.
PointCloud grid_cloud(int dim, std::size_t n);

} // namespace assouad
