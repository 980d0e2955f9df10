#pragma once

#include <cstdint>
#include <vector>

#include "assouad/enumeration.hpp"
#include "assouad/ifs.hpp"

namespace assouad {

/// One covering measurement: the number of occupied rho-mesh cells meeting
/// the open ball B_r(window_center).
struct CoveringRecord {
    double window_x = 0;
    double window_y = 0;  // unused in 1D
    double r = 0;
    double rho = 0;
    std::size_t count = 0;
};

enum class DimensionKind { similarity, reduced_similarity, box, assouad };

struct DimensionEstimate {
    DimensionKind kind = DimensionKind::similarity;
    double value = 0;     // clamped into [0, ambient_dim]
    double raw_value = 0; // unclamped Moran root / fitted slope
    double residual = 0;  // fit diagnostic, 0 for closed-form kinds
    std::vector<CoveringRecord> records;  // empty for closed-form kinds
};

/// Unique s >= 0 with sum_i ratios[i]^s = 1, by bisection on the strictly
/// decreasing map s -> sum ratios^s.  Ratios must lie in (0,1).
double moran_solve(const std::vector<double>& ratios, double tol = 1e-12);
double moran_solve_scalars(const std::vector<Scalar>& ratios, double tol = 1e-12);

/// min(ambient dim, Moran root).  The raw root is kept alongside.
DimensionEstimate similarity_dimension(const IfsSystem& ifs);

/// Ratio multiset of {S_w : w in I_r} after removing exact duplicates.
std::vector<Scalar> reduced_ratio_multiset(const IfsSystem& ifs, const Scalar& r);

/// Moran root of the deduplicated stopping-set maps at scale r.
DimensionEstimate reduced_similarity_dimension(const IfsSystem& ifs, const Scalar& r);

/// {S_w(p0) : w in I_resolution} with p0 the fixed point of map 1; labels
/// carry the generating words.
PointCloud attractor_points(const IfsSystem& ifs, const Scalar& resolution);

/// Mesh-cell covering count: occupied cells of the axis-aligned rho-mesh
/// (anchored at 0, top edge of [0,1] clamped into the last cell) among
/// cloud points lying in the open ball B_r(center).
CoveringRecord covering_count(const PointCloud& cloud, double center_x,
                              double center_y, double r, double rho);

/// Least-squares slope of log count vs log(1/rho) over rho = lambda^k,
/// k in [min_exp, max_exp], lambda = max ratio, window = the whole cube.
DimensionEstimate box_dimension_estimate(const IfsSystem& ifs, int min_exp,
                                         int max_exp, int threads = 0);

/// Sup-style Assouad estimate: over window centers sampled from the
/// attractor cloud (every 2^d-th point, capped at 512) and r = lambda^i,
/// fits the local slope of log count vs log(1/rho) across the rho-ladder
/// rho = lambda^j, j - i >= min_gap, and returns the maximum slope.  All
/// covering records are attached for offline regression.
DimensionEstimate assouad_estimate(const IfsSystem& ifs, int min_gap,
                                   int min_exp, int max_exp, int threads = 0);

/// Same estimator over an externally supplied cloud and ladder base.
DimensionEstimate assouad_estimate_cloud(const PointCloud& cloud, double lambda,
                                         int min_gap, int min_exp, int max_exp,
                                         int threads = 0);

/// Heuristic Ahlfors-regularity diagnostic: the spread across sampled
/// centers x and radii r of count(B_r(x), rho0) * rho0^s / r^s at a fixed
/// fine mesh rho0.  Small spread is consistent with regularity at exponent
/// s; growth with the r-range is evidence against.
struct AhlforsReport {
    double s = 0;
    double rho0 = 0;
    double min_value = 0;
    double max_value = 0;
    double spread = 0;     // max/min
    bool degenerate = false;  // constant count 1 (e.g. single-point attractor)
    std::vector<CoveringRecord> records;
};

AhlforsReport ahlfors_diagnostic(const IfsSystem& ifs, double s,
                                 const std::vector<double>& radii,
                                 std::size_t max_centers = 64);

} // namespace assouad
