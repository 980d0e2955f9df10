#include "assouad/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <future>
#include <thread>
#include <unordered_set>

namespace assouad {

double moran_solve(const std::vector<double>& ratios, double tol) {
    if (ratios.empty()) throw domain_error("moran_solve: need at least one ratio");
    for (double c : ratios)
        if (!(c > 0 && c < 1))
            throw domain_error("moran_solve: ratios must lie in (0,1)");
    if (tol <= 0) throw domain_error("moran_solve: tol must be positive");
    auto sum_pow = [&](double s) {
        double acc = 0;
        for (double c : ratios) acc += std::pow(c, s);
        return acc;
    };
    if (ratios.size() == 1) return 0.0;  // single ratio: c^0 = 1
    double lo = 0.0;
    double hi = 1.0;
    int guard = 0;
    while (sum_pow(hi) > 1.0 && guard++ < 200) hi *= 2;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (sum_pow(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double moran_solve_scalars(const std::vector<Scalar>& ratios, double tol) {
    std::vector<double> r;
    r.reserve(ratios.size());
    for (const auto& c : ratios) r.push_back(c.to_double());
    return moran_solve(r, tol);
}

DimensionEstimate similarity_dimension(const IfsSystem& ifs) {
    std::vector<Scalar> ratios;
    for (const auto& m : ifs.maps()) ratios.push_back(m.ratio());
    DimensionEstimate est;
    est.kind = DimensionKind::similarity;
    est.raw_value = moran_solve_scalars(ratios);
    est.value = std::min<double>(ifs.dim(), est.raw_value);
    return est;
}

std::vector<Scalar> reduced_ratio_multiset(const IfsSystem& ifs, const Scalar& r) {
    std::vector<Similarity> maps;
    ifs.descend_stopping(r, [&](const Word&, const Similarity& s) { maps.push_back(s); },
                         {}, ifs.has_exact_overlaps());
    Scalar tol = ifs.backend() == Backend::exact
                     ? Scalar::exact(0)
                     : Scalar::floating(1e-12, ifs.float_digits());
    std::vector<Similarity> unique = dedup_maps(maps, tol);
    std::vector<Scalar> ratios;
    ratios.reserve(unique.size());
    for (const auto& m : unique) ratios.push_back(m.ratio());
    return ratios;
}

DimensionEstimate reduced_similarity_dimension(const IfsSystem& ifs, const Scalar& r) {
    std::vector<Scalar> ratios = reduced_ratio_multiset(ifs, r);
    DimensionEstimate est;
    est.kind = DimensionKind::reduced_similarity;
    est.raw_value = moran_solve_scalars(ratios);
    est.value = std::min<double>(ifs.dim(), est.raw_value);
    return est;
}

PointCloud attractor_points(const IfsSystem& ifs, const Scalar& resolution) {
    Point p0 = ifs.map(1).fixed_point();
    PointCloud cloud;
    cloud.dim = ifs.dim();
    bool dedup = ifs.has_exact_overlaps();
    ifs.descend_stopping(resolution, [&](const Word& w, const Similarity& s) {
        Point p = s.apply(p0);
        cloud.push(p.x.to_double(), ifs.dim() == 2 ? p.y.to_double() : 0.0);
        cloud.labels.push_back(w);
    }, {}, dedup);
    if (cloud.empty()) throw domain_error("attractor sampling produced no points");
    cloud.resolution = resolution.to_double() * (ifs.dim() == 2 ? std::sqrt(2.0) : 1.0);
    cloud.check_finite();
    return cloud;
}

namespace {

// number of rho-cells spanning [0,1], robust to rho = lambda^k noise
long cells_per_unit(double rho) {
    double inv = 1.0 / rho;
    double rounded = std::round(inv);
    if (std::abs(inv - rounded) < 1e-9 * inv) return static_cast<long>(rounded);
    return static_cast<long>(std::ceil(inv));
}

inline long cell_index(double v, double rho, long cells) {
    long k = static_cast<long>(std::floor(v / rho));
    if (k >= cells && v <= 1.0 + 1e-12) k = cells - 1;
    return k;
}

} // namespace

CoveringRecord covering_count(const PointCloud& cloud, double center_x,
                              double center_y, double r, double rho) {
    if (!(rho > 0 && r > 0 && rho < r))
        throw domain_error("covering_count: need 0 < rho < r");
    if (cloud.empty()) throw domain_error("covering_count: empty cloud");
    if (cloud.resolution > 0 && cloud.resolution > rho / 2)
        throw domain_error("covering_count: cloud resolution " +
                           std::to_string(cloud.resolution) +
                           " too coarse for rho " + std::to_string(rho));
    long cells = cells_per_unit(rho);
    std::unordered_set<std::int64_t> occupied;
    double r_sq = r * r;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        double dx = cloud.xs[i] - center_x;
        double d2 = dx * dx;
        if (cloud.dim == 2) {
            double dy = cloud.ys[i] - center_y;
            d2 += dy * dy;
        }
        if (d2 >= r_sq) continue;
        long kx = cell_index(cloud.xs[i], rho, cells);
        long ky = cloud.dim == 2 ? cell_index(cloud.ys[i], rho, cells) : 0;
        occupied.insert((static_cast<std::int64_t>(kx) << 24) ^
                        static_cast<std::int64_t>(ky + (1 << 22)));
    }
    if (occupied.empty())
        throw domain_error("covering_count: window contains no cloud points");
    CoveringRecord rec;
    rec.window_x = center_x;
    rec.window_y = cloud.dim == 2 ? center_y : 0.0;
    rec.r = r;
    rec.rho = rho;
    rec.count = occupied.size();
    return rec;
}

namespace {

std::size_t whole_cube_count(const PointCloud& cloud, double rho) {
    long cells = cells_per_unit(rho);
    std::unordered_set<std::int64_t> occupied;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        long kx = cell_index(cloud.xs[i], rho, cells);
        long ky = cloud.dim == 2 ? cell_index(cloud.ys[i], rho, cells) : 0;
        occupied.insert((static_cast<std::int64_t>(kx) << 24) ^
                        static_cast<std::int64_t>(ky + (1 << 22)));
    }
    return occupied.size();
}

struct FitResult {
    double slope = 0;
    double residual = 0;
};

FitResult least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw domain_error("degenerate fit: no scale spread");
    FitResult f;
    f.slope = sxy / sxx;
    double b = my - f.slope * mx;
    double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = y[i] - (f.slope * x[i] + b);
        rss += e * e;
    }
    f.residual = std::sqrt(rss / static_cast<double>(n));
    return f;
}

// attractor cloud fine enough that resolution (incl. the sqrt(d) diameter
// factor) stays <= lambda^max_exp / 2
PointCloud estimation_cloud(const IfsSystem& ifs, double lambda, int max_exp) {
    double target = 0.5 / std::sqrt(static_cast<double>(ifs.dim()));
    int extra = 1;
    while (std::pow(lambda, extra) > target && extra < 64) ++extra;
    Scalar res;
    if (ifs.backend() == Backend::exact) {
        // use the exact max ratio power
        Scalar lam = ifs.max_ratio();
        res = lam.pow_int(max_exp + extra);
    } else {
        res = Scalar::floating(std::pow(lambda, max_exp + extra), ifs.float_digits());
    }
    return attractor_points(ifs, res);
}

std::vector<std::size_t> stride_centers(std::size_t cloud_size, int dim,
                                        std::size_t cap = 512) {
    std::size_t stride = static_cast<std::size_t>(1) << dim;  // every 2^d-th point
    while (cloud_size / stride > cap) stride *= 2;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < cloud_size; i += stride) idx.push_back(i);
    return idx;
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min<unsigned>(hw ? hw : 1, 8));
}

} // namespace

DimensionEstimate box_dimension_estimate(const IfsSystem& ifs, int min_exp,
                                         int max_exp, int threads) {
    if (min_exp >= max_exp) throw domain_error("box estimate: need min_exp < max_exp");
    if (max_exp - min_exp + 1 < 3)
        throw domain_error("degenerate fit: fewer than 3 scales");
    (void)threads;
    double lambda = ifs.max_ratio().to_double();
    PointCloud cloud = estimation_cloud(ifs, lambda, max_exp);

    DimensionEstimate est;
    est.kind = DimensionKind::box;
    std::vector<double> xs, ys;
    double half_diam = 0.5 * std::sqrt(static_cast<double>(ifs.dim()));
    for (int k = min_exp; k <= max_exp; ++k) {
        double rho = std::pow(lambda, k);
        std::size_t n = whole_cube_count(cloud, rho);
        CoveringRecord rec;
        rec.window_x = 0.5;
        rec.window_y = ifs.dim() == 2 ? 0.5 : 0.0;
        rec.r = half_diam * 2;
        rec.rho = rho;
        rec.count = n;
        est.records.push_back(rec);
        xs.push_back(std::log(1.0 / rho));
        ys.push_back(std::log(static_cast<double>(n)));
    }
    FitResult fit = least_squares_slope(xs, ys);
    est.raw_value = fit.slope;
    est.residual = fit.residual;
    est.value = std::clamp(fit.slope, 0.0, static_cast<double>(ifs.dim()));
    return est;
}

DimensionEstimate assouad_estimate_cloud(const PointCloud& cloud, double lambda,
                                         int min_gap, int min_exp, int max_exp,
                                         int threads) {
    if (min_gap < 3) throw domain_error("assouad estimate: min_gap must be >= 3");
    if (min_exp >= max_exp) throw domain_error("assouad estimate: need min_exp < max_exp");
    if (!(lambda > 0 && lambda < 1))
        throw domain_error("assouad estimate: ladder base must lie in (0,1)");

    std::vector<std::size_t> centers = stride_centers(cloud.size(), cloud.dim);
    struct CenterResult {
        double best_slope = -1;
        std::vector<CoveringRecord> records;
    };
    std::vector<CenterResult> results(centers.size());

    // per-thread stamp grids: cells -> (stamps, epoch); avoids re-zeroing
    struct StampGrid {
        std::vector<std::uint32_t> stamps;
        std::uint32_t epoch = 0;
    };

    auto run_center = [&](std::size_t ci, std::map<long, StampGrid>& grids) {
        CenterResult res;
        double cx = cloud.xs[centers[ci]];
        double cy = cloud.dim == 2 ? cloud.ys[centers[ci]] : 0.0;
        std::vector<double> ball_x, ball_y;
        for (int i = min_exp; i <= max_exp - min_gap; ++i) {
            double r = std::pow(lambda, i);
            double r_sq = r * r;
            ball_x.clear();
            ball_y.clear();
            for (std::size_t p = 0; p < cloud.size(); ++p) {
                double dx = cloud.xs[p] - cx;
                double d2 = dx * dx;
                if (cloud.dim == 2) {
                    double dy = cloud.ys[p] - cy;
                    d2 += dy * dy;
                }
                if (d2 < r_sq) {
                    ball_x.push_back(cloud.xs[p]);
                    if (cloud.dim == 2) ball_y.push_back(cloud.ys[p]);
                }
            }
            std::vector<double> xs, ys;
            for (int j = i + min_gap; j <= max_exp; ++j) {
                double rho = std::pow(lambda, j);
                if (cloud.resolution > 0 && cloud.resolution > rho / 2)
                    throw domain_error("assouad estimate: cloud too coarse for rho");
                long cells = cells_per_unit(rho);
                StampGrid& grid = grids[cells];
                std::size_t need = static_cast<std::size_t>(cells) *
                                   (cloud.dim == 2 ? static_cast<std::size_t>(cells) : 1);
                if (grid.stamps.size() < need) grid.stamps.assign(need, 0);
                ++grid.epoch;
                std::size_t count = 0;
                for (std::size_t p = 0; p < ball_x.size(); ++p) {
                    long kx = cell_index(ball_x[p], rho, cells);
                    long ky = cloud.dim == 2 ? cell_index(ball_y[p], rho, cells) : 0;
                    if (kx < 0 || kx >= cells || ky < 0 || ky >= cells) continue;
                    std::size_t idx = static_cast<std::size_t>(kx) *
                                          (cloud.dim == 2 ? static_cast<std::size_t>(cells) : 1) +
                                      static_cast<std::size_t>(ky);
                    if (grid.stamps[idx] != grid.epoch) {
                        grid.stamps[idx] = grid.epoch;
                        ++count;
                    }
                }
                if (count == 0) continue;
                CoveringRecord rec;
                rec.window_x = cx;
                rec.window_y = cloud.dim == 2 ? cy : 0.0;
                rec.r = r;
                rec.rho = rho;
                rec.count = count;
                res.records.push_back(rec);
                xs.push_back(std::log(1.0 / rho));
                ys.push_back(std::log(static_cast<double>(count)));
            }
            if (xs.size() < 2) continue;
            FitResult fit = least_squares_slope(xs, ys);
            res.best_slope = std::max(res.best_slope, fit.slope);
        }
        return res;
    };

    int nthreads = resolve_threads(threads);
    if (nthreads <= 1 || centers.size() < 2) {
        std::map<long, StampGrid> grids;
        for (std::size_t ci = 0; ci < centers.size(); ++ci)
            results[ci] = run_center(ci, grids);
    } else {
        std::vector<std::future<void>> futs;
        std::size_t chunk = (centers.size() + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            std::size_t lo = t * chunk;
            std::size_t hi = std::min(centers.size(), lo + chunk);
            if (lo >= hi) break;
            futs.push_back(std::async(std::launch::async, [&, lo, hi] {
                std::map<long, StampGrid> grids;
                for (std::size_t ci = lo; ci < hi; ++ci)
                    results[ci] = run_center(ci, grids);
            }));
        }
        for (auto& f : futs) f.get();
    }

    DimensionEstimate est;
    est.kind = DimensionKind::assouad;
    double best = -1;
    for (auto& res : results) {
        best = std::max(best, res.best_slope);
        est.records.insert(est.records.end(), res.records.begin(), res.records.end());
    }
    if (best < 0) throw domain_error("assouad estimate: no usable (r, rho) ladder; "
                                     "widen the exponent range");
    est.raw_value = best;
    est.value = std::clamp(best, 0.0, static_cast<double>(cloud.dim));
    return est;
}

DimensionEstimate assouad_estimate(const IfsSystem& ifs, int min_gap, int min_exp,
                                   int max_exp, int threads) {
    double lambda = ifs.max_ratio().to_double();
    PointCloud cloud = estimation_cloud(ifs, lambda, max_exp);
    return assouad_estimate_cloud(cloud, lambda, min_gap, min_exp, max_exp, threads);
}

AhlforsReport ahlfors_diagnostic(const IfsSystem& ifs, double s,
                                 const std::vector<double>& radii,
                                 std::size_t max_centers) {
    if (!(s > 0 && s <= ifs.dim()))
        throw domain_error("ahlfors diagnostic: s must lie in (0, d]");
    if (radii.empty()) throw domain_error("ahlfors diagnostic: no radii given");
    double r_min = *std::min_element(radii.begin(), radii.end());
    double lambda = ifs.max_ratio().to_double();
    double rho0 = r_min * lambda * lambda * lambda;

    // cloud fine enough for rho0
    Scalar res = Scalar::floating(rho0 / 2.0, kDefaultFloatDigits);
    if (ifs.backend() == Backend::exact) {
        Scalar lam = ifs.max_ratio();
        Scalar acc = Scalar::one_like(lam);
        while (acc.to_double() > rho0 / 2.0) acc *= lam;
        res = acc;
    }
    PointCloud cloud = attractor_points(ifs, res);

    AhlforsReport rep;
    rep.s = s;
    rep.rho0 = rho0;
    std::vector<std::size_t> centers = stride_centers(cloud.size(), cloud.dim, max_centers);
    double lo = 0, hi = 0;
    bool first = true;
    bool all_ones = true;
    for (std::size_t idx : centers) {
        double cx = cloud.xs[idx];
        double cy = cloud.dim == 2 ? cloud.ys[idx] : 0.0;
        for (double r : radii) {
            if (!(rho0 < r)) continue;
            CoveringRecord rec = covering_count(cloud, cx, cy, r, rho0);
            rep.records.push_back(rec);
            if (rec.count != 1) all_ones = false;
            double v = static_cast<double>(rec.count) * std::pow(rho0, s) / std::pow(r, s);
            if (first) {
                lo = hi = v;
                first = false;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    if (first) throw domain_error("ahlfors diagnostic: no (center, r) samples");
    rep.min_value = lo;
    rep.max_value = hi;
    rep.spread = hi / lo;
    rep.degenerate = all_ones;
    return rep;
}

} // namespace assouad
