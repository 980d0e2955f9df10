#include "assouad/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

namespace assouad {

std::string format_word(const Word& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    s += ')';
    return s;
}

void PointCloud::check_finite() const {
    for (double v : xs)
        if (!std::isfinite(v)) throw domain_error("point cloud contains non-finite x");
    for (double v : ys)
        if (!std::isfinite(v)) throw domain_error("point cloud contains non-finite y");
}

namespace {

inline double dist_sq(const PointCloud& a, std::size_t i,
                      const PointCloud& b, std::size_t j) {
    double dx = a.xs[i] - b.xs[j];
    if (a.dim == 1) return dx * dx;
    double dy = a.ys[i] - b.ys[j];
    return dx * dx + dy * dy;
}

void require_compatible(const PointCloud& a, const PointCloud& b) {
    if (a.dim != b.dim) throw domain_error("hausdorff: dimension mismatch");
    if (a.empty() || b.empty()) throw domain_error("hausdorff: empty point cloud");
}

// Uniform bucket grid over b's bounding box for nearest-point queries.
class BucketGrid {
public:
    explicit BucketGrid(const PointCloud& b) : b_(b) {
        lo_x_ = *std::min_element(b.xs.begin(), b.xs.end());
        hi_x_ = *std::max_element(b.xs.begin(), b.xs.end());
        if (b.dim == 2) {
            lo_y_ = *std::min_element(b.ys.begin(), b.ys.end());
            hi_y_ = *std::max_element(b.ys.begin(), b.ys.end());
        }
        double span = std::max(hi_x_ - lo_x_, b.dim == 2 ? hi_y_ - lo_y_ : 0.0);
        std::size_t target = std::max<std::size_t>(1, static_cast<std::size_t>(
            b.dim == 1 ? b.size() : std::sqrt(static_cast<double>(b.size()))));
        cells_ = std::min<std::size_t>(target, 4096);
        h_ = span > 0 ? span / static_cast<double>(cells_) : 1.0;
        for (std::size_t j = 0; j < b.size(); ++j)
            table_[key(cell_x(b.xs[j]), b.dim == 2 ? cell_y(b.ys[j]) : 0)].push_back(j);
    }

    // exact min over b of squared distance to (x, y)
    double min_dist_sq(double x, double y) const {
        long cx = cell_x(x);
        long cy = b_.dim == 2 ? cell_y(y) : 0;
        double best = std::numeric_limits<double>::infinity();
        // expand rings until the closed ring boundary cannot improve the best
        for (long ring = 0;; ++ring) {
            bool any_cell = false;
            auto visit = [&](long ix, long iy) {
                auto it = table_.find(key(ix, iy));
                if (it == table_.end()) return;
                any_cell = true;
                for (std::size_t j : it->second) {
                    double dx = x - b_.xs[j];
                    double d2 = dx * dx;
                    if (b_.dim == 2) {
                        double dy = y - b_.ys[j];
                        d2 += dy * dy;
                    }
                    if (d2 < best) best = d2;
                }
            };
            if (ring == 0) {
                visit(cx, cy);
            } else if (b_.dim == 1) {
                visit(cx - ring, 0);
                visit(cx + ring, 0);
            } else {
                for (long ix = cx - ring; ix <= cx + ring; ++ix) {
                    visit(ix, cy - ring);
                    visit(ix, cy + ring);
                }
                for (long iy = cy - ring + 1; iy <= cy + ring - 1; ++iy) {
                    visit(cx - ring, iy);
                    visit(cx + ring, iy);
                }
            }
            (void)any_cell;
            if (best < std::numeric_limits<double>::infinity()) {
                // unscanned points sit at cell-ring >= ring+1, hence at
                // distance >= ring*h from the query
                double safe = static_cast<double>(ring) * h_;
                if (safe * safe >= best) return best;
            }
            // query far outside the grid: fall back to a full scan
            long extent = static_cast<long>(cells_) + 2;
            if (ring > std::abs(cx) + std::abs(cy) + 2 * extent) {
                for (std::size_t j = 0; j < b_.size(); ++j) {
                    double dx = x - b_.xs[j];
                    double d2 = dx * dx;
                    if (b_.dim == 2) {
                        double dy = y - b_.ys[j];
                        d2 += dy * dy;
                    }
                    if (d2 < best) best = d2;
                }
                return best;
            }
        }
    }

private:
    long cell_x(double x) const { return static_cast<long>(std::floor((x - lo_x_) / h_)); }
    long cell_y(double y) const { return static_cast<long>(std::floor((y - lo_y_) / h_)); }
    static std::int64_t key(long ix, long iy) {
        return (static_cast<std::int64_t>(ix) << 21) ^ static_cast<std::int64_t>(iy + (1 << 20));
    }

    const PointCloud& b_;
    double lo_x_ = 0, hi_x_ = 0, lo_y_ = 0, hi_y_ = 0, h_ = 1;
    std::size_t cells_ = 1;
    std::unordered_map<std::int64_t, std::vector<std::size_t>> table_;
};

} // namespace

double one_sided_hausdorff_brute(const PointCloud& a, const PointCloud& b) {
    require_compatible(a, b);
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j)
            best = std::min(best, dist_sq(a, i, b, j));
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

double one_sided_hausdorff_bucket(const PointCloud& a, const PointCloud& b) {
    require_compatible(a, b);
    BucketGrid grid(b);
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double best = grid.min_dist_sq(a.xs[i], a.dim == 2 ? a.ys[i] : 0.0);
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

double one_sided_hausdorff(const PointCloud& a, const PointCloud& b) {
    require_compatible(a, b);
    if (a.size() * b.size() < 4096) return one_sided_hausdorff_brute(a, b);
    return one_sided_hausdorff_bucket(a, b);
}

double hausdorff_distance(const PointCloud& a, const PointCloud& b) {
    return std::max(one_sided_hausdorff(a, b), one_sided_hausdorff(b, a));
}

int affine_hull_dimension(const PointCloud& p, double tol) {
    if (p.empty()) throw domain_error("affine_hull_dimension: empty cloud");
    if (p.size() == 1) return 0;
    if (p.dim == 1) {
        for (std::size_t i = 1; i < p.size(); ++i)
            if (std::abs(p.xs[i] - p.xs[0]) > tol) return 1;
        return 0;
    }
    // rank of the 2-column difference matrix by pivoted elimination
    double ux = 0, uy = 0;  // first pivot direction
    std::size_t pivot = 0;
    double best = 0;
    for (std::size_t i = 1; i < p.size(); ++i) {
        double dx = p.xs[i] - p.xs[0];
        double dy = p.ys[i] - p.ys[0];
        double n = std::hypot(dx, dy);
        if (n > best) { best = n; pivot = i; }
    }
    if (best <= tol) return 0;
    ux = (p.xs[pivot] - p.xs[0]) / best;
    uy = (p.ys[pivot] - p.ys[0]) / best;
    for (std::size_t i = 1; i < p.size(); ++i) {
        double dx = p.xs[i] - p.xs[0];
        double dy = p.ys[i] - p.ys[0];
        double off = std::abs(dx * (-uy) + dy * ux);  // component orthogonal to u
        if (off > tol) return 2;
    }
    return 1;
}

PointCloud grid_cloud(int dim, std::size_t n) {
    if (n < 2) throw domain_error("grid_cloud needs n >= 2");
    PointCloud c;
    c.dim = dim;
    c.resolution = 1.0 / static_cast<double>(n - 1);
    if (dim == 1) {
        for (std::size_t i = 0; i < n; ++i)
            c.push(static_cast<double>(i) / static_cast<double>(n - 1));
        return c;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            c.push(static_cast<double>(i) / static_cast<double>(n - 1),
                   static_cast<double>(j) / static_cast<double>(n - 1));
    return c;
}

} // namespace assouad
