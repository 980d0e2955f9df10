#include "assouad/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace assouad {

RelativeMapEnumerator::RelativeMapEnumerator(const IfsSystem& ifs,
                                             std::optional<Scalar> prune_bound)
    : ifs_(ifs),
      bound_sq_(Scalar::int_like(ifs.maps().front().ratio(), 4 * ifs.dim())),
      ratio_lo_(ifs.min_ratio()),
      ratio_hi_(Scalar::one_like(ifs.min_ratio()) / ifs.min_ratio()) {
    if (prune_bound) {
        ifs.maps().front().ratio().check_backend(*prune_bound, "prune bound");
        if (prune_bound->sign() <= 0) throw domain_error("prune bound must be positive");
        bound_sq_ = *prune_bound * *prune_bound;
    }
    for (const auto& m : ifs_.maps()) inverses_.push_back(m.inverse());

    Backend be = ifs_.backend();
    Similarity id = Similarity::identity(ifs_.dim(), be,
                                         be == Backend::floating ? ifs_.float_digits()
                                                                 : kDefaultFloatDigits);
    State root{Word{}, Word{}, id};
    visited_.push_back(id.canonical_key());
    visited_count_ = 1;
    frontier_.push_back(std::move(root));
}

bool RelativeMapEnumerator::admissible(const Similarity& m) const {
    if (m.ratio() < ratio_lo_ || m.ratio() > ratio_hi_) return false;
    return m.translation().norm_sq() <= bound_sq_;
}

std::vector<RelativeMapRecord> RelativeMapEnumerator::expand_level() {
    ++level_;
    if (frontier_.empty()) {
        stabilized_ = true;
        return {};
    }
    const int n = static_cast<int>(ifs_.map_count());
    // collect candidates keyed canonically; first occurrence wins
    std::map<std::string, State> fresh;
    for (const State& st : frontier_) {
        for (int i = 1; i <= n; ++i) {
            Similarity left = inverses_[static_cast<std::size_t>(i - 1)];
            for (int j = 1; j <= n; ++j) {
                Similarity child = left.compose(st.map.compose(ifs_.map(j)));
                if (!admissible(child)) continue;
                std::string key = child.canonical_key();
                if (std::binary_search(visited_.begin(), visited_.end(), key)) continue;
                if (fresh.count(key)) continue;
                Word a = st.alpha;
                a.push_back(i);
                Word b = st.beta;
                b.push_back(j);
                fresh.emplace(std::move(key), State{std::move(a), std::move(b), child});
            }
        }
    }
    if (fresh.empty()) {
        frontier_.clear();
        stabilized_ = true;
        return {};
    }
    std::vector<RelativeMapRecord> out;
    out.reserve(fresh.size());
    std::vector<std::string> new_keys;
    new_keys.reserve(fresh.size());
    std::vector<State> next;
    next.reserve(fresh.size());
    for (auto& [key, st] : fresh) {
        new_keys.push_back(key);
        out.push_back(RelativeMapRecord{st.alpha, st.beta, st.map,
                                        st.map.identity_distance()});
        next.push_back(std::move(st));
    }
    // merge into the sorted visited list
    std::vector<std::string> merged;
    merged.reserve(visited_.size() + new_keys.size());
    std::merge(visited_.begin(), visited_.end(), new_keys.begin(), new_keys.end(),
               std::back_inserter(merged));
    visited_ = std::move(merged);
    visited_count_ = visited_.size();
    frontier_ = std::move(next);
    return out;
}

std::vector<Similarity> dedup_maps(const std::vector<Similarity>& maps, const Scalar& tol) {
    if (maps.empty()) return {};
    Backend be = maps.front().backend();
    for (const auto& m : maps)
        maps.front().ratio().check_backend(m.ratio(), "dedup_maps");

    std::vector<std::size_t> order(maps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto params_less = [&](std::size_t a, std::size_t b) {
        const Similarity& x = maps[a];
        const Similarity& y = maps[b];
        if (x.ratio() != y.ratio()) return x.ratio() < y.ratio();
        if (x.reflect() != y.reflect()) return y.reflect();
        if (x.dim() == 2 && x.angle_deg() != y.angle_deg())
            return x.angle_deg() < y.angle_deg();
        if (x.translation().x != y.translation().x)
            return x.translation().x < y.translation().x;
        if (x.dim() == 2 && x.translation().y != y.translation().y)
            return x.translation().y < y.translation().y;
        return a < b;
    };
    std::sort(order.begin(), order.end(), params_less);

    auto close = [&](const Scalar& a, const Scalar& b) {
        if (be == Backend::exact) return a == b;
        return (a - b).abs() <= tol;
    };
    auto same = [&](const Similarity& x, const Similarity& y) {
        if (x.reflect() != y.reflect()) return false;
        if (!close(x.ratio(), y.ratio())) return false;
        if (x.dim() == 2 && !close(x.angle_deg(), y.angle_deg())) return false;
        if (!close(x.translation().x, y.translation().x)) return false;
        if (x.dim() == 2 && !close(x.translation().y, y.translation().y)) return false;
        return true;
    };

    std::vector<Similarity> out;
    for (std::size_t idx : order) {
        if (!out.empty() && same(out.back(), maps[idx])) continue;
        out.push_back(maps[idx]);
    }
    return out;
}

OrthGroupReport orthogonal_group_analysis(const IfsSystem& ifs, double eps,
                                          std::size_t max_elements) {
    OrthGroupReport rep;
    if (eps <= 0) throw domain_error("eps must be positive");
    if (max_elements == 0) throw domain_error("max_elements must be positive");

    Backend be = ifs.backend();
    auto angle_key = [&](const Scalar& angle) {
        if (be == Backend::exact) return angle.canonical_key();
        // round to the eps grid for closure detection on floats
        double g = angle.to_double() / eps;
        long long q = static_cast<long long>(std::llround(g));
        return std::string("g") + std::to_string(q);
    };
    auto elem_key = [&](const std::pair<Scalar, bool>& e) {
        return angle_key(e.first) + (e.second ? "|r" : "|.");
    };

    // represent elements as similarity orthogonal parts via ratio-1 maps
    auto make_elem = [&](const Similarity& s) {
        return std::pair<Scalar, bool>(s.dim() == 2 ? s.angle_deg()
                                                    : Scalar::zero_like(s.ratio()),
                                       s.reflect());
    };
    auto compose_elems = [&](const std::pair<Scalar, bool>& a,
                             const std::pair<Scalar, bool>& b) {
        // R(x) M^f R(y) M^g = R(x + (-1)^f y) M^(f xor g), reduced mod 360
        Scalar angle = a.second ? a.first - b.first : a.first + b.first;
        Scalar full = Scalar::int_like(angle, 360);
        while (angle < Scalar::zero_like(angle)) angle += full;
        while (angle >= full) angle -= full;
        return std::pair<Scalar, bool>(std::move(angle), a.second != b.second);
    };

    std::map<std::string, std::pair<Scalar, bool>> closure;
    std::vector<std::pair<Scalar, bool>> work;
    Scalar zero = Scalar::zero_like(ifs.maps().front().ratio());
    std::pair<Scalar, bool> ident(zero, false);
    closure.emplace(elem_key(ident), ident);
    work.push_back(ident);
    for (const auto& m : ifs.maps()) {
        auto e = make_elem(m);
        std::string k = elem_key(e);
        if (!closure.count(k)) {
            closure.emplace(std::move(k), e);
            work.push_back(e);
        }
    }
    std::vector<std::pair<Scalar, bool>> gens = work;  // identity + generators
    std::size_t cursor = 0;
    bool overflow = false;
    while (cursor < work.size()) {
        auto current = work[cursor++];
        for (const auto& g : gens) {
            for (int dir = 0; dir < 2; ++dir) {
                auto e = dir == 0 ? compose_elems(current, g) : compose_elems(g, current);
                std::string k = elem_key(e);
                if (closure.count(k)) continue;
                if (closure.size() >= max_elements) {
                    overflow = true;
                    break;
                }
                closure.emplace(std::move(k), e);
                work.push_back(e);
            }
            if (overflow) break;
        }
        if (overflow) break;
    }

    rep.finite = !overflow;
    rep.dense_evidence = overflow && be == Backend::floating;
    for (auto& [k, e] : closure) rep.elements.push_back(e);
    std::sort(rep.elements.begin(), rep.elements.end(),
              [](const auto& a, const auto& b) {
                  if (a.second != b.second) return !a.second;
                  return a.first < b.first;
              });
    if (overflow)
        rep.note = be == Backend::floating
                       ? "closure exceeded max_elements; consistent with a dense "
                         "rotation subgroup"
                       : "closure exceeded max_elements; group is finite (rational "
                         "degrees) but larger than the cap";
    return rep;
}

SpanningReport spanning_fixed_points(const IfsSystem& ifs, const Scalar& r, double tol) {
    if (ifs.trivial())
        throw domain_error("spanning fixed points: attractor is a single point");
    SpanningReport rep;
    const int d = ifs.dim();
    std::vector<Word> words = ifs.stopping_set(r);

    PointCloud chosen;
    chosen.dim = d;
    for (const Word& w : words) {
        Similarity s = ifs.word_map(w);
        Point fp = s.fixed_point();
        PointCloud trial = chosen;
        trial.push(fp.x.to_double(), d == 2 ? fp.y.to_double() : 0.0);
        int rank = trial.size() >= 2 ? affine_hull_dimension(trial, tol)
                                     : 0;
        if (chosen.empty() || rank > rep.rank) {
            chosen = trial;
            rep.rank = rank;
            rep.witnesses.emplace_back(w, fp);
            if (rep.rank == d) break;
        }
    }
    rep.spans = rep.rank == d;
    if (rep.spans) {
        rep.message = "fixed points span R^" + std::to_string(d);
    } else {
        rep.message = "hyperplane-contained (up to depth): fixed-point differences "
                      "reach rank " + std::to_string(rep.rank) + " < " + std::to_string(d);
    }
    return rep;
}

} // namespace assouad
