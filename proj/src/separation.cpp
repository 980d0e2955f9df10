#include "assouad/separation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace assouad {

std::string to_string(WspStatus s) {
    switch (s) {
        case WspStatus::VIOLATION_WITNESSED: return "VIOLATION_WITNESSED";
        case WspStatus::WSP_EVIDENCE: return "WSP_EVIDENCE";
        case WspStatus::UNKNOWN: return "UNKNOWN";
    }
    return "UNKNOWN";
}

std::vector<OverlapWitness> exact_overlap_scan(const IfsSystem& ifs, int max_level) {
    if (ifs.backend() != Backend::exact)
        throw domain_error("exact_overlap_scan requires the exact backend; "
                           "use wsp_scan for float systems");
    if (max_level < 1) throw domain_error("exact_overlap_scan: max_level must be >= 1");

    std::vector<OverlapWitness> out;
    std::map<std::string, Word> table;
    const int n = static_cast<int>(ifs.map_count());

    double total = 0;
    for (int level = 1; level <= max_level; ++level)
        total += std::pow(static_cast<double>(ifs.map_count()), level);
    if (total > 2e6)
        throw domain_error("exact_overlap_scan: level budget too large (" +
                           std::to_string(static_cast<long long>(total)) + " words)");

    struct Node {
        Word w;
        Similarity map;
    };
    std::vector<Node> layer;
    layer.push_back({Word{}, Similarity::identity(ifs.dim(), Backend::exact)});
    for (int level = 1; level <= max_level; ++level) {
        std::vector<Node> next;
        next.reserve(layer.size() * static_cast<std::size_t>(n));
        for (const Node& node : layer) {
            for (int i = 1; i <= n; ++i) {
                Node child{node.w, node.map.compose(ifs.map(i))};
                child.w.push_back(i);
                std::string key = child.map.canonical_key();
                auto [it, inserted] = table.emplace(key, child.w);
                if (!inserted)
                    out.push_back(OverlapWitness{it->second, child.w});
                next.push_back(std::move(child));
            }
        }
        layer = std::move(next);
    }
    return out;
}

WspVerdict wsp_scan(const IfsSystem& ifs, int max_level, double epsilon,
                    std::optional<Scalar> prune_bound) {
    if (epsilon <= 0) throw domain_error("wsp_scan: epsilon must be positive");
    if (max_level < 1) throw domain_error("wsp_scan: max_level must be >= 1");

    WspVerdict v;
    v.epsilon = epsilon;
    v.search_depth = max_level;
    v.truncation_note = ifs.note();

    Scalar eps = ifs.backend() == Backend::exact
                     ? Scalar::exact(Rational(epsilon))
                     : Scalar::floating(epsilon, ifs.float_digits());

    RelativeMapEnumerator bfs(ifs, prune_bound);
    for (int level = 1; level <= max_level; ++level) {
        std::vector<RelativeMapRecord> recs = bfs.expand_level();
        for (RelativeMapRecord& rec : recs) {
            if (rec.id_distance.is_zero()) continue;  // exact overlap, not a violation
            if (!v.min_nonzero_distance || rec.id_distance < *v.min_nonzero_distance)
                v.min_nonzero_distance = rec.id_distance;
            if (rec.id_distance < eps) v.witnesses.push_back(rec);
        }
        if (bfs.stabilized()) break;
    }
    v.states_visited = bfs.visited_count();

    std::sort(v.witnesses.begin(), v.witnesses.end(),
              [](const RelativeMapRecord& a, const RelativeMapRecord& b) {
                  if (a.id_distance != b.id_distance) return a.id_distance < b.id_distance;
                  if (a.alpha != b.alpha) return a.alpha < b.alpha;
                  return a.beta < b.beta;
              });

    if (!v.witnesses.empty())
        v.status = WspStatus::VIOLATION_WITNESSED;
    else if (bfs.stabilized())
        v.status = WspStatus::WSP_EVIDENCE;
    else
        v.status = WspStatus::UNKNOWN;

    if (ifs.backend() == Backend::exact)
        v.exact_overlaps = exact_overlap_scan(
            ifs, std::min(max_level, 8));  // companion scan, kept affordable

    return v;
}

MultiplicityReport multiplicity_scan(const IfsSystem& ifs, const Scalar& r,
                                     std::optional<Point> z) {
    Point base = z ? *z : ifs.map(1).fixed_point();
    if (base.dim != ifs.dim()) throw domain_error("multiplicity_scan: z dimension mismatch");

    std::vector<Point> pts;
    ifs.descend_stopping(r, [&](const Word&, const Similarity& s) {
        pts.push_back(s.apply(base));
    });
    MultiplicityReport rep;
    rep.word_count = pts.size();

    // exact dedup of identical points via canonical keys
    std::map<std::string, std::size_t> uniq;
    std::vector<Point> distinct;
    for (auto& p : pts) {
        std::string key = p.x.canonical_key();
        if (ifs.dim() == 2) key += "|" + p.y.canonical_key();
        if (uniq.emplace(key, distinct.size()).second) distinct.push_back(p);
    }
    rep.distinct_points = distinct.size();

    std::size_t best = 0;
    std::size_t best_idx = 0;
    if (ifs.dim() == 1) {
        // closed r-balls over sorted points via a sliding window
        std::sort(distinct.begin(), distinct.end(),
                  [](const Point& a, const Point& b) { return a.x < b.x; });
        std::size_t lo = 0, hi = 0;
        for (std::size_t i = 0; i < distinct.size(); ++i) {
            while (distinct[i].x - distinct[lo].x > r) ++lo;
            if (hi < i) hi = i;
            while (hi + 1 < distinct.size() && distinct[hi + 1].x - distinct[i].x <= r)
                ++hi;
            std::size_t count = hi - lo + 1;
            if (count > best) {
                best = count;
                best_idx = i;
            }
        }
    } else {
        Scalar r_sq = r * r;
        for (std::size_t i = 0; i < distinct.size(); ++i) {
            std::size_t count = 0;
            for (std::size_t j = 0; j < distinct.size(); ++j) {
                Scalar d_sq = (distinct[j] - distinct[i]).norm_sq();
                if (d_sq <= r_sq) ++count;  // closed ball
            }
            if (count > best) {
                best = count;
                best_idx = i;
            }
        }
    }
    rep.max_multiplicity = best;
    if (!distinct.empty()) rep.worst_center = distinct[best_idx];
    return rep;
}

} // namespace assouad
