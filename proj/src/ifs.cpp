#include "assouad/ifs.hpp"

#include <functional>
#include <unordered_set>

namespace assouad {

IfsSystem::IfsSystem(int dim, std::vector<Similarity> maps, std::string name,
                     bool allow_trivial)
    : dim_(dim), maps_(std::move(maps)), name_(std::move(name)) {
    if (dim_ != 1 && dim_ != 2)
        throw domain_error("ambient dimension must be 1 or 2");
    if (maps_.empty()) throw domain_error("IFS needs at least one map");
    if (maps_.size() == 1) {
        if (!allow_trivial)
            throw domain_error("single-map IFS must be flagged trivial "
                               "(attractor is one fixed point)");
        trivial_ = true;
    }
    validate();
}

void IfsSystem::validate() {
    const Scalar one = Scalar::one_like(maps_.front().ratio());
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        const Similarity& m = maps_[i];
        if (m.dim() != dim_)
            throw domain_error("map " + std::to_string(i + 1) + " has wrong dimension");
        maps_.front().ratio().check_backend(m.ratio(), "IFS maps");
        if (m.ratio().sign() <= 0 || m.ratio() >= one)
            throw domain_error("map " + std::to_string(i + 1) +
                               " ratio must lie in (0,1), got " + m.ratio().str());
        // containment check via corner images
        Scalar lo_x, hi_x, lo_y, hi_y;
        m.box_image(lo_x, hi_x, lo_y, hi_y);
        Scalar zero = Scalar::zero_like(one);
        bool inside = lo_x >= zero && hi_x <= one;
        if (dim_ == 2) inside = inside && lo_y >= zero && hi_y <= one;
        if (!inside)
            warnings_.push_back("map " + std::to_string(i + 1) +
                                " does not send [0,1]^d into itself; results are "
                                "relative to an un-normalized frame");
    }
}

unsigned IfsSystem::float_digits() const {
    return maps_.front().ratio().digits();
}

const Similarity& IfsSystem::map(int index_1based) const {
    if (index_1based < 1 || static_cast<std::size_t>(index_1based) > maps_.size())
        throw domain_error("map index " + std::to_string(index_1based) +
                           " out of range 1.." + std::to_string(maps_.size()));
    return maps_[static_cast<std::size_t>(index_1based - 1)];
}

Scalar IfsSystem::min_ratio() const {
    Scalar m = maps_.front().ratio();
    for (const auto& s : maps_)
        if (s.ratio() < m) m = s.ratio();
    return m;
}

Scalar IfsSystem::max_ratio() const {
    Scalar m = maps_.front().ratio();
    for (const auto& s : maps_)
        if (s.ratio() > m) m = s.ratio();
    return m;
}

Similarity IfsSystem::word_map(const Word& w) const {
    Similarity acc = Similarity::identity(dim_, backend(),
                                          backend() == Backend::floating ? float_digits()
                                                                         : kDefaultFloatDigits);
    for (int i : w) acc = acc.compose(map(i));
    return acc;
}

Scalar IfsSystem::word_ratio(const Word& w) const {
    Scalar r = Scalar::one_like(maps_.front().ratio());
    for (int i : w) r *= map(i).ratio();
    return r;
}

std::vector<Word> IfsSystem::stopping_set(const Scalar& r) const {
    Scalar zero = Scalar::zero_like(maps_.front().ratio());
    Scalar one = Scalar::one_like(maps_.front().ratio());
    if (!(r > zero && r < one))
        throw domain_error("stopping set radius must lie in (0,1), got " + r.str());
    std::vector<Word> out;
    Word w;
    std::function<void(const Scalar&)> descend = [&](const Scalar& ratio) {
        for (int i = 1; i <= static_cast<int>(maps_.size()); ++i) {
            Scalar child = ratio * map(i).ratio();
            w.push_back(i);
            if (child <= r)
                out.push_back(w);
            else
                descend(child);
            w.pop_back();
        }
    };
    descend(one);
    return out;
}

void IfsSystem::descend_stopping(
    const Scalar& r,
    const std::function<void(const Word&, const Similarity&)>& emit,
    const std::function<bool(const Similarity&)>& prune,
    bool dedup_subtrees) const {
    Scalar zero = Scalar::zero_like(maps_.front().ratio());
    Scalar one = Scalar::one_like(maps_.front().ratio());
    if (!(r > zero && r < one))
        throw domain_error("stopping set radius must lie in (0,1), got " + r.str());
    Word w;
    Similarity id = Similarity::identity(dim_, backend(),
                                         backend() == Backend::floating ? float_digits()
                                                                        : kDefaultFloatDigits);
    std::unordered_set<std::string> seen;
    std::function<void(const Similarity&)> walk = [&](const Similarity& acc) {
        for (int i = 1; i <= static_cast<int>(maps_.size()); ++i) {
            Similarity child = acc.compose(map(i));
            if (prune && prune(child)) continue;
            if (dedup_subtrees && !seen.insert(child.canonical_key()).second) continue;
            w.push_back(i);
            if (child.ratio() <= r)
                emit(w, child);
            else
                walk(child);
            w.pop_back();
        }
    };
    walk(id);
}

bool IfsSystem::has_exact_overlaps(int max_level) const {
    if (backend() != Backend::exact) return false;
    std::unordered_set<std::string> table;
    std::vector<Similarity> layer{Similarity::identity(dim_, Backend::exact)};
    for (int level = 1; level <= max_level; ++level) {
        std::vector<Similarity> next;
        for (const Similarity& m : layer)
            for (int i = 1; i <= static_cast<int>(maps_.size()); ++i) {
                Similarity child = m.compose(map(i));
                if (!table.insert(child.canonical_key()).second) return true;
                next.push_back(std::move(child));
            }
        layer = std::move(next);
    }
    return false;
}

std::vector<Word> IfsSystem::local_stopping_set(const Scalar& r, const Point& x) const {
    if (x.dim != dim_) throw domain_error("local stopping set: point dimension mismatch");
    std::vector<Word> all = stopping_set(r);
    std::vector<Word> keep;
    auto clamp = [](const Scalar& v, const Scalar& lo, const Scalar& hi) {
        return v < lo ? lo : (v > hi ? hi : v);
    };
    Scalar r_sq = r * r;
    for (const Word& w : all) {
        Similarity s = word_map(w);
        Scalar lo_x, hi_x, lo_y, hi_y;
        s.box_image(lo_x, hi_x, lo_y, hi_y);
        Scalar dx = clamp(x.x, lo_x, hi_x) - x.x;
        Scalar d_sq = dx * dx;
        if (dim_ == 2) {
            Scalar dy = clamp(x.y, lo_y, hi_y) - x.y;
            d_sq += dy * dy;
        }
        if (d_sq < r_sq) keep.push_back(w);
    }
    return keep;
}

} // namespace assouad
