#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "assouad/geometry.hpp"
#include "assouad/point_cloud.hpp"

namespace assouad {

/// Indexed family of contracting similarities on [0,1]^d.  Words index maps
/// 1-based, matching the usual (i_1, ..., i_k) notation.
class IfsSystem {
public:
    IfsSystem(int dim, std::vector<Similarity> maps, std::string name = "",
              bool allow_trivial = false);

    int dim() const { return dim_; }
    Backend backend() const { return maps_.front().backend(); }
    unsigned float_digits() const;  // float backend only
    std::size_t map_count() const { return maps_.size(); }
    const Similarity& map(int index_1based) const;
    const std::vector<Similarity>& maps() const { return maps_; }
    const std::string& name() const { return name_; }
    bool trivial() const { return trivial_; }

    /// Warnings collected at construction (e.g. a map does not send
    /// [0,1]^d into itself).  The system stays usable.
    const std::vector<std::string>& warnings() const { return warnings_; }

    /// Free-form note attached by builders (e.g. parameter truncation info).
    const std::string& note() const { return note_; }
    void set_note(std::string n) { note_ = std::move(n); }

    Scalar min_ratio() const;
    Scalar max_ratio() const;

    Similarity word_map(const Word& w) const;  // S_w, left-to-right; S_() = I
    Scalar word_ratio(const Word& w) const;

    /// I_r = { w : c_w <= r < c_parent(w) } via depth-first descent,
    /// lexicographic order.
    std::vector<Word> stopping_set(const Scalar& r) const;

    /// Conservative I_r(x): keeps w when the open ball B_r(x) meets the
    /// bounding box of S_w([0,1]^d).  Over-approximates the attractor
    /// intersection test.
    std::vector<Word> local_stopping_set(const Scalar& r, const Point& x) const;

    /// Walks I_r depth-first, composing maps incrementally, and calls
    /// emit(word, S_word) for every stopping word.  When prune is given,
    /// branches with prune(S_word) == true are cut (their subtree cannot
    /// contribute); used for windowed descents.
    /// dedup_subtrees: skip a branch when its composed map was already
    /// visited (exact-overlap systems repeat whole subtrees; the emitted
    /// point set is unchanged).
    void descend_stopping(const Scalar& r,
                          const std::function<void(const Word&, const Similarity&)>& emit,
                          const std::function<bool(const Similarity&)>& prune = {},
                          bool dedup_subtrees = false) const;

    /// true when distinct words up to the given length compose to equal maps
    bool has_exact_overlaps(int max_level = 3) const;

private:
    void validate();

    int dim_;
    std::vector<Similarity> maps_;
    std::string name_;
    bool trivial_ = false;
    std::vector<std::string> warnings_;
    std::string note_;
};

} // namespace assouad
