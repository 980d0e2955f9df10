#pragma once

#include <optional>
#include <string>
#include <vector>

#include "assouad/ifs.hpp"

namespace assouad {

/// One normalized relative map R = S_alpha^-1 ∘ S_beta between equal-length
/// words, together with its distance to the identity over [0,1]^d.
struct RelativeMapRecord {
    Word alpha;
    Word beta;
    Similarity map;
    Scalar id_distance;
};

/// Breadth-first closure over relative maps, generated from the identity by
/// R -> S_i^-1 ∘ R ∘ S_j (appending a letter to each word).  A state is
/// pruned when its translation leaves the prune ball or its ratio leaves
/// [c_min, 1/c_min]; visited states are deduplicated by canonical key
/// (exact parameters on the exact backend, a 1e-12 grid on floats).
class RelativeMapEnumerator {
public:
    /// prune_bound: translation norm cap; defaults to 2*sqrt(d).
    explicit RelativeMapEnumerator(const IfsSystem& ifs,
                                   std::optional<Scalar> prune_bound = std::nullopt);

    /// Expands one level and returns the records first discovered there,
    /// in canonical-key order.  Returns an empty list once stabilized.
    std::vector<RelativeMapRecord> expand_level();

    int level() const { return level_; }
    /// true when the last expansion discovered no new states
    bool stabilized() const { return stabilized_; }
    /// states waiting to be expanded
    std::size_t frontier_size() const { return frontier_.size(); }
    std::size_t visited_count() const { return visited_count_; }

private:
    struct State {
        Word alpha;
        Word beta;
        Similarity map;
    };

    bool admissible(const Similarity& m) const;

    const IfsSystem& ifs_;
    std::vector<Similarity> inverses_;
    Scalar bound_sq_;
    Scalar ratio_lo_;
    Scalar ratio_hi_;
    std::vector<State> frontier_;
    std::vector<std::string> visited_;  // sorted canonical keys
    std::size_t visited_count_ = 0;
    int level_ = 0;
    bool stabilized_ = false;
};

/// Removes duplicates from a list of similarities.  Exact backend: exact
/// parameter equality.  Float backend: two maps are identified when all
/// parameters agree within tol.  Output keeps first occurrences in a
/// deterministic sorted order.
std::vector<Similarity> dedup_maps(const std::vector<Similarity>& maps, const Scalar& tol);

/// Result of closing the orthogonal parts {O_i} under composition.
struct OrthGroupReport {
    bool finite = false;
    std::vector<std::pair<Scalar, bool>> elements;  // (angle_deg, reflect)
    bool dense_evidence = false;  // float-backend closure overflowed max_elements
    std::string note;
};

OrthGroupReport orthogonal_group_analysis(const IfsSystem& ifs, double eps,
                                          std::size_t max_elements);

/// Search I_r for d+1 fixed points of word maps whose difference set has
/// full rank.
struct SpanningReport {
    bool spans = false;
    int rank = 0;
    std::vector<std::pair<Word, Point>> witnesses;
    std::string message;
};

SpanningReport spanning_fixed_points(const IfsSystem& ifs, const Scalar& r,
                                     double tol = 1e-9);

} // namespace assouad
