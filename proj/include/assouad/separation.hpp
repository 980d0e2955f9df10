#pragma once

#include <optional>
#include <string>
#include <vector>

#include "assouad/enumeration.hpp"

namespace assouad {

/// Two distinct words composing to exactly the same map.
struct OverlapWitness {
    Word alpha;
    Word beta;
};

/// Level-by-level composed-map table with canonical keys; reports every
/// first-occurrence collision between distinct words (any lengths).
/// Exact backend only: float arithmetic cannot certify exact equality.
std::vector<OverlapWitness> exact_overlap_scan(const IfsSystem& ifs, int max_level);

enum class WspStatus { VIOLATION_WITNESSED, WSP_EVIDENCE, UNKNOWN };

std::string to_string(WspStatus s);

struct WspVerdict {
    WspStatus status = WspStatus::UNKNOWN;
    std::vector<RelativeMapRecord> witnesses;  // nonempty iff VIOLATION_WITNESSED
    std::optional<Scalar> min_nonzero_distance;
    int search_depth = 0;
    double epsilon = 0;
    std::string truncation_note;  // parameter-model error etc., may be empty
    std::vector<OverlapWitness> exact_overlaps;  // collected separately (exact backend)
    std::size_t states_visited = 0;
};

/// Runs the pruned relative-map closure to max_level.  VIOLATION_WITNESSED
/// when some record has 0 < id_distance < epsilon; WSP_EVIDENCE when the
/// closure stabilizes with min nonzero distance >= epsilon; UNKNOWN when
/// the frontier is truncated without a witness.  Exact-zero collisions are
/// never violation witnesses.
WspVerdict wsp_scan(const IfsSystem& ifs, int max_level, double epsilon,
                    std::optional<Scalar> prune_bound = std::nullopt);

/// Zerner-style multiplicity diagnostic: builds {S_w(z) : w in I_r} (exact
/// duplicates collapsed), slides closed r-balls centered at each point and
/// returns the maximal count.  Bounded uniformly in r is WSP-consistent;
/// growth with 1/r is violation-consistent.
struct MultiplicityReport {
    std::size_t max_multiplicity = 0;
    Point worst_center;
    std::size_t distinct_points = 0;
    std::size_t word_count = 0;
};

MultiplicityReport multiplicity_scan(const IfsSystem& ifs, const Scalar& r,
                                     std::optional<Point> z = std::nullopt);

} // namespace assouad
