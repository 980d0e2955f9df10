#pragma once

#include <optional>
#include <string>
#include <vector>

#include "assouad/dimension.hpp"

namespace assouad {

/// One near-identity witness pair: words alpha, beta with the relative map
/// S_alpha^-1 ∘ S_beta and its distance to the identity.
struct WitnessPair {
    Word alpha;
    Word beta;
    Similarity rel;
    Scalar id_distance;
};

/// Witness pairs ordered by strictly decreasing id_distance.
struct WitnessSequence {
    std::vector<WitnessPair> pairs;
    bool orientation_normalized = false;
};

/// Builds a WitnessSequence from word pairs: computes the relative maps,
/// sorts by decreasing distance and keeps a strictly decreasing tail.
WitnessSequence make_witness_sequence(const IfsSystem& ifs,
                                      const std::vector<std::pair<Word, Word>>& pairs);

/// Reflection removal (1D): pairs whose S_alpha has positive derivative pass
/// through; the rest are fixed by appending a reflecting member map r to
/// both words (alpha' = alpha.r, beta' = beta.r), which multiplies the
/// distance by at most 1/c_r.
WitnessSequence normalize_orientation(const IfsSystem& ifs, const WitnessSequence& in);

struct PseudoTangentStep {
    std::size_t witness_index = 0;  // k_j
    long m = 0;                     // m_j (may be negative in reuse mode)
};

/// Output of the inductive pseudo-tangent construction: n+1 points
/// {a} ∪ {g_j∘h_j(a)} whose increments lie in [c*eps, 3*eps].
struct PseudoTangentRun {
    Scalar epsilon;        // (c*n)^-1
    int n_requested = 0;
    int n_achieved = 0;
    Point base_point;      // a
    Scalar contraction;    // c = ratio(f), f = S_base ∘ S_base
    int f_map_index = 1;
    long min_power = 1;    // M: f^M(F) ⊆ B_rho(a)
    Scalar rho;
    std::vector<PseudoTangentStep> selections;
    std::vector<Scalar> increments;
    PointCloud emitted_points;
    /// "paper-bracket": every m_j >= M (needed when witnesses are genuine
    /// similarities).  "translation-reuse": witnesses are pure translations,
    /// whose identity offset is global, so m_j ranges over all integers and
    /// a finite witness family supports any n.
    std::string mode;
    std::string note;
};

PseudoTangentRun build_pseudo_tangent(const IfsSystem& ifs,
                                      const WitnessSequence& witnesses, int n);

/// Explicit near-identity pair for the 3-map line system
/// {x/5, x/5 + t/5, x/5 + 4/5} with t truncated at K series terms.
/// Word length is 2^m + 1; the exact offset of S_alpha^-1 ∘ S_beta equals
/// 4 * sum_{j=m+1}^{K-1} 5^(2^m - 2^j).
struct BandtGrafWitness {
    Word alpha;
    Word beta;
    Scalar offset;                   // exact rational
    unsigned min_recompose_digits;   // float precision needed to reproduce the
                                     // offset by recomposing the words
};

BandtGrafWitness bandt_graf_witness(int m, int truncation_terms = 8);

/// Pre-tangent set E_k for parameters alpha, beta in (0,1):
///   E_k = {alpha^m beta^n : m >= 0, n >= -k} ∩ [0,1]  (plus the point 0),
/// truncated when alpha^m beta^n < cutoff; in dimension d the d-fold
/// product of the 1D set.  Warns via *warning when log beta / log alpha is
/// numerically rational (continued-fraction check).
PointCloud pretangent_Ek(double alpha, double beta, int k, int d,
                         double cutoff = 1e-6, std::string* warning = nullptr);

struct ZoomWindow {
    double lo_x = 0, hi_x = 1;
    double lo_y = 0, hi_y = 1;  // ignored in 1D
};

/// T(attractor) ∩ window at output resolution out_resolution, computed by a
/// windowed stopping-set descent (source resolution out_resolution/|T|).
/// Throws when the descent would emit more than 10^7 points.
PointCloud tangent_zoom(const IfsSystem& ifs, const Similarity& T,
                        const ZoomWindow& window, double out_resolution);

} // namespace assouad
