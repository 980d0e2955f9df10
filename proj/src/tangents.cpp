#include "assouad/tangents.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace assouad {

namespace {

Similarity sim_pow(const Similarity& f, long m) {
    Similarity acc = Similarity::identity(f.dim(), f.backend(),
                                          f.backend() == Backend::floating
                                              ? f.ratio().digits()
                                              : kDefaultFloatDigits);
    if (m == 0) return acc;
    Similarity base = m > 0 ? f : f.inverse();
    long count = m > 0 ? m : -m;
    for (long i = 0; i < count; ++i) acc = acc.compose(base);
    return acc;
}

Scalar exact_from_double(double v) {
    // dyadic representation; exact for finite doubles
    return Scalar::exact(Rational(v));
}

void sort_strictly_decreasing(std::vector<WitnessPair>& pairs) {
    std::sort(pairs.begin(), pairs.end(), [](const WitnessPair& a, const WitnessPair& b) {
        if (a.id_distance != b.id_distance) return a.id_distance > b.id_distance;
        if (a.alpha != b.alpha) return a.alpha < b.alpha;
        return a.beta < b.beta;
    });
    std::vector<WitnessPair> kept;
    for (auto& p : pairs) {
        if (p.id_distance.is_zero()) continue;
        if (!kept.empty() && !(p.id_distance < kept.back().id_distance)) continue;
        kept.push_back(std::move(p));
    }
    pairs = std::move(kept);
}

} // namespace

WitnessSequence make_witness_sequence(const IfsSystem& ifs,
                                      const std::vector<std::pair<Word, Word>>& pairs) {
    WitnessSequence seq;
    for (const auto& [a, b] : pairs) {
        WitnessPair wp;
        wp.alpha = a;
        wp.beta = b;
        wp.rel = ifs.word_map(a).inverse().compose(ifs.word_map(b));
        wp.id_distance = wp.rel.identity_distance();
        seq.pairs.push_back(std::move(wp));
    }
    sort_strictly_decreasing(seq.pairs);
    seq.orientation_normalized = ifs.dim() == 1;
    for (const auto& p : seq.pairs)
        if (ifs.word_map(p.alpha).sign() < 0) seq.orientation_normalized = false;
    return seq;
}

WitnessSequence normalize_orientation(const IfsSystem& ifs, const WitnessSequence& in) {
    if (ifs.dim() != 1)
        throw domain_error("normalize_orientation is a 1D operation");
    if (in.pairs.empty()) throw domain_error("normalize_orientation: no pairs");

    int reflector = 0;
    for (int i = 1; i <= static_cast<int>(ifs.map_count()); ++i)
        if (ifs.map(i).sign() < 0) {
            reflector = i;
            break;
        }

    WitnessSequence out;
    for (const WitnessPair& p : in.pairs) {
        if (ifs.word_map(p.alpha).sign() > 0) {
            out.pairs.push_back(p);
            continue;
        }
        // S_alpha reflects, hence the system contains a reflecting map
        if (reflector == 0)
            throw domain_error("normalize_orientation: reflecting word without a "
                               "reflecting member map");
        WitnessPair fixed;
        fixed.alpha = p.alpha;
        fixed.alpha.push_back(reflector);
        fixed.beta = p.beta;
        fixed.beta.push_back(reflector);
        fixed.rel = ifs.word_map(fixed.alpha).inverse().compose(ifs.word_map(fixed.beta));
        fixed.id_distance = fixed.rel.identity_distance();
        out.pairs.push_back(std::move(fixed));
    }
    sort_strictly_decreasing(out.pairs);
    if (out.pairs.empty())
        throw domain_error("normalize_orientation: no usable pairs survived");
    out.orientation_normalized = true;
    return out;
}

namespace {

// endpoint values of phi(x) = rel(x) - x on [center-h, center+h]
std::pair<Scalar, Scalar> phi_range(const Similarity& rel, const Scalar& center,
                                    const Scalar& h) {
    Point lo = Point::line(center - h);
    Point hi = Point::line(center + h);
    Scalar v0 = rel.apply(lo).x - lo.x;
    Scalar v1 = rel.apply(hi).x - hi.x;
    if (v0 > v1) std::swap(v0, v1);
    return {v0, v1};
}

} // namespace

PseudoTangentRun build_pseudo_tangent(const IfsSystem& ifs,
                                      const WitnessSequence& witnesses, int n) {
    if (ifs.dim() != 1) throw domain_error("build_pseudo_tangent is a 1D operation");
    if (n < 1) throw domain_error("build_pseudo_tangent: n must be >= 1");
    if (!witnesses.orientation_normalized)
        throw domain_error("build_pseudo_tangent: witnesses must be orientation-"
                           "normalized first");
    if (witnesses.pairs.empty()) throw domain_error("build_pseudo_tangent: no witnesses");

    // two distinct fixed points
    Scalar a = ifs.map(1).fixed_point().x;
    std::optional<Scalar> b;
    for (int i = 2; i <= static_cast<int>(ifs.map_count()); ++i) {
        Scalar fp = ifs.map(i).fixed_point().x;
        if (fp != a) {
            b = fp;
            break;
        }
    }
    if (!b) throw domain_error("build_pseudo_tangent: all maps share one fixed point "
                               "(trivial attractor)");
    Scalar rho = (a - *b).abs() / Scalar::int_like(a, 5);
    Scalar two_rho = rho + rho;

    // classify each witness near each candidate center: usable directly when
    // phi > 0 on B_2rho, usable after an (alpha,beta) swap when phi < 0 and
    // the relative map preserves orientation
    struct Usable {
        std::vector<WitnessPair> pairs;
    };
    auto collect = [&](const Scalar& center) {
        Usable u;
        Scalar zero = Scalar::zero_like(center);
        for (const WitnessPair& p : witnesses.pairs) {
            auto [lo, hi] = phi_range(p.rel, center, two_rho);
            if (lo > zero) {
                u.pairs.push_back(p);
            } else if (hi < zero && p.rel.sign() > 0) {
                WitnessPair sw;
                sw.alpha = p.beta;
                sw.beta = p.alpha;
                sw.rel = p.rel.inverse();
                sw.id_distance = sw.rel.identity_distance();
                auto [lo2, hi2] = phi_range(sw.rel, center, two_rho);
                if (lo2 > zero) u.pairs.push_back(std::move(sw));
            }
        }
        sort_strictly_decreasing(u.pairs);
        return u;
    };
    Usable at_a = collect(a);
    Usable at_b = collect(*b);
    bool use_a = at_a.pairs.size() >= at_b.pairs.size();
    Scalar center = use_a ? a : *b;
    std::vector<WitnessPair> pairs = use_a ? std::move(at_a.pairs) : std::move(at_b.pairs);
    if (pairs.empty())
        throw domain_error("build_pseudo_tangent: no sign-coherent witnesses near "
                           "either fixed point");

    // f = S_base ∘ S_base for the first map fixing the chosen center
    int base_idx = 0;
    for (int i = 1; i <= static_cast<int>(ifs.map_count()); ++i)
        if (ifs.map(i).fixed_point().x == center) {
            base_idx = i;
            break;
        }
    if (base_idx == 0)
        throw domain_error("build_pseudo_tangent: internal: no map fixes the center");
    Similarity f = ifs.map(base_idx).compose(ifs.map(base_idx));
    Scalar c = f.ratio();

    // M minimal with c^M * sup_{x in [0,1]} |x - a| < rho
    Scalar big = center.abs();
    Scalar other = (Scalar::one_like(center) - center).abs();
    if (other > big) big = other;
    long M = 1;
    Scalar reach = c * big;
    while (!(reach < rho)) {
        reach *= c;
        ++M;
        if (M > 4096)
            throw domain_error("build_pseudo_tangent: cannot localize f^M(F) in "
                               "B_rho(a)");
    }

    // witness ranges on B_rho(center)
    struct Prepared {
        WitnessPair pair;
        Scalar delta;  // inf of phi on B_rho
        Scalar Delta;  // sup
        bool translation;
    };
    std::vector<Prepared> prep;
    bool all_translations = true;
    for (auto& p : pairs) {
        Prepared pr{p, Scalar::zero_like(c), Scalar::zero_like(c), false};
        auto [lo, hi] = phi_range(p.rel, center, rho);
        pr.delta = lo;
        pr.Delta = hi;
        pr.translation = p.rel.orthogonal_is_identity() &&
                         p.rel.ratio() == Scalar::one_like(c);
        all_translations = all_translations && pr.translation;
        prep.push_back(std::move(pr));
    }

    PseudoTangentRun run;
    run.n_requested = n;
    run.base_point = Point::line(center);
    run.contraction = c;
    run.f_map_index = base_idx;
    run.min_power = M;
    run.rho = rho;
    run.mode = all_translations ? "translation-reuse" : "paper-bracket";
    Scalar eps = Scalar::one_like(c) / (c * Scalar::int_like(c, n));
    run.epsilon = eps;
    Scalar c_eps = c * eps;

    Similarity g = Similarity::identity(1, ifs.backend(),
                                        ifs.backend() == Backend::floating
                                            ? ifs.float_digits()
                                            : kDefaultFloatDigits);
    Similarity h = g;
    Scalar d_prev = Scalar::one_like(c);
    Point pa = Point::line(center);
    Scalar prev_val = center;

    run.emitted_points.dim = 1;
    run.emitted_points.push(center.to_double());

    for (int j = 1; j <= n; ++j) {
        // choose the coarsest witness admitting the bracket with m >= M
        long chosen_m = 0;
        std::size_t chosen_k = prep.size();
        for (std::size_t k = 0; k < prep.size(); ++k) {
            Scalar P = d_prev * prep[k].delta;
            // P(m) = d * c^-m * delta, increasing in m; need P(m) in [c*eps, eps)
            Scalar Pm = P;
            for (long t = 0; t < M; ++t) Pm /= c;
            if (!(Pm < eps)) continue;  // too coarse even at m = M
            long m = M;
            while (Pm < c_eps) {
                Pm /= c;
                ++m;
                if (m > 1000000) throw domain_error("pseudo-tangent: bracket runaway");
            }
            chosen_k = k;
            chosen_m = m;
            break;
        }
        if (chosen_k == prep.size() && all_translations) {
            // translation witnesses act globally; m may drop below M (and
            // below zero), letting one witness serve every later step
            std::size_t k = prep.size() - 1;
            Scalar Pm = d_prev * prep[k].delta;
            long m = 0;
            while (!(Pm < eps)) {
                Pm *= c;
                --m;
                if (m < -1000000) throw domain_error("pseudo-tangent: bracket runaway");
            }
            while (Pm < c_eps) {
                Pm /= c;
                ++m;
            }
            chosen_k = k;
            chosen_m = m;
        }
        if (chosen_k == prep.size()) {
            run.note = "witness tail exhausted at step " + std::to_string(j) +
                       "; finest achievable n for this witness family is " +
                       std::to_string(j - 1);
            break;
        }

        const Prepared& w = prep[chosen_k];
        Similarity f_m = sim_pow(f, chosen_m);
        Similarity f_m_inv = sim_pow(f, -chosen_m);
        g = g.compose(f_m_inv).compose(ifs.word_map(w.pair.alpha).inverse());
        h = ifs.word_map(w.pair.beta).compose(f_m).compose(h);
        d_prev = g.ratio();

        Point pj = g.apply(h.apply(pa));
        Scalar inc = pj.x - prev_val;
        run.increments.push_back(inc);
        run.selections.push_back(PseudoTangentStep{chosen_k, chosen_m});
        run.emitted_points.push(pj.x.to_double());
        prev_val = pj.x;
        ++run.n_achieved;
    }
    run.emitted_points.check_finite();
    return run;
}

BandtGrafWitness bandt_graf_witness(int m, int truncation_terms) {
    const int K = truncation_terms;
    if (m < 1) throw domain_error("bandt_graf_witness: m must be >= 1");
    if (K < 2) throw domain_error("bandt_graf_witness: need at least 2 series terms");
    if (m > K - 2)
        throw domain_error("bandt_graf_witness: m = " + std::to_string(m) +
                           " too large for truncation K = " + std::to_string(K) +
                           " (offset would vanish); raise K");
    if (m > 16) throw domain_error("bandt_graf_witness: m too large (word length 2^m+1)");

    const long n = (1L << m) + 1;
    BandtGrafWitness w;
    w.alpha.assign(n, 1);
    w.beta.assign(n, 1);
    for (int l = 0; l <= m; ++l) w.alpha[(1L << l) + 1 - 1] = 3;
    w.beta[0] = 2;

    // offset = 4 * sum_{j=m+1}^{K-1} 5^(2^m - 2^j), exact
    Rational sum = 0;
    for (int j = m + 1; j <= K - 1; ++j) {
        long e = (1L << j) - (1L << m);
        Rational term(4);
        term /= boost::multiprecision::pow(BigInt(5), static_cast<unsigned long>(e));
        sum += term;
    }
    w.offset = Scalar::exact(sum);
    double digits = std::ceil(static_cast<double>(2L << m) * std::log10(5.0)) + 12;
    w.min_recompose_digits = static_cast<unsigned>(digits);
    return w;
}

PointCloud pretangent_Ek(double alpha, double beta, int k, int d, double cutoff,
                         std::string* warning) {
    if (!(alpha > 0 && alpha < 1) || !(beta > 0 && beta < 1))
        throw domain_error("pretangent_Ek: alpha, beta must lie in (0,1)");
    if (k < 0) throw domain_error("pretangent_Ek: k must be >= 0");
    if (d != 1 && d != 2) throw domain_error("pretangent_Ek: d must be 1 or 2");
    if (!(cutoff > 0 && cutoff < 1)) throw domain_error("pretangent_Ek: bad cutoff");

    if (warning) {
        warning->clear();
        // continued-fraction check for log-commensurability
        double x0 = std::log(beta) / std::log(alpha);
        double x = x0;
        long p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // convergents
        for (int it = 0; it < 40; ++it) {
            double fl = std::floor(x);
            long ai = static_cast<long>(fl);
            long p2 = ai * p0 + p1;
            long q2 = ai * q0 + q1;
            p1 = p0; q1 = q0; p0 = p2; q0 = q2;
            if (q0 != 0 && q0 <= 100 &&
                std::abs(x0 - static_cast<double>(p0) / static_cast<double>(q0)) < 1e-12) {
                *warning = "log(beta)/log(alpha) is numerically rational (" +
                           std::to_string(p0) + "/" + std::to_string(q0) +
                           "); pre-tangent sets will not densify";
                break;
            }
            double frac = x - fl;
            if (frac < 1e-15) break;
            x = 1.0 / frac;
            if (q0 > 100) break;
        }
    }

    std::set<double> vals;
    vals.insert(0.0);
    for (int m = 0;; ++m) {
        double top = std::pow(alpha, m) * std::pow(beta, -k);
        if (top < cutoff) break;
        for (int nn = -k;; ++nn) {
            double v = std::pow(alpha, m) * std::pow(beta, nn);
            if (v > 1.0) continue;
            if (v < cutoff) break;
            vals.insert(v);
        }
        if (m > 100000) throw domain_error("pretangent_Ek: runaway enumeration");
    }

    PointCloud cloud;
    cloud.dim = d;
    if (d == 1) {
        for (double v : vals) cloud.push(v);
        return cloud;
    }
    for (double u : vals)
        for (double v : vals) cloud.push(u, v);
    return cloud;
}

PointCloud tangent_zoom(const IfsSystem& ifs, const Similarity& T,
                        const ZoomWindow& window, double out_resolution) {
    const int d = ifs.dim();
    if (T.dim() != d) throw domain_error("tangent_zoom: T dimension mismatch");
    if (!(out_resolution > 0)) throw domain_error("tangent_zoom: bad resolution");
    auto in_range = [](double lo, double hi) {
        return lo < hi && lo >= -10.0 && hi <= 10.0;
    };
    if (!in_range(window.lo_x, window.hi_x) ||
        (d == 2 && !in_range(window.lo_y, window.hi_y)))
        throw domain_error("tangent_zoom: window must be a box within [-10,10]^d");

    // T in double precision
    double tr = T.ratio().to_double();
    double cs = 1, sn = 0;
    if (d == 2) {
        double ang = T.angle_deg().to_double() * 3.14159265358979323846 / 180.0;
        cs = std::cos(ang);
        sn = std::sin(ang);
    }
    bool refl = T.reflect();
    double t1 = T.translation().x.to_double();
    double t2 = d == 2 ? T.translation().y.to_double() : 0.0;
    auto apply_T = [&](double x, double y) {
        if (d == 1) return std::pair<double, double>((refl ? -tr * x : tr * x) + t1, 0.0);
        double yy = refl ? -y : y;
        return std::pair<double, double>(tr * (cs * x - sn * yy) + t1,
                                         tr * (sn * x + cs * yy) + t2);
    };

    double source_res = out_resolution / tr;
    if (source_res >= 1.0) source_res = 0.5;

    // preimage hull of the window corners, inflated by the source resolution
    double plo_x = 0, phi_x = 0, plo_y = 0, phi_y = 0;
    {
        Similarity Tinv = T.inverse();
        double ir = Tinv.ratio().to_double();
        double ics = 1, isn = 0;
        if (d == 2) {
            double ang = Tinv.angle_deg().to_double() * 3.14159265358979323846 / 180.0;
            ics = std::cos(ang);
            isn = std::sin(ang);
        }
        bool irefl = Tinv.reflect();
        double it1 = Tinv.translation().x.to_double();
        double it2 = d == 2 ? Tinv.translation().y.to_double() : 0.0;
        auto apply_inv = [&](double x, double y) {
            if (d == 1) return std::pair<double, double>((irefl ? -ir * x : ir * x) + it1, 0.0);
            double yy = irefl ? -y : y;
            return std::pair<double, double>(ir * (ics * x - isn * yy) + it1,
                                             ir * (isn * x + ics * yy) + it2);
        };
        bool first = true;
        double cxs[2] = {window.lo_x, window.hi_x};
        double cys[2] = {window.lo_y, window.hi_y};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < (d == 2 ? 2 : 1); ++j) {
                auto [px, py] = apply_inv(cxs[i], cys[j]);
                if (first) {
                    plo_x = phi_x = px;
                    plo_y = phi_y = py;
                    first = false;
                } else {
                    plo_x = std::min(plo_x, px);
                    phi_x = std::max(phi_x, px);
                    plo_y = std::min(plo_y, py);
                    phi_y = std::max(phi_y, py);
                }
            }
        double pad = 2 * source_res + 1e-15;
        plo_x -= pad; phi_x += pad;
        plo_y -= pad; phi_y += pad;
    }

    Scalar res_scalar = ifs.backend() == Backend::exact
                            ? exact_from_double(source_res)
                            : Scalar::floating(source_res, ifs.float_digits());

    Point p0 = ifs.map(1).fixed_point();
    PointCloud out;
    out.dim = d;
    out.resolution = out_resolution;
    std::size_t emitted_budget = 10000000;

    auto prune = [&](const Similarity& s) {
        Scalar lo_x, hi_x, lo_y, hi_y;
        s.box_image(lo_x, hi_x, lo_y, hi_y);
        if (hi_x.to_double() < plo_x || lo_x.to_double() > phi_x) return true;
        if (d == 2 && (hi_y.to_double() < plo_y || lo_y.to_double() > phi_y)) return true;
        return false;
    };
    double slack = out_resolution;
    ifs.descend_stopping(res_scalar, [&](const Word& w, const Similarity& s) {
        Point p = s.apply(p0);
        auto [zx, zy] = apply_T(p.x.to_double(), d == 2 ? p.y.to_double() : 0.0);
        if (zx < window.lo_x - slack || zx > window.hi_x + slack) return;
        if (d == 2 && (zy < window.lo_y - slack || zy > window.hi_y + slack)) return;
        if (out.size() >= emitted_budget)
            throw domain_error("tangent_zoom: resolution infeasible (more than 10^7 "
                               "points)");
        out.push(zx, zy);
        out.labels.push_back(w);
    }, prune, true);
    out.check_finite();
    return out;
}

} // namespace assouad
