#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "assouad/csv_io.hpp"
#include "assouad/dimension.hpp"
#include "assouad/render.hpp"
#include "assouad/separation.hpp"
#include "assouad/spec_io.hpp"
#include "assouad/tangents.hpp"

using namespace assouad;

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print_scalar(const std::string& key, const Scalar& s) {
    std::cout << key << ": " << fmt(s.to_double());
    if (s.is_exact()) std::cout << " (exact " << s.str() << ")";
    std::cout << "\n";
}

IfsSystem load_system(const std::string& spec, std::optional<unsigned> digits) {
    IfsSpecDocument doc = load_spec(spec);
    if (digits) {
        doc.backend = Backend::floating;
        doc.float_digits = *digits;
    }
    IfsSystem sys = build_system(doc);
    for (const std::string& w : sys.warnings())
        std::cout << "warning: " << w << "\n";
    return sys;
}

Scalar parse_radius(const std::string& text, const IfsSystem& sys) {
    return Scalar::parse(text, sys.backend(),
                         sys.backend() == Backend::floating ? sys.float_digits()
                                                            : kDefaultFloatDigits);
}

int run_simdim(const std::string& spec) {
    IfsSystem sys = load_system(spec, std::nullopt);
    DimensionEstimate est = similarity_dimension(sys);
    std::cout << "spec: " << (sys.name().empty() ? spec : sys.name()) << "\n";
    std::cout << "kind: similarity\n";
    std::cout << "value: " << fmt(est.value) << "\n";
    std::cout << "moran_root: " << fmt(est.raw_value) << "\n";
    return 0;
}

int run_stopping(const std::string& spec, const std::string& r_text) {
    IfsSystem sys = load_system(spec, std::nullopt);
    Scalar r = parse_radius(r_text, sys);
    std::vector<Word> words = sys.stopping_set(r);
    std::cout << "spec: " << (sys.name().empty() ? spec : sys.name()) << "\n";
    std::cout << "r: " << r.str() << "\n";
    std::cout << "count: " << words.size() << "\n";
    if (words.size() <= 100) {
        std::cout << "words:";
        for (const Word& w : words) std::cout << " " << format_word(w);
        std::cout << "\n";
    } else {
        std::cout << "words: (suppressed, count > 100)\n";
    }
    return 0;
}

int run_overlap_scan(const std::string& spec, int depth) {
    IfsSystem sys = load_system(spec, std::nullopt);
    std::vector<OverlapWitness> ws = exact_overlap_scan(sys, depth);
    std::cout << "spec: " << (sys.name().empty() ? spec : sys.name()) << "\n";
    std::cout << "depth: " << depth << "\n";
    std::cout << "overlaps: " << ws.size() << "\n";
    for (const auto& w : ws)
        std::cout << "witness: " << format_word(w.alpha) << " = " << format_word(w.beta)
                  << "\n";
    return 0;
}

int run_wsp_scan(const std::string& spec, int depth, double epsilon,
                 const std::string& prune_text) {
    IfsSystem sys = load_system(spec, std::nullopt);
    std::optional<Scalar> prune;
    if (!prune_text.empty()) prune = parse_radius(prune_text, sys);
    WspVerdict v = wsp_scan(sys, depth, epsilon, prune);
    std::cout << "spec: " << (sys.name().empty() ? spec : sys.name()) << "\n";
    std::cout << "status: " << to_string(v.status) << "\n";
    std::cout << "depth: " << v.search_depth << "\n";
    std::cout << "epsilon: " << fmt(v.epsilon) << "\n";
    std::cout << "states_visited: " << v.states_visited << "\n";
    if (v.min_nonzero_distance)
        print_scalar("min_nonzero_distance", *v.min_nonzero_distance);
    std::cout << "violation_witnesses: " << v.witnesses.size() << "\n";
    if (!v.witnesses.empty()) {
        const RelativeMapRecord& best = v.witnesses.front();
        std::cout << "best_witness_alpha: " << format_word(best.alpha) << "\n";
        std::cout << "best_witness_beta: " << format_word(best.beta) << "\n";
        print_scalar("best_witness_distance", best.id_distance);
    }
    std::cout << "exact_overlaps: " << v.exact_overlaps.size() << "\n";
    if (!v.truncation_note.empty())
        std::cout << "truncation_note: " << v.truncation_note << "\n";
    return v.status == WspStatus::UNKNOWN ? 2 : 0;
}

int run_multiplicity(const std::string& spec, const std::string& r_text,
                     const std::string& z_text) {
    IfsSystem sys = load_system(spec, std::nullopt);
    Scalar r = parse_radius(r_text, sys);
    std::optional<Point> z;
    if (!z_text.empty()) {
        Scalar zx = parse_radius(z_text, sys);
        z = sys.dim() == 1 ? Point::line(zx) : Point::plane(zx, Scalar::zero_like(zx));
    }
    MultiplicityReport rep = multiplicity_scan(sys, r, z);
    std::cout << "spec: " << (sys.name().empty() ? spec : sys.name()) << "\n";
    std::cout << "r: " << r.str() << "\n";
    std::cout << "words: " << rep.word_count << "\n";
    std::cout << "distinct_points: " << rep.distinct_points << "\n";
    std::cout << "max_multiplicity: " << rep.max_multiplicity << "\n";
    std::cout << "worst_center: " << fmt(rep.worst_center.x.to_double()) << "\n";
    return 0;
}

int run_dim(const std::string& spec, const std::string& mode, int min_exp, int max_exp,
            int min_gap, const std::string& csv_path, int threads) {
    IfsSystem sys = load_system(spec, std::nullopt);
    DimensionEstimate est;
    if (mode == "box") {
        est = box_dimension_estimate(sys, min_exp, max_exp, threads);
    } else if (mode == "assouad") {
        est = assouad_estimate(sys, min_gap, min_exp, max_exp, threads);
    } else {
        throw domain_error("dim: mode must be 'box' or 'assouad'");
    }
    std::cout << "spec: " << (sys.name().empty() ? spec : sys.name()) << "\n";
    std::cout << "kind: " << mode << "\n";
    std::cout << "value: " << fmt(est.value) << "\n";
    std::cout << "raw_value: " << fmt(est.raw_value) << "\n";
    std::cout << "residual: " << fmt(est.residual) << "\n";
    std::cout << "records: " << est.records.size() << "\n";
    if (!csv_path.empty()) {
        std::string config = "dim spec=" + spec + " mode=" + mode +
                             " min-exp=" + std::to_string(min_exp) +
                             " max-exp=" + std::to_string(max_exp) +
                             " min-gap=" + std::to_string(min_gap) +
                             " threads=" + std::to_string(threads) + " seed=0";
        emit_covering_csv(est.records, sys.dim(), config, csv_path);
        std::cout << "csv: " << csv_path << "\n";
    }
    return 0;
}

int run_tangent_pseudo(const std::string& spec, int n, int harvest_depth,
                       int bandt_graf_m, std::optional<unsigned> digits) {
    IfsSystem sys = load_system(spec, digits);
    if (sys.dim() != 1)
        throw domain_error("tangent --mode pseudo is a 1D construction");
    std::vector<std::pair<Word, Word>> pairs;
    if (bandt_graf_m > 0) {
        for (int m = 2; m <= bandt_graf_m; ++m) {
            BandtGrafWitness w = bandt_graf_witness(m, 8);
            pairs.emplace_back(w.alpha, w.beta);
        }
    } else {
        // harvest near-identity pairs from the relative-map closure
        RelativeMapEnumerator bfs(sys);
        for (int level = 1; level <= harvest_depth; ++level) {
            for (const RelativeMapRecord& rec : bfs.expand_level())
                if (!rec.id_distance.is_zero()) pairs.emplace_back(rec.alpha, rec.beta);
            if (bfs.stabilized()) break;
        }
    }
    if (pairs.empty())
        throw domain_error("no near-identity witnesses found; the system may "
                           "satisfy the weak separation property");
    WitnessSequence seq = make_witness_sequence(sys, pairs);
    if (!seq.orientation_normalized) seq = normalize_orientation(sys, seq);
    PseudoTangentRun run = build_pseudo_tangent(sys, seq, n);

    std::cout << "spec: " << (sys.name().empty() ? spec : sys.name()) << "\n";
    std::cout << "mode: pseudo\n";
    std::cout << "construction: " << run.mode << "\n";
    std::cout << "n_requested: " << run.n_requested << "\n";
    std::cout << "n_achieved: " << run.n_achieved << "\n";
    print_scalar("epsilon", run.epsilon);
    print_scalar("contraction", run.contraction);
    std::cout << "f_map_index: " << run.f_map_index << "\n";
    std::cout << "min_power: " << run.min_power << "\n";
    std::cout << "base_point: " << fmt(run.base_point.x.to_double()) << "\n";
    if (!run.increments.empty()) {
        Scalar lo = run.increments.front(), hi = run.increments.front();
        for (const Scalar& inc : run.increments) {
            if (inc < lo) lo = inc;
            if (inc > hi) hi = inc;
        }
        print_scalar("increment_min", lo);
        print_scalar("increment_max", hi);
    }
    double a = run.base_point.x.to_double();
    PointCloud grid;
    grid.dim = 1;
    for (int i = 0; i <= 1000; ++i)
        grid.push(a + static_cast<double>(i) / 1000.0);
    double oh = one_sided_hausdorff(grid, run.emitted_points);
    std::cout << "one_sided_hausdorff_interval_to_points: " << fmt(oh) << "\n";
    std::cout << "paper_bound_3_over_cn: "
              << fmt(3.0 / (run.contraction.to_double() * run.n_achieved)) << "\n";
    if (!run.note.empty()) std::cout << "note: " << run.note << "\n";
    return 0;
}

int run_tangent_ek(double alpha, double beta, int k, int d, double cutoff) {
    std::string warning;
    PointCloud ek = pretangent_Ek(alpha, beta, k, d, cutoff, &warning);
    std::cout << "mode: ek\n";
    std::cout << "alpha: " << fmt(alpha) << "\n";
    std::cout << "beta: " << fmt(beta) << "\n";
    std::cout << "k: " << k << "\n";
    std::cout << "d: " << d << "\n";
    std::cout << "points: " << ek.size() << "\n";
    PointCloud grid = grid_cloud(d, 1001);
    std::cout << "one_sided_hausdorff_cube_to_ek: " << fmt(one_sided_hausdorff(grid, ek))
              << "\n";
    if (!warning.empty()) std::cout << "warning: " << warning << "\n";
    return 0;
}

int run_tangent_zoom(const std::string& spec, double scale, double tx,
                     std::vector<double> window, double resolution) {
    IfsSystem sys = load_system(spec, std::nullopt);
    ZoomWindow w;
    if (sys.dim() == 1) {
        if (window.size() != 2) throw domain_error("zoom window needs LO HI in 1D");
        w.lo_x = window[0];
        w.hi_x = window[1];
    } else {
        if (window.size() != 4)
            throw domain_error("zoom window needs LOX HIX LOY HIY in 2D");
        w.lo_x = window[0];
        w.hi_x = window[1];
        w.lo_y = window[2];
        w.hi_y = window[3];
    }
    Backend be = sys.backend();
    unsigned dg = be == Backend::floating ? sys.float_digits() : kDefaultFloatDigits;
    Scalar ratio = be == Backend::exact ? Scalar::exact(Rational(scale))
                                        : Scalar::floating(scale, dg);
    Scalar trans = be == Backend::exact ? Scalar::exact(Rational(tx))
                                        : Scalar::floating(tx, dg);
    Similarity T = sys.dim() == 1
                       ? Similarity::line(ratio, 1, trans)
                       : Similarity::plane(ratio, Scalar::zero_like(ratio), false, trans,
                                           Scalar::zero_like(ratio));
    PointCloud cloud = tangent_zoom(sys, T, w, resolution);
    std::cout << "spec: " << (sys.name().empty() ? spec : sys.name()) << "\n";
    std::cout << "mode: zoom\n";
    std::cout << "scale: " << fmt(scale) << "\n";
    std::cout << "resolution: " << fmt(resolution) << "\n";
    std::cout << "points: " << cloud.size() << "\n";
    return 0;
}

int run_render(const std::string& spec, const std::string& out, const std::string& r_text,
               std::size_t size) {
    IfsSystem sys = load_system(spec, std::nullopt);
    Scalar res = parse_radius(r_text, sys);
    PointCloud cloud = attractor_points(sys, res);
    Raster raster = rasterize(cloud, size);
    std::string config = "render spec=" + spec + " resolution=" + r_text +
                         " size=" + std::to_string(size) + " seed=0";
    write_png(raster, config, out);
    std::cout << "spec: " << (sys.name().empty() ? spec : sys.name()) << "\n";
    std::cout << "out: " << out << "\n";
    std::cout << "width: " << raster.width << "\n";
    std::cout << "height: " << raster.height << "\n";
    std::cout << "occupied_pixels: " << raster.occupied() << "\n";
    if (sys.dim() == 1) std::cout << "runs: " << raster.runs_in_row(0) << "\n";
    return 0;
}

int run_examples(const std::string& action, const std::string& name) {
    if (action == "list") {
        for (const std::string& n : registry_names()) std::cout << n << "\n";
        return 0;
    }
    if (action == "show") {
        std::cout << serialize_ifs_spec(registry_spec(name));
        return 0;
    }
    if (action == "run") {
        IfsSpecDocument doc = registry_spec(name);
        IfsSystem sys = build_system(doc);
        std::cout << "name: " << sys.name() << "\n";
        std::cout << "ambient_dim: " << sys.dim() << "\n";
        std::cout << "backend: " << (sys.backend() == Backend::exact ? "exact" : "float")
                  << "\n";
        std::cout << "maps: " << sys.map_count() << "\n";
        if (!sys.note().empty()) std::cout << "note: " << sys.note() << "\n";
        DimensionEstimate est = similarity_dimension(sys);
        std::cout << "similarity_dimension: " << fmt(est.value) << "\n";
        std::cout << "moran_root: " << fmt(est.raw_value) << "\n";
        WspVerdict v = wsp_scan(sys, 5, 1e-6);
        std::cout << "wsp_status_depth5: " << to_string(v.status) << "\n";
        std::cout << "exact_overlaps_depth5: " << v.exact_overlaps.size() << "\n";
        return 0;
    }
    throw domain_error("examples: action must be list, show or run");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"similarity-map algebra, separation scanning and dimension "
                 "estimation for self-similar sets"};
    app.require_subcommand(1);

    std::string spec, r_text = "1/3", z_text, prune_text, csv_path, out_path;
    std::string mode = "box", ex_action, ex_name;
    int depth = 6, min_exp = 4, max_exp = 12, min_gap = 5, threads = 0;
    int n_points = 50, harvest_depth = 8, bandt_graf_m = 0;
    double epsilon = 1e-6, alpha = 0.5, beta = 1.0 / 3.0, cutoff = 1e-6;
    double scale = 1.0, tx = 0.0, resolution = 1e-3;
    int ek_k = 10, ek_d = 1;
    std::size_t image_size = 1024;
    unsigned digits_flag = 0;
    std::vector<double> window;

    auto* simdim = app.add_subcommand("simdim", "similarity dimension");
    simdim->add_option("spec", spec)->required();

    auto* stopping = app.add_subcommand("stopping", "stopping set I_r");
    stopping->add_option("spec", spec)->required();
    stopping->add_option("--r", r_text)->required();

    auto* overlap = app.add_subcommand("overlap-scan", "exact overlap scan");
    overlap->add_option("spec", spec)->required();
    overlap->add_option("--depth", depth)->required();

    auto* wsp = app.add_subcommand("wsp-scan", "weak separation property scan");
    wsp->add_option("spec", spec)->required();
    wsp->add_option("--depth", depth)->required();
    wsp->add_option("--epsilon", epsilon)->required();
    wsp->add_option("--prune-bound", prune_text);

    auto* mult = app.add_subcommand("multiplicity", "Zerner multiplicity diagnostic");
    mult->add_option("spec", spec)->required();
    mult->add_option("--r", r_text)->required();
    mult->add_option("--z", z_text);

    auto* dim = app.add_subcommand("dim", "box / Assouad dimension estimate");
    dim->add_option("spec", spec)->required();
    dim->add_option("--mode", mode)->required()->check(CLI::IsMember({"box", "assouad"}));
    dim->add_option("--min-exp", min_exp)->required();
    dim->add_option("--max-exp", max_exp)->required();
    dim->add_option("--min-gap", min_gap);
    dim->add_option("--csv", csv_path);
    dim->add_option("--threads", threads);

    auto* tangent = app.add_subcommand("tangent", "tangent constructions");
    tangent->add_option("spec", spec)->required();
    std::string tmode;
    tangent->add_option("--mode", tmode)
        ->required()
        ->check(CLI::IsMember({"pseudo", "ek", "zoom"}));
    tangent->add_option("--n", n_points);
    tangent->add_option("--harvest-depth", harvest_depth);
    tangent->add_option("--bandt-graf-m", bandt_graf_m);
    tangent->add_option("--digits", digits_flag);
    tangent->add_option("--alpha", alpha);
    tangent->add_option("--beta", beta);
    tangent->add_option("--k", ek_k);
    tangent->add_option("--d", ek_d);
    tangent->add_option("--cutoff", cutoff);
    tangent->add_option("--scale", scale);
    tangent->add_option("--tx", tx);
    tangent->add_option("--window", window)->expected(-1);
    tangent->add_option("--resolution", resolution);

    auto* render = app.add_subcommand("render", "raster the attractor to PNG");
    render->add_option("spec", spec)->required();
    render->add_option("--out", out_path)->required();
    render->add_option("--resolution", r_text)->required();
    render->add_option("--size", image_size);

    auto* examples = app.add_subcommand("examples", "bundled example systems");
    examples->add_option("action", ex_action)
        ->required()
        ->check(CLI::IsMember({"list", "show", "run"}));
    examples->add_option("name", ex_name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (simdim->parsed()) return run_simdim(spec);
        if (stopping->parsed()) return run_stopping(spec, r_text);
        if (overlap->parsed()) return run_overlap_scan(spec, depth);
        if (wsp->parsed()) return run_wsp_scan(spec, depth, epsilon, prune_text);
        if (mult->parsed()) return run_multiplicity(spec, r_text, z_text);
        if (dim->parsed())
            return run_dim(spec, mode, min_exp, max_exp, min_gap, csv_path, threads);
        if (tangent->parsed()) {
            if (tmode == "pseudo")
                return run_tangent_pseudo(spec, n_points, harvest_depth, bandt_graf_m,
                                          digits_flag ? std::optional<unsigned>(digits_flag)
                                                      : std::nullopt);
            if (tmode == "ek") return run_tangent_ek(alpha, beta, ek_k, ek_d, cutoff);
            return run_tangent_zoom(spec, scale, tx, window, resolution);
        }
        if (render->parsed()) return run_render(spec, out_path, r_text, image_size);
        if (examples->parsed()) return run_examples(ex_action, ex_name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
