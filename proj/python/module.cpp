#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "assouad/csv_io.hpp"
#include "assouad/dimension.hpp"
#include "assouad/render.hpp"
#include "assouad/separation.hpp"
#include "assouad/spec_io.hpp"
#include "assouad/tangents.hpp"

namespace py = pybind11;
using namespace assouad;

namespace {

IfsSystem system_from(const std::string& spec_or_name) {
    return build_system(load_spec(spec_or_name));
}

py::list cloud_points(const PointCloud& c) {
    py::list out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.dim == 1)
            out.append(c.xs[i]);
        else
            out.append(py::make_tuple(c.xs[i], c.ys[i]));
    }
    return out;
}

PointCloud cloud_from(py::sequence pts, int dim) {
    PointCloud c;
    c.dim = dim;
    for (py::handle h : pts) {
        if (dim == 1) {
            c.push(h.cast<double>());
        } else {
            auto t = h.cast<std::pair<double, double>>();
            c.push(t.first, t.second);
        }
    }
    return c;
}

py::dict estimate_dict(const DimensionEstimate& est) {
    py::dict d;
    d["value"] = est.value;
    d["raw_value"] = est.raw_value;
    d["residual"] = est.residual;
    py::list recs;
    for (const CoveringRecord& r : est.records)
        recs.append(py::make_tuple(r.window_x, r.window_y, r.r, r.rho, r.count));
    d["records"] = recs;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "self-similar set toolkit: similarity algebra, separation scans, "
              "dimension estimates, tangent constructions";

    py::register_exception<backend_mismatch>(m, "BackendMismatch");
    py::register_exception<spec_error>(m, "SpecError");

    py::class_<IfsSystem>(m, "IfsSystem")
        .def_property_readonly("dim", &IfsSystem::dim)
        .def_property_readonly("name", &IfsSystem::name)
        .def_property_readonly("map_count", &IfsSystem::map_count)
        .def_property_readonly("note", &IfsSystem::note)
        .def("__repr__", [](const IfsSystem& s) {
            return "<IfsSystem '" + s.name() + "' dim=" + std::to_string(s.dim()) +
                   " maps=" + std::to_string(s.map_count()) + ">";
        });

    m.def("load_system", &system_from, py::arg("spec_or_name"),
          "Load an IFS from a JSON spec file path or a bundled example name.");
    m.def("parse_system", [](const std::string& text) {
        return build_system(parse_ifs_spec(text));
    });
    m.def("registry_names", &registry_names);
    m.def("registry_spec_json", [](const std::string& name) {
        return serialize_ifs_spec(registry_spec(name));
    });
    m.def("bandt_graf_line_json", [](int K) {
        return serialize_ifs_spec(bandt_graf_line_spec(K));
    }, py::arg("truncation_terms") = 8);

    m.def("similarity_dimension", [](const IfsSystem& s) {
        return estimate_dict(similarity_dimension(s));
    });
    m.def("reduced_similarity_dimension", [](const IfsSystem& s, const std::string& r) {
        Scalar rr = Scalar::parse(r, s.backend(), s.backend() == Backend::floating
                                                     ? s.float_digits()
                                                     : kDefaultFloatDigits);
        return estimate_dict(reduced_similarity_dimension(s, rr));
    });
    m.def("moran_solve", [](const std::vector<double>& ratios, double tol) {
        return moran_solve(ratios, tol);
    }, py::arg("ratios"), py::arg("tol") = 1e-12);

    m.def("stopping_set", [](const IfsSystem& s, const std::string& r) {
        Scalar rr = Scalar::parse(r, s.backend(), s.backend() == Backend::floating
                                                     ? s.float_digits()
                                                     : kDefaultFloatDigits);
        return s.stopping_set(rr);
    });

    m.def("attractor_points", [](const IfsSystem& s, const std::string& resolution) {
        Scalar rr = Scalar::parse(resolution, s.backend(),
                                  s.backend() == Backend::floating ? s.float_digits()
                                                                   : kDefaultFloatDigits);
        return cloud_points(attractor_points(s, rr));
    });

    m.def("exact_overlap_scan", [](const IfsSystem& s, int depth) {
        py::list out;
        for (const OverlapWitness& w : exact_overlap_scan(s, depth))
            out.append(py::make_tuple(w.alpha, w.beta));
        return out;
    });

    m.def("wsp_scan", [](const IfsSystem& s, int depth, double epsilon) {
        WspVerdict v = wsp_scan(s, depth, epsilon);
        py::dict d;
        d["status"] = to_string(v.status);
        d["depth"] = v.search_depth;
        d["epsilon"] = v.epsilon;
        d["states_visited"] = v.states_visited;
        d["violation_witnesses"] = v.witnesses.size();
        if (!v.witnesses.empty()) {
            d["best_witness"] = py::make_tuple(v.witnesses.front().alpha,
                                               v.witnesses.front().beta);
            d["best_witness_distance"] = v.witnesses.front().id_distance.to_double();
        }
        if (v.min_nonzero_distance)
            d["min_nonzero_distance"] = v.min_nonzero_distance->to_double();
        d["exact_overlaps"] = v.exact_overlaps.size();
        d["truncation_note"] = v.truncation_note;
        return d;
    }, py::arg("system"), py::arg("depth"), py::arg("epsilon") = 1e-6);

    m.def("multiplicity_scan", [](const IfsSystem& s, const std::string& r) {
        Scalar rr = Scalar::parse(r, s.backend(), s.backend() == Backend::floating
                                                     ? s.float_digits()
                                                     : kDefaultFloatDigits);
        MultiplicityReport rep = multiplicity_scan(s, rr);
        py::dict d;
        d["max_multiplicity"] = rep.max_multiplicity;
        d["distinct_points"] = rep.distinct_points;
        d["words"] = rep.word_count;
        return d;
    });

    m.def("box_dimension_estimate", [](const IfsSystem& s, int min_exp, int max_exp) {
        return estimate_dict(box_dimension_estimate(s, min_exp, max_exp));
    });
    m.def("assouad_estimate",
          [](const IfsSystem& s, int min_gap, int min_exp, int max_exp) {
              return estimate_dict(assouad_estimate(s, min_gap, min_exp, max_exp));
          },
          py::arg("system"), py::arg("min_gap") = 5, py::arg("min_exp") = 2,
          py::arg("max_exp") = 10);

    m.def("one_sided_hausdorff", [](py::sequence a, py::sequence b, int dim) {
        PointCloud ca = cloud_from(a, dim), cb = cloud_from(b, dim);
        return one_sided_hausdorff(ca, cb);
    }, py::arg("a"), py::arg("b"), py::arg("dim") = 1);
    m.def("hausdorff_distance", [](py::sequence a, py::sequence b, int dim) {
        PointCloud ca = cloud_from(a, dim), cb = cloud_from(b, dim);
        return hausdorff_distance(ca, cb);
    }, py::arg("a"), py::arg("b"), py::arg("dim") = 1);

    m.def("bandt_graf_witness", [](int m, int K) {
        BandtGrafWitness w = bandt_graf_witness(m, K);
        py::dict d;
        d["alpha"] = w.alpha;
        d["beta"] = w.beta;
        d["offset"] = w.offset.to_double();
        d["offset_exact"] = w.offset.str();
        d["min_recompose_digits"] = w.min_recompose_digits;
        return d;
    }, py::arg("m"), py::arg("truncation_terms") = 8);

    m.def("pretangent_ek", [](double alpha, double beta, int k, int d, double cutoff) {
        std::string warn;
        PointCloud c = pretangent_Ek(alpha, beta, k, d, cutoff, &warn);
        return py::make_tuple(cloud_points(c), warn);
    }, py::arg("alpha"), py::arg("beta"), py::arg("k"), py::arg("d") = 1,
       py::arg("cutoff") = 1e-6);

    m.def("render_png", [](const IfsSystem& s, const std::string& resolution,
                           std::size_t size, const std::string& out_path) {
        Scalar rr = Scalar::parse(resolution, s.backend(),
                                  s.backend() == Backend::floating ? s.float_digits()
                                                                   : kDefaultFloatDigits);
        PointCloud cloud = attractor_points(s, rr);
        Raster raster = rasterize(cloud, size);
        write_png(raster, "render size=" + std::to_string(size), out_path);
        return raster.occupied();
    });
}
