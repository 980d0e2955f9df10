#include "assouad/spec_io.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace assouad {

namespace {

MapSpec line_map(std::string ratio, std::string tx, int sign = 1) {
    MapSpec m;
    m.ratio = std::move(ratio);
    m.sign = sign;
    m.translation = {std::move(tx)};
    return m;
}

MapSpec plane_map(std::string ratio, std::string tx, std::string ty) {
    MapSpec m;
    m.ratio = std::move(ratio);
    m.translation = {std::move(tx), std::move(ty)};
    return m;
}

IfsSpecDocument cantor_1d() {
    IfsSpecDocument d;
    d.name = "cantor-1d";
    d.ambient_dim = 1;
    d.backend = Backend::exact;
    d.maps = {line_map("1/3", "0"), line_map("1/3", "2/3")};
    d.note = "middle-third Cantor set";
    return d;
}

// t_K = 4 * sum_{j=0}^{K-1} 5^(-2^j) as an exact rational string
std::string truncated_t(int K) {
    Rational t = 0;
    for (int j = 0; j < K; ++j) {
        Rational term(4);
        term /= boost::multiprecision::pow(BigInt(5), static_cast<unsigned long>(1L << j));
        t += term;
    }
    return t.str();
}

IfsSpecDocument plane_intermediate(int K) {
    IfsSpecDocument d;
    d.name = "plane-intermediate";
    d.ambient_dim = 2;
    d.backend = Backend::exact;
    Rational t(truncated_t(K));
    Rational t5 = t / 5;
    d.maps = {plane_map("1/5", "0", "0"), plane_map("1/5", t5.str(), "0"),
              plane_map("1/5", "4/5", "0"), plane_map("1/5", "0", "4/5")};
    d.note = "planar system whose x-projection loses separation; t truncated at K=" +
             std::to_string(K) + " series terms (model error 4*5^(-2^" +
             std::to_string(K) + "))";
    return d;
}

IfsSpecDocument full_assouad(int dim) {
    IfsSpecDocument d;
    d.name = dim == 1 ? "full-assouad-1d" : "full-assouad-2d";
    d.ambient_dim = dim;
    d.backend = Backend::exact;
    if (dim == 1) {
        d.maps = {line_map("1/4", "0"), line_map("1/3", "0"),
                  line_map("1/10", "9/10")};
    } else {
        d.maps = {plane_map("1/4", "0", "0"), plane_map("1/3", "0", "0"),
                  plane_map("1/10", "9/10", "0"), plane_map("1/10", "0", "9/10"),
                  plane_map("1/10", "9/10", "9/10")};
    }
    d.note = "scaling maps alpha=1/4, beta=1/3 at the origin plus gamma=1/10 corner "
             "maps; log-incommensurable alpha, beta";
    return d;
}

IfsSpecDocument exact_overlap_demo() {
    IfsSpecDocument d;
    d.name = "exact-overlap-demo";
    d.ambient_dim = 1;
    d.backend = Backend::exact;
    d.maps = {line_map("1/2", "0"), line_map("1/2", "1/2"), line_map("1/4", "0")};
    d.note = "S_3 = S_1 ∘ S_1 by construction";
    return d;
}

IfsSpecDocument overlap_thirds() {
    IfsSpecDocument d;
    d.name = "overlap-thirds";
    d.ambient_dim = 1;
    d.backend = Backend::exact;
    d.maps = {line_map("1/3", "0"), line_map("1/3", "2/3"), line_map("1/9", "0")};
    d.note = "S_3 = S_1 ∘ S_1; dimension drop under map deduplication";
    return d;
}

IfsSpecDocument cantor_on_line_2d() {
    IfsSpecDocument d;
    d.name = "cantor-on-line-2d";
    d.ambient_dim = 2;
    d.backend = Backend::exact;
    d.maps = {plane_map("1/3", "0", "0"), plane_map("1/3", "2/3", "0")};
    d.note = "Cantor set embedded on the x-axis; attractor lies in a hyperplane";
    return d;
}

IfsSpecDocument unit_square_2d() {
    IfsSpecDocument d;
    d.name = "unit-square-2d";
    d.ambient_dim = 2;
    d.backend = Backend::exact;
    d.maps = {plane_map("1/2", "0", "0"), plane_map("1/2", "1/2", "0"),
              plane_map("1/2", "0", "1/2"), plane_map("1/2", "1/2", "1/2")};
    d.note = "attractor is the full unit square (space-filling reference)";
    return d;
}

} // namespace

IfsSpecDocument bandt_graf_line_spec(int truncation_terms) {
    if (truncation_terms < 2 || truncation_terms > 16)
        throw domain_error("bandt-graf truncation must lie in [2,16]");
    IfsSpecDocument d;
    d.name = "bandt-graf-line";
    d.ambient_dim = 1;
    d.backend = Backend::exact;
    Rational t(truncated_t(truncation_terms));
    Rational t5 = t / 5;
    d.maps = {line_map("1/5", "0"), line_map("1/5", t5.str()),
              line_map("1/5", "4/5")};
    d.note = "t truncated at K=" + std::to_string(truncation_terms) +
             " series terms; parameter-model error 4*5^(-2^" +
             std::to_string(truncation_terms) + ")";
    return d;
}

std::vector<std::string> registry_names() {
    return {"cantor-1d",        "bandt-graf-line", "plane-intermediate",
            "full-assouad-1d",  "full-assouad-2d", "exact-overlap-demo",
            "overlap-thirds",   "cantor-on-line-2d", "unit-square-2d"};
}

IfsSpecDocument registry_spec(const std::string& name) {
    if (name == "cantor-1d") return cantor_1d();
    if (name == "bandt-graf-line") return bandt_graf_line_spec(8);
    if (name == "plane-intermediate") return plane_intermediate(8);
    if (name == "full-assouad-1d") return full_assouad(1);
    if (name == "full-assouad-2d") return full_assouad(2);
    if (name == "exact-overlap-demo") return exact_overlap_demo();
    if (name == "overlap-thirds") return overlap_thirds();
    if (name == "cantor-on-line-2d") return cantor_on_line_2d();
    if (name == "unit-square-2d") return unit_square_2d();
    throw spec_error("unknown spec '" + name + "': not a readable file and not a "
                     "bundled example (try 'examples list')");
}

} // namespace assouad
