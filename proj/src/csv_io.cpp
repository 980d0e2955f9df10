#include "assouad/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace assouad {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string covering_csv_text(const std::vector<CoveringRecord>& records, int dim,
                              const std::string& config_line) {
    std::ostringstream os;
    if (!config_line.empty()) os << "# config: " << config_line << "\n";
    os << "window_x,window_y,r,rho,count\n";
    for (const CoveringRecord& r : records) {
        os << fmt17(r.window_x) << ',';
        if (dim == 2) os << fmt17(r.window_y);
        os << ',' << fmt17(r.r) << ',' << fmt17(r.rho) << ',' << r.count << "\n";
    }
    return os.str();
}

void emit_covering_csv(const std::vector<CoveringRecord>& records, int dim,
                       const std::string& config_line, const std::string& out_path) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw domain_error("cannot write CSV to '" + out_path + "'");
    out << covering_csv_text(records, dim, config_line);
}

std::vector<CoveringRecord> parse_covering_csv(const std::string& text, int* dim_out) {
    std::vector<CoveringRecord> out;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    int dim = 1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "window_x,window_y,r,rho,count")
                throw domain_error("unexpected CSV header: " + line);
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string field;
        CoveringRecord rec;
        std::getline(row, field, ',');
        rec.window_x = std::stod(field);
        std::getline(row, field, ',');
        if (!field.empty()) {
            rec.window_y = std::stod(field);
            dim = 2;
        }
        std::getline(row, field, ',');
        rec.r = std::stod(field);
        std::getline(row, field, ',');
        rec.rho = std::stod(field);
        std::getline(row, field, ',');
        rec.count = static_cast<std::size_t>(std::stoull(field));
        out.push_back(rec);
    }
    if (!header_seen) throw domain_error("CSV has no header row");
    if (dim_out) *dim_out = dim;
    return out;
}

} // namespace assouad
