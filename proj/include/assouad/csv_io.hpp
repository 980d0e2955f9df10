#pragma once

#include <string>
#include <vector>

#include "assouad/dimension.hpp"

namespace assouad {

/// Writes covering records as CSV with header
/// `window_x,window_y,r,rho,count` (window_y left empty in 1D), decimals at
/// 17 significant digits.  A leading `# config:` comment captures the run
/// configuration for reproducibility; parsers skip `#` lines.
void emit_covering_csv(const std::vector<CoveringRecord>& records, int dim,
                       const std::string& config_line, const std::string& out_path);

std::string covering_csv_text(const std::vector<CoveringRecord>& records, int dim,
                              const std::string& config_line);

std::vector<CoveringRecord> parse_covering_csv(const std::string& text, int* dim_out = nullptr);

} // namespace assouad
