#pragma once

#include <string>
#include <vector>

#include "assouad/ifs.hpp"

namespace assouad {

/// Serializable description of one similarity map.  Numeric fields are kept
/// as text so exactness survives parsing: rationals "p/q" (or integers) on
/// either backend, decimals on the float backend only.
struct MapSpec {
    std::string ratio;
    int sign = 1;                      // 1D only
    std::string rotation_degrees = "0";  // 2D only
    bool reflect = false;              // 2D only
    std::vector<std::string> translation;

    bool operator==(const MapSpec&) const = default;
};

struct IfsSpecDocument {
    int schema_version = 1;
    std::string name;
    int ambient_dim = 1;
    Backend backend = Backend::exact;
    unsigned float_digits = kDefaultFloatDigits;
    std::vector<MapSpec> maps;
    std::string note;  // free-form; carried into the IfsSystem

    bool operator==(const IfsSpecDocument&) const = default;
};

IfsSpecDocument parse_ifs_spec(const std::string& json_text);
std::string serialize_ifs_spec(const IfsSpecDocument& doc);

/// Validates and instantiates the document.
IfsSystem build_system(const IfsSpecDocument& doc);

/// Bundled example systems.
std::vector<std::string> registry_names();
IfsSpecDocument registry_spec(const std::string& name);

/// bandt-graf line system {x/5, x/5 + t/5, x/5 + 4/5} with t truncated at
/// K series terms; exact backend.  The truncation error 4*5^(-2^K) is
/// recorded in the note.
IfsSpecDocument bandt_graf_line_spec(int truncation_terms);

/// Loads a spec from a file path or, failing that, the registry.
IfsSpecDocument load_spec(const std::string& path_or_name);

} // namespace assouad
