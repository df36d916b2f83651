#pragma once

#include <string>

#include <json.hpp>

#include "bfp/contraction.hpp"
#include "bfp/fractional.hpp"
#include "bfp/space.hpp"

namespace bfp::io {

using Json = nlohmann::ordered_json;

// Every loader validates the document and throws InputError with messages of
// the form "<origin>: <json path>: <problem>".

Json to_json(const FiniteBipolarSpace& space);
FiniteBipolarSpace space_from_json(const Json& doc, const std::string& origin = "space");

/// Map entries are written as labels. When reading, each entry may be a
/// label of the target set or a 0-based index into it.
Json to_json(const MappingSpec& map, const FiniteBipolarSpace& space);
MappingSpec map_from_json(const Json& doc, const FiniteBipolarSpace& space, const std::string& origin = "map");

struct CoefficientFile {
    CoefficientFamily coeffs;
    ContractionSpec spec;
};

/// Constant tables are written as scalars. Files require every H_v > 0.
Json to_json(const CoefficientFile& file);
CoefficientFile coefficients_from_json(const Json& doc, const FiniteBipolarSpace& space,
                                       const std::string& origin = "coefficients");

Json to_json(const FractionalBVP& bvp);
FractionalBVP bvp_from_json(const Json& doc, const std::string& origin = "bvp");

/// Reads and parses a JSON file; a missing file or bad syntax is an InputError.
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

FiniteBipolarSpace load_space(const std::string& path);
MappingSpec load_map(const std::string& path, const FiniteBipolarSpace& space);
CoefficientFile load_coefficients(const std::string& path, const FiniteBipolarSpace& space);
FractionalBVP load_bvp(const std::string& path);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& doc);

}  // namespace bfp::io
