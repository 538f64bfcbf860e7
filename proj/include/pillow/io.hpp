#pragma once

/**
 * @file io.hpp
 * @brief JSON serialization of curves, presentations and representations,
 * and atomic file writes.
 */

#include <string>
#include <vector>

#include "json.hpp"
#include "pillow/knot_groups.hpp"
#include "pillow/pillowcase.hpp"
#include "pillow/su2.hpp"

namespace pillow {

using Json = nlohmann::ordered_json;

Json to_json(const Su2Elem& q);
Su2Elem su2_from_json(const Json& j);

Json to_json(const PillowCurve& c);
PillowCurve curve_from_json(const Json& j);

Json to_json(const KnotPresentation& k);
KnotPresentation knot_from_json(const Json& j);

// Reads and parses a file; throws Io or Parse.
Json read_json_file(const std::string& path);
KnotPresentation read_knot_json(const std::string& path);
PillowCurve read_curve_json(const std::string& path);

// Two-space indent; doubles in shortest round-trip form.
std::string dump(const Json& j);

// Writes to path via a temporary file in the same directory and rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace pillow
