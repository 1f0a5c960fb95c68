#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "divpair/curve.hpp"

namespace divpair::cli {

using Json = nlohmann::json;  // std::map backed, so keys come out sorted

Json complex_json(cdouble z);

// Floats at 17 significant digits; non-finite values become strings.
void write_json(std::ostream& out, const Json& value);

// Tabular when outputs.rows is a list of objects, key,value lines otherwise.
void write_csv(std::ostream& out, const Json& report);

}  // namespace divpair::cli
