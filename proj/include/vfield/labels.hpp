#pragma once

#include <string_view>

namespace vfield {

bool utf8_valid(std::string_view s);

// Shared syntax for section names, attribute names and values, tree names and
// directory labels: non-empty, valid UTF-8, no '/', no NUL, not "." or "..".
// Labels become path components on export, hence the path-safety rules.
bool valid_label(std::string_view s);

// Ingest names follow the label rules and additionally reject '\\'.
bool valid_ingest_name(std::string_view s);

}  // namespace vfield
