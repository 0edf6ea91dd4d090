#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vfield/section.hpp"

namespace vfield {

// RFC-4180-style parsing: quoted fields with "" escapes, LF or CRLF rows,
// a UTF-8 BOM is tolerated. Returns one vector of fields per record.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

// Canonical form: LF rows, fields quoted only when they contain a comma,
// quote, CR or LF.
std::string csv_field(const std::string& value);

// Header must be `id,<attr>,…` with every attribute already defined; empty
// cells clear the value. The whole import is validated first and applied only
// if every record passes. Returns the number of applied rows.
std::size_t import_section_csv(Section& section, std::string_view text);

// Canonical CSV of the full matrix: header row, members in assignment order,
// unset cells empty.
std::string export_section_csv(const Section& section);

}  // namespace vfield
