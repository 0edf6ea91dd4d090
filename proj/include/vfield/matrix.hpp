#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vfield/file_field.hpp"

namespace vfield {

// Rectangular snapshot of attribute values: one row per file, one column per
// attribute, cells optional. Row order and column order are significant.
struct AttributeMatrix {
    std::vector<FileId> file_ids;
    std::vector<std::string> attributes;
    std::vector<std::vector<std::optional<std::string>>> cells;  // [row][column]

    std::size_t rows() const { return file_ids.size(); }
    std::size_t columns() const { return attributes.size(); }

    bool operator==(const AttributeMatrix&) const = default;
};

// An ordered choice of attributes and files over a section's full matrix.
// Recorded on automatically built trees so they can be rebuilt later.
struct Projection {
    std::vector<std::string> attributes;
    std::vector<FileId> file_ids;

    bool operator==(const Projection&) const = default;
};

}  // namespace vfield
