#pragma once

#include <string>

#include "vfield/file_field.hpp"
#include "vfield/vtree.hpp"

namespace vfield {

// ASCII view of a virtual tree: root line `<name>/`, children connected with
// `├── `/`└── `, directories suffixed `/`, files rendered `[<id>] <name>`.
// Sibling directories come in stored order, then files ascending by id.
// A pure function of the model: identical catalogs render identical bytes.
std::string render_tree(const VTree& tree, const FileField& field);

}  // namespace vfield
