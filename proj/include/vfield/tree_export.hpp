#pragma once

#include <filesystem>

#include "vfield/blob_store.hpp"
#include "vfield/file_field.hpp"
#include "vfield/vtree.hpp"

namespace vfield {

struct ExportStats {
    std::size_t directories = 0;  // created below the target root
    std::size_t files = 0;
    std::size_t hard_links = 0;
    std::size_t copies = 0;
};

// Materializes a virtual tree under target: one host directory per virtual
// directory, one host file per reference. Hard links to the blob are
// attempted first with a silent fallback to a byte copy. Names that collide
// within one directory get `~<id>` spliced in before the extension.
// The target must not exist or must be an empty directory.
ExportStats export_tree(const VTree& tree, const FileField& field, const BlobStore& blobs,
                        const std::filesystem::path& target);

}  // namespace vfield
