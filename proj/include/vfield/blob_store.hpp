#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace vfield {

// Content store under <root>/blobs/<first two hex chars>/<digest>.
// One file per distinct digest; the catalog document never embeds content.
class BlobStore {
public:
    explicit BlobStore(std::filesystem::path root);

    // Relative blob path for a digest, e.g. "blobs/e3/e3b0c4...".
    static std::string ref_for(std::string_view digest);

    std::filesystem::path path_for(std::string_view digest) const;
    bool exists(std::string_view digest) const;

    // Atomic: writes a temp file in the target directory, then renames.
    // Throws IoError and leaves no partial blob behind on failure.
    void write(std::string_view digest, std::string_view bytes) const;

    // Throws CorruptionError if the blob file is gone, IoError on read failure.
    std::string read(std::string_view digest) const;

    // Missing blobs are ignored; the entry removal must not be blocked by
    // prior corruption.
    void remove(std::string_view digest) const;

    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path root_;
};

}  // namespace vfield
