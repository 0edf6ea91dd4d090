#pragma once

#include <deque>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vfield/blob_store.hpp"
#include "vfield/file_field.hpp"
#include "vfield/section.hpp"

namespace vfield {

// Aggregate root: one deduplicated file field, its blob store, and the
// sections (each with schema, matrix and trees) built over it. All mutations
// go through here; single writer per catalog, readers between mutations.
class Catalog {
public:
    // In-memory model rooted at dir; touches neither catalog.json nor blobs.
    explicit Catalog(std::filesystem::path root);

    // Creates the directory layout and an empty catalog.json. Refuses a root
    // that already holds a catalog.
    static Catalog init(const std::filesystem::path& root);

    // Loads and fully validates <root>/catalog.json.
    static Catalog open(const std::filesystem::path& root);

    const std::filesystem::path& root() const { return root_; }

    // --- file field ---
    // Returns (id, was_duplicate). Duplicate content resolves to the existing
    // id; the stored ingest name is not overwritten.
    std::pair<FileId, bool> add_file(std::string_view content, const std::string& ingest_name);
    const FileEntry& get_file(FileId id) const;
    std::string read_content(FileId id) const;
    // Refused while any section holds the id; the id is never reissued.
    void remove_file(FileId id);
    std::vector<FileEntry> list_files() const;
    // Recomputes every blob digest; reports problems, mutates nothing.
    VerifyReport verify_field() const;

    // --- sections ---
    Section& create_section(const std::string& name);
    Section& section(const std::string& name);
    const Section& section(const std::string& name) const;
    Section* find_section(const std::string& name);
    const Section* find_section(const std::string& name) const;
    const std::deque<Section>& sections() const { return sections_; }

    // A file belongs to at most one section in the whole catalog.
    void assign_file(const std::string& section_name, FileId id);
    const Section* owner_of(FileId id) const;

    // Canonical JSON to <root>/catalog.json, atomic replace.
    void save() const;

    const FileField& field() const { return field_; }
    const BlobStore& blobs() const { return blobs_; }

    // Restore access for persistence.
    FileField& restore_field() { return field_; }
    std::deque<Section>& restore_sections() { return sections_; }

private:
    std::filesystem::path root_;
    BlobStore blobs_;
    FileField field_;
    // A deque keeps references from section() stable while sections are
    // appended; nothing ever removes a section.
    std::deque<Section> sections_;  // creation order
};

// Structural equality of the stored model, ignoring the root path.
bool same_model(const Catalog& a, const Catalog& b);

}  // namespace vfield
