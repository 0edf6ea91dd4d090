#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace vfield {

// Unique number of a stored file. Assigned monotonically from 1 and never
// reused; every structure above the field refers to files by this number.
using FileId = std::uint64_t;

struct FileEntry {
    FileId id = 0;
    std::string digest;  // SHA-256, 64 lowercase hex chars
    std::uint64_t size = 0;
    std::string ingest_name;  // original short name, metadata only
    std::string blob_ref;     // relative path of the stored content

    bool operator==(const FileEntry&) const = default;
};

struct VerifyProblem {
    enum class Kind { MissingBlob, DigestMismatch };
    Kind kind = Kind::MissingBlob;
    FileId id = 0;
    std::string digest;         // recorded digest
    std::string actual_digest;  // recomputed, empty for missing blobs
};

struct VerifyReport {
    std::vector<VerifyProblem> problems;
    bool clean() const { return problems.empty(); }
};

// The flat deduplicated list of files. Pure registry: content itself lives in
// the BlobStore, coordination (blob writes, section checks) in Catalog.
class FileField {
public:
    FileId next_id() const { return next_id_; }
    std::size_t size() const { return entries_.size(); }
    bool contains(FileId id) const { return entries_.count(id) != 0; }

    const FileEntry* find_by_digest(const std::string& digest) const;

    // Throws NotFoundError for unknown ids.
    const FileEntry& get(FileId id) const;

    // Assigns the next id. The digest must not be present yet.
    FileId insert_new(std::string digest, std::uint64_t size, std::string ingest_name,
                      std::string blob_ref);

    // The id stays burned: next_id never decreases.
    void erase(FileId id);

    // Ascending id order.
    std::vector<FileEntry> list() const;

    const std::map<FileId, FileEntry>& entries() const { return entries_; }

    // Restore path for persistence: no invariant checks beyond id uniqueness,
    // the loader validates the full model afterwards.
    void restore_entry(FileEntry entry);
    void restore_next_id(FileId next_id) { next_id_ = next_id; }

    bool operator==(const FileField& other) const {
        return next_id_ == other.next_id_ && entries_ == other.entries_;
    }

private:
    FileId next_id_ = 1;
    std::map<FileId, FileEntry> entries_;
    std::unordered_map<std::string, FileId> digest_index_;
};

}  // namespace vfield
