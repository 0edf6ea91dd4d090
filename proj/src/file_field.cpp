#include "vfield/file_field.hpp"

#include <utility>

#include "vfield/errors.hpp"

namespace vfield {

const FileEntry* FileField::find_by_digest(const std::string& digest) const {
    auto it = digest_index_.find(digest);
    if (it == digest_index_.end()) {
        return nullptr;
    }
    return &entries_.at(it->second);
}

const FileEntry& FileField::get(FileId id) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) {
        throw NotFoundError("no file with id " + std::to_string(id));
    }
    return it->second;
}

FileId FileField::insert_new(std::string digest, std::uint64_t size, std::string ingest_name,
                             std::string blob_ref) {
    if (digest_index_.count(digest) != 0) {
        throw DuplicateError("digest already stored: " + digest);
    }
    const FileId id = next_id_++;
    FileEntry entry{id, std::move(digest), size, std::move(ingest_name), std::move(blob_ref)};
    digest_index_.emplace(entry.digest, id);
    entries_.emplace(id, std::move(entry));
    return id;
}

void FileField::erase(FileId id) {
    auto it = entries_.find(id);
    if (it == entries_.end()) {
        throw NotFoundError("no file with id " + std::to_string(id));
    }
    digest_index_.erase(it->second.digest);
    entries_.erase(it);
}

std::vector<FileEntry> FileField::list() const {
    std::vector<FileEntry> out;
    out.reserve(entries_.size());
    for (const auto& [id, entry] : entries_) {
        out.push_back(entry);
    }
    return out;
}

void FileField::restore_entry(FileEntry entry) {
    if (entries_.count(entry.id) != 0) {
        throw LoadError("invalid catalog: file id uniqueness violated: id " +
                        std::to_string(entry.id) + " appears twice");
    }
    digest_index_.emplace(entry.digest, entry.id);
    const FileId id = entry.id;
    entries_.emplace(id, std::move(entry));
}

}  // namespace vfield
