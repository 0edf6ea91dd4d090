#include "vfield/catalog.hpp"

#include <utility>

#include "vfield/errors.hpp"
#include "vfield/labels.hpp"
#include "vfield/persistence.hpp"
#include "vfield/sha256.hpp"

namespace fs = std::filesystem;

namespace vfield {

Catalog::Catalog(fs::path root) : root_(std::move(root)), blobs_(root_) {}

Catalog Catalog::init(const fs::path& root) {
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec) {
        throw IoError("cannot create catalog directory " + root.string() + ": " + ec.message());
    }
    if (fs::exists(root / "catalog.json")) {
        throw Error("catalog already exists at " + root.string());
    }
    Catalog catalog(root);
    catalog.save();
    return catalog;
}

Catalog Catalog::open(const fs::path& root) {
    return load_catalog(root);
}

std::pair<FileId, bool> Catalog::add_file(std::string_view content,
                                          const std::string& ingest_name) {
    if (!valid_ingest_name(ingest_name)) {
        throw NameError("invalid ingest name \"" + ingest_name + "\"");
    }
    const std::string digest = sha256_hex(content);
    if (const FileEntry* existing = field_.find_by_digest(digest)) {
        return {existing->id, true};
    }
    blobs_.write(digest, content);
    const FileId id = field_.insert_new(digest, content.size(), ingest_name,
                                        BlobStore::ref_for(digest));
    return {id, false};
}

const FileEntry& Catalog::get_file(FileId id) const {
    return field_.get(id);
}

std::string Catalog::read_content(FileId id) const {
    const FileEntry& entry = field_.get(id);
    std::string bytes = blobs_.read(entry.digest);
    if (sha256_hex(bytes) != entry.digest) {
        throw CorruptionError("blob for file " + std::to_string(id) +
                              " does not match its recorded digest");
    }
    return bytes;
}

void Catalog::remove_file(FileId id) {
    const FileEntry& entry = field_.get(id);
    if (const Section* owner = owner_of(id)) {
        throw InUseError("file " + std::to_string(id) + " is assigned to section \"" +
                         owner->name() + "\"");
    }
    blobs_.remove(entry.digest);
    field_.erase(id);
}

std::vector<FileEntry> Catalog::list_files() const {
    return field_.list();
}

VerifyReport Catalog::verify_field() const {
    VerifyReport report;
    for (const auto& [id, entry] : field_.entries()) {
        if (!blobs_.exists(entry.digest)) {
            report.problems.push_back(
                {VerifyProblem::Kind::MissingBlob, id, entry.digest, ""});
            continue;
        }
        const std::string actual = sha256_hex(blobs_.read(entry.digest));
        if (actual != entry.digest) {
            report.problems.push_back(
                {VerifyProblem::Kind::DigestMismatch, id, entry.digest, actual});
        }
    }
    return report;
}

Section& Catalog::create_section(const std::string& name) {
    if (!valid_label(name)) {
        throw NameError("invalid section name \"" + name + "\"");
    }
    if (find_section(name) != nullptr) {
        throw DuplicateError("section \"" + name + "\" already exists");
    }
    sections_.emplace_back(name);
    return sections_.back();
}

Section& Catalog::section(const std::string& name) {
    if (Section* s = find_section(name)) {
        return *s;
    }
    throw NotFoundError("no section \"" + name + "\"");
}

const Section& Catalog::section(const std::string& name) const {
    if (const Section* s = find_section(name)) {
        return *s;
    }
    throw NotFoundError("no section \"" + name + "\"");
}

Section* Catalog::find_section(const std::string& name) {
    for (Section& s : sections_) {
        if (s.name() == name) {
            return &s;
        }
    }
    return nullptr;
}

const Section* Catalog::find_section(const std::string& name) const {
    for (const Section& s : sections_) {
        if (s.name() == name) {
            return &s;
        }
    }
    return nullptr;
}

void Catalog::assign_file(const std::string& section_name, FileId id) {
    Section& target = section(section_name);
    if (!field_.contains(id)) {
        throw NotFoundError("no file with id " + std::to_string(id));
    }
    if (const Section* owner = owner_of(id)) {
        throw MembershipError("file " + std::to_string(id) + " already belongs to section \"" +
                              owner->name() + "\"");
    }
    target.add_member(id);
}

const Section* Catalog::owner_of(FileId id) const {
    for (const Section& s : sections_) {
        if (s.has_file(id)) {
            return &s;
        }
    }
    return nullptr;
}

void Catalog::save() const {
    save_catalog(*this);
}

bool same_model(const Catalog& a, const Catalog& b) {
    return a.field() == b.field() && a.sections() == b.sections();
}

}  // namespace vfield
