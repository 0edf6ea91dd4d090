#include "vfield/tree_export.hpp"

#include <map>
#include <set>
#include <string>
#include <system_error>

#include "vfield/errors.hpp"

namespace fs = std::filesystem;

namespace vfield {

namespace {

std::string disambiguated(const std::string& name, FileId id) {
    const fs::path p(name);
    const std::string stem = p.stem().string();
    const std::string ext = p.extension().string();
    return stem + "~" + std::to_string(id) + ext;
}

void export_dir(const VDir& dir, const FileField& field, const BlobStore& blobs,
                const fs::path& host_dir, ExportStats& stats) {
    std::set<std::string> taken;
    std::map<std::string, std::size_t> name_uses;
    for (const VDir& child : dir.child_dirs) {
        taken.insert(child.name);
    }
    for (FileId id : dir.file_refs) {
        ++name_uses[field.get(id).ingest_name];
    }

    for (FileId id : dir.file_refs) {
        const FileEntry& entry = field.get(id);
        std::string name = entry.ingest_name;
        if (name_uses[name] > 1 || taken.count(name) != 0) {
            name = disambiguated(entry.ingest_name, id);
        }
        while (taken.count(name) != 0) {
            name += "_";
        }
        taken.insert(name);

        const fs::path blob = blobs.path_for(entry.digest);
        if (!fs::exists(blob)) {
            throw CorruptionError("blob missing for file " + std::to_string(id));
        }
        const fs::path dest = host_dir / name;
        std::error_code ec;
        fs::create_hard_link(blob, dest, ec);
        if (ec) {
            ec.clear();
            fs::copy_file(blob, dest, ec);
            if (ec) {
                throw IoError("cannot export file " + std::to_string(id) + " to " +
                              dest.string() + ": " + ec.message());
            }
            ++stats.copies;
        } else {
            ++stats.hard_links;
        }
        ++stats.files;
    }

    for (const VDir& child : dir.child_dirs) {
        const fs::path child_dir = host_dir / child.name;
        std::error_code ec;
        if (!fs::create_directory(child_dir, ec) || ec) {
            throw IoError("cannot create directory " + child_dir.string() +
                          (ec ? ": " + ec.message() : ""));
        }
        ++stats.directories;
        export_dir(child, field, blobs, child_dir, stats);
    }
}

}  // namespace

ExportStats export_tree(const VTree& tree, const FileField& field, const BlobStore& blobs,
                        const fs::path& target) {
    std::error_code ec;
    if (fs::exists(target, ec)) {
        if (!fs::is_directory(target, ec)) {
            throw ValueError("export target " + target.string() + " is not a directory");
        }
        if (!fs::is_empty(target, ec)) {
            throw ValueError("export target " + target.string() + " is not empty");
        }
    } else {
        fs::create_directories(target, ec);
        if (ec) {
            throw IoError("cannot create export target " + target.string() + ": " + ec.message());
        }
    }
    ExportStats stats;
    export_dir(tree.root(), field, blobs, target, stats);
    return stats;
}

}  // namespace vfield
