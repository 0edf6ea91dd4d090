#include "vfield/persistence.hpp"

#include <fstream>
#include <initializer_list>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "vfield/blob_store.hpp"
#include "vfield/errors.hpp"
#include "vfield/labels.hpp"
#include "vfield/sha256.hpp"

namespace fs = std::filesystem;

namespace vfield {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) {
    throw LoadError("malformed document: " + what);
}

[[noreturn]] void violated(const std::string& invariant, const std::string& detail) {
    throw LoadError("invalid catalog: " + invariant + " violated: " + detail);
}

const json& member(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        malformed("missing key \"" + std::string(key) + "\"");
    }
    return *it;
}

void expect_keys(const json& obj, std::initializer_list<const char*> keys, const char* what) {
    if (!obj.is_object()) {
        malformed(std::string(what) + " is not an object");
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : keys) {
            if (it.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            malformed("unexpected key \"" + it.key() + "\" in " + what);
        }
    }
}

// Parsed documents carry non-negative literals as unsigned; documents built
// in memory may carry them as signed. Both are the same number.
std::uint64_t as_uint(const json& value, const char* what) {
    if (value.is_number_unsigned()) {
        return value.get<std::uint64_t>();
    }
    if (value.is_number_integer()) {
        const std::int64_t v = value.get<std::int64_t>();
        if (v >= 0) {
            return static_cast<std::uint64_t>(v);
        }
    }
    malformed(std::string(what) + " is not an unsigned integer");
}

std::string as_string(const json& value, const char* what) {
    if (!value.is_string()) {
        malformed(std::string(what) + " is not a string");
    }
    return value.get<std::string>();
}

const json& as_array(const json& value, const char* what) {
    if (!value.is_array()) {
        malformed(std::string(what) + " is not an array");
    }
    return value;
}

json dir_to_json(const VDir& dir) {
    json dirs = json::array();
    for (const VDir& child : dir.child_dirs) {
        dirs.push_back(dir_to_json(child));
    }
    json files = json::array();
    for (FileId id : dir.file_refs) {
        files.push_back(id);
    }
    json out;
    out["dirs"] = std::move(dirs);
    out["files"] = std::move(files);
    out["name"] = dir.name;
    return out;
}

VDir dir_from_json(const json& value) {
    expect_keys(value, {"dirs", "files", "name"}, "directory");
    VDir dir;
    dir.name = as_string(member(value, "name"), "directory name");
    for (const json& child : as_array(member(value, "dirs"), "directory list")) {
        dir.child_dirs.push_back(dir_from_json(child));
    }
    for (const json& ref : as_array(member(value, "files"), "file reference list")) {
        dir.file_refs.push_back(as_uint(ref, "file reference"));
    }
    return dir;
}

json tree_to_json(const VTree& tree) {
    json out;
    out["name"] = tree.name();
    if (tree.origin().has_value()) {
        json origin;
        origin["attributes"] = tree.origin()->attributes;
        origin["file_ids"] = tree.origin()->file_ids;
        out["origin"] = std::move(origin);
    } else {
        out["origin"] = nullptr;
    }
    out["root"] = dir_to_json(tree.root());
    return out;
}

VTree tree_from_json(const json& value) {
    expect_keys(value, {"name", "origin", "root"}, "tree");
    VTree tree(as_string(member(value, "name"), "tree name"));
    tree.mutable_root() = dir_from_json(member(value, "root"));
    const json& origin = member(value, "origin");
    if (!origin.is_null()) {
        expect_keys(origin, {"attributes", "file_ids"}, "tree origin");
        Projection projection;
        for (const json& attr : as_array(member(origin, "attributes"), "origin attribute list")) {
            projection.attributes.push_back(as_string(attr, "origin attribute"));
        }
        for (const json& id : as_array(member(origin, "file_ids"), "origin file list")) {
            projection.file_ids.push_back(as_uint(id, "origin file id"));
        }
        tree.set_origin(std::move(projection));
    }
    return tree;
}

json section_to_json(const Section& section) {
    json out;
    out["file_ids"] = section.file_ids();
    out["name"] = section.name();
    json rows = json::array();
    for (FileId id : section.file_ids()) {
        json row;
        json cells = json::array();
        for (const auto& cell : section.rows().at(id).cells) {
            if (cell.has_value()) {
                cells.push_back(*cell);
            } else {
                cells.push_back(nullptr);
            }
        }
        row["cells"] = std::move(cells);
        row["id"] = id;
        rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
    out["schema"] = section.schema();
    json trees = json::array();
    for (const VTree& tree : section.trees()) {
        trees.push_back(tree_to_json(tree));
    }
    out["trees"] = std::move(trees);
    return out;
}

Section section_from_json(const json& value) {
    expect_keys(value, {"file_ids", "name", "rows", "schema", "trees"}, "section");
    Section section(as_string(member(value, "name"), "section name"));

    std::vector<std::string> schema;
    for (const json& attr : as_array(member(value, "schema"), "schema")) {
        schema.push_back(as_string(attr, "attribute name"));
    }
    const std::size_t schema_size = schema.size();
    section.restore_schema(std::move(schema));

    std::vector<FileId> file_ids;
    for (const json& id : as_array(member(value, "file_ids"), "section file list")) {
        file_ids.push_back(as_uint(id, "section file id"));
    }

    const json& rows = as_array(member(value, "rows"), "row list");
    if (rows.size() != file_ids.size()) {
        violated("row alignment", "section \"" + section.name() + "\" has " +
                                      std::to_string(file_ids.size()) + " members but " +
                                      std::to_string(rows.size()) + " rows");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        expect_keys(rows[i], {"cells", "id"}, "row");
        const FileId row_id = as_uint(member(rows[i], "id"), "row id");
        if (row_id != file_ids[i]) {
            violated("row alignment", "row " + std::to_string(i) + " of section \"" +
                                          section.name() + "\" is for file " +
                                          std::to_string(row_id) + ", expected " +
                                          std::to_string(file_ids[i]));
        }
        AttributeRow row;
        for (const json& cell : as_array(member(rows[i], "cells"), "cell list")) {
            if (cell.is_null()) {
                row.cells.emplace_back();
            } else {
                row.cells.emplace_back(as_string(cell, "cell"));
            }
        }
        if (row.cells.size() != schema_size) {
            violated("row rectangularity", "row for file " + std::to_string(row_id) +
                                               " in section \"" + section.name() + "\" has " +
                                               std::to_string(row.cells.size()) +
                                               " cells, schema has " +
                                               std::to_string(schema_size));
        }
        section.restore_member(row_id, std::move(row));
    }

    for (const json& tree : as_array(member(value, "trees"), "tree list")) {
        section.restore_tree(tree_from_json(tree));
    }
    return section;
}

struct TreeChecker {
    const Section& section;
    const VTree& tree;
    std::unordered_set<FileId> seen;

    void check_dir(const VDir& dir, const std::string& path) {
        std::unordered_set<std::string> names;
        for (const VDir& child : dir.child_dirs) {
            if (!valid_label(child.name)) {
                violated("directory name validity", "directory \"" + child.name +
                                                        "\" under \"" + path + "\" in tree \"" +
                                                        tree.name() + "\"");
            }
            if (!names.insert(child.name).second) {
                violated("sibling distinctness", "directory \"" + child.name +
                                                     "\" appears twice under \"" + path +
                                                     "\" in tree \"" + tree.name() + "\"");
            }
        }
        FileId previous = 0;
        for (FileId id : dir.file_refs) {
            if (id <= previous) {
                violated("file reference order", "references under \"" + path + "\" in tree \"" +
                                                     tree.name() + "\" are not strictly ascending");
            }
            previous = id;
            if (!section.has_file(id)) {
                violated("tree membership", "tree \"" + tree.name() + "\" references file " +
                                                std::to_string(id) + " outside section \"" +
                                                section.name() + "\"");
            }
            if (!seen.insert(id).second) {
                violated("tree at-most-once", "file " + std::to_string(id) +
                                                  " appears twice in tree \"" + tree.name() +
                                                  "\"");
            }
        }
        for (const VDir& child : dir.child_dirs) {
            check_dir(child, path == "/" ? "/" + child.name : path + "/" + child.name);
        }
    }
};

}  // namespace

json catalog_to_document(const Catalog& catalog) {
    json files = json::array();
    for (const auto& [id, entry] : catalog.field().entries()) {
        json file;
        file["blob_ref"] = entry.blob_ref;
        file["digest"] = entry.digest;
        file["id"] = entry.id;
        file["ingest_name"] = entry.ingest_name;
        file["size"] = entry.size;
        files.push_back(std::move(file));
    }
    json sections = json::array();
    for (const Section& section : catalog.sections()) {
        sections.push_back(section_to_json(section));
    }
    json doc;
    doc["files"] = std::move(files);
    doc["format_version"] = static_cast<std::uint64_t>(kFormatVersion);
    doc["next_id"] = catalog.field().next_id();
    doc["sections"] = std::move(sections);
    return doc;
}

std::string canonical_dump(const json& document) {
    return document.dump(2) + "\n";
}

Catalog catalog_from_document(const json& document, fs::path root) {
    expect_keys(document, {"files", "format_version", "next_id", "sections"}, "catalog document");
    const json& version = member(document, "format_version");
    if (!version.is_number_integer() ||
        version.get<std::int64_t>() != static_cast<std::int64_t>(kFormatVersion)) {
        throw LoadError("unsupported format version: expected " + std::to_string(kFormatVersion) +
                        ", got " + version.dump());
    }

    Catalog catalog(std::move(root));

    FileId previous_id = 0;
    for (const json& file : as_array(member(document, "files"), "file list")) {
        expect_keys(file, {"blob_ref", "digest", "id", "ingest_name", "size"}, "file entry");
        FileEntry entry;
        entry.id = as_uint(member(file, "id"), "file id");
        entry.digest = as_string(member(file, "digest"), "digest");
        entry.size = as_uint(member(file, "size"), "file size");
        entry.ingest_name = as_string(member(file, "ingest_name"), "ingest name");
        entry.blob_ref = as_string(member(file, "blob_ref"), "blob reference");
        if (entry.id <= previous_id) {
            violated("file id ordering", "file ids are not strictly ascending at id " +
                                             std::to_string(entry.id));
        }
        previous_id = entry.id;
        catalog.restore_field().restore_entry(std::move(entry));
    }
    catalog.restore_field().restore_next_id(as_uint(member(document, "next_id"), "next_id"));

    for (const json& section : as_array(member(document, "sections"), "section list")) {
        catalog.restore_sections().push_back(section_from_json(section));
    }

    validate_catalog(catalog);
    return catalog;
}

void validate_catalog(const Catalog& catalog) {
    const FileField& field = catalog.field();

    std::unordered_set<std::string> digests;
    digests.reserve(field.size());
    FileId max_id = 0;
    for (const auto& [id, entry] : field.entries()) {
        if (id == 0) {
            violated("file id validity", "file id 0 is not a valid unique number");
        }
        if (!valid_digest(entry.digest)) {
            violated("digest format", "file " + std::to_string(id) + " digest \"" + entry.digest +
                                          "\" is not 64 lowercase hex chars");
        }
        if (!digests.insert(entry.digest).second) {
            violated("digest uniqueness", "digest " + entry.digest + " is recorded twice");
        }
        if (!valid_ingest_name(entry.ingest_name)) {
            violated("ingest name validity", "file " + std::to_string(id) + " ingest name \"" +
                                                 entry.ingest_name + "\"");
        }
        if (entry.blob_ref != BlobStore::ref_for(entry.digest)) {
            violated("blob reference layout", "file " + std::to_string(id) + " blob_ref \"" +
                                                  entry.blob_ref + "\" does not match its digest");
        }
        max_id = std::max(max_id, id);
    }
    if (field.next_id() < 1 || field.next_id() <= max_id) {
        violated("next_id monotonicity", "next_id " + std::to_string(field.next_id()) +
                                             " is not greater than every assigned id");
    }

    std::unordered_set<std::string> section_names;
    std::unordered_map<FileId, const Section*> owners;
    for (const Section& section : catalog.sections()) {
        if (!valid_label(section.name())) {
            violated("section name validity", "section name \"" + section.name() + "\"");
        }
        if (!section_names.insert(section.name()).second) {
            violated("section name uniqueness", "section \"" + section.name() + "\" appears twice");
        }

        std::unordered_set<std::string> attrs;
        for (const std::string& attr : section.schema()) {
            if (!valid_label(attr)) {
                violated("attribute name validity", "attribute \"" + attr + "\" in section \"" +
                                                        section.name() + "\"");
            }
            if (!attrs.insert(attr).second) {
                violated("schema uniqueness", "attribute \"" + attr + "\" appears twice in section \"" +
                                                  section.name() + "\"");
            }
        }

        if (section.file_ids().size() != section.rows().size()) {
            violated("row rectangularity", "section \"" + section.name() + "\" has " +
                                               std::to_string(section.file_ids().size()) +
                                               " members but " +
                                               std::to_string(section.rows().size()) + " rows");
        }
        for (FileId id : section.file_ids()) {
            if (!field.contains(id)) {
                violated("section membership", "section \"" + section.name() +
                                                   "\" lists unknown file " + std::to_string(id));
            }
            auto [it, fresh] = owners.emplace(id, &section);
            if (!fresh) {
                violated("section disjointness", "file " + std::to_string(id) +
                                                     " belongs to sections \"" +
                                                     it->second->name() + "\" and \"" +
                                                     section.name() + "\"");
            }
            auto row = section.rows().find(id);
            if (row == section.rows().end()) {
                violated("row rectangularity", "section \"" + section.name() +
                                                   "\" has no row for file " + std::to_string(id));
            }
            if (row->second.cells.size() != section.schema().size()) {
                violated("row rectangularity",
                         "row for file " + std::to_string(id) + " in section \"" + section.name() +
                             "\" has " + std::to_string(row->second.cells.size()) +
                             " cells, schema has " + std::to_string(section.schema().size()));
            }
            for (const auto& cell : row->second.cells) {
                if (cell.has_value() && !valid_label(*cell)) {
                    violated("attribute value validity", "value \"" + *cell + "\" for file " +
                                                             std::to_string(id) + " in section \"" +
                                                             section.name() + "\"");
                }
            }
        }

        std::unordered_set<std::string> tree_names;
        for (const VTree& tree : section.trees()) {
            if (!valid_label(tree.name())) {
                violated("tree name validity", "tree name \"" + tree.name() + "\" in section \"" +
                                                   section.name() + "\"");
            }
            if (!tree_names.insert(tree.name()).second) {
                violated("tree name uniqueness", "tree \"" + tree.name() +
                                                     "\" appears twice in section \"" +
                                                     section.name() + "\"");
            }
            if (tree.root().name != tree.name()) {
                violated("root label", "tree \"" + tree.name() + "\" has root labeled \"" +
                                           tree.root().name + "\"");
            }
            TreeChecker checker{section, tree, {}};
            checker.check_dir(tree.root(), "/");

            if (tree.origin().has_value()) {
                const Projection& origin = *tree.origin();
                if (origin.attributes.empty()) {
                    violated("origin projection", "tree \"" + tree.name() +
                                                      "\" records an empty attribute choice");
                }
                std::unordered_set<std::string> origin_attrs;
                for (const std::string& attr : origin.attributes) {
                    if (!section.has_attribute(attr)) {
                        violated("origin projection", "tree \"" + tree.name() +
                                                          "\" records unknown attribute \"" + attr +
                                                          "\"");
                    }
                    if (!origin_attrs.insert(attr).second) {
                        violated("origin projection", "tree \"" + tree.name() +
                                                          "\" records attribute \"" + attr +
                                                          "\" twice");
                    }
                }
                std::unordered_set<FileId> origin_ids;
                for (FileId id : origin.file_ids) {
                    if (!section.has_file(id)) {
                        violated("origin projection", "tree \"" + tree.name() +
                                                          "\" records non-member file " +
                                                          std::to_string(id));
                    }
                    if (!origin_ids.insert(id).second) {
                        violated("origin projection", "tree \"" + tree.name() +
                                                          "\" records file " + std::to_string(id) +
                                                          " twice");
                    }
                }
            }
        }
    }
}

Catalog load_catalog(const fs::path& root) {
    const fs::path file = root / "catalog.json";
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw IoError("cannot read catalog file " + file.string());
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("cannot read catalog file " + file.string());
    }
    json document;
    try {
        document = json::parse(text);
    } catch (const json::parse_error& e) {
        throw LoadError("malformed document: " + std::string(e.what()));
    }
    return catalog_from_document(document, root);
}

void save_catalog(const Catalog& catalog) {
    write_text_atomic(canonical_dump(catalog_to_document(catalog)),
                      catalog.root() / "catalog.json");
}

void write_text_atomic(const std::string& text, const fs::path& file) {
    const fs::path tmp = file.parent_path() / (file.filename().string() + ".tmp");
    std::error_code ec;
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open temp file " + tmp.string());
        }
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp, ec);
            throw IoError("cannot write " + tmp.string());
        }
    }
    fs::rename(tmp, file, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot replace " + file.string() + ": " + ec.message());
    }
}

}  // namespace vfield
