#include "vfield/section.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

#include "vfield/errors.hpp"
#include "vfield/labels.hpp"

namespace vfield {

Section::Section(std::string name) : name_(std::move(name)) {}

bool Section::has_file(FileId id) const {
    return rows_.count(id) != 0;
}

bool Section::has_attribute(const std::string& attr) const {
    return std::find(schema_.begin(), schema_.end(), attr) != schema_.end();
}

std::size_t Section::attribute_index(const std::string& attr) const {
    auto it = std::find(schema_.begin(), schema_.end(), attr);
    if (it == schema_.end()) {
        throw NotFoundError("no attribute \"" + attr + "\" in section \"" + name_ + "\"");
    }
    return static_cast<std::size_t>(it - schema_.begin());
}

void Section::add_member(FileId id) {
    file_ids_.push_back(id);
    rows_.emplace(id, AttributeRow{std::vector<std::optional<std::string>>(schema_.size())});
}

void Section::define_attribute(const std::string& attr) {
    if (!valid_label(attr)) {
        throw NameError("invalid attribute name \"" + attr + "\"");
    }
    if (has_attribute(attr)) {
        throw DuplicateError("attribute \"" + attr + "\" already defined in section \"" + name_ +
                             "\"");
    }
    schema_.push_back(attr);
    for (auto& [id, row] : rows_) {
        row.cells.emplace_back();
    }
}

void Section::set_value(FileId id, const std::string& attr, std::optional<std::string> value) {
    auto it = rows_.find(id);
    if (it == rows_.end()) {
        throw MembershipError("file " + std::to_string(id) + " is not a member of section \"" +
                              name_ + "\"");
    }
    const std::size_t column = attribute_index(attr);
    if (value.has_value() && !valid_label(*value)) {
        throw ValueError("invalid attribute value \"" + *value + "\"");
    }
    it->second.cells[column] = std::move(value);
}

const std::optional<std::string>& Section::value(FileId id, const std::string& attr) const {
    auto it = rows_.find(id);
    if (it == rows_.end()) {
        throw MembershipError("file " + std::to_string(id) + " is not a member of section \"" +
                              name_ + "\"");
    }
    return it->second.cells[attribute_index(attr)];
}

AttributeMatrix Section::matrix() const {
    AttributeMatrix m;
    m.file_ids = file_ids_;
    m.attributes = schema_;
    m.cells.reserve(file_ids_.size());
    for (FileId id : file_ids_) {
        m.cells.push_back(rows_.at(id).cells);
    }
    return m;
}

AttributeMatrix Section::project(const std::vector<std::string>& attrs,
                                 const std::vector<FileId>* files) const {
    if (attrs.empty()) {
        throw ValueError("projection needs at least one attribute");
    }
    std::vector<std::size_t> columns;
    columns.reserve(attrs.size());
    std::unordered_set<std::string> seen_attrs;
    for (const std::string& attr : attrs) {
        if (!seen_attrs.insert(attr).second) {
            throw DuplicateError("attribute \"" + attr + "\" selected twice");
        }
        columns.push_back(attribute_index(attr));
    }

    const std::vector<FileId>& row_ids = files != nullptr ? *files : file_ids_;
    std::unordered_set<FileId> seen_ids;
    AttributeMatrix m;
    m.attributes = attrs;
    m.file_ids = row_ids;
    m.cells.reserve(row_ids.size());
    for (FileId id : row_ids) {
        auto it = rows_.find(id);
        if (it == rows_.end()) {
            throw MembershipError("file " + std::to_string(id) + " is not a member of section \"" +
                                  name_ + "\"");
        }
        if (!seen_ids.insert(id).second) {
            throw DuplicateError("file " + std::to_string(id) + " selected twice");
        }
        std::vector<std::optional<std::string>> row;
        row.reserve(columns.size());
        for (std::size_t column : columns) {
            row.push_back(it->second.cells[column]);
        }
        m.cells.push_back(std::move(row));
    }
    return m;
}

VTree& Section::create_tree(const std::string& tree_name) {
    if (!valid_label(tree_name)) {
        throw NameError("invalid tree name \"" + tree_name + "\"");
    }
    if (find_tree(tree_name) != nullptr) {
        throw DuplicateError("tree \"" + tree_name + "\" already exists in section \"" + name_ +
                             "\"");
    }
    trees_.emplace_back(tree_name);
    return trees_.back();
}

VTree& Section::tree(const std::string& tree_name) {
    for (VTree& t : trees_) {
        if (t.name() == tree_name) {
            return t;
        }
    }
    throw NotFoundError("no tree \"" + tree_name + "\" in section \"" + name_ + "\"");
}

const VTree& Section::tree(const std::string& tree_name) const {
    for (const VTree& t : trees_) {
        if (t.name() == tree_name) {
            return t;
        }
    }
    throw NotFoundError("no tree \"" + tree_name + "\" in section \"" + name_ + "\"");
}

const VTree* Section::find_tree(const std::string& tree_name) const {
    for (const VTree& t : trees_) {
        if (t.name() == tree_name) {
            return &t;
        }
    }
    return nullptr;
}

void Section::link(const std::string& tree_name, const VPath& dir, FileId id) {
    VTree& t = tree(tree_name);
    if (!has_file(id)) {
        throw MembershipError("file " + std::to_string(id) + " is not a member of section \"" +
                              name_ + "\"");
    }
    t.link(dir, id);
}

std::pair<const VTree*, BuildReport> Section::build_auto(const std::string& tree_name,
                                                         const std::vector<std::string>& attrs,
                                                         const std::vector<FileId>* files,
                                                         const MissingPolicy& policy) {
    if (!valid_label(tree_name)) {
        throw NameError("invalid tree name \"" + tree_name + "\"");
    }
    if (find_tree(tree_name) != nullptr) {
        throw DuplicateError("tree \"" + tree_name + "\" already exists in section \"" + name_ +
                             "\"");
    }
    const AttributeMatrix m = project(attrs, files);
    auto [tree, report] = build_tree_from_matrix(tree_name, m, policy);
    tree.set_origin(Projection{m.attributes, m.file_ids});
    trees_.push_back(std::move(tree));
    return {&trees_.back(), std::move(report)};
}

void Section::restore_member(FileId id, AttributeRow row) {
    if (rows_.count(id) != 0) {
        throw LoadError("invalid catalog: section membership violated: file " +
                        std::to_string(id) + " listed twice in section \"" + name_ + "\"");
    }
    file_ids_.push_back(id);
    rows_.emplace(id, std::move(row));
}

void Section::restore_schema(std::vector<std::string> schema) {
    schema_ = std::move(schema);
}

void Section::restore_tree(VTree tree) {
    trees_.push_back(std::move(tree));
}

}  // namespace vfield
