#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vfield/file_field.hpp"
#include "vfield/matrix.hpp"
#include "vfield/vtree.hpp"

namespace vfield {

// Cells of one file, positionally aligned with the section schema.
struct AttributeRow {
    std::vector<std::optional<std::string>> cells;

    bool operator==(const AttributeRow&) const = default;
};

// A named subset of the file field with its own attribute schema and its own
// set of virtual trees. Disjointness across sections is enforced by Catalog.
class Section {
public:
    explicit Section(std::string name);

    const std::string& name() const { return name_; }
    const std::vector<FileId>& file_ids() const { return file_ids_; }
    const std::vector<std::string>& schema() const { return schema_; }
    const std::map<FileId, AttributeRow>& rows() const { return rows_; }

    bool has_file(FileId id) const;
    bool has_attribute(const std::string& attr) const;
    std::size_t attribute_index(const std::string& attr) const;  // NotFoundError

    // Membership append; the file-field existence and cross-section
    // disjointness checks live in Catalog::assign_file.
    void add_member(FileId id);

    // Extends the schema; existing rows gain one unset cell at the end.
    void define_attribute(const std::string& attr);

    // Unset value clears the cell.
    void set_value(FileId id, const std::string& attr, std::optional<std::string> value);
    const std::optional<std::string>& value(FileId id, const std::string& attr) const;

    // Full matrix: member order by rows, schema order by columns.
    AttributeMatrix matrix() const;

    // Sub-matrix with the given column order; nullptr files selects all
    // members in assignment order.
    AttributeMatrix project(const std::vector<std::string>& attrs,
                            const std::vector<FileId>* files = nullptr) const;

    // --- trees ---
    const std::deque<VTree>& trees() const { return trees_; }
    VTree& create_tree(const std::string& tree_name);
    VTree& tree(const std::string& tree_name);
    const VTree& tree(const std::string& tree_name) const;
    const VTree* find_tree(const std::string& tree_name) const;

    // Membership-checked placement into one of this section's trees.
    void link(const std::string& tree_name, const VPath& dir, FileId id);

    // Projection + level-wise construction; the new tree records its origin.
    std::pair<const VTree*, BuildReport> build_auto(
        const std::string& tree_name, const std::vector<std::string>& attrs,
        const std::vector<FileId>* files = nullptr,
        const MissingPolicy& policy = MissingPolicy::skip());

    // Restore paths for persistence; the loader validates afterwards.
    void restore_member(FileId id, AttributeRow row);
    void restore_schema(std::vector<std::string> schema);
    void restore_tree(VTree tree);

    bool operator==(const Section& other) const {
        return name_ == other.name_ && file_ids_ == other.file_ids_ &&
               schema_ == other.schema_ && rows_ == other.rows_ && trees_ == other.trees_;
    }

private:
    std::string name_;
    std::vector<FileId> file_ids_;  // assignment order
    std::vector<std::string> schema_;
    std::map<FileId, AttributeRow> rows_;
    // A deque keeps references from tree()/build_auto() stable while trees
    // are appended; nothing ever removes a tree.
    std::deque<VTree> trees_;  // creation order
};

}  // namespace vfield
