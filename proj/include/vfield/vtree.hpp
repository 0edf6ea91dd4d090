#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vfield/file_field.hpp"
#include "vfield/matrix.hpp"

namespace vfield {

// Path of directory labels below a tree root; an empty component list is the
// root itself.
struct VPath {
    std::vector<std::string> components;

    // Accepts "a/b/c"; "", "/" and "." mean the root. One leading or trailing
    // '/' is tolerated, empty components are not.
    static VPath parse(std::string_view text);

    std::string str() const;
    bool is_root() const { return components.empty(); }
    VPath child(std::string name) const;
    VPath parent() const;

    bool operator==(const VPath&) const = default;
};

// A virtual directory: a label, subdirectories and file references by unique
// number. File references are kept in ascending id order.
struct VDir {
    std::string name;
    std::vector<VDir> child_dirs;
    std::vector<FileId> file_refs;

    const VDir* find_child(std::string_view child_name) const;
    VDir* find_child(std::string_view child_name);
    bool has_ref(FileId id) const;

    bool operator==(const VDir&) const = default;
};

struct WalkEntry {
    VPath path;
    std::vector<FileId> file_refs;
};

// How rows lacking a value in a used column are treated during an automatic
// build: dropped (and reported), or grouped under a stand-in label.
struct MissingPolicy {
    enum class Kind { Skip, Bucket };
    Kind kind = Kind::Skip;
    std::string bucket_label;

    static MissingPolicy skip() { return {Kind::Skip, {}}; }
    static MissingPolicy bucket(std::string label = default_bucket_label());
    static std::string default_bucket_label() { return "<нет значения>"; }
};

struct BuildSkip {
    FileId id = 0;
    std::string attribute;  // first used column with no value
};

// Construction summary: directory counts per level (index 0 holds the single
// count under the root, later indexes one count per parent in walk order),
// how many files attached and which rows were skipped.
struct BuildReport {
    std::vector<std::vector<std::size_t>> dirs_per_parent;
    std::size_t attached_files = 0;
    std::vector<BuildSkip> skipped;
    std::size_t total_levels = 1;  // includes the root level

    std::size_t level_dir_count(std::size_t level) const;
};

class VTree {
public:
    explicit VTree(std::string name);

    const std::string& name() const { return name_; }
    const VDir& root() const { return root_; }
    // nullopt for manually assembled trees.
    const std::optional<Projection>& origin() const { return origin_; }

    // Creates an empty directory under parent, returns its path.
    VPath mkdir(const VPath& parent, const std::string& name);

    // Only empty directories can go; the root cannot.
    void rmdir(const VPath& path);

    // Re-parents a directory. Moving under the directory's own subtree and
    // sibling label clashes are refused; moving to the current parent is a
    // no-op.
    void move_dir(const VPath& from, const VPath& to_parent);

    // Places a file reference. At most one placement per tree; membership in
    // the owning section is the caller's check.
    void link(const VPath& dir, FileId id);
    void unlink(const VPath& dir, FileId id);

    const VDir& resolve(const VPath& path) const;

    // Deterministic preorder, children in stored order, root first.
    std::vector<WalkEntry> walk() const;

    // All referenced ids in walk order.
    std::vector<FileId> flatten() const;

    bool contains_file(FileId id) const;
    std::size_t dir_count() const;  // excluding the root
    std::size_t depth() const;      // levels including the root

    void set_origin(Projection origin) { origin_ = std::move(origin); }
    VDir& mutable_root() { return root_; }

    bool operator==(const VTree&) const = default;

private:
    VDir* resolve_mut(const VPath& path);

    std::string name_;
    VDir root_;
    std::optional<Projection> origin_;
};

// Level-wise construction over a value matrix: level j holds one directory
// per distinct column-j value among the rows whose earlier values match the
// parent's path, each row's file attaches to the leaf matching its full value
// sequence. Sibling directories are ordered lexicographically by value bytes.
std::pair<VTree, BuildReport> build_tree_from_matrix(const std::string& tree_name,
                                                     const AttributeMatrix& matrix,
                                                     const MissingPolicy& policy);

}  // namespace vfield
