#include "vfield/vtree.hpp"

#include <algorithm>
#include <map>

#include "vfield/errors.hpp"
#include "vfield/labels.hpp"

namespace vfield {

namespace {

void walk_dir(const VDir& dir, VPath& path, std::vector<WalkEntry>& out) {
    out.push_back({path, dir.file_refs});
    for (const VDir& child : dir.child_dirs) {
        path.components.push_back(child.name);
        walk_dir(child, path, out);
        path.components.pop_back();
    }
}

std::size_t dir_depth(const VDir& dir) {
    std::size_t deepest = 0;
    for (const VDir& child : dir.child_dirs) {
        deepest = std::max(deepest, dir_depth(child));
    }
    return deepest + 1;
}

}  // namespace

VPath VPath::parse(std::string_view text) {
    if (text.empty() || text == "/" || text == ".") {
        return {};
    }
    if (!text.empty() && text.front() == '/') {
        text.remove_prefix(1);
    }
    if (!text.empty() && text.back() == '/') {
        text.remove_suffix(1);
    }
    VPath path;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t slash = text.find('/', start);
        const std::string_view part =
            text.substr(start, slash == std::string_view::npos ? std::string_view::npos
                                                               : slash - start);
        if (part.empty()) {
            throw NameError("empty path component in \"" + std::string(text) + "\"");
        }
        path.components.emplace_back(part);
        if (slash == std::string_view::npos) {
            break;
        }
        start = slash + 1;
    }
    return path;
}

std::string VPath::str() const {
    if (components.empty()) {
        return "/";
    }
    std::string out;
    for (const std::string& c : components) {
        if (!out.empty()) {
            out.push_back('/');
        }
        out += c;
    }
    return out;
}

VPath VPath::child(std::string name) const {
    VPath out = *this;
    out.components.push_back(std::move(name));
    return out;
}

VPath VPath::parent() const {
    VPath out = *this;
    if (!out.components.empty()) {
        out.components.pop_back();
    }
    return out;
}

const VDir* VDir::find_child(std::string_view child_name) const {
    for (const VDir& child : child_dirs) {
        if (child.name == child_name) {
            return &child;
        }
    }
    return nullptr;
}

VDir* VDir::find_child(std::string_view child_name) {
    for (VDir& child : child_dirs) {
        if (child.name == child_name) {
            return &child;
        }
    }
    return nullptr;
}

bool VDir::has_ref(FileId id) const {
    return std::binary_search(file_refs.begin(), file_refs.end(), id);
}

MissingPolicy MissingPolicy::bucket(std::string label) {
    return {Kind::Bucket, std::move(label)};
}

std::size_t BuildReport::level_dir_count(std::size_t level) const {
    if (level == 0 || level > dirs_per_parent.size()) {
        return 0;
    }
    std::size_t total = 0;
    for (std::size_t n : dirs_per_parent[level - 1]) {
        total += n;
    }
    return total;
}

VTree::VTree(std::string name) : name_(std::move(name)) {
    root_.name = name_;
}

const VDir& VTree::resolve(const VPath& path) const {
    const VDir* dir = &root_;
    for (const std::string& component : path.components) {
        dir = dir->find_child(component);
        if (dir == nullptr) {
            throw NotFoundError("no directory \"" + path.str() + "\" in tree \"" + name_ + "\"");
        }
    }
    return *dir;
}

VDir* VTree::resolve_mut(const VPath& path) {
    VDir* dir = &root_;
    for (const std::string& component : path.components) {
        dir = dir->find_child(component);
        if (dir == nullptr) {
            throw NotFoundError("no directory \"" + path.str() + "\" in tree \"" + name_ + "\"");
        }
    }
    return dir;
}

VPath VTree::mkdir(const VPath& parent, const std::string& name) {
    if (!valid_label(name)) {
        throw NameError("invalid directory name \"" + name + "\"");
    }
    VDir* dir = resolve_mut(parent);
    if (dir->find_child(name) != nullptr) {
        throw DuplicateError("directory \"" + name + "\" already exists under \"" + parent.str() +
                             "\"");
    }
    dir->child_dirs.push_back(VDir{name, {}, {}});
    return parent.child(name);
}

void VTree::rmdir(const VPath& path) {
    if (path.is_root()) {
        throw ValueError("cannot remove the tree root");
    }
    VDir* parent = resolve_mut(path.parent());
    const std::string& name = path.components.back();
    auto it = std::find_if(parent->child_dirs.begin(), parent->child_dirs.end(),
                           [&](const VDir& d) { return d.name == name; });
    if (it == parent->child_dirs.end()) {
        throw NotFoundError("no directory \"" + path.str() + "\" in tree \"" + name_ + "\"");
    }
    if (!it->child_dirs.empty() || !it->file_refs.empty()) {
        throw InUseError("directory \"" + path.str() + "\" is not empty");
    }
    parent->child_dirs.erase(it);
}

void VTree::move_dir(const VPath& from, const VPath& to_parent) {
    if (from.is_root()) {
        throw ValueError("cannot move the tree root");
    }
    // Destination inside the moved subtree (or the subtree root itself).
    if (to_parent.components.size() >= from.components.size() &&
        std::equal(from.components.begin(), from.components.end(), to_parent.components.begin())) {
        throw ValueError("cannot move \"" + from.str() + "\" under its own subtree");
    }
    VDir* old_parent = resolve_mut(from.parent());
    const std::string& name = from.components.back();
    auto it = std::find_if(old_parent->child_dirs.begin(), old_parent->child_dirs.end(),
                           [&](const VDir& d) { return d.name == name; });
    if (it == old_parent->child_dirs.end()) {
        throw NotFoundError("no directory \"" + from.str() + "\" in tree \"" + name_ + "\"");
    }
    if (to_parent == from.parent()) {
        return;
    }
    VDir* new_parent = resolve_mut(to_parent);
    if (new_parent->find_child(name) != nullptr) {
        throw DuplicateError("directory \"" + name + "\" already exists under \"" +
                             to_parent.str() + "\"");
    }
    VDir moved = std::move(*it);
    old_parent->child_dirs.erase(it);
    // old_parent may alias an ancestor of new_parent, but erase only shrinks
    // old_parent->child_dirs, never the chain leading to new_parent: resolve
    // again to be safe.
    resolve_mut(to_parent)->child_dirs.push_back(std::move(moved));
}

void VTree::link(const VPath& dir, FileId id) {
    VDir* target = resolve_mut(dir);
    if (contains_file(id)) {
        throw PlacementError("file " + std::to_string(id) + " is already placed in tree \"" +
                             name_ + "\"");
    }
    auto pos = std::lower_bound(target->file_refs.begin(), target->file_refs.end(), id);
    target->file_refs.insert(pos, id);
}

void VTree::unlink(const VPath& dir, FileId id) {
    VDir* target = resolve_mut(dir);
    auto pos = std::lower_bound(target->file_refs.begin(), target->file_refs.end(), id);
    if (pos == target->file_refs.end() || *pos != id) {
        throw NotFoundError("file " + std::to_string(id) + " is not linked under \"" + dir.str() +
                            "\"");
    }
    target->file_refs.erase(pos);
}

std::vector<WalkEntry> VTree::walk() const {
    std::vector<WalkEntry> out;
    VPath path;
    walk_dir(root_, path, out);
    return out;
}

std::vector<FileId> VTree::flatten() const {
    std::vector<FileId> out;
    for (const WalkEntry& entry : walk()) {
        out.insert(out.end(), entry.file_refs.begin(), entry.file_refs.end());
    }
    return out;
}

bool VTree::contains_file(FileId id) const {
    for (const WalkEntry& entry : walk()) {
        if (std::binary_search(entry.file_refs.begin(), entry.file_refs.end(), id)) {
            return true;
        }
    }
    return false;
}

std::size_t VTree::dir_count() const {
    return walk().size() - 1;
}

std::size_t VTree::depth() const {
    return dir_depth(root_);
}

std::pair<VTree, BuildReport> build_tree_from_matrix(const std::string& tree_name,
                                                     const AttributeMatrix& matrix,
                                                     const MissingPolicy& policy) {
    if (matrix.columns() == 0) {
        throw ValueError("automatic build needs at least one attribute column");
    }
    if (policy.kind == MissingPolicy::Kind::Bucket && !valid_label(policy.bucket_label)) {
        throw ValueError("invalid bucket label \"" + policy.bucket_label + "\"");
    }

    struct Row {
        FileId id;
        std::vector<std::string> values;
    };

    BuildReport report;
    std::vector<Row> rows;
    rows.reserve(matrix.rows());
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        Row row{matrix.file_ids[i], {}};
        row.values.reserve(matrix.columns());
        bool skipped = false;
        for (std::size_t j = 0; j < matrix.columns(); ++j) {
            const auto& cell = matrix.cells[i][j];
            if (cell.has_value()) {
                row.values.push_back(*cell);
            } else if (policy.kind == MissingPolicy::Kind::Bucket) {
                row.values.push_back(policy.bucket_label);
            } else {
                report.skipped.push_back({row.id, matrix.attributes[j]});
                skipped = true;
                break;
            }
        }
        if (!skipped) {
            rows.push_back(std::move(row));
        }
    }

    VTree tree(tree_name);
    const std::size_t h = matrix.columns();

    // Frontier of directories at the current level with the rows whose value
    // prefix led there.
    std::vector<std::pair<VDir*, std::vector<const Row*>>> frontier;
    {
        std::vector<const Row*> all;
        all.reserve(rows.size());
        for (const Row& row : rows) {
            all.push_back(&row);
        }
        frontier.emplace_back(&tree.mutable_root(), std::move(all));
    }

    for (std::size_t level = 0; level < h; ++level) {
        report.dirs_per_parent.emplace_back();
        std::vector<std::pair<VDir*, std::vector<const Row*>>> next;
        for (auto& [dir, dir_rows] : frontier) {
            // Each distinct value appears once; map order gives the
            // lexicographic sibling order.
            std::map<std::string, std::vector<const Row*>> groups;
            for (const Row* row : dir_rows) {
                groups[row->values[level]].push_back(row);
            }
            report.dirs_per_parent.back().push_back(groups.size());
            for (const auto& [value, group_rows] : groups) {
                dir->child_dirs.push_back(VDir{value, {}, {}});
            }
            std::size_t k = 0;
            for (auto& [value, group_rows] : groups) {
                next.emplace_back(&dir->child_dirs[k++], std::move(group_rows));
            }
        }
        frontier = std::move(next);
    }

    for (auto& [leaf, leaf_rows] : frontier) {
        leaf->file_refs.reserve(leaf_rows.size());
        for (const Row* row : leaf_rows) {
            leaf->file_refs.push_back(row->id);
        }
        std::sort(leaf->file_refs.begin(), leaf->file_refs.end());
        report.attached_files += leaf->file_refs.size();
    }
    report.total_levels = report.attached_files > 0 ? h + 1 : 1;

    return {std::move(tree), std::move(report)};
}

}  // namespace vfield
