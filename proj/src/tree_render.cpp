#include "vfield/tree_render.hpp"

namespace vfield {

namespace {

void render_dir(const VDir& dir, const FileField& field, const std::string& prefix,
                std::string& out) {
    const std::size_t total = dir.child_dirs.size() + dir.file_refs.size();
    std::size_t index = 0;
    for (const VDir& child : dir.child_dirs) {
        const bool last = ++index == total;
        out += prefix;
        out += last ? "└── " : "├── ";
        out += child.name;
        out += "/\n";
        render_dir(child, field, prefix + (last ? "    " : "│   "), out);
    }
    for (FileId id : dir.file_refs) {
        const bool last = ++index == total;
        out += prefix;
        out += last ? "└── " : "├── ";
        out += "[" + std::to_string(id) + "] " + field.get(id).ingest_name;
        out += "\n";
    }
}

}  // namespace

std::string render_tree(const VTree& tree, const FileField& field) {
    std::string out = tree.root().name + "/\n";
    render_dir(tree.root(), field, "", out);
    return out;
}

}  // namespace vfield
