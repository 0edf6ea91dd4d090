// vfield — deduplicated file field with virtual directory trees.
//
// One physical copy per distinct content, identified by a unique number.
// Sections partition the field; each section carries an attribute matrix and
// any number of virtual trees over the same files, assembled by hand or built
// automatically from a choice of attributes.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vfield/catalog.hpp"
#include "vfield/csv.hpp"
#include "vfield/errors.hpp"
#include "vfield/lockfile.hpp"
#include "vfield/persistence.hpp"
#include "vfield/tree_export.hpp"
#include "vfield/tree_render.hpp"

namespace fs = std::filesystem;
using namespace vfield;

namespace {

const char* kUsage = R"(usage: vfield [--catalog <dir>] <command> [<args>]

The catalog directory comes from --catalog, then $VFIELD_DIR, then the
current directory.

catalog
  init [<dir>]                        create an empty catalog
  verify                              re-hash every blob and report problems

file field
  add <path>...                       ingest files; directories recurse in sorted order
  ls                                  list files, ascending id
  rm <id>                             remove a file (refused while assigned to a section)

sections
  section create <name>
  section assign <name> <id>...
  section show <name> [--csv]

attributes
  attr define <section> <attr>...
  attr set <section> <id> <attr> [<value>]    no value clears the cell
  attr import-csv <section> <file>            header: id,<attr>,... ; transactional

trees
  tree new <section> <tree>
  tree mkdir <section> <tree> <path>
  tree rmdir <section> <tree> <path>
  tree mv <section> <tree> <path> <new-parent-path>
  tree link <section> <tree> <path> <id>
  tree unlink <section> <tree> <path> <id>
  tree build <section> <tree> --by <attr,...> [--files <id,...>]
                              [--missing skip|bucket[=<label>]]
  tree ls <section>
  tree render <section> <tree>
  tree export <section> <tree> <target-dir>
)";

[[noreturn]] void usage_error(const std::string& message) {
    throw ValueError(message + " (see `vfield help`)");
}

FileId parse_id(const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        usage_error("\"" + text + "\" is not a file id");
    }
    return std::stoull(text);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

std::string read_file_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("cannot read " + path.string());
    }
    return bytes;
}

std::string digest_prefix(const std::string& digest) {
    return digest.substr(0, 12);
}

// Mutating commands reload, apply, validate and save; the lock serializes
// whole invocations.
struct Session {
    fs::path dir;
    CatalogLock lock;
    Catalog catalog;

    explicit Session(const fs::path& catalog_dir)
        : dir(catalog_dir), lock(catalog_dir), catalog(Catalog::open(catalog_dir)) {}

    void commit() {
        validate_catalog(catalog);
        catalog.save();
    }
};

int cmd_init(const fs::path& default_dir, const std::vector<std::string>& args) {
    if (args.size() > 1) {
        usage_error("init takes at most one directory");
    }
    const fs::path dir = args.empty() ? default_dir : fs::path(args[0]);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    CatalogLock lock(dir);
    Catalog::init(dir);
    std::cout << "initialized empty catalog at " << fs::absolute(dir).string() << "\n";
    return 0;
}

void collect_add_paths(const fs::path& path, std::vector<fs::path>& out) {
    if (fs::is_directory(path)) {
        std::vector<fs::path> inside;
        for (const auto& entry : fs::recursive_directory_iterator(path)) {
            if (entry.is_regular_file()) {
                inside.push_back(entry.path());
            }
        }
        std::sort(inside.begin(), inside.end(),
                  [](const fs::path& a, const fs::path& b) { return a.string() < b.string(); });
        out.insert(out.end(), inside.begin(), inside.end());
    } else if (fs::is_regular_file(path)) {
        out.push_back(path);
    } else {
        throw IoError("no such file or directory: " + path.string());
    }
}

int cmd_add(Session& session, const std::vector<std::string>& args) {
    if (args.empty()) {
        usage_error("add needs at least one path");
    }
    std::vector<fs::path> paths;
    for (const std::string& arg : args) {
        collect_add_paths(arg, paths);
    }
    for (const fs::path& path : paths) {
        const std::string bytes = read_file_bytes(path);
        const auto [id, duplicate] = session.catalog.add_file(bytes, path.filename().string());
        const FileEntry& entry = session.catalog.get_file(id);
        std::cout << id << "\t" << digest_prefix(entry.digest) << "\t"
                  << (duplicate ? "dup" : "new") << "\t" << path.filename().string() << "\n";
    }
    session.commit();
    return 0;
}

int cmd_ls(Session& session) {
    for (const FileEntry& entry : session.catalog.list_files()) {
        std::cout << entry.id << "\t" << digest_prefix(entry.digest) << "\t" << entry.size << "\t"
                  << entry.ingest_name << "\n";
    }
    return 0;
}

int cmd_rm(Session& session, const std::vector<std::string>& args) {
    if (args.size() != 1) {
        usage_error("rm takes exactly one id");
    }
    session.catalog.remove_file(parse_id(args[0]));
    session.commit();
    return 0;
}

int cmd_verify(Session& session) {
    const VerifyReport report = session.catalog.verify_field();
    for (const VerifyProblem& problem : report.problems) {
        if (problem.kind == VerifyProblem::Kind::MissingBlob) {
            std::cout << "missing\t" << problem.id << "\t" << problem.digest << "\n";
        } else {
            std::cout << "mismatch\t" << problem.id << "\t" << problem.digest << "\t"
                      << problem.actual_digest << "\n";
        }
    }
    if (!report.clean()) {
        std::cerr << "vfield: field verification found " << report.problems.size()
                  << " problem(s)\n";
        return 1;
    }
    return 0;
}

int cmd_section(Session& session, const std::vector<std::string>& args) {
    if (args.empty()) {
        usage_error("section needs a subcommand: create, assign or show");
    }
    const std::string& sub = args[0];
    if (sub == "create") {
        if (args.size() != 2) {
            usage_error("section create takes a name");
        }
        session.catalog.create_section(args[1]);
        session.commit();
        return 0;
    }
    if (sub == "assign") {
        if (args.size() < 3) {
            usage_error("section assign takes a name and at least one id");
        }
        for (std::size_t i = 2; i < args.size(); ++i) {
            session.catalog.assign_file(args[1], parse_id(args[i]));
        }
        session.commit();
        return 0;
    }
    if (sub == "show") {
        bool csv = false;
        std::string name;
        for (std::size_t i = 1; i < args.size(); ++i) {
            if (args[i] == "--csv") {
                csv = true;
            } else if (name.empty()) {
                name = args[i];
            } else {
                usage_error("section show takes one name");
            }
        }
        if (name.empty()) {
            usage_error("section show takes a name");
        }
        const Section& section = session.catalog.section(name);
        if (csv) {
            std::cout << export_section_csv(section);
            return 0;
        }
        std::cout << "section: " << section.name() << "\n";
        std::cout << "files: " << section.file_ids().size() << "\n";
        std::cout << "trees: " << section.trees().size() << "\n";
        std::cout << "id\tname";
        for (const std::string& attr : section.schema()) {
            std::cout << "\t" << attr;
        }
        std::cout << "\n";
        for (FileId id : section.file_ids()) {
            std::cout << id << "\t" << session.catalog.get_file(id).ingest_name;
            for (const auto& cell : section.rows().at(id).cells) {
                std::cout << "\t" << (cell.has_value() ? *cell : "");
            }
            std::cout << "\n";
        }
        return 0;
    }
    usage_error("unknown section subcommand \"" + sub + "\"");
}

int cmd_attr(Session& session, const std::vector<std::string>& args) {
    if (args.empty()) {
        usage_error("attr needs a subcommand: define, set or import-csv");
    }
    const std::string& sub = args[0];
    if (sub == "define") {
        if (args.size() < 3) {
            usage_error("attr define takes a section and at least one attribute");
        }
        Section& section = session.catalog.section(args[1]);
        for (std::size_t i = 2; i < args.size(); ++i) {
            section.define_attribute(args[i]);
        }
        session.commit();
        return 0;
    }
    if (sub == "set") {
        if (args.size() != 4 && args.size() != 5) {
            usage_error("attr set takes section, id, attribute and an optional value");
        }
        Section& section = session.catalog.section(args[1]);
        std::optional<std::string> value;
        if (args.size() == 5) {
            value = args[4];
        }
        section.set_value(parse_id(args[2]), args[3], std::move(value));
        session.commit();
        return 0;
    }
    if (sub == "import-csv") {
        if (args.size() != 3) {
            usage_error("attr import-csv takes a section and a CSV file");
        }
        Section& section = session.catalog.section(args[1]);
        import_section_csv(section, read_file_bytes(args[2]));
        session.commit();
        return 0;
    }
    usage_error("unknown attr subcommand \"" + sub + "\"");
}

void print_build_report(const BuildReport& report) {
    std::cout << "levels: " << report.total_levels << "\n";
    for (std::size_t level = 1; level <= report.dirs_per_parent.size(); ++level) {
        std::cout << "level " << level << ": " << report.level_dir_count(level) << " dirs\n";
    }
    std::cout << "attached: " << report.attached_files << "\n";
    std::cout << "skipped: " << report.skipped.size() << "\n";
    for (const BuildSkip& skip : report.skipped) {
        std::cout << "  id " << skip.id << ": no value for \"" << skip.attribute << "\"\n";
    }
}

int cmd_tree(Session& session, const std::vector<std::string>& args) {
    if (args.empty()) {
        usage_error("tree needs a subcommand");
    }
    const std::string& sub = args[0];
    if (sub == "new") {
        if (args.size() != 3) {
            usage_error("tree new takes a section and a tree name");
        }
        session.catalog.section(args[1]).create_tree(args[2]);
        session.commit();
        return 0;
    }
    if (sub == "mkdir") {
        if (args.size() != 4) {
            usage_error("tree mkdir takes section, tree and path");
        }
        const VPath path = VPath::parse(args[3]);
        if (path.is_root()) {
            usage_error("tree mkdir needs a non-root path");
        }
        session.catalog.section(args[1]).tree(args[2]).mkdir(path.parent(),
                                                             path.components.back());
        session.commit();
        return 0;
    }
    if (sub == "rmdir") {
        if (args.size() != 4) {
            usage_error("tree rmdir takes section, tree and path");
        }
        session.catalog.section(args[1]).tree(args[2]).rmdir(VPath::parse(args[3]));
        session.commit();
        return 0;
    }
    if (sub == "mv") {
        if (args.size() != 5) {
            usage_error("tree mv takes section, tree, path and new parent path");
        }
        session.catalog.section(args[1]).tree(args[2]).move_dir(VPath::parse(args[3]),
                                                                VPath::parse(args[4]));
        session.commit();
        return 0;
    }
    if (sub == "link") {
        if (args.size() != 5) {
            usage_error("tree link takes section, tree, path and id");
        }
        session.catalog.section(args[1]).link(args[2], VPath::parse(args[3]), parse_id(args[4]));
        session.commit();
        return 0;
    }
    if (sub == "unlink") {
        if (args.size() != 5) {
            usage_error("tree unlink takes section, tree, path and id");
        }
        session.catalog.section(args[1]).tree(args[2]).unlink(VPath::parse(args[3]),
                                                              parse_id(args[4]));
        session.commit();
        return 0;
    }
    if (sub == "build") {
        if (args.size() < 3) {
            usage_error("tree build takes section, tree and options");
        }
        std::vector<std::string> attrs;
        std::optional<std::vector<FileId>> files;
        MissingPolicy policy = MissingPolicy::skip();
        for (std::size_t i = 3; i < args.size(); ++i) {
            const std::string& arg = args[i];
            auto option_value = [&](const char* name) -> std::string {
                if (++i >= args.size()) {
                    usage_error(std::string(name) + " needs a value");
                }
                return args[i];
            };
            if (arg == "--by") {
                attrs = split_list(option_value("--by"));
            } else if (arg == "--files") {
                files.emplace();
                for (const std::string& id : split_list(option_value("--files"))) {
                    files->push_back(parse_id(id));
                }
            } else if (arg == "--missing") {
                const std::string value = option_value("--missing");
                if (value == "skip") {
                    policy = MissingPolicy::skip();
                } else if (value == "bucket") {
                    policy = MissingPolicy::bucket();
                } else if (value.rfind("bucket=", 0) == 0) {
                    policy = MissingPolicy::bucket(value.substr(7));
                } else {
                    usage_error("--missing takes skip, bucket or bucket=<label>");
                }
            } else {
                usage_error("unknown tree build option \"" + arg + "\"");
            }
        }
        if (attrs.empty()) {
            usage_error("tree build needs --by <attr,...>");
        }
        auto [tree, report] = session.catalog.section(args[1]).build_auto(
            args[2], attrs, files ? &*files : nullptr, policy);
        (void)tree;
        print_build_report(report);
        session.commit();
        return 0;
    }
    if (sub == "ls") {
        if (args.size() != 2) {
            usage_error("tree ls takes a section");
        }
        for (const VTree& tree : session.catalog.section(args[1]).trees()) {
            std::cout << tree.name() << "\t" << (tree.origin() ? "auto" : "manual") << "\t"
                      << tree.dir_count() << " dirs\t" << tree.flatten().size() << " files\n";
        }
        return 0;
    }
    if (sub == "render") {
        if (args.size() != 3) {
            usage_error("tree render takes section and tree");
        }
        std::cout << render_tree(session.catalog.section(args[1]).tree(args[2]),
                                 session.catalog.field());
        return 0;
    }
    if (sub == "export") {
        if (args.size() != 4) {
            usage_error("tree export takes section, tree and a target directory");
        }
        const ExportStats stats =
            export_tree(session.catalog.section(args[1]).tree(args[2]), session.catalog.field(),
                        session.catalog.blobs(), args[3]);
        std::cout << "exported " << stats.files << " files, " << stats.directories
                  << " directories (" << stats.hard_links << " hard-linked, " << stats.copies
                  << " copied)\n";
        return 0;
    }
    usage_error("unknown tree subcommand \"" + sub + "\"");
}

int run(std::vector<std::string> args) {
    fs::path dir;
    // --catalog wins over $VFIELD_DIR wins over the current directory.
    for (auto it = args.begin(); it != args.end();) {
        if (*it == "--catalog") {
            if (std::next(it) == args.end()) {
                usage_error("--catalog needs a directory");
            }
            dir = *std::next(it);
            it = args.erase(it, std::next(it, 2));
        } else if (it->rfind("--catalog=", 0) == 0) {
            dir = it->substr(10);
            it = args.erase(it);
        } else {
            ++it;
        }
    }
    if (dir.empty()) {
        if (const char* env = std::getenv("VFIELD_DIR"); env != nullptr && *env != '\0') {
            dir = env;
        } else {
            dir = fs::current_path();
        }
    }

    if (args.empty() || args[0] == "help" || args[0] == "--help" || args[0] == "-h") {
        std::cout << kUsage;
        return 0;
    }
    const std::string command = args[0];
    const std::vector<std::string> rest(args.begin() + 1, args.end());

    if (command == "init") {
        return cmd_init(dir, rest);
    }

    Session session(dir);
    if (command == "add") return cmd_add(session, rest);
    if (command == "ls") {
        if (!rest.empty()) usage_error("ls takes no arguments");
        return cmd_ls(session);
    }
    if (command == "rm") return cmd_rm(session, rest);
    if (command == "verify") {
        if (!rest.empty()) usage_error("verify takes no arguments");
        return cmd_verify(session);
    }
    if (command == "section") return cmd_section(session, rest);
    if (command == "attr") return cmd_attr(session, rest);
    if (command == "tree") return cmd_tree(session, rest);
    usage_error("unknown command \"" + command + "\"");
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run(std::move(args));
    } catch (const Error& e) {
        std::cerr << "vfield: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "vfield: unexpected error: " << e.what() << "\n";
        return 1;
    }
}
