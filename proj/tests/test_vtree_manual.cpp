#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "vfield/errors.hpp"
#include "vfield/vtree.hpp"
#include "test_support.hpp"

using namespace vfield;

TEST_CASE("paths parse to component lists") {
    CHECK(VPath::parse("").is_root());
    CHECK(VPath::parse("/").is_root());
    CHECK(VPath::parse(".").is_root());
    CHECK(VPath::parse("a/b/c").components == std::vector<std::string>{"a", "b", "c"});
    CHECK(VPath::parse("/a/b").components == std::vector<std::string>{"a", "b"});
    CHECK(VPath::parse("a/b/").components == std::vector<std::string>{"a", "b"});
    CHECK(VPath::parse("/").str() == "/");
    CHECK(VPath::parse("a/b").str() == "a/b");
    CHECK(VPath::parse("a/b").parent().str() == "a");
    CHECK(VPath::parse("a").parent().is_root());
    CHECK_THROWS_AS(VPath::parse("a//b"), NameError);
}

TEST_CASE("mkdir builds nested directories with unique sibling names") {
    VTree tree("каталог");
    CHECK(tree.root().name == "каталог");
    CHECK(tree.dir_count() == 0);
    CHECK(tree.depth() == 1);

    const VPath docs = tree.mkdir(VPath{}, "документы");
    tree.mkdir(docs, "2023");
    tree.mkdir(docs, "2024");
    CHECK(tree.dir_count() == 3);
    CHECK(tree.depth() == 3);
    CHECK(tree.resolve(VPath::parse("документы")).child_dirs.size() == 2);

    CHECK_THROWS_AS(tree.mkdir(docs, "2023"), DuplicateError);
    CHECK_THROWS_AS(tree.mkdir(VPath{}, ""), NameError);
    CHECK_THROWS_AS(tree.mkdir(VPath{}, "a/b"), NameError);
    CHECK_THROWS_AS(tree.mkdir(VPath{}, ".."), NameError);
    CHECK_THROWS_AS(tree.mkdir(VPath::parse("нет"), "x"), NotFoundError);
}

TEST_CASE("a file is placed at most once per tree but freely across trees") {
    VTree left("left");
    VTree right("right");
    left.mkdir(VPath{}, "a");
    left.mkdir(VPath{}, "b");
    right.mkdir(VPath{}, "c");

    left.link(VPath::parse("a"), 7);
    CHECK(left.contains_file(7));

    // Same directory, same file: refused.
    CHECK_THROWS_AS(left.link(VPath::parse("a"), 7), PlacementError);
    // Different directory of the same tree: still refused.
    CHECK_THROWS_AS(left.link(VPath::parse("b"), 7), PlacementError);
    CHECK_THROWS_AS(left.link(VPath{}, 7), PlacementError);
    // Another tree holds its own placement.
    right.link(VPath::parse("c"), 7);
    CHECK(right.contains_file(7));

    // Unlink frees the file for a new placement in this tree.
    left.unlink(VPath::parse("a"), 7);
    CHECK_FALSE(left.contains_file(7));
    left.link(VPath::parse("b"), 7);
    CHECK(left.flatten() == std::vector<FileId>{7});

    CHECK_THROWS_AS(left.unlink(VPath::parse("a"), 7), NotFoundError);
    CHECK_THROWS_AS(left.unlink(VPath::parse("нет"), 7), NotFoundError);
}

TEST_CASE("file references stay ascending within a directory") {
    VTree tree("t");
    tree.mkdir(VPath{}, "d");
    const VPath d = VPath::parse("d");
    for (FileId id : {5, 1, 9, 3}) {
        tree.link(d, id);
    }
    CHECK(tree.resolve(d).file_refs == std::vector<FileId>{1, 3, 5, 9});
}

TEST_CASE("rmdir removes only empty non-root directories") {
    VTree tree("t");
    tree.mkdir(VPath{}, "a");
    tree.mkdir(VPath::parse("a"), "b");
    tree.link(VPath::parse("a/b"), 1);

    CHECK_THROWS_AS(tree.rmdir(VPath{}), ValueError);
    CHECK_THROWS_AS(tree.rmdir(VPath::parse("a")), InUseError);
    CHECK_THROWS_AS(tree.rmdir(VPath::parse("a/b")), InUseError);
    CHECK_THROWS_AS(tree.rmdir(VPath::parse("нет")), NotFoundError);

    tree.unlink(VPath::parse("a/b"), 1);
    tree.rmdir(VPath::parse("a/b"));
    tree.rmdir(VPath::parse("a"));
    CHECK(tree.dir_count() == 0);
}

TEST_CASE("move_dir re-parents a subtree") {
    VTree tree("t");
    tree.mkdir(VPath{}, "a");
    tree.mkdir(VPath{}, "b");
    tree.mkdir(VPath::parse("a"), "inner");
    tree.link(VPath::parse("a/inner"), 3);

    tree.move_dir(VPath::parse("a/inner"), VPath::parse("b"));
    CHECK(tree.resolve(VPath::parse("b/inner")).has_ref(3));
    CHECK_THROWS_AS(tree.resolve(VPath::parse("a/inner")), NotFoundError);

    // The placement count is untouched by structure moves.
    CHECK(tree.flatten() == std::vector<FileId>{3});
}

TEST_CASE("move_dir refuses cycles and sibling clashes") {
    VTree tree("t");
    tree.mkdir(VPath{}, "a");
    tree.mkdir(VPath::parse("a"), "b");
    tree.mkdir(VPath{}, "c");
    tree.mkdir(VPath::parse("c"), "b");

    CHECK_THROWS_AS(tree.move_dir(VPath::parse("a"), VPath::parse("a")), ValueError);
    CHECK_THROWS_AS(tree.move_dir(VPath::parse("a"), VPath::parse("a/b")), ValueError);
    CHECK_THROWS_AS(tree.move_dir(VPath{}, VPath::parse("a")), ValueError);
    // "c" already holds a "b".
    CHECK_THROWS_AS(tree.move_dir(VPath::parse("a/b"), VPath::parse("c")), DuplicateError);

    // Moving to the current parent is a no-op.
    tree.move_dir(VPath::parse("a/b"), VPath::parse("a"));
    CHECK(tree.resolve(VPath::parse("a/b")).name == "b");

    // A sibling of the destination named like an ancestor is fine.
    tree.move_dir(VPath::parse("a/b"), VPath{});
    CHECK_THROWS_AS(tree.resolve(VPath::parse("a/b")), NotFoundError);
    CHECK(tree.resolve(VPath::parse("b")).name == "b");
}

TEST_CASE("walk lists directories in preorder") {
    VTree tree("t");
    tree.mkdir(VPath{}, "b");
    tree.mkdir(VPath{}, "a");
    tree.mkdir(VPath::parse("b"), "x");
    tree.link(VPath::parse("b/x"), 2);
    tree.link(VPath{}, 1);

    const auto entries = tree.walk();
    REQUIRE(entries.size() == 4);
    CHECK(entries[0].path.str() == "/");
    CHECK(entries[0].file_refs == std::vector<FileId>{1});
    // Manual siblings keep creation order, not name order.
    CHECK(entries[1].path.str() == "b");
    CHECK(entries[2].path.str() == "b/x");
    CHECK(entries[2].file_refs == std::vector<FileId>{2});
    CHECK(entries[3].path.str() == "a");
    CHECK(tree.flatten() == std::vector<FileId>{1, 2});
}

TEST_CASE("random operation sequences never duplicate a placement") {
    std::mt19937_64 rng(987654);
    for (int round = 0; round < 20; ++round) {
        VTree tree("t");
        std::vector<VPath> dirs = {VPath{}};
        int made = 0;
        for (int op = 0; op < 200; ++op) {
            std::uniform_int_distribution<int> which(0, 3);
            std::uniform_int_distribution<std::size_t> pick_dir(0, dirs.size() - 1);
            std::uniform_int_distribution<FileId> pick_file(1, 15);
            try {
                switch (which(rng)) {
                    case 0: {
                        const VPath parent = dirs[pick_dir(rng)];
                        dirs.push_back(tree.mkdir(parent, "d" + std::to_string(++made)));
                        break;
                    }
                    case 1:
                        tree.link(dirs[pick_dir(rng)], pick_file(rng));
                        break;
                    case 2:
                        tree.unlink(dirs[pick_dir(rng)], pick_file(rng));
                        break;
                    case 3: {
                        // Move a random non-root dir under a random dir; the
                        // path list is rebuilt from the walk afterwards.
                        const VPath from = dirs[pick_dir(rng)];
                        const VPath to = dirs[pick_dir(rng)];
                        if (!from.is_root()) {
                            tree.move_dir(from, to);
                        }
                        break;
                    }
                }
            } catch (const Error&) {
                // Refused operations must leave the tree unchanged; the
                // at-most-once check below covers the aftermath.
            }
            dirs.clear();
            for (const WalkEntry& entry : tree.walk()) {
                dirs.push_back(entry.path);
            }
            std::vector<FileId> flat = tree.flatten();
            std::set<FileId> unique(flat.begin(), flat.end());
            REQUIRE(unique.size() == flat.size());
        }
    }
}
