// Acceptance gate: one line per criterion, PASS or FAIL with detail, nonzero
// exit when anything fails. Each criterion is self-contained and uses its own
// scratch catalog.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "vfield/catalog.hpp"
#include "vfield/errors.hpp"
#include "vfield/persistence.hpp"
#include "vfield/sha256.hpp"
#include "vfield/tree_export.hpp"
#include "test_support.hpp"

using namespace vfield;
using test_support::TempDir;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
}

struct Check {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) {
            ok = false;
            detail = why;
        }
    }
    void expect(bool condition, const std::string& why) {
        if (!condition) {
            fail(why);
        }
    }
};

// 1. Dedup law: 1,000 adds over 300 distinct contents, < 5 s.
void criterion_dedup(Check& check) {
    const auto start = Clock::now();
    TempDir dir;
    Catalog catalog = Catalog::init(dir.path());
    std::mt19937_64 rng(1001);

    std::vector<std::string> contents;
    for (int i = 0; i < 300; ++i) {
        contents.push_back("содержимое №" + std::to_string(i) + "/" +
                           test_support::random_content(rng, 24));
    }
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < 300; ++i) {
        order.push_back(i);
    }
    std::uniform_int_distribution<std::size_t> pick(0, 299);
    for (int i = 0; i < 700; ++i) {
        order.push_back(pick(rng));
    }
    std::shuffle(order.begin(), order.end(), rng);

    std::map<std::size_t, FileId> first_id;
    for (std::size_t index : order) {
        const auto [id, duplicate] = catalog.add_file(contents[index], "f.bin");
        const auto it = first_id.find(index);
        if (it == first_id.end()) {
            check.expect(!duplicate, "first add of a content reported dup");
            first_id.emplace(index, id);
        } else {
            check.expect(duplicate, "repeat add not reported as dup");
            check.expect(id == it->second, "duplicate add returned a different id");
        }
    }
    check.expect(catalog.list_files().size() == 300,
                 "entry count " + std::to_string(catalog.list_files().size()) + ", expected 300");
    const double elapsed = seconds_since(start);
    check.expect(elapsed < 5.0, "took " + fmt_seconds(elapsed) + ", limit 5s");
}

// 2. Seven files, one manual and one auto tree over the same ids; mutating
// one tree leaves the other byte-identical in the saved catalog.
void criterion_two_trees(Check& check) {
    TempDir dir;
    Catalog catalog = Catalog::init(dir.path());
    catalog.create_section("поле");
    Section& section = catalog.section("поле");
    section.define_attribute("тип");
    for (int i = 1; i <= 7; ++i) {
        const auto [id, duplicate] = catalog.add_file("файл " + std::to_string(i), "f.txt");
        check.expect(!duplicate, "seven files must be distinct");
        catalog.assign_file("поле", id);
        section.set_value(id, "тип", i % 2 == 0 ? "чётный" : "нечётный");
    }

    VTree& manual = section.create_tree("ручное");
    manual.mkdir(VPath{}, "верх");
    section.link("ручное", VPath::parse("верх"), 1);
    section.link("ручное", VPath{}, 2);
    section.build_auto("авто", {"тип"});

    const auto flat_ok = [&](const VTree& tree) {
        std::vector<FileId> flat = tree.flatten();
        std::set<FileId> unique(flat.begin(), flat.end());
        return unique.size() == flat.size() && flat.size() <= 7;
    };
    check.expect(flat_ok(section.tree("ручное")), "manual tree flatten exceeds 7 unique ids");
    check.expect(flat_ok(section.tree("авто")), "auto tree flatten exceeds 7 unique ids");

    const auto tree_bytes = [&](const char* name) {
        const nlohmann::json doc = catalog_to_document(catalog);
        for (const auto& tree : doc["sections"][0]["trees"]) {
            if (tree["name"] == name) {
                return canonical_dump(tree);
            }
        }
        return std::string();
    };

    const std::string auto_before = tree_bytes("авто");
    section.link("ручное", VPath::parse("верх"), 3);
    section.tree("ручное").mkdir(VPath{}, "ещё");
    catalog.save();
    check.expect(tree_bytes("авто") == auto_before,
                 "mutating the manual tree changed the auto tree bytes");

    const std::string manual_after = tree_bytes("ручное");
    section.tree("авто").mkdir(VPath{}, "вручную в авто");
    catalog.save();
    check.expect(tree_bytes("ручное") == manual_after,
                 "mutating the auto tree changed the manual tree bytes");
}

// 3. Books: both column orders attach the same leaves; level-1 labels are the
// distinct years resp. authors.
void criterion_books(Check& check) {
    TempDir dir;
    Catalog catalog = Catalog::init(dir.path());
    catalog.create_section("книги");
    Section& section = catalog.section("книги");
    section.define_attribute("год издания");
    section.define_attribute("автор");

    const std::vector<std::pair<std::string, std::string>> rows = {
        {"1833", "Пушкин"}, {"1836", "Гоголь"}, {"1842", "Гоголь"},
        {"1842", "Пушкин"}, {"1836", "Лермонтов"},
    };
    std::set<std::string> years;
    std::set<std::string> authors;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto [id, duplicate] = catalog.add_file("книга " + std::to_string(i), "k.txt");
        (void)duplicate;
        catalog.assign_file("книги", id);
        section.set_value(id, "год издания", rows[i].first);
        section.set_value(id, "автор", rows[i].second);
        years.insert(rows[i].first);
        authors.insert(rows[i].second);
    }

    const auto [by_year, ry] = section.build_auto("по годам", {"год издания", "автор"});
    const auto [by_author, ra] = section.build_auto("по авторам", {"автор", "год издания"});
    check.expect(ry.total_levels == 3 && ra.total_levels == 3, "expected 3 levels");

    std::vector<FileId> year_files = by_year->flatten();
    std::vector<FileId> author_files = by_author->flatten();
    std::sort(year_files.begin(), year_files.end());
    std::sort(author_files.begin(), author_files.end());
    check.expect(year_files == author_files, "leaf file sets differ between column orders");
    check.expect(year_files.size() == rows.size(), "not every row attached");

    const auto level1 = [](const VTree& tree) {
        std::set<std::string> labels;
        for (const VDir& child : tree.root().child_dirs) {
            labels.insert(child.name);
        }
        return labels;
    };
    check.expect(level1(*by_year) == years, "level-1 labels are not the distinct years");
    check.expect(level1(*by_author) == authors, "level-1 labels are not the distinct authors");
}

// 4. Depth law: 200 random projections, h+1 levels whenever a row attaches.
void criterion_depth(Check& check) {
    std::mt19937_64 rng(4004);
    int attached_builds = 0;
    for (int round = 0; round < 200; ++round) {
        const std::size_t h = 1 + rng() % 4;
        const std::size_t b = 1 + rng() % 30;
        const AttributeMatrix matrix = test_support::random_matrix(rng, b, h, 0.1);
        const auto [tree, report] = build_tree_from_matrix("t", matrix, MissingPolicy::skip());
        if (report.attached_files > 0) {
            ++attached_builds;
            if (report.total_levels != h + 1 || tree.depth() != h + 1) {
                check.fail("projection with h=" + std::to_string(h) + " built " +
                           std::to_string(tree.depth()) + " levels");
                return;
            }
        }
    }
    check.expect(attached_builds > 150, "too few projections attached rows to be conclusive");
}

// 5. Oracle equivalence: 500 random matrices, both policies, < 30 s.
void criterion_oracle(Check& check) {
    const auto start = Clock::now();
    std::mt19937_64 rng(5005);
    for (int round = 0; round < 500; ++round) {
        const std::size_t h = 1 + rng() % 4;
        const std::size_t b = 1 + rng() % 30;
        const AttributeMatrix matrix = test_support::random_matrix(rng, b, h, 0.1);
        for (const MissingPolicy& policy :
             {MissingPolicy::skip(), MissingPolicy::bucket()}) {
            const auto [tree, report] = build_tree_from_matrix("t", matrix, policy);
            const auto oracle = test_support::oracle_build(matrix, policy);
            if (!test_support::matches_oracle(tree.root(), oracle.root)) {
                check.fail("tree shape diverged from the oracle in round " +
                           std::to_string(round));
                return;
            }
            if (!test_support::siblings_sorted(tree.root())) {
                check.fail("sibling order not lexicographic in round " + std::to_string(round));
                return;
            }
            std::vector<std::pair<FileId, std::string>> skipped;
            for (const BuildSkip& skip : report.skipped) {
                skipped.emplace_back(skip.id, skip.attribute);
            }
            if (skipped != oracle.skipped) {
                check.fail("skip report diverged from the oracle in round " +
                           std::to_string(round));
                return;
            }
        }
    }
    const double elapsed = seconds_since(start);
    check.expect(elapsed < 30.0, "took " + fmt_seconds(elapsed) + ", limit 30s");
}

// 6. Persistence: 100 random catalogs round-trip and re-save byte-identically.
void criterion_persistence(Check& check) {
    std::mt19937_64 rng(6006);
    for (int round = 0; round < 100; ++round) {
        TempDir dir;
        Catalog catalog = test_support::random_catalog(rng, dir.path());
        catalog.save();
        const std::string first = canonical_dump(catalog_to_document(catalog));
        try {
            const Catalog loaded = Catalog::open(dir.path());
            if (!same_model(catalog, loaded)) {
                check.fail("round " + std::to_string(round) + ": loaded model differs");
                return;
            }
            const std::string second = canonical_dump(catalog_to_document(loaded));
            if (first != second) {
                check.fail("round " + std::to_string(round) + ": save∘load∘save not idempotent");
                return;
            }
        } catch (const Error& e) {
            check.fail("round " + std::to_string(round) + ": " + e.what());
            return;
        }
    }
}

// 7. Export fidelity: re-hash equals recorded digests; re-ingest is all dup.
void criterion_export(Check& check) {
    TempDir dir;
    Catalog catalog = Catalog::init(dir.path());
    catalog.create_section("s");
    Section& section = catalog.section("s");
    section.define_attribute("группа");
    section.define_attribute("метка");
    std::mt19937_64 rng(7007);
    for (int i = 0; i < 20; ++i) {
        const auto [id, duplicate] =
            catalog.add_file("экспортируемое содержимое " + std::to_string(i),
                             "файл" + std::to_string(i) + ".dat");
        (void)duplicate;
        catalog.assign_file("s", id);
        section.set_value(id, "группа", test_support::random_label(rng));
        if (i % 5 != 0) {
            section.set_value(id, "метка", test_support::random_label(rng));
        }
    }
    section.build_auto("авто", {"группа", "метка"}, nullptr, MissingPolicy::bucket());

    const fs::path target = dir.path() / "вынос";
    const ExportStats stats =
        export_tree(section.tree("авто"), catalog.field(), catalog.blobs(), target);
    check.expect(stats.files == 20, "expected 20 exported files, saw " +
                                        std::to_string(stats.files));

    std::multiset<std::string> exported;
    std::size_t seen = 0;
    for (const auto& entry : fs::recursive_directory_iterator(target)) {
        if (!entry.is_regular_file()) {
            continue;
        }
        ++seen;
        std::ifstream in(entry.path(), std::ios::binary);
        const std::string bytes((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
        exported.insert(sha256_hex(bytes));
        const auto [id, duplicate] = catalog.add_file(bytes, "again.dat");
        (void)id;
        if (!duplicate) {
            check.fail("re-ingesting an exported file was not a duplicate");
            return;
        }
    }
    check.expect(seen == 20, "exported file count on disk is " + std::to_string(seen));

    std::multiset<std::string> recorded;
    for (const FileEntry& entry : catalog.list_files()) {
        recorded.insert(entry.digest);
    }
    check.expect(exported == recorded, "re-hashed digests differ from recorded digests");
}

// 8. At-most-once under arbitrary manual operation sequences.
void criterion_at_most_once(Check& check) {
    std::mt19937_64 rng(8008);
    for (int round = 0; round < 60; ++round) {
        VTree tree("t");
        std::vector<VPath> dirs = {VPath{}};
        int made = 0;
        for (int op = 0; op < 200; ++op) {
            std::uniform_int_distribution<std::size_t> pick_dir(0, dirs.size() - 1);
            std::uniform_int_distribution<FileId> pick_file(1, 12);
            std::uniform_int_distribution<int> which(0, 4);
            try {
                switch (which(rng)) {
                    case 0:
                        dirs.push_back(
                            tree.mkdir(dirs[pick_dir(rng)], "д" + std::to_string(++made)));
                        break;
                    case 1:
                    case 2:
                        tree.link(dirs[pick_dir(rng)], pick_file(rng));
                        break;
                    case 3:
                        tree.unlink(dirs[pick_dir(rng)], pick_file(rng));
                        break;
                    case 4: {
                        const VPath from = dirs[pick_dir(rng)];
                        if (!from.is_root()) {
                            tree.move_dir(from, dirs[pick_dir(rng)]);
                        }
                        break;
                    }
                }
            } catch (const Error&) {
                // Refusals are part of the contract under test.
            }
            dirs.clear();
            for (const WalkEntry& entry : tree.walk()) {
                dirs.push_back(entry.path);
            }
            std::vector<FileId> flat = tree.flatten();
            std::set<FileId> unique(flat.begin(), flat.end());
            if (unique.size() != flat.size()) {
                check.fail("round " + std::to_string(round) + " op " + std::to_string(op) +
                           ": a file id appears twice in one tree");
                return;
            }
        }
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
        {"dedup law (1000 adds over 300 contents, <5s)", criterion_dedup},
        {"two trees over seven files stay independent", criterion_two_trees},
        {"books build level-1 labels per column order", criterion_books},
        {"depth law (200 projections, h+1 levels)", criterion_depth},
        {"oracle equivalence (500 matrices, both policies, <30s)", criterion_oracle},
        {"persistence round-trip (100 random catalogs)", criterion_persistence},
        {"export fidelity (digests and re-ingest dedup)", criterion_export},
        {"at-most-once under manual operation sequences", criterion_at_most_once},
    };

    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Check check;
        try {
            run(check);
        } catch (const std::exception& e) {
            check.fail(std::string("unexpected exception: ") + e.what());
        }
        if (check.ok) {
            std::cout << "PASS: " << name << "\n";
        } else {
            std::cout << "FAIL: " << name << " (" << check.detail << ")\n";
            ++failures;
        }
    }
    if (failures > 0) {
        std::cout << failures << " of " << criteria.size() << " criteria failed\n";
        return 1;
    }
    std::cout << "all " << criteria.size() << " criteria passed\n";
    return 0;
}
