#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "coursegen/corpus.hpp"
#include "helpers.hpp"

using namespace coursegen;
using testutil::TempDir;
using testutil::write_tree;

namespace {

std::vector<RootDesc> roots_of(const TempDir& course) {
    return {{course.path(), RootRole::Course}};
}

std::vector<RootDesc> roots_of(const TempDir& course, const TempDir& lib) {
    return {{course.path(), RootRole::Course}, {lib.path(), RootRole::Library}};
}

}  // namespace

TEST_CASE("single file gets its path as canonical name") {
    TempDir course("corpus");
    write_tree(course.path(), {{"topics/syllabus.md", "---\ntitle: S\n---\nbody\n"}});
    Corpus corpus = load_corpus(roots_of(course));
    REQUIRE(corpus.objects().size() == 1);
    CHECK(corpus.objects()[0].name == "topics/syllabus");
    CHECK(corpus.objects()[0].root_index == 0);
    CHECK(corpus.objects()[0].basename() == "syllabus");
}

TEST_CASE("course plus library load with course at ordinal zero") {
    TempDir course("course");
    TempDir lib("lib");
    write_tree(course.path(), {{"syllabus.md", "$$include :academic_integrity\n"}});
    write_tree(lib.path(), {{"academic_integrity.md", "All work must be your own.\n"}});
    Corpus corpus = load_corpus(roots_of(course, lib));
    REQUIRE(corpus.objects().size() == 2);
    CHECK(corpus.objects()[0].name == "syllabus");
    CHECK(corpus.objects()[0].root_index == 0);
    CHECK(corpus.objects()[1].name == "academic_integrity");
    CHECK(corpus.objects()[1].root_index == 1);

    ResolveResult r = corpus.resolve("academic_integrity");
    REQUIRE(r.status == ResolveStatus::Found);
    CHECK(r.object->root_index == 1);
    CHECK(r.object->doc.body == "All work must be your own.\n");
}

TEST_CASE("path-qualified refs match exactly despite basename collisions") {
    TempDir course("course");
    TempDir lib("lib");
    write_tree(course.path(), {{"topics/syllabus.md", "a\n"}});
    write_tree(lib.path(), {{"other/syllabus.md", "b\n"}});
    Corpus corpus = load_corpus(roots_of(course, lib));

    ResolveResult exact = corpus.resolve("topics/syllabus");
    REQUIRE(exact.status == ResolveStatus::Found);
    CHECK(exact.object->root_index == 0);

    ResolveResult other = corpus.resolve("other/syllabus");
    REQUIRE(other.status == ResolveStatus::Found);
    CHECK(other.object->root_index == 1);

    CHECK(corpus.resolve("syllabus").status == ResolveStatus::Ambiguous);
}

TEST_CASE("bare-name collision is an error listing all candidates") {
    TempDir course("course");
    TempDir lib("lib");
    write_tree(course.path(), {{"intro.md", "course intro\n"}});
    write_tree(lib.path(), {{"intro.md", "library intro\n"}});
    Corpus corpus = load_corpus(roots_of(course, lib));

    ResolveResult r = corpus.resolve("intro");
    CHECK(r.status == ResolveStatus::Ambiguous);
    CHECK(r.object == nullptr);

    // Brute-force scan over every loaded object's basename.
    std::vector<std::string> expected;
    for (const CGLO& obj : corpus.objects()) {
        if (obj.basename() == "intro") expected.push_back(obj.name);
    }
    CHECK(expected.size() == 2);
    std::vector<std::string> got = r.candidates;
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    CHECK(got == expected);
}

TEST_CASE("shadowing picks the earliest root for exact names") {
    TempDir course("course");
    TempDir lib("lib");
    write_tree(course.path(), {{"unit/shared.md", "from course\n"}});
    write_tree(lib.path(), {{"unit/shared.md", "from library\n"}});
    Corpus corpus = load_corpus(roots_of(course, lib));

    CHECK(corpus.objects().size() == 2);
    ResolveResult r = corpus.resolve("unit/shared");
    REQUIRE(r.status == ResolveStatus::Found);
    CHECK(r.object->root_index == 0);
    CHECK(r.object->doc.body == "from course\n");

    // Only the winner is active; the shadowed copy is still loaded.
    auto active = corpus.active_objects();
    REQUIRE(active.size() == 1);
    CHECK(active[0]->root_index == 0);
    CHECK(corpus.find(1, "unit/shared") != nullptr);
    CHECK_FALSE(corpus.is_active(*corpus.find(1, "unit/shared")));

    // A bare ref to the shared basename still collides, per the resolve
    // contract: collisions are never silently resolved.
    CHECK(corpus.resolve("shared").status == ResolveStatus::Ambiguous);
}

TEST_CASE("resolve misses report NotFound") {
    TempDir course("course");
    write_tree(course.path(), {{"a.md", "x\n"}});
    Corpus corpus = load_corpus(roots_of(course));
    CHECK(corpus.resolve("nope").status == ResolveStatus::NotFound);
    CHECK(corpus.resolve("deep/nope").status == ResolveStatus::NotFound);
}

TEST_CASE("canonical names self-resolve when basenames are unique") {
    TempDir course("course");
    TempDir lib("lib");
    write_tree(course.path(), {{"a.md", "1"}, {"unit/b.md", "2"}, {"unit/deep/c.md", "3"}});
    write_tree(lib.path(), {{"frag/d.md", "4"}, {"e.md", "5"}});
    Corpus corpus = load_corpus(roots_of(course, lib));
    for (const CGLO& obj : corpus.objects()) {
        ResolveResult r = corpus.resolve(obj.name);
        REQUIRE(r.status == ResolveStatus::Found);
        CHECK(r.object == &obj);
    }
}

TEST_CASE("iteration order matches an independent walk and sort") {
    TempDir course("course");
    TempDir lib("lib");
    std::map<std::string, std::string> course_files;
    std::map<std::string, std::string> lib_files;
    testutil::Rng rng(99);
    for (int i = 0; i < 40; ++i) {
        std::string dir = rng.chance(0.5) ? rng.identifier(3, 6) + "/" : "";
        std::string name = dir + rng.identifier(3, 10) + ".md";
        (rng.chance(0.5) ? course_files : lib_files)[name] = "body\n";
    }
    write_tree(course.path(), course_files);
    write_tree(lib.path(), lib_files);

    Corpus first = load_corpus(roots_of(course, lib));
    Corpus second = load_corpus(roots_of(course, lib));
    CHECK(first.list_names() == second.list_names());

    // Independent expectation from the fixture maps themselves.
    std::vector<std::string> expected;
    for (const auto& [rel, body] : course_files) {
        expected.push_back(rel.substr(0, rel.size() - 3));
    }
    std::size_t course_count = expected.size();
    std::sort(expected.begin(), expected.begin() + course_count);
    for (const auto& [rel, body] : lib_files) {
        expected.push_back(rel.substr(0, rel.size() - 3));
    }
    std::sort(expected.begin() + course_count, expected.end());
    CHECK(first.list_names() == expected);
}

TEST_CASE("hidden files and directories are skipped") {
    TempDir course("course");
    write_tree(course.path(), {{"a.md", "x"},
                               {".hidden.md", "x"},
                               {".git/blob.md", "x"},
                               {"unit/.draft.md", "x"}});
    Corpus corpus = load_corpus(roots_of(course));
    CHECK(corpus.list_names() == std::vector<std::string>{"a"});
}

TEST_CASE("non-md files are recorded as assets") {
    TempDir course("course");
    write_tree(course.path(), {{"a.md", "x"}, {"img/logo.png", "PNGBYTES"}, {"style.css", "b{}"}});
    Corpus corpus = load_corpus(roots_of(course));
    REQUIRE(corpus.assets().size() == 2);
    std::set<std::string> rels;
    for (const AssetFile& a : corpus.assets()) rels.insert(a.rel_path);
    CHECK(rels == std::set<std::string>{"img/logo.png", "style.css"});
}

TEST_CASE("parse problems surface as corpus diagnostics") {
    TempDir course("course");
    write_tree(course.path(), {{"bad.md", "---\nno closing fence"}, {"ok.md", "fine\n"}});

    Corpus lenient = load_corpus(roots_of(course));
    CHECK(lenient.objects().size() == 2);
    REQUIRE(lenient.diagnostics().size() == 1);
    CHECK(lenient.diagnostics()[0].code == DiagCode::UnterminatedHeader);
    CHECK(lenient.diagnostics()[0].file.find("bad.md") != std::string::npos);

    CHECK_THROWS_AS(load_corpus(roots_of(course), true), corpus_error);
}

TEST_CASE("missing root throws") {
    std::vector<RootDesc> roots = {{"/nonexistent/coursegen-root", RootRole::Course}};
    CHECK_THROWS_AS(load_corpus(roots), corpus_error);
}

TEST_CASE("display_path points at the source file") {
    TempDir course("course");
    write_tree(course.path(), {{"unit/a.md", "x"}});
    Corpus corpus = load_corpus(roots_of(course));
    std::string p = corpus.display_path(corpus.objects()[0]);
    CHECK(p.find("unit/a.md") != std::string::npos);
    CHECK(p == corpus.objects()[0].doc.origin);
}
