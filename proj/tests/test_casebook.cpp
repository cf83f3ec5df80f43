#include "doctest.h"

#include "rotkit/casebook.hpp"
#include "rotkit/error.hpp"
#include "rotkit/text_io.hpp"
#include "support/oracles.hpp"

#include <filesystem>

using namespace rotkit;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rotkit_test_casebook_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const VerificationReport::Entry* find_entry(const VerificationReport& rep, const std::string& check) {
  for (const auto& e : rep.entries())
    if (e.check == check) return &e;
  return nullptr;
}

}  // namespace

TEST_CASE("builtin cases know their expected derivations") {
  const auto k18 = builtin_case("k18", ROTKIT_DATA_DIR);
  CHECK(k18.target_n == 18);
  CHECK(k18.derived_missing.size() == 9);
  CHECK(builtin_case("k20", ROTKIT_DATA_DIR).derived_missing.size() == 21);
  CHECK(builtin_case("k23", ROTKIT_DATA_DIR).derived_genus == 30);
  CHECK_THROWS_AS(builtin_case("k19", ROTKIT_DATA_DIR), Error);
}

TEST_CASE("case k23 replays to a verified K23 and writes its files") {
  const auto dir = scratch("k23");
  const auto run = run_case(builtin_case("k23", ROTKIT_DATA_DIR), dir.string());
  CHECK_MESSAGE(run.report.passed(), run.report.to_text());
  CHECK_FALSE(run.searched);
  for (const char* f : {"k23.derived.rot", "k23.final.rot", "k23.ops", "k23.report.txt", "k23.report.json"})
    CHECK(fs::exists(dir / f));
  const auto fin = parse_rotation_system(read_file((dir / "k23.final.rot").string()));
  CHECK(oracle::genus(fin) == 32);
  CHECK(oracle::missing(oracle::rot_of(fin)).empty());
  CHECK(verify_file((dir / "k23.final.rot").string(), 23).passed());
  CHECK(write_script(parse_script(read_file((dir / "k23.ops").string()))) ==
        write_script(parse_script(read_file(std::string(ROTKIT_DATA_DIR) + "/k23.ops"))));
}

TEST_CASE("running a case twice writes identical files") {
  const auto a = scratch("idem_a"), b = scratch("idem_b");
  run_case(builtin_case("k23", ROTKIT_DATA_DIR), a.string());
  run_case(builtin_case("k23", ROTKIT_DATA_DIR), b.string());
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename();
    CAPTURE(name.string());
    REQUIRE(fs::exists(b / name));
    CHECK(read_file(entry.path().string()) == read_file((b / name).string()));
  }
}

TEST_CASE("case k18 reports the edge the stored script does not reach") {
  const auto run = run_case(builtin_case("k18", ROTKIT_DATA_DIR));
  CHECK_FALSE(run.report.passed());
  REQUIRE(run.completion);
  CHECK(oracle::genus(run.completion->rotation_system) == 18);
  const auto missing = oracle::missing(oracle::rot_of(run.completion->rotation_system));
  REQUIRE(missing.size() == 1);
  const auto [u, v] = *missing.begin();
  const auto& r = run.completion->rotation_system;
  CHECK(make_label_pair(r.label(u), r.label(v)) == LabelPair{"8", "17"});
  const auto* f = run.report.first_failure();
  REQUIRE(f);
  CHECK(f->check.rfind("final: ", 0) == 0);
  CHECK(f->witness.find("8") != std::string::npos);
}

TEST_CASE("a case without a stored script searches and honours the time limit") {
  const auto dir = scratch("k20data");
  for (const char* f : {"k20.logs", "k20.spec"}) fs::copy_file(fs::path(ROTKIT_DATA_DIR) / f, dir / f);
  std::string spec = read_file((dir / "k20.spec").string());
  spec.replace(spec.find("max_seconds = 60"), 16, "max_seconds = 1");
  write_file((dir / "k20.spec").string(), spec);
  const auto run = run_case(builtin_case("k20", dir.string()));
  CHECK(run.searched);
  const auto* e = find_entry(run.report, "completion search");
  REQUIRE(e);
  CHECK_FALSE(e->passed);
  CHECK(e->witness.find("time limit reached") != std::string::npos);
}

TEST_CASE("a broken bundle stops the case at derivation") {
  const auto dir = scratch("broken");
  std::string logs = read_file(std::string(ROTKIT_DATA_DIR) + "/k18.logs");
  logs.replace(logs.find(" 1 "), 3, " 2 ");
  write_file((dir / "k18.logs").string(), logs);
  const auto run = run_case(builtin_case("k18", dir.string()));
  CHECK_FALSE(run.report.passed());
  CHECK_FALSE(run.completion);
  REQUIRE(run.report.first_failure());
}
