#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "dataset.hpp"
#include "examples.hpp"
#include "lexicon.hpp"
#include "rules.hpp"

using namespace loginf;

namespace {

GenerationConfig desk_config(std::uint64_t seed) {
  GenerationConfig config;
  config.seed = seed;
  config.num_problems = 150;
  config.num_variations = 8;
  config.num_examples = 3000;
  return config;
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/loginf_test_") + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("iid split invariants") {
  auto result = build_dataset(RuleCatalog::builtin(), Lexicon::builtin(), desk_config(1),
                              SplitKind::Iid);
  CHECK(result.split.train.size() + result.split.test.size() > 2000);
  SplitCheck check = check_split_invariants(result.split, desk_config(1));
  CAPTURE(check.reason);
  CHECK(check.ok);
  CHECK(result.stats.emitted_examples <= result.stats.requested_examples);
}

TEST_CASE("ood split keeps problem ids disjoint") {
  auto config = desk_config(2);
  auto result = build_dataset(RuleCatalog::builtin(), Lexicon::builtin(), config, SplitKind::Ood);
  SplitCheck check = check_split_invariants(result.split, config);
  CAPTURE(check.reason);
  CHECK(check.ok);
  std::set<std::uint64_t> train_ids, test_ids;
  for (const auto& e : result.split.train) train_ids.insert(e.problem_id);
  for (const auto& e : result.split.test) test_ids.insert(e.problem_id);
  CHECK(!train_ids.empty());
  CHECK(!test_ids.empty());
  for (auto id : test_ids) CHECK(!train_ids.count(id));
}

TEST_CASE("length split boundary is exact") {
  auto config = desk_config(3);
  auto result =
      build_dataset(RuleCatalog::builtin(), Lexicon::builtin(), config, SplitKind::Length);
  SplitCheck check = check_split_invariants(result.split, config);
  CAPTURE(check.reason);
  CHECK(check.ok);
  for (const auto& e : result.split.train) CHECK(e.premise_count <= config.length_threshold);
  for (const auto& e : result.split.test) CHECK(e.premise_count > config.length_threshold);
}

TEST_CASE("broken splits are rejected") {
  auto config = desk_config(4);
  auto result = build_dataset(RuleCatalog::builtin(), Lexicon::builtin(), config, SplitKind::Iid);
  auto broken = result.split;
  broken.test.push_back(broken.train.front());
  CHECK(!check_split_invariants(broken, config).ok);

  auto skewed = result.split;
  skewed.test.insert(skewed.test.end(), skewed.train.begin(), skewed.train.begin() + 200);
  skewed.train.erase(skewed.train.begin(), skewed.train.begin() + 200);
  CHECK(!check_split_invariants(skewed, config).ok);
}

TEST_CASE("jsonl round-trips byte-identically") {
  auto config = desk_config(5);
  config.num_examples = 400;
  auto result = build_dataset(RuleCatalog::builtin(), Lexicon::builtin(), config, SplitKind::Iid);
  std::string path = temp_path("roundtrip.jsonl");
  write_jsonl(result.split.train, path);
  auto loaded = read_jsonl(path);
  REQUIRE(loaded.size() == result.split.train.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    CHECK(loaded[i].input == result.split.train[i].input);
    CHECK(loaded[i].output == result.split.train[i].output);
    CHECK(loaded[i].type == result.split.train[i].type);
    CHECK(loaded[i].problem_id == result.split.train[i].problem_id);
    CHECK(loaded[i].premise_count == result.split.train[i].premise_count);
    CHECK(loaded[i].corner_case == result.split.train[i].corner_case);
  }
  std::string copy = temp_path("roundtrip2.jsonl");
  write_jsonl(loaded, copy);
  CHECK(slurp(path) == slurp(copy));
  std::remove(path.c_str());
  std::remove(copy.c_str());
}

TEST_CASE("tsv has one line per example and escapes control characters") {
  std::vector<Example> examples(2);
  examples[0].input = "plain input";
  examples[0].output = "plain output";
  examples[1].input = "has\ttab and\nnewline";
  examples[1].output = "back\\slash";
  std::string path = temp_path("escape.tsv");
  write_tsv(examples, path);
  std::string text = slurp(path);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.find("has\\ttab and\\nnewline\tback\\\\slash") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("problem cache round-trips") {
  GenerationConfig config = desk_config(6);
  config.num_problems = 40;
  auto problems = generate_problems(RuleCatalog::builtin(), config);
  std::string path = temp_path("problems.jsonl");
  write_problems_jsonl(problems, path);
  auto loaded = read_problems_jsonl(path);
  REQUIRE(loaded.size() == problems.size());
  for (std::size_t i = 0; i < problems.size(); ++i)
    CHECK(canonical_problem_string(loaded[i]) == canonical_problem_string(problems[i]));
  std::remove(path.c_str());
}

TEST_CASE("same seed gives byte-identical files, any thread count") {
  auto config = desk_config(7);
  config.num_examples = 1500;
  config.threads = 1;
  auto serial = build_dataset(RuleCatalog::builtin(), Lexicon::builtin(), config, SplitKind::Iid);
  config.threads = 0;
  auto parallel =
      build_dataset(RuleCatalog::builtin(), Lexicon::builtin(), config, SplitKind::Iid);

  std::string a = temp_path("det_a.jsonl"), b = temp_path("det_b.jsonl");
  write_jsonl(serial.split.train, a);
  write_jsonl(parallel.split.train, b);
  CHECK(slurp(a) == slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());

  auto again = build_dataset(RuleCatalog::builtin(), Lexicon::builtin(), config, SplitKind::Iid);
  REQUIRE(again.split.test.size() == parallel.split.test.size());
  for (std::size_t i = 0; i < again.split.test.size(); ++i)
    CHECK(again.split.test[i].input == parallel.split.test[i].input);
}

TEST_CASE("emitted datasets validate clean; an injected fault is caught") {
  auto config = desk_config(8);
  auto result = build_dataset(RuleCatalog::builtin(), Lexicon::builtin(), config, SplitKind::Iid);
  std::vector<Example> all = result.split.train;
  all.insert(all.end(), result.split.test.begin(), result.split.test.end());

  ValidationReport report = validate_examples(all, RuleCatalog::builtin());
  for (const auto& issue : report.issues) {
    CAPTURE(issue.index);
    CAPTURE(issue.reason);
    CAPTURE(all[issue.index].input);
    CAPTURE(all[issue.index].output);
  }
  CHECK(report.ok());
  CHECK(report.checked == all.size());

  // Flip one answer; exactly one new failure must surface.
  std::size_t victim = all.size();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].type == ProblemType::Type3a && all[i].output.rfind("Yes, via", 0) == 0) {
      victim = i;
      break;
    }
  }
  REQUIRE(victim < all.size());
  all[victim].output.replace(0, 3, "No,");
  all[victim].output.insert(3, " we can see why via the following inference chain.");
  // Rebuild the exact begin-form "No" prefix.
  all[victim].output = std::string(tmpl::kNoBegin) +
                       all[victim].output.substr(std::string(tmpl::kNoBegin).size());
  ValidationReport tainted = validate_examples(all, RuleCatalog::builtin());
  std::size_t failures = 0;
  for (const auto& [type, n] : tainted.failed) failures += n;
  CHECK(failures == 1);
}

TEST_CASE("stats report counts are consistent with the split") {
  auto config = desk_config(9);
  auto result = build_dataset(RuleCatalog::builtin(), Lexicon::builtin(), config, SplitKind::Iid);
  const StatsReport& stats = result.stats;
  std::size_t total = 0;
  for (const auto& [type, count] : stats.per_type) total += count;
  CHECK(total == result.split.train.size() + result.split.test.size());
  CHECK(stats.train_size == result.split.train.size());
  CHECK(stats.test_size == result.split.test.size());
  CHECK(stats.problem_count > 0);
  CHECK(stats.variation_count > 0);
  CHECK(stats.input_tokens.max >= stats.input_tokens.min);
  CHECK(render_stats(stats).find("per type") != std::string::npos);

  DatasetSplit empty;
  StatsReport zero = report_stats(empty);
  CHECK(zero.train_size == 0);
  CHECK(zero.input_chars.max == 0);
}

TEST_CASE("read_jsonl reports the offending line") {
  std::string path = temp_path("broken.jsonl");
  {
    std::ofstream out(path);
    out << R"({"input":"a","output":"b","type":"1","answer_position":"begin",)"
        << R"("problem_id":0,"premise_count":1,"corner_case":"none"})" << "\n";
    out << "not json\n";
  }
  try {
    read_jsonl(path);
    FAIL("expected a parse error");
  } catch (const LogicError& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  std::remove(path.c_str());
}
