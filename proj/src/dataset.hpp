#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "examples.hpp"
#include "lexicon.hpp"
#include "rules.hpp"
#include "synthesis.hpp"

namespace loginf {

enum class SplitKind { Iid, Ood, Length };

std::string to_string(SplitKind kind);
std::optional<SplitKind> split_from_string(const std::string& s);

struct DatasetSplit {
  SplitKind kind = SplitKind::Iid;
  std::vector<Example> train;
  std::vector<Example> test;
};

struct LengthStats {
  long min = 0, median = 0, p90 = 0, max = 0;
};

struct StatsReport {
  std::size_t problem_count = 0;
  std::size_t contradictory_count = 0;
  std::vector<std::size_t> depth_histogram;         // growth steps per problem
  std::vector<std::size_t> chain_length_histogram;  // steps per chain (I and C)
  std::size_t variation_count = 0;
  std::map<std::string, std::size_t> per_type;      // example counts by type
  std::map<std::string, std::size_t> per_corner;    // corner-case counts
  LengthStats input_chars, output_chars, input_tokens, output_tokens;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  long requested_examples = 0;
  long emitted_examples = 0;
  std::string warning;  // set when fewer examples than requested survive dedup
};

struct BuildResult {
  DatasetSplit split;
  StatsReport stats;
  std::vector<InferenceProblem> problems;  // kept for optional caching
};

/// End-to-end build: problems -> renaming variations -> example sampling ->
/// global deduplication -> the requested split. Deterministic in
/// (seed, config, split) for any thread count.
BuildResult build_dataset(const RuleCatalog& catalog, const Lexicon& lexicon,
                          const GenerationConfig& config, SplitKind kind);

/// Example-level statistics of an already-built split (type counts, length
/// distributions, sizes). The builder adds the problem-level fields on top.
StatsReport report_stats(const DatasetSplit& split);

std::string render_stats(const StatsReport& stats);

// --- serialization ---------------------------------------------------------

/// Two tab-separated columns (input, output); tabs, newlines and backslashes
/// inside the text are escaped.
void write_tsv(const std::vector<Example>& examples, const std::string& path);

/// One JSON object per line: input, output, type, answer_position,
/// problem_id, premise_count, corner_case.
void write_jsonl(const std::vector<Example>& examples, const std::string& path);

/// Reads write_jsonl output. Throws LogicError with the line number on a
/// record that does not parse.
std::vector<Example> read_jsonl(const std::string& path);

/// Problem cache between pipeline stages, one JSON object per line.
void write_problems_jsonl(const std::vector<InferenceProblem>& problems,
                          const std::string& path);
std::vector<InferenceProblem> read_problems_jsonl(const std::string& path);

// --- validation -------------------------------------------------------------

struct ValidationIssue {
  std::size_t index = 0;  // zero-based example index in the file
  std::string reason;
};

struct ValidationReport {
  std::map<std::string, std::size_t> passed;  // by type
  std::map<std::string, std::size_t> failed;
  std::vector<ValidationIssue> issues;  // first issues, capped
  std::size_t checked = 0;
  bool ok() const;
};

/// Semantic re-validation of emitted examples. Notation examples (2a, 3a)
/// are re-parsed and checked against the one-step closure, chain verifier
/// and entailment oracle; natural-language examples get template-level
/// checks (there is deliberately no NL-to-logic parser).
ValidationReport validate_examples(const std::vector<Example>& examples,
                                   const RuleCatalog& catalog, int threads = 0);

struct SplitCheck {
  bool ok = true;
  std::string reason;
};

/// The split invariants: IID ratio within 0.5%, OOD problem_id disjointness,
/// length boundary at the threshold, and no duplicate (input, output) pairs.
SplitCheck check_split_invariants(const DatasetSplit& split, const GenerationConfig& config);

std::string render_validation(const ValidationReport& report);

}  // namespace loginf
