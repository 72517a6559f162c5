#pragma once

#include <cstdint>
#include <vector>

namespace loginf {

enum class ProblemType { Type1, Type2a, Type2b, Type3a, Type3b };
enum class AnswerPosition { Begin, End };
enum class CornerCase { None, Unrelated, Obvious, ContradictoryPremises };

struct GenerationConfig {
  // Probability of applying 0, 1, 2, 3 or 4 growth steps to a problem.
  std::vector<double> chain_length_distribution{0.425, 0.3, 0.2, 0.05, 0.025};
  int num_problems = 5000;
  int num_variations = 25;
  long num_examples = 200000;
  double contradiction_cap = 0.1;
  double split_ratio = 0.9;          // train fraction for the IID/OOD splits
  int length_threshold = 4;          // premise-count boundary of the length split
  AnswerPosition answer_position = AnswerPosition::Begin;
  // Sampling weights for types 1, 2a, 2b, 3a, 3b. Tuned so that post-dedup
  // proportions land near the reference distribution.
  std::vector<double> type_weights{0.118, 0.245, 0.195, 0.252, 0.19};
  double obvious_probability = 0.05;    // type-3 query drawn verbatim from the premises
  double unrelated_probability = 0.10;  // type-3 query drawn from the unrelated set
  double rule_name_probability = 0.5;   // prompts that ask for rule names
  std::uint64_t seed = 0;
  int max_retries = 20;
  int threads = 0;  // 0 = all available, 1 = serial reference path
};

}  // namespace loginf
