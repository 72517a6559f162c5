#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "config.hpp"
#include "lexicon.hpp"
#include "rng.hpp"
#include "semantics.hpp"
#include "synthesis.hpp"

namespace loginf {

// One seq2seq pair plus provenance metadata.
struct Example {
  std::string input;
  std::string output;
  ProblemType type = ProblemType::Type1;
  AnswerPosition answer_position = AnswerPosition::Begin;
  std::uint64_t problem_id = 0;
  int premise_count = 0;
  CornerCase corner_case = CornerCase::None;
};

std::string to_string(ProblemType type);
std::string to_string(AnswerPosition position);
std::string to_string(CornerCase corner);
std::optional<ProblemType> problem_type_from_string(const std::string& s);
std::optional<AnswerPosition> answer_position_from_string(const std::string& s);
std::optional<CornerCase> corner_case_from_string(const std::string& s);

// The fixed template strings. The validator strips them when re-parsing
// emitted examples, so they live here rather than inline in the factory.
namespace tmpl {
inline constexpr const char* kType1Prompt =
    "Translate the following inference to logic notation: ";
inline constexpr const char* kType2Prompt =
    "What can be inferred from the following premises in a single inference step "
    "(ignoring inferences that add new predicates or constants)?";
inline constexpr const char* kType2Names = " Name the inference rule being used:";
inline constexpr const char* kType3Prompt = "Consider the following premises. ";
inline constexpr const char* kType3InlineNames =
    " If possible, name the inference rules being used at each step.";
inline constexpr const char* kType3Trailing = "Can we infer the following from them?";
inline constexpr const char* kType3TrailingNames =
    " If we can, name the inference rule being used: ";
inline constexpr const char* kYesBegin = "Yes, via the following inference chain. ";
inline constexpr const char* kNoBegin = "No, we can see why via the following inference chain. ";
inline constexpr const char* kYesEnd = " Therefore, the answer is yes.";
inline constexpr const char* kNoEnd = " Therefore, the answer is no.";
inline constexpr const char* kObvious = "Yes, that is one of the premises.";
inline constexpr const char* kUnrelated = "No, we cannot infer that from the premises.";
inline constexpr const char* kContradictory =
    "Yes, the premises are contradictory, so we can infer anything from them.";
inline constexpr const char* kType2Contradictory =
    "The premises are contradictory, so we can infer anything from them.";
}  // namespace tmpl

// Type-3 query choice: either a target with its chain, or a corner case.
struct Type3Query {
  Formula query;
  const InferenceChain* chain = nullptr;
  CornerCase corner = CornerCase::None;
};

// Explicit knobs for anything make_example would otherwise sample. Golden
// tests pin every choice; the dataset builder leaves them unset.
struct ExampleOptions {
  std::optional<bool> rule_names;
  std::optional<bool> trailing_query;         // type 3 prompt shape
  std::optional<Type3Query> query;            // type 3 query override
  std::optional<std::size_t> type1_target;    // index into problem.inferences
  const LexAssignment* assignment = nullptr;  // fixed NL phrase assignment
};

/// Builds one example of the requested type from a problem variation.
/// Premises are rendered in the order given (the caller shuffles). Returns
/// nullopt when the type cannot be produced (no one-step inferences, or no
/// provable target for type 1).
std::optional<Example> make_example(const InferenceProblem& problem, ProblemType type,
                                    AnswerPosition answer_position, const RuleCatalog& catalog,
                                    const Lexicon& lexicon, const GenerationConfig& config,
                                    Rng& rng, const ExampleOptions& options = {});

/// Converts a type-3 example between answer-at-beginning and answer-at-end
/// phrasings. Corner cases keep their single-sentence outputs. Involution on
/// chain-bearing examples; throws LogicError for type 1/2 input.
Example answer_flip(const Example& example);

}  // namespace loginf
