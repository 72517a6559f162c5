#include "examples.hpp"

#include <algorithm>
#include <functional>

#include "rules.hpp"

namespace loginf {

std::string to_string(ProblemType type) {
  switch (type) {
    case ProblemType::Type1: return "1";
    case ProblemType::Type2a: return "2a";
    case ProblemType::Type2b: return "2b";
    case ProblemType::Type3a: return "3a";
    case ProblemType::Type3b: return "3b";
  }
  return "?";
}

std::string to_string(AnswerPosition position) {
  return position == AnswerPosition::Begin ? "begin" : "end";
}

std::string to_string(CornerCase corner) {
  switch (corner) {
    case CornerCase::None: return "none";
    case CornerCase::Unrelated: return "unrelated";
    case CornerCase::Obvious: return "obvious";
    case CornerCase::ContradictoryPremises: return "contradictory_premises";
  }
  return "?";
}

std::optional<ProblemType> problem_type_from_string(const std::string& s) {
  if (s == "1") return ProblemType::Type1;
  if (s == "2a") return ProblemType::Type2a;
  if (s == "2b") return ProblemType::Type2b;
  if (s == "3a") return ProblemType::Type3a;
  if (s == "3b") return ProblemType::Type3b;
  return std::nullopt;
}

std::optional<AnswerPosition> answer_position_from_string(const std::string& s) {
  if (s == "begin") return AnswerPosition::Begin;
  if (s == "end") return AnswerPosition::End;
  return std::nullopt;
}

std::optional<CornerCase> corner_case_from_string(const std::string& s) {
  if (s == "none") return CornerCase::None;
  if (s == "unrelated") return CornerCase::Unrelated;
  if (s == "obvious") return CornerCase::Obvious;
  if (s == "contradictory_premises") return CornerCase::ContradictoryPremises;
  return std::nullopt;
}

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string capitalized(std::string text) {
  if (!text.empty() && text[0] >= 'a' && text[0] <= 'z')
    text[0] = static_cast<char>(text[0] - 'a' + 'A');
  return text;
}

SymbolInventory chain_inventory(const InferenceChain& chain) {
  SymbolInventory inv = collect_symbols(chain.target);
  for (const auto& step : chain.steps) {
    inv.merge(collect_symbols(step.premises));
    inv.merge(collect_symbols(step.conclusion));
  }
  return inv;
}

// "From A, B we can infer C via rule." sentences; the final step of a
// refutation adds ", which contradicts T".
std::string chain_text(const InferenceChain& chain, bool rule_names,
                       const std::function<std::string(const Formula&)>& render) {
  std::vector<std::string> sentences;
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const ChainStep& step = chain.steps[i];
    bool last = i + 1 == chain.steps.size();
    std::string s = (last && chain.steps.size() > 1) ? "Finally, from " : "From ";
    std::vector<std::string> premise_texts;
    for (const auto& p : step.premises) premise_texts.push_back(render(p));
    s += join(premise_texts, ", ") + " we can infer " + render(step.conclusion);
    if (rule_names) s += " via " + step.rule_name;
    if (last && chain.kind == ChainKind::Refutes)
      s += ", which contradicts " + render(chain.target);
    s += ".";
    sentences.push_back(std::move(s));
  }
  return join(sentences, " ");
}

Type3Query choose_type3_query(const InferenceProblem& problem, const GenerationConfig& config,
                              Rng& rng) {
  Type3Query q;
  if (problem.contradictory) {
    q.corner = CornerCase::ContradictoryPremises;
    if (!problem.unrelated.empty()) {
      q.query = problem.unrelated[static_cast<std::size_t>(rng.below(problem.unrelated.size()))];
    } else if (!problem.contradictions.empty()) {
      q.query = problem.contradictions.front().target;
    } else {
      q.query = problem.inferences.front().target;
    }
    return q;
  }
  double roll = rng.unit();
  if (roll < config.obvious_probability && !problem.premises.empty()) {
    q.corner = CornerCase::Obvious;
    q.query = problem.premises[static_cast<std::size_t>(rng.below(problem.premises.size()))];
    return q;
  }
  if (roll < config.obvious_probability + config.unrelated_probability &&
      !problem.unrelated.empty()) {
    q.corner = CornerCase::Unrelated;
    q.query = problem.unrelated[static_cast<std::size_t>(rng.below(problem.unrelated.size()))];
    return q;
  }
  std::size_t total = problem.inferences.size() + problem.contradictions.size();
  std::size_t k = static_cast<std::size_t>(rng.below(total));
  q.chain = k < problem.inferences.size()
                ? &problem.inferences[k]
                : &problem.contradictions[k - problem.inferences.size()];
  q.query = q.chain->target;
  return q;
}

std::optional<Example> make_type1(const InferenceProblem& problem, const Lexicon& lexicon,
                                  Rng& rng, const ExampleOptions& options, Example ex) {
  if (problem.inferences.empty()) return std::nullopt;
  std::size_t index = options.type1_target
                          ? *options.type1_target
                          : static_cast<std::size_t>(rng.below(problem.inferences.size()));
  if (index >= problem.inferences.size()) return std::nullopt;
  Formula conclusion = problem.inferences[index].target;

  std::vector<Formula> all = problem.premises;
  all.push_back(conclusion);

  LexAssignment local;
  const LexAssignment* assignment = options.assignment;
  if (!assignment) {
    local = assign_lexicon(collect_symbols(all), lexicon, rng);
    assignment = &local;
  }

  std::vector<std::string> sentences;
  for (const auto& p : problem.premises) sentences.push_back(nl_sentence(p, *assignment));
  sentences.push_back("Therefore " +
                      render_nl(conclusion, *assignment, SentenceMode::Declarative) + ".");
  ex.input = std::string(tmpl::kType1Prompt) + join(sentences, " ");

  std::vector<Formula> canonical = canonicalize_type1(all);
  std::vector<std::string> out;
  for (std::size_t i = 0; i + 1 < canonical.size(); ++i)
    out.push_back(render_formula(canonical[i]) + ".");
  out.push_back("Therefore " + render_formula(canonical.back()) + ".");
  ex.output = join(out, " ");
  return ex;
}

std::optional<Example> make_type2(const InferenceProblem& problem, bool natural_language,
                                  const RuleCatalog& catalog, const Lexicon& lexicon,
                                  const GenerationConfig& config, Rng& rng,
                                  const ExampleOptions& options, Example ex) {
  bool rule_names = options.rule_names ? *options.rule_names
                                       : rng.chance(config.rule_name_probability);
  std::vector<OneStepInference> closure;
  if (!problem.contradictory) {
    closure = enumerate_one_step(problem.premises, catalog);
    if (closure.empty()) return std::nullopt;
  }

  LexAssignment local;
  const LexAssignment* assignment = options.assignment;
  if (natural_language && !assignment) {
    std::vector<Formula> all = problem.premises;
    for (const auto& c : closure) all.push_back(c.conclusion);
    local = assign_lexicon(collect_symbols(all), lexicon, rng);
    assignment = &local;
  }
  auto render = [&](const Formula& f) {
    return natural_language ? render_nl(f, *assignment, SentenceMode::Declarative)
                            : render_formula(f);
  };

  std::vector<std::string> premise_sentences;
  for (const auto& p : problem.premises)
    premise_sentences.push_back(natural_language ? nl_sentence(p, *assignment)
                                                 : render_formula(p) + ".");
  ex.input = std::string(tmpl::kType2Prompt) + (rule_names ? tmpl::kType2Names : "") + " " +
             join(premise_sentences, " ");

  if (problem.contradictory) {
    ex.corner_case = CornerCase::ContradictoryPremises;
    ex.output = tmpl::kType2Contradictory;
    return ex;
  }

  std::vector<std::string> out;
  for (const auto& c : closure) {
    // Notation stays lowercase; natural language starts its sentence.
    std::string text = natural_language ? capitalized(render(c.conclusion))
                                        : render(c.conclusion);
    if (rule_names)
      out.push_back(text + " can be inferred via the " + c.rule_name + " rule.");
    else
      out.push_back(text + ".");
  }
  ex.output = join(out, " ");
  return ex;
}

std::optional<Example> make_type3(const InferenceProblem& problem, bool natural_language,
                                  const Lexicon& lexicon, const GenerationConfig& config,
                                  Rng& rng, const ExampleOptions& options, Example ex) {
  if (problem.inferences.empty() && problem.contradictions.empty()) return std::nullopt;
  Type3Query q = options.query ? *options.query : choose_type3_query(problem, config, rng);
  if (q.chain && q.chain->kind == ChainKind::Proves && q.chain->steps.empty())
    q.corner = CornerCase::Obvious;
  ex.corner_case = q.corner;

  bool rule_names = options.rule_names ? *options.rule_names
                                       : rng.chance(config.rule_name_probability);
  bool trailing = options.trailing_query ? *options.trailing_query : rng.chance(0.5);

  LexAssignment local;
  const LexAssignment* assignment = options.assignment;
  if (natural_language && !assignment) {
    std::vector<Formula> all = problem.premises;
    all.push_back(q.query);
    if (q.chain) {
      SymbolInventory inv = collect_symbols(all);
      inv.merge(chain_inventory(*q.chain));
      local = assign_lexicon(inv, lexicon, rng);
    } else {
      local = assign_lexicon(collect_symbols(all), lexicon, rng);
    }
    assignment = &local;
  }
  auto render = [&](const Formula& f) {
    return natural_language ? render_nl(f, *assignment, SentenceMode::Declarative)
                            : render_formula(f);
  };

  std::vector<std::string> premise_sentences;
  for (const auto& p : problem.premises)
    premise_sentences.push_back(natural_language ? nl_sentence(p, *assignment)
                                                 : render_formula(p) + ".");
  std::string question;
  if (trailing) {
    question = tmpl::kType3Trailing;
    // Natural language starts a sentence after the colon; notation stays as is.
    std::string query_sentence =
        natural_language ? nl_sentence(q.query, *assignment) : render_formula(q.query) + ".";
    if (rule_names)
      question += std::string(tmpl::kType3TrailingNames) + query_sentence;
    else
      question += " " + query_sentence;
  } else {
    question = "Can we infer " + render(q.query) + " from them?";
    if (rule_names) question += tmpl::kType3InlineNames;
  }
  ex.input = std::string(tmpl::kType3Prompt) + join(premise_sentences, " ") + " " + question;

  switch (q.corner) {
    case CornerCase::ContradictoryPremises:
      ex.output = tmpl::kContradictory;
      return ex;
    case CornerCase::Obvious:
      ex.output = tmpl::kObvious;
      return ex;
    case CornerCase::Unrelated:
      ex.output = tmpl::kUnrelated;
      return ex;
    case CornerCase::None:
      break;
  }

  std::string chain = chain_text(*q.chain, rule_names, render);
  bool proves = q.chain->kind == ChainKind::Proves;
  if (ex.answer_position == AnswerPosition::Begin)
    ex.output = std::string(proves ? tmpl::kYesBegin : tmpl::kNoBegin) + chain;
  else
    ex.output = chain + (proves ? tmpl::kYesEnd : tmpl::kNoEnd);
  return ex;
}

}  // namespace

std::optional<Example> make_example(const InferenceProblem& problem, ProblemType type,
                                    AnswerPosition answer_position, const RuleCatalog& catalog,
                                    const Lexicon& lexicon, const GenerationConfig& config,
                                    Rng& rng, const ExampleOptions& options) {
  Example ex;
  ex.type = type;
  ex.answer_position = answer_position;
  ex.problem_id = problem.problem_id;
  ex.premise_count = static_cast<int>(problem.premises.size());
  if (problem.premises.empty()) return std::nullopt;

  switch (type) {
    case ProblemType::Type1:
      return make_type1(problem, lexicon, rng, options, std::move(ex));
    case ProblemType::Type2a:
      return make_type2(problem, false, catalog, lexicon, config, rng, options, std::move(ex));
    case ProblemType::Type2b:
      return make_type2(problem, true, catalog, lexicon, config, rng, options, std::move(ex));
    case ProblemType::Type3a:
      return make_type3(problem, false, lexicon, config, rng, options, std::move(ex));
    case ProblemType::Type3b:
      return make_type3(problem, true, lexicon, config, rng, options, std::move(ex));
  }
  return std::nullopt;
}

Example answer_flip(const Example& example) {
  if (example.type != ProblemType::Type3a && example.type != ProblemType::Type3b)
    throw LogicError("answer_flip: only type-3 examples carry an answer position");

  auto starts_with = [](const std::string& s, const std::string& prefix) {
    return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
  };
  auto ends_with = [](const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
  };

  Example out = example;
  out.answer_position = example.answer_position == AnswerPosition::Begin
                            ? AnswerPosition::End
                            : AnswerPosition::Begin;
  if (example.answer_position == AnswerPosition::Begin) {
    if (starts_with(example.output, tmpl::kYesBegin))
      out.output = example.output.substr(std::string(tmpl::kYesBegin).size()) + tmpl::kYesEnd;
    else if (starts_with(example.output, tmpl::kNoBegin))
      out.output = example.output.substr(std::string(tmpl::kNoBegin).size()) + tmpl::kNoEnd;
  } else {
    if (ends_with(example.output, tmpl::kYesEnd))
      out.output = tmpl::kYesBegin +
                   example.output.substr(0, example.output.size() -
                                                std::string(tmpl::kYesEnd).size());
    else if (ends_with(example.output, tmpl::kNoEnd))
      out.output = tmpl::kNoBegin +
                   example.output.substr(0, example.output.size() -
                                                std::string(tmpl::kNoEnd).size());
  }
  return out;
}

}  // namespace loginf
