#include "dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "parallel.hpp"
#include "semantics.hpp"

namespace loginf {

namespace {

constexpr std::uint64_t kVariationStream = 0x76617273;
constexpr std::uint64_t kExampleStream = 0x65786d70;
constexpr std::uint64_t kSplitStream = 0x73706c74;
constexpr std::size_t kBatchSize = 20000;
constexpr std::size_t kMaxIssues = 50;

constexpr ProblemType kTypeOrder[] = {ProblemType::Type1, ProblemType::Type2a,
                                      ProblemType::Type2b, ProblemType::Type3a,
                                      ProblemType::Type3b};

std::string dedup_key(const Example& e) { return e.input + '\x1f' + e.output; }

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string to_string(SplitKind kind) {
  switch (kind) {
    case SplitKind::Iid: return "iid";
    case SplitKind::Ood: return "ood";
    case SplitKind::Length: return "length";
  }
  return "?";
}

std::optional<SplitKind> split_from_string(const std::string& s) {
  if (s == "iid") return SplitKind::Iid;
  if (s == "ood") return SplitKind::Ood;
  if (s == "length") return SplitKind::Length;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Build

namespace {

struct VariationRef {
  std::size_t problem_index;
  std::map<std::string, std::string> renaming;
};

std::string renaming_signature(const SymbolInventory& inventory,
                               const std::map<std::string, std::string>& map) {
  std::string sig;
  auto add = [&sig, &map](const std::vector<std::string>& names) {
    for (const auto& n : names) {
      auto it = map.find(n);
      sig += (it == map.end() ? n : it->second) + "|";
    }
  };
  add(inventory.propositions);
  add(inventory.predicates);
  add(inventory.constants);
  add(inventory.variables);
  return sig;
}

std::vector<VariationRef> sample_variation_refs(const std::vector<InferenceProblem>& problems,
                                                const GenerationConfig& config) {
  std::vector<std::vector<VariationRef>> per_problem(problems.size());
  parallel_for(problems.size(), config.threads, [&](std::size_t i) {
    Rng rng(Rng::derive(config.seed, kVariationStream, i));
    SymbolInventory inventory = problem_symbols(problems[i]);
    std::map<std::string, std::string> identity;
    std::set<std::string> seen{renaming_signature(inventory, identity)};
    const int max_attempts = 2 * config.num_variations + 20;
    for (int attempt = 0;
         attempt < max_attempts &&
         static_cast<int>(per_problem[i].size()) < config.num_variations;
         ++attempt) {
      auto map = sample_renaming(inventory, rng);
      if (seen.insert(renaming_signature(inventory, map)).second)
        per_problem[i].push_back(VariationRef{i, std::move(map)});
    }
    if (per_problem[i].empty()) per_problem[i].push_back(VariationRef{i, identity});
  });
  std::vector<VariationRef> flat;
  for (auto& refs : per_problem)
    for (auto& ref : refs) flat.push_back(std::move(ref));
  return flat;
}

// One sampling stream of `attempts` examples over the given variation pool,
// deduplicated in attempt order against `seen`.
void sample_examples(const std::vector<InferenceProblem>& problems,
                     const std::vector<VariationRef>& refs, long attempts,
                     std::uint64_t stream_tag, const RuleCatalog& catalog,
                     const Lexicon& lexicon, const GenerationConfig& config,
                     std::set<std::string>& seen, std::vector<Example>& out) {
  if (refs.empty() || attempts <= 0) return;
  std::vector<std::optional<Example>> slots(kBatchSize);
  for (long base = 0; base < attempts; base += static_cast<long>(kBatchSize)) {
    std::size_t batch =
        static_cast<std::size_t>(std::min<long>(kBatchSize, attempts - base));
    parallel_for(batch, config.threads, [&](std::size_t offset) {
      slots[offset].reset();
      Rng rng(Rng::derive(config.seed, stream_tag,
                          static_cast<std::uint64_t>(base) + offset));
      const VariationRef& ref = refs[static_cast<std::size_t>(rng.below(refs.size()))];
      InferenceProblem variation = apply_renaming(problems[ref.problem_index], ref.renaming);
      rng.shuffle(variation.premises);
      ProblemType type = kTypeOrder[rng.pick_weighted(config.type_weights)];
      slots[offset] =
          make_example(variation, type, config.answer_position, catalog, lexicon, config, rng);
    });
    for (std::size_t offset = 0; offset < batch; ++offset) {
      if (!slots[offset]) continue;
      if (seen.insert(dedup_key(*slots[offset])).second)
        out.push_back(std::move(*slots[offset]));
    }
  }
}

void fill_problem_stats(const std::vector<InferenceProblem>& problems,
                        std::size_t variation_count, const GenerationConfig& config,
                        StatsReport& stats) {
  stats.problem_count = problems.size();
  stats.variation_count = variation_count;
  stats.depth_histogram.assign(config.chain_length_distribution.size(), 0);
  for (const auto& p : problems) {
    if (p.contradictory) ++stats.contradictory_count;
    if (static_cast<std::size_t>(p.depth) >= stats.depth_histogram.size())
      stats.depth_histogram.resize(static_cast<std::size_t>(p.depth) + 1, 0);
    ++stats.depth_histogram[static_cast<std::size_t>(p.depth)];
    for (const auto* chains : {&p.inferences, &p.contradictions}) {
      for (const auto& chain : *chains) {
        if (chain.steps.size() >= stats.chain_length_histogram.size())
          stats.chain_length_histogram.resize(chain.steps.size() + 1, 0);
        ++stats.chain_length_histogram[chain.steps.size()];
      }
    }
  }
}

}  // namespace

BuildResult build_dataset(const RuleCatalog& catalog, const Lexicon& lexicon,
                          const GenerationConfig& config, SplitKind kind) {
  BuildResult result;
  result.split.kind = kind;
  result.problems = generate_problems(catalog, config);
  const auto& problems = result.problems;
  if (problems.empty()) throw LogicError("build_dataset: no problems generated");

  std::vector<VariationRef> refs = sample_variation_refs(problems, config);

  std::set<std::string> seen;
  std::vector<Example> pool;
  if (kind == SplitKind::Ood) {
    // Split the problem set first, then generate each side separately so a
    // problem's examples land entirely on one side.
    std::vector<std::size_t> order(problems.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng split_rng(Rng::derive(config.seed, kSplitStream, 0));
    split_rng.shuffle(order);
    std::set<std::size_t> train_problems(order.begin(),
                                         order.begin() + static_cast<long>(order.size() / 2));
    std::vector<VariationRef> train_refs, test_refs;
    for (const auto& ref : refs)
      (train_problems.count(ref.problem_index) ? train_refs : test_refs).push_back(ref);
    long train_attempts =
        static_cast<long>(static_cast<double>(config.num_examples) * config.split_ratio + 0.5);
    sample_examples(problems, train_refs, train_attempts, kExampleStream, catalog, lexicon,
                    config, seen, result.split.train);
    sample_examples(problems, test_refs, config.num_examples - train_attempts,
                    kExampleStream + 1, catalog, lexicon, config, seen, result.split.test);
  } else {
    sample_examples(problems, refs, config.num_examples, kExampleStream, catalog, lexicon,
                    config, seen, pool);
    if (kind == SplitKind::Iid) {
      Rng split_rng(Rng::derive(config.seed, kSplitStream, 0));
      split_rng.shuffle(pool);
      std::size_t train_size = static_cast<std::size_t>(
          static_cast<double>(pool.size()) * config.split_ratio + 0.5);
      result.split.train.assign(pool.begin(), pool.begin() + static_cast<long>(train_size));
      result.split.test.assign(pool.begin() + static_cast<long>(train_size), pool.end());
    } else {
      for (auto& e : pool) {
        if (e.premise_count <= config.length_threshold)
          result.split.train.push_back(std::move(e));
        else
          result.split.test.push_back(std::move(e));
      }
    }
  }

  result.stats = report_stats(result.split);
  fill_problem_stats(problems, refs.size(), config, result.stats);
  result.stats.requested_examples = config.num_examples;
  result.stats.emitted_examples =
      static_cast<long>(result.split.train.size() + result.split.test.size());
  if (result.stats.emitted_examples < result.stats.requested_examples)
    result.stats.warning = "emitted " + std::to_string(result.stats.emitted_examples) +
                           " of " + std::to_string(result.stats.requested_examples) +
                           " requested examples (duplicates and unusable draws removed)";
  return result;
}

// ---------------------------------------------------------------------------
// Stats

namespace {

LengthStats length_stats(std::vector<long>& values) {
  LengthStats s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  s.median = values[values.size() / 2];
  s.p90 = values[static_cast<std::size_t>(0.9 * static_cast<double>(values.size() - 1))];
  return s;
}

long token_count(const std::string& text) {
  std::istringstream in(text);
  long n = 0;
  std::string tok;
  while (in >> tok) ++n;
  return n;
}

}  // namespace

StatsReport report_stats(const DatasetSplit& split) {
  StatsReport stats;
  stats.train_size = split.train.size();
  stats.test_size = split.test.size();
  for (const auto* side : {&split.train, &split.test}) {
    for (const auto& e : *side) {
      ++stats.per_type[to_string(e.type)];
      ++stats.per_corner[to_string(e.corner_case)];
    }
  }
  // Length distributions follow the training side.
  std::vector<long> in_chars, out_chars, in_tokens, out_tokens;
  for (const auto& e : split.train) {
    in_chars.push_back(static_cast<long>(e.input.size()));
    out_chars.push_back(static_cast<long>(e.output.size()));
    in_tokens.push_back(token_count(e.input));
    out_tokens.push_back(token_count(e.output));
  }
  stats.input_chars = length_stats(in_chars);
  stats.output_chars = length_stats(out_chars);
  stats.input_tokens = length_stats(in_tokens);
  stats.output_tokens = length_stats(out_tokens);
  stats.emitted_examples = static_cast<long>(stats.train_size + stats.test_size);
  return stats;
}

std::string render_stats(const StatsReport& stats) {
  std::ostringstream out;
  out << "problems: " << stats.problem_count << " (" << stats.contradictory_count
      << " contradictory)\n";
  if (!stats.depth_histogram.empty()) {
    out << "depth histogram:";
    for (std::size_t i = 0; i < stats.depth_histogram.size(); ++i)
      out << " " << i << ":" << stats.depth_histogram[i];
    out << "\n";
  }
  if (!stats.chain_length_histogram.empty()) {
    out << "chain lengths:";
    for (std::size_t i = 0; i < stats.chain_length_histogram.size(); ++i)
      out << " " << i << ":" << stats.chain_length_histogram[i];
    out << "\n";
  }
  if (stats.variation_count) out << "variations: " << stats.variation_count << "\n";
  out << "examples: " << stats.train_size << " train / " << stats.test_size << " test\n";
  out << "per type:";
  for (const auto& [type, count] : stats.per_type) out << " " << type << ":" << count;
  out << "\n";
  out << "corner cases:";
  for (const auto& [corner, count] : stats.per_corner) out << " " << corner << ":" << count;
  out << "\n";
  auto line = [&out](const char* what, const LengthStats& s) {
    out << what << ": " << s.min << " / " << s.median << " / " << s.p90 << " / " << s.max
        << " (min/median/p90/max)\n";
  };
  line("input chars", stats.input_chars);
  line("output chars", stats.output_chars);
  line("input tokens", stats.input_tokens);
  line("output tokens", stats.output_tokens);
  if (!stats.warning.empty()) out << "warning: " << stats.warning << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string tsv_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_tsv(const std::vector<Example>& examples, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LogicError("cannot open " + path + " for writing");
  for (const auto& e : examples)
    out << tsv_escape(e.input) << '\t' << tsv_escape(e.output) << '\n';
  if (!out) throw LogicError("write failed: " + path);
}

void write_jsonl(const std::vector<Example>& examples, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LogicError("cannot open " + path + " for writing");
  for (const auto& e : examples) {
    nlohmann::ordered_json j;
    j["input"] = e.input;
    j["output"] = e.output;
    j["type"] = to_string(e.type);
    j["answer_position"] = to_string(e.answer_position);
    j["problem_id"] = e.problem_id;
    j["premise_count"] = e.premise_count;
    j["corner_case"] = to_string(e.corner_case);
    out << j.dump() << '\n';
  }
  if (!out) throw LogicError("write failed: " + path);
}

std::vector<Example> read_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LogicError("cannot open " + path);
  std::vector<Example> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      Example e;
      e.input = j.at("input").get<std::string>();
      e.output = j.at("output").get<std::string>();
      auto type = problem_type_from_string(j.at("type").get<std::string>());
      auto position = answer_position_from_string(j.at("answer_position").get<std::string>());
      auto corner = corner_case_from_string(j.at("corner_case").get<std::string>());
      if (!type || !position || !corner) throw LogicError("bad enum value");
      e.type = *type;
      e.answer_position = *position;
      e.corner_case = *corner;
      e.problem_id = j.at("problem_id").get<std::uint64_t>();
      e.premise_count = j.at("premise_count").get<int>();
      out.push_back(std::move(e));
    } catch (const std::exception& ex) {
      throw LogicError(path + ":" + std::to_string(line_number) +
                       ": unparseable record: " + ex.what());
    }
  }
  return out;
}

void write_problems_jsonl(const std::vector<InferenceProblem>& problems,
                          const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LogicError("cannot open " + path + " for writing");
  auto chain_json = [](const InferenceChain& chain) {
    nlohmann::ordered_json j;
    j["target"] = render_formula(chain.target);
    j["kind"] = chain.kind == ChainKind::Proves ? "proves" : "refutes";
    j["steps"] = nlohmann::ordered_json::array();
    for (const auto& step : chain.steps) {
      nlohmann::ordered_json s;
      s["premises"] = nlohmann::ordered_json::array();
      for (const auto& p : step.premises) s["premises"].push_back(render_formula(p));
      s["conclusion"] = render_formula(step.conclusion);
      s["rule"] = step.rule_name;
      j["steps"].push_back(std::move(s));
    }
    return j;
  };
  for (const auto& p : problems) {
    nlohmann::ordered_json j;
    j["id"] = p.problem_id;
    j["depth"] = p.depth;
    j["contradictory"] = p.contradictory;
    j["premises"] = nlohmann::ordered_json::array();
    for (const auto& f : p.premises) j["premises"].push_back(render_formula(f));
    j["inferences"] = nlohmann::ordered_json::array();
    for (const auto& c : p.inferences) j["inferences"].push_back(chain_json(c));
    j["contradictions"] = nlohmann::ordered_json::array();
    for (const auto& c : p.contradictions) j["contradictions"].push_back(chain_json(c));
    j["unrelated"] = nlohmann::ordered_json::array();
    for (const auto& f : p.unrelated) j["unrelated"].push_back(render_formula(f));
    out << j.dump() << '\n';
  }
  if (!out) throw LogicError("write failed: " + path);
}

std::vector<InferenceProblem> read_problems_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LogicError("cannot open " + path);
  std::vector<InferenceProblem> out;
  std::string line;
  std::size_t line_number = 0;
  auto chain_from = [](const nlohmann::json& j) {
    InferenceChain chain;
    chain.target = parse_formula(j.at("target").get<std::string>());
    chain.kind = j.at("kind").get<std::string>() == "proves" ? ChainKind::Proves
                                                             : ChainKind::Refutes;
    for (const auto& s : j.at("steps")) {
      ChainStep step;
      for (const auto& p : s.at("premises"))
        step.premises.push_back(parse_formula(p.get<std::string>()));
      step.conclusion = parse_formula(s.at("conclusion").get<std::string>());
      step.rule_name = s.at("rule").get<std::string>();
      chain.steps.push_back(std::move(step));
    }
    return chain;
  };
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      InferenceProblem p;
      p.problem_id = j.at("id").get<std::uint64_t>();
      p.depth = j.at("depth").get<int>();
      p.contradictory = j.at("contradictory").get<bool>();
      for (const auto& f : j.at("premises"))
        p.premises.push_back(parse_formula(f.get<std::string>()));
      for (const auto& c : j.at("inferences")) p.inferences.push_back(chain_from(c));
      for (const auto& c : j.at("contradictions")) p.contradictions.push_back(chain_from(c));
      for (const auto& f : j.at("unrelated"))
        p.unrelated.push_back(parse_formula(f.get<std::string>()));
      out.push_back(std::move(p));
    } catch (const std::exception& ex) {
      throw LogicError(path + ":" + std::to_string(line_number) +
                       ": unparseable problem: " + ex.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::vector<std::string> split_sentences(const std::string& text) {
  // Sentences end with "." and are separated by a single space. Formula
  // notation never contains a period, so ". " is a safe boundary.
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t pos = text.find(". ", start);
    if (pos == std::string::npos) {
      std::string last = text.substr(start);
      if (!last.empty() && last.back() == '.') last.pop_back();
      if (!last.empty()) out.push_back(last);
      break;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 2;
  }
  return out;
}

struct ParsedStep {
  std::vector<std::string> premises;
  std::string conclusion;
  std::string rule;      // empty when the chain carries no rule names
  std::string contradicts;  // only on the final step of a refutation
};

std::optional<ParsedStep> parse_step_sentence(std::string s) {
  ParsedStep step;
  if (starts_with(s, "Finally, from "))
    s = s.substr(14);
  else if (starts_with(s, "From "))
    s = s.substr(5);
  else
    return std::nullopt;
  std::size_t infer = s.find(" we can infer ");
  if (infer == std::string::npos) return std::nullopt;
  std::string premise_part = s.substr(0, infer);
  std::string rest = s.substr(infer + 14);
  std::size_t contra = rest.find(", which contradicts ");
  if (contra != std::string::npos) {
    step.contradicts = rest.substr(contra + 21);
    rest = rest.substr(0, contra);
  }
  std::size_t via = rest.find(" via ");
  if (via != std::string::npos) {
    step.rule = rest.substr(via + 5);
    rest = rest.substr(0, via);
  }
  step.conclusion = rest;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = premise_part.find(", ", start);
    if (comma == std::string::npos) {
      step.premises.push_back(premise_part.substr(start));
      break;
    }
    step.premises.push_back(premise_part.substr(start, comma - start));
    start = comma + 2;
  }
  return step;
}

bool premises_inconsistent(const std::vector<Formula>& premises) {
  for (int d = 1; d <= 3; ++d)
    if (classify(premises, premises.front(), d) != Verdict::PremisesInconsistent) return false;
  return true;
}

std::optional<std::string> check_type1(const Example& e) {
  if (!starts_with(e.input, tmpl::kType1Prompt)) return "missing type-1 prompt";
  auto sentences = split_sentences(e.output);
  if (sentences.size() < 2) return "output too short";
  if (!starts_with(sentences.back(), "Therefore "))
    return "missing 'Therefore' conclusion";
  std::vector<Formula> formulas;
  try {
    for (std::size_t i = 0; i + 1 < sentences.size(); ++i)
      formulas.push_back(parse_formula(sentences[i]));
    formulas.push_back(parse_formula(sentences.back().substr(10)));
  } catch (const ParseError& ex) {
    return std::string("output does not parse: ") + ex.what();
  }
  // Canonical naming: re-canonicalizing must be the identity.
  std::vector<Formula> canonical = canonicalize_type1(formulas);
  for (std::size_t i = 0; i < formulas.size(); ++i)
    if (!(canonical[i] == formulas[i])) return "output names are not canonical";
  auto input_sentences = split_sentences(e.input.substr(std::string(tmpl::kType1Prompt).size()));
  if (input_sentences.size() != formulas.size())
    return "input/output sentence counts differ";
  return std::nullopt;
}

std::optional<std::string> check_type2a(const Example& e, const RuleCatalog& catalog) {
  std::string rest = e.input;
  if (!starts_with(rest, tmpl::kType2Prompt)) return "missing type-2 prompt";
  rest = rest.substr(std::string(tmpl::kType2Prompt).size());
  bool rule_names = starts_with(rest, tmpl::kType2Names);
  if (rule_names) rest = rest.substr(std::string(tmpl::kType2Names).size());
  if (!starts_with(rest, " ")) return "malformed type-2 prompt";
  rest = rest.substr(1);

  std::vector<Formula> premises;
  try {
    for (const auto& s : split_sentences(rest)) premises.push_back(parse_formula(s));
  } catch (const ParseError& ex) {
    return std::string("premises do not parse: ") + ex.what();
  }
  if (premises.empty()) return "no premises";
  if (static_cast<int>(premises.size()) != e.premise_count)
    return "premise_count metadata mismatch";

  std::string expected;
  if (premises_inconsistent(premises)) {
    expected = tmpl::kType2Contradictory;
  } else {
    auto closure = enumerate_one_step(premises, catalog);
    if (closure.empty()) return "no one-step inferences for these premises";
    std::vector<std::string> parts;
    for (const auto& c : closure) {
      if (rule_names)
        parts.push_back(render_formula(c.conclusion) + " can be inferred via the " +
                        c.rule_name + " rule.");
      else
        parts.push_back(render_formula(c.conclusion) + ".");
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) expected += " ";
      expected += parts[i];
    }
  }
  if (e.output != expected) return "output differs from the recomputed one-step closure";
  return std::nullopt;
}

std::optional<std::string> check_type3a(const Example& e, const RuleCatalog& catalog) {
  std::string rest = e.input;
  if (!starts_with(rest, tmpl::kType3Prompt)) return "missing type-3 prompt";
  rest = rest.substr(std::string(tmpl::kType3Prompt).size());
  std::size_t question_pos = rest.find("Can we infer ");
  if (question_pos == std::string::npos || question_pos == 0)
    return "missing type-3 question";
  std::string premise_text = rest.substr(0, question_pos - 1);  // trailing space
  std::string question = rest.substr(question_pos);

  std::vector<Formula> premises;
  std::string query_text;
  try {
    for (const auto& s : split_sentences(premise_text)) premises.push_back(parse_formula(s));
    if (starts_with(question, tmpl::kType3Trailing)) {
      std::string q = question.substr(std::string(tmpl::kType3Trailing).size());
      if (starts_with(q, tmpl::kType3TrailingNames))
        q = q.substr(std::string(tmpl::kType3TrailingNames).size());
      else if (starts_with(q, " "))
        q = q.substr(1);
      else
        return "malformed trailing question";
      if (q.empty() || q.back() != '.') return "trailing query must end with a period";
      query_text = q.substr(0, q.size() - 1);
    } else {
      std::size_t end = question.find(" from them?");
      if (end == std::string::npos) return "malformed inline question";
      query_text = question.substr(13, end - 13);
    }
  } catch (const ParseError& ex) {
    return std::string("premises do not parse: ") + ex.what();
  }
  Formula query;
  try {
    query = parse_formula(query_text);
  } catch (const ParseError& ex) {
    return std::string("query does not parse: ") + ex.what();
  }
  if (premises.empty()) return "no premises";
  if (static_cast<int>(premises.size()) != e.premise_count)
    return "premise_count metadata mismatch";

  // Corner-case outputs.
  if (e.output == tmpl::kObvious) {
    if (std::find(premises.begin(), premises.end(), query) == premises.end())
      return "'obvious' output but the query is not a premise";
    return std::nullopt;
  }
  if (e.output == tmpl::kUnrelated) {
    auto v = classify_stable(premises, query);
    if (!v || *v != Verdict::Independent)
      return "'unrelated' output but the query is not independent";
    return std::nullopt;
  }
  if (e.output == tmpl::kContradictory) {
    if (!premises_inconsistent(premises))
      return "contradiction output but the premises are consistent";
    return std::nullopt;
  }

  // Chain-bearing outputs.
  bool yes;
  std::string chain_text;
  if (e.answer_position == AnswerPosition::Begin) {
    if (starts_with(e.output, tmpl::kYesBegin)) {
      yes = true;
      chain_text = e.output.substr(std::string(tmpl::kYesBegin).size());
    } else if (starts_with(e.output, tmpl::kNoBegin)) {
      yes = false;
      chain_text = e.output.substr(std::string(tmpl::kNoBegin).size());
    } else {
      return "unrecognized begin-form output";
    }
  } else {
    if (ends_with(e.output, tmpl::kYesEnd)) {
      yes = true;
      chain_text = e.output.substr(0, e.output.size() - std::string(tmpl::kYesEnd).size());
    } else if (ends_with(e.output, tmpl::kNoEnd)) {
      yes = false;
      chain_text = e.output.substr(0, e.output.size() - std::string(tmpl::kNoEnd).size());
    } else {
      return "unrecognized end-form output";
    }
  }

  InferenceChain chain;
  chain.target = query;
  chain.kind = yes ? ChainKind::Proves : ChainKind::Refutes;
  bool named = true;
  for (const auto& sentence : split_sentences(chain_text)) {
    auto parsed = parse_step_sentence(sentence);
    if (!parsed) return "unparseable chain step: " + sentence;
    ChainStep step;
    try {
      for (const auto& p : parsed->premises) step.premises.push_back(parse_formula(p));
      step.conclusion = parse_formula(parsed->conclusion);
      if (!parsed->contradicts.empty() && !(parse_formula(parsed->contradicts) == query))
        return "chain contradicts a different formula than the query";
    } catch (const ParseError& ex) {
      return std::string("chain formulas do not parse: ") + ex.what();
    }
    step.rule_name = parsed->rule;
    if (parsed->rule.empty()) named = false;
    chain.steps.push_back(std::move(step));
  }
  if (chain.steps.empty()) return "chain-bearing output without steps";

  if (named) {
    ChainCheck check = verify_chain(premises, chain, catalog);
    if (!check.ok)
      return "chain fails verification at step " + std::to_string(check.failed_step) + ": " +
             check.reason;
  } else {
    // No rule names to match against: check each step with the oracle.
    std::vector<Formula> known = premises;
    for (const auto& step : chain.steps) {
      for (const auto& p : step.premises)
        if (std::find(known.begin(), known.end(), p) == known.end())
          return "chain step premise not available: " + render_formula(p);
      for (int d = 1; d <= 3; ++d)
        if (classify(step.premises, step.conclusion, d) != Verdict::Entailed)
          return "chain step is not entailed: " + render_formula(step.conclusion);
      known.push_back(step.conclusion);
    }
    if (yes) {
      if (!(chain.steps.back().conclusion == query)) return "chain does not end at the query";
    } else {
      if (!contradicts(chain.steps.back().conclusion, query))
        return "chain conclusion does not contradict the query";
    }
  }

  auto verdict = classify_stable(premises, query);
  if (!verdict) return "oracle verdict unstable across domain sizes";
  if (yes && *verdict != Verdict::Entailed) return "answer says yes but query is not entailed";
  if (!yes && *verdict != Verdict::Contradicted)
    return "answer says no but query is not contradicted";
  return std::nullopt;
}

std::optional<std::string> check_type_nl(const Example& e) {
  const char* prompt =
      e.type == ProblemType::Type2b ? tmpl::kType2Prompt : tmpl::kType3Prompt;
  if (!starts_with(e.input, prompt)) return "missing prompt";
  if (e.output.empty()) return "empty output";
  if (e.type == ProblemType::Type3b) {
    bool corner = e.output == tmpl::kObvious || e.output == tmpl::kUnrelated ||
                  e.output == tmpl::kContradictory;
    if (e.answer_position == AnswerPosition::Begin) {
      if (!corner && !starts_with(e.output, "Yes") && !starts_with(e.output, "No"))
        return "begin-form output must lead with the answer";
    } else {
      if (!corner && !ends_with(e.output, tmpl::kYesEnd) && !ends_with(e.output, tmpl::kNoEnd))
        return "end-form output must close with the answer";
    }
  }
  return std::nullopt;
}

}  // namespace

bool ValidationReport::ok() const {
  for (const auto& [type, count] : failed)
    if (count) return false;
  return true;
}

ValidationReport validate_examples(const std::vector<Example>& examples,
                                   const RuleCatalog& catalog, int threads) {
  std::vector<std::optional<std::string>> failures(examples.size());
  parallel_for(examples.size(), threads, [&](std::size_t i) {
    const Example& e = examples[i];
    try {
      switch (e.type) {
        case ProblemType::Type1:
          failures[i] = check_type1(e);
          break;
        case ProblemType::Type2a:
          failures[i] = check_type2a(e, catalog);
          break;
        case ProblemType::Type3a:
          failures[i] = check_type3a(e, catalog);
          break;
        case ProblemType::Type2b:
        case ProblemType::Type3b:
          failures[i] = check_type_nl(e);
          break;
      }
    } catch (const std::exception& ex) {
      failures[i] = std::string("check failed: ") + ex.what();
    }
  });
  ValidationReport report;
  report.checked = examples.size();
  for (std::size_t i = 0; i < examples.size(); ++i) {
    std::string type = to_string(examples[i].type);
    if (failures[i]) {
      ++report.failed[type];
      if (report.issues.size() < kMaxIssues)
        report.issues.push_back(ValidationIssue{i, *failures[i]});
    } else {
      ++report.passed[type];
    }
  }
  return report;
}

SplitCheck check_split_invariants(const DatasetSplit& split, const GenerationConfig& config) {
  auto fail = [](std::string reason) { return SplitCheck{false, std::move(reason)}; };

  std::set<std::string> seen;
  for (const auto* side : {&split.train, &split.test})
    for (const auto& e : *side)
      if (!seen.insert(dedup_key(e)).second)
        return fail("duplicate (input, output) pair: " + e.input.substr(0, 60));

  switch (split.kind) {
    case SplitKind::Iid: {
      double total = static_cast<double>(split.train.size() + split.test.size());
      if (total == 0) return fail("empty split");
      double ratio = static_cast<double>(split.train.size()) / total;
      if (std::abs(ratio - config.split_ratio) > 0.005)
        return fail("train ratio " + std::to_string(ratio) + " deviates from " +
                    std::to_string(config.split_ratio));
      break;
    }
    case SplitKind::Ood: {
      std::set<std::uint64_t> train_ids;
      for (const auto& e : split.train) train_ids.insert(e.problem_id);
      for (const auto& e : split.test)
        if (train_ids.count(e.problem_id))
          return fail("problem " + std::to_string(e.problem_id) + " appears on both sides");
      break;
    }
    case SplitKind::Length: {
      for (const auto& e : split.train)
        if (e.premise_count > config.length_threshold)
          return fail("train example with " + std::to_string(e.premise_count) + " premises");
      for (const auto& e : split.test)
        if (e.premise_count <= config.length_threshold)
          return fail("test example with " + std::to_string(e.premise_count) + " premises");
      break;
    }
  }
  return {};
}

std::string render_validation(const ValidationReport& report) {
  std::ostringstream out;
  out << "checked " << report.checked << " examples\n";
  std::set<std::string> types;
  for (const auto& [t, n] : report.passed) types.insert(t);
  for (const auto& [t, n] : report.failed) types.insert(t);
  for (const auto& t : types) {
    std::size_t pass = report.passed.count(t) ? report.passed.at(t) : 0;
    std::size_t fail = report.failed.count(t) ? report.failed.at(t) : 0;
    out << "  type " << t << ": " << pass << " passed, " << fail << " failed\n";
  }
  for (const auto& issue : report.issues)
    out << "  [" << issue.index << "] " << issue.reason << "\n";
  return out.str();
}

}  // namespace loginf
