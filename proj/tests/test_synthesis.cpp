#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "config.hpp"
#include "formula.hpp"
#include "rng.hpp"
#include "rules.hpp"
#include "semantics.hpp"
#include "synthesis.hpp"

using namespace loginf;

namespace {

std::vector<Formula> parse_all(const std::vector<std::string>& texts) {
  std::vector<Formula> out;
  for (const auto& t : texts) out.push_back(parse_formula(t));
  return out;
}

std::set<std::string> rendered_set(const std::vector<OneStepInference>& xs) {
  std::set<std::string> out;
  for (const auto& x : xs) out.insert(render_formula(x.conclusion) + " / " + x.rule_name);
  return out;
}

GenerationConfig small_config(std::uint64_t seed, int problems) {
  GenerationConfig config;
  config.seed = seed;
  config.num_problems = problems;
  return config;
}

// Oracle verdict for a problem target, agreed across domain sizes 1..3.
Verdict oracle_verdict(const InferenceProblem& p, const Formula& target) {
  auto v = classify_stable(p.premises, target);
  REQUIRE(v.has_value());
  return *v;
}

}  // namespace

TEST_CASE("depth-0 seed problem has the rule shape") {
  GenerationConfig config = small_config(3, 1);
  config.chain_length_distribution = {1.0};  // always depth 0
  Rng rng(42);
  auto p = generate_problem(RuleCatalog::builtin(), config, rng);
  REQUIRE(p.has_value());
  CHECK(p->depth == 0);
  CHECK(!p->inferences.empty());
  for (const auto& chain : p->inferences) {
    CHECK(chain.steps.size() <= 1);
    CHECK(verify_chain(p->premises, chain, RuleCatalog::builtin()).ok);
  }
  for (const auto& chain : p->contradictions)
    CHECK(verify_chain(p->premises, chain, RuleCatalog::builtin()).ok);
}

TEST_CASE("premise count grows by |rule premises| - 1 per growth step") {
  const auto& catalog = RuleCatalog::builtin();
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GenerationConfig config = small_config(seed, 1);
    config.chain_length_distribution = {0.0, 0.0, 1.0};  // always depth 2
    Rng rng(seed);
    auto p = generate_problem(catalog, config, rng);
    if (!p) continue;
    CHECK(p->depth == 2);
    CHECK(p->premises.size() >= 1);
    // Depth-2 growth over rules with 1..3 premises bounds the premise count.
    CHECK(p->premises.size() <= 3 + 2 * 2);
  }
}

TEST_CASE("generated problems pass the oracle sweep") {
  const auto& catalog = RuleCatalog::builtin();
  GenerationConfig config = small_config(7, 60);
  auto problems = generate_problems(catalog, config);
  CHECK(problems.size() >= 55);
  for (const auto& p : problems) {
    if (p.contradictory) {
      for (int d = 1; d <= 3; ++d)
        CHECK(classify(p.premises, p.premises.front(), d) == Verdict::PremisesInconsistent);
      continue;
    }
    for (const auto& chain : p.inferences) {
      ChainCheck check = verify_chain(p.premises, chain, catalog);
      CAPTURE(check.reason);
      CHECK(check.ok);
      CHECK(oracle_verdict(p, chain.target) == Verdict::Entailed);
    }
    for (const auto& chain : p.contradictions) {
      ChainCheck check = verify_chain(p.premises, chain, catalog);
      CAPTURE(check.reason);
      CHECK(check.ok);
      CHECK(oracle_verdict(p, chain.target) == Verdict::Contradicted);
    }
    for (const auto& u : p.unrelated) CHECK(oracle_verdict(p, u) == Verdict::Independent);
  }
}

TEST_CASE("proves-chains are minimal after simplification") {
  const auto& catalog = RuleCatalog::builtin();
  GenerationConfig config = small_config(21, 80);
  for (const auto& p : generate_problems(catalog, config)) {
    for (const auto& chain : p.inferences) {
      // No step may conclude a premise, and only the last step may conclude
      // the target.
      for (std::size_t i = 0; i < chain.steps.size(); ++i) {
        const auto& step = chain.steps[i];
        CHECK(std::find(p.premises.begin(), p.premises.end(), step.conclusion) ==
              p.premises.end());
        if (i + 1 < chain.steps.size()) CHECK(!(step.conclusion == chain.target));
      }
      if (chain.steps.empty())
        CHECK(std::find(p.premises.begin(), p.premises.end(), chain.target) !=
              p.premises.end());
    }
  }
}

TEST_CASE("contradiction fraction respects the cap") {
  const auto& catalog = RuleCatalog::builtin();
  GenerationConfig config = small_config(0, 300);
  auto problems = generate_problems(catalog, config);
  std::size_t contradictory = 0;
  for (const auto& p : problems) contradictory += p.contradictory ? 1 : 0;
  CHECK(static_cast<double>(contradictory) / static_cast<double>(problems.size()) <=
        config.contradiction_cap + 1e-9);
}

TEST_CASE("depth histogram tracks the configured distribution") {
  const auto& catalog = RuleCatalog::builtin();
  GenerationConfig config = small_config(5, 1500);
  auto problems = generate_problems(catalog, config);
  std::vector<double> histogram(config.chain_length_distribution.size(), 0.0);
  for (const auto& p : problems) histogram[static_cast<std::size_t>(p.depth)] += 1.0;
  double tv = 0.0;
  for (std::size_t i = 0; i < histogram.size(); ++i)
    tv += std::abs(histogram[i] / static_cast<double>(problems.size()) -
                   config.chain_length_distribution[i]);
  CHECK(tv / 2.0 < 0.08);
}

TEST_CASE("one-step closure reproduces the published type-2a conclusions") {
  auto premises = parse_all({"forall x_2: Q(x_2)", "exists x_2: P_2(x_2) -> Q_2(x_2)",
                             "forall x_2: P_2(x_2)"});
  auto closure = enumerate_one_step(premises, RuleCatalog::builtin());
  std::vector<std::string> got;
  for (const auto& c : closure) got.push_back(render_formula(c.conclusion) + " / " + c.rule_name);
  CHECK(got == std::vector<std::string>{
                   "exists x_2: Q_2(x_2) / existential modus ponens",
                   "forall x_2: Q(x_2) and P_2(x_2) / universal conjunction",
                   "forall x_2: P_2(x_2) and Q(x_2) / universal conjunction"});
}

TEST_CASE("one-step closure matches the published type-2b conclusions") {
  auto closure = enumerate_one_step(parse_all({"p <-> q", "~p"}), RuleCatalog::builtin());
  std::vector<std::string> got;
  for (const auto& c : closure) got.push_back(render_formula(c.conclusion));
  CHECK(got == std::vector<std::string>{"p -> q", "q -> p", "~q"});
}

TEST_CASE("one-step closure suppresses new symbols and verbatim premises") {
  CHECK(enumerate_one_step(parse_all({"p"}), RuleCatalog::builtin()).empty());
  CHECK(enumerate_one_step({}, RuleCatalog::builtin()).empty());
  // forall x: P(x) admits universal instantiation only when a constant is
  // already around.
  auto bare = rendered_set(enumerate_one_step(parse_all({"forall x: P(x)"}),
                                              RuleCatalog::builtin()));
  CHECK(bare.empty());
  auto grounded = rendered_set(enumerate_one_step(parse_all({"forall x: P(x)", "Q(a)"}),
                                                  RuleCatalog::builtin()));
  CHECK(grounded.count("P(a) / universal instantiation") == 1);
  CHECK(grounded.count("exists x: Q(x) / existential generalization") == 1);
  // Conclusions already present verbatim are not repeated.
  auto repeat = enumerate_one_step(parse_all({"p <-> q", "p -> q"}), RuleCatalog::builtin());
  for (const auto& c : repeat) CHECK(render_formula(c.conclusion) != "p -> q");
}

TEST_CASE("closure is invariant as a set under consistent renaming") {
  const auto& catalog = RuleCatalog::builtin();
  auto premises = parse_all({"p <-> q", "~p", "r -> p"});
  std::map<std::string, std::string> map = {{"p", "t_2"}, {"q", "u"}, {"r", "q_1"}};
  std::vector<Formula> renamed;
  for (const auto& f : premises) renamed.push_back(rename_symbols(f, map));
  auto base = enumerate_one_step(premises, catalog);
  auto image = rendered_set(enumerate_one_step(renamed, catalog));
  std::set<std::string> mapped;
  for (const auto& c : base)
    mapped.insert(render_formula(rename_symbols(c.conclusion, map)) + " / " + c.rule_name);
  CHECK(mapped == image);
}

TEST_CASE("renaming variations preserve structure, verdicts and problem_id") {
  const auto& catalog = RuleCatalog::builtin();
  GenerationConfig config = small_config(9, 25);
  auto problems = generate_problems(catalog, config);
  REQUIRE(!problems.empty());
  Rng rng(17);
  for (const auto& p : problems) {
    auto variations = make_variations(p, 5, rng);
    CHECK(!variations.empty());
    std::set<std::string> seen{canonical_problem_string(p)};
    for (const auto& v : variations) {
      CHECK(v.problem_id == p.problem_id);
      CHECK(v.premises.size() == p.premises.size());
      CHECK(seen.insert(canonical_problem_string(v)).second);  // all distinct
      for (const auto& chain : v.inferences)
        CHECK(verify_chain(v.premises, chain, catalog).ok);
      if (!v.contradictory && !p.contradictory) {
        for (std::size_t i = 0; i < v.inferences.size(); ++i)
          CHECK(oracle_verdict(v, v.inferences[i].target) ==
                oracle_verdict(p, p.inferences[i].target));
      }
    }
  }
}

TEST_CASE("example from the growth mechanism: target q via modus ponens") {
  const auto& catalog = RuleCatalog::builtin();
  Rng rng(1);
  Formula target = parse_formula("q");
  for (int i = 0; i < 120; ++i) {
    FreshNamer fresh(2, collect_symbols(target));
    auto m = match_backward(catalog, target, rng, fresh);
    REQUIRE(m.has_value());
    if (m->rule->name == "modus ponens") {
      REQUIRE(m->new_premises.size() == 2);
      CHECK(render_formula(m->new_premises[0]) == "p_2 -> q");
      CHECK(render_formula(m->new_premises[1]) == "p_2");
      return;
    }
  }
  FAIL("modus ponens never sampled");
}

TEST_CASE("generation is deterministic and thread-count independent") {
  const auto& catalog = RuleCatalog::builtin();
  GenerationConfig serial = small_config(123, 120);
  serial.threads = 1;
  GenerationConfig parallel = serial;
  parallel.threads = 0;
  auto a = generate_problems(catalog, serial);
  auto b = generate_problems(catalog, parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(canonical_problem_string(a[i]) == canonical_problem_string(b[i]));
}
