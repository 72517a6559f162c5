#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "examples.hpp"
#include "formula.hpp"
#include "lexicon.hpp"
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

LexEntry find_entry(const std::vector<LexEntry>& pool, const std::string& decl) {
  for (const auto& e : pool)
    if (e.decl == decl) return e;
  throw std::runtime_error("missing lexicon entry: " + decl);
}

const GenerationConfig kConfig;

Example run(const InferenceProblem& problem, ProblemType type, AnswerPosition position,
            const ExampleOptions& options, std::uint64_t seed = 1) {
  Rng rng(seed);
  auto ex = make_example(problem, type, position, RuleCatalog::builtin(), Lexicon::builtin(),
                         kConfig, rng, options);
  REQUIRE(ex.has_value());
  return *ex;
}

}  // namespace

TEST_CASE("golden type 1") {
  const Lexicon& lex = Lexicon::builtin();
  InferenceProblem problem;
  problem.premises = parse_all({"p -> q", "p"});
  InferenceChain chain;
  chain.target = parse_formula("q");
  chain.steps.push_back(ChainStep{problem.premises, chain.target, "modus ponens"});
  problem.inferences.push_back(chain);

  LexAssignment a;
  a.propositions["p"] = {AtomPattern::SubjectPredicate, "James",
                         find_entry(lex.predicates, "is rich")};
  a.propositions["q"] = {AtomPattern::SubjectAction, "Susan",
                         find_entry(lex.actions, "is playing squash")};
  ExampleOptions options;
  options.assignment = &a;
  options.type1_target = 0;

  Example ex = run(problem, ProblemType::Type1, AnswerPosition::Begin, options);
  CHECK(ex.input ==
        "Translate the following inference to logic notation: If James were rich, then Susan "
        "is playing squash. James is rich. Therefore Susan is playing squash.");
  CHECK(ex.output == "p -> q. p. Therefore q.");
}

TEST_CASE("golden type 1 canonicalizes names") {
  InferenceProblem problem;
  problem.premises = parse_all({"t_3 -> u", "t_3"});
  InferenceChain chain;
  chain.target = parse_formula("u");
  problem.inferences.push_back(chain);
  Example ex = run(problem, ProblemType::Type1, AnswerPosition::Begin, {});
  CHECK(ex.output == "p -> q. p. Therefore q.");
}

TEST_CASE("golden type 2a") {
  InferenceProblem problem;
  problem.premises = parse_all({"forall x_2: Q(x_2)", "exists x_2: P_2(x_2) -> Q_2(x_2)",
                                "forall x_2: P_2(x_2)"});
  InferenceChain chain;
  chain.target = problem.premises[0];
  problem.inferences.push_back(chain);

  ExampleOptions options;
  options.rule_names = true;
  Example ex = run(problem, ProblemType::Type2a, AnswerPosition::Begin, options);
  CHECK(ex.input ==
        "What can be inferred from the following premises in a single inference step "
        "(ignoring inferences that add new predicates or constants)? Name the inference rule "
        "being used: forall x_2: Q(x_2). exists x_2: P_2(x_2) -> Q_2(x_2). forall x_2: "
        "P_2(x_2).");
  CHECK(ex.output ==
        "exists x_2: Q_2(x_2) can be inferred via the existential modus ponens rule. forall "
        "x_2: Q(x_2) and P_2(x_2) can be inferred via the universal conjunction rule. forall "
        "x_2: P_2(x_2) and Q(x_2) can be inferred via the universal conjunction rule.");
}

TEST_CASE("golden type 2b") {
  const Lexicon& lex = Lexicon::builtin();
  InferenceProblem problem;
  problem.premises = parse_all({"w <-> c", "~w"});
  InferenceChain chain;
  chain.target = parse_formula("~c");
  problem.inferences.push_back(chain);

  LexAssignment a;
  a.propositions["w"] = {AtomPattern::SubjectAction, "David",
                         find_entry(lex.actions, "is working")};
  a.propositions["c"] = {AtomPattern::Impersonal, "", find_entry(lex.impersonals, "it is cloudy")};
  ExampleOptions options;
  options.assignment = &a;
  options.rule_names = false;

  Example ex = run(problem, ProblemType::Type2b, AnswerPosition::Begin, options);
  CHECK(ex.input ==
        "What can be inferred from the following premises in a single inference step "
        "(ignoring inferences that add new predicates or constants)? David is working if and "
        "only if it is cloudy. David is not working.");
  CHECK(ex.output ==
        "If David works, then it is cloudy. If it is cloudy, then David is working. It is "
        "not cloudy.");
}

TEST_CASE("golden type 3a") {
  InferenceProblem problem;
  problem.premises = parse_all({"p <-> p_2", "p_2 -> ~q_2", "q_2"});
  InferenceChain chain;
  chain.target = parse_formula("~p");
  chain.kind = ChainKind::Proves;
  chain.steps.push_back(
      ChainStep{parse_all({"p_2 -> ~q_2", "q_2"}), parse_formula("~p_2"), "modus tollens"});
  chain.steps.push_back(ChainStep{parse_all({"p <-> p_2", "~p_2"}), parse_formula("~p"),
                                  "biconditional elimination"});
  problem.inferences.push_back(chain);
  CHECK(verify_chain(problem.premises, chain, RuleCatalog::builtin()).ok);

  ExampleOptions options;
  options.rule_names = true;
  options.trailing_query = false;
  options.query = Type3Query{chain.target, &problem.inferences[0], CornerCase::None};

  Example ex = run(problem, ProblemType::Type3a, AnswerPosition::Begin, options);
  CHECK(ex.input ==
        "Consider the following premises. p <-> p_2. p_2 -> ~q_2. q_2. Can we infer ~p from "
        "them? If possible, name the inference rules being used at each step.");
  CHECK(ex.output ==
        "Yes, via the following inference chain. From p_2 -> ~q_2, q_2 we can infer ~p_2 via "
        "modus tollens. Finally, from p <-> p_2, ~p_2 we can infer ~p via biconditional "
        "elimination.");
}

TEST_CASE("golden type 3b (obvious answer)") {
  const Lexicon& lex = Lexicon::builtin();
  InferenceProblem problem;
  problem.premises = parse_all({"exists x: A(x) -> C(x)", "forall x: C(x) -> A(x)"});
  InferenceChain chain;
  chain.target = problem.premises[0];
  problem.inferences.push_back(chain);

  LexAssignment a;
  a.predicates["A"] = {false, find_entry(lex.predicates, "is an astronaut")};
  a.predicates["C"] = {true, find_entry(lex.actions, "is climbing a mountain")};
  ExampleOptions options;
  options.assignment = &a;
  options.rule_names = true;
  options.trailing_query = true;
  options.query = Type3Query{problem.premises[0], nullptr, CornerCase::Obvious};

  Example ex = run(problem, ProblemType::Type3b, AnswerPosition::Begin, options);
  CHECK(ex.input ==
        "Consider the following premises. There is at least one x for which if x were an "
        "astronaut, then x is climbing a mountain. For all x, if x climbs a mountain, then x "
        "is an astronaut. Can we infer the following from them? If we can, name the "
        "inference rule being used: There is at least one x for which if x were an "
        "astronaut, then x is climbing a mountain.");
  CHECK(ex.output == "Yes, that is one of the premises.");
  CHECK(ex.corner_case == CornerCase::Obvious);
}

TEST_CASE("corner cases reproduce the published strings") {
  const Lexicon& lex = Lexicon::builtin();

  SUBCASE("obvious, via a premise of a quantified problem") {
    InferenceProblem problem;
    problem.premises = parse_all({"exists x_1: L(x_1)", "forall x_1: R(x_1)"});
    InferenceChain chain;
    chain.target = problem.premises[0];
    problem.inferences.push_back(chain);
    LexAssignment a;
    a.predicates["L"] = {false, find_entry(lex.predicates, "is a lawyer")};
    a.predicates["R"] = {true, find_entry(lex.actions, "will go running")};
    ExampleOptions options;
    options.assignment = &a;
    options.rule_names = true;
    options.trailing_query = true;
    options.query = Type3Query{problem.premises[0], nullptr, CornerCase::Obvious};
    Example ex = run(problem, ProblemType::Type3b, AnswerPosition::Begin, options);
    CHECK(ex.input ==
          "Consider the following premises. There is at least one x_1 for which x_1 is a "
          "lawyer. For all x_1, x_1 will go running. Can we infer the following from them? "
          "If we can, name the inference rule being used: There is at least one x_1 for "
          "which x_1 is a lawyer.");
    CHECK(ex.output == "Yes, that is one of the premises.");
  }

  SUBCASE("unrelated question") {
    InferenceProblem problem;
    problem.premises = parse_all({"~o", "o <-> h"});
    InferenceChain chain;
    chain.target = parse_formula("~h");
    problem.inferences.push_back(chain);
    problem.unrelated = parse_all({"~e"});
    LexAssignment a;
    a.propositions["o"] = {AtomPattern::Impersonal, "",
                           find_entry(lex.impersonals, "it is overcast")};
    a.propositions["h"] = {AtomPattern::SubjectPredicate, "Joseph",
                           find_entry(lex.predicates, "is happy")};
    a.propositions["e"] = {AtomPattern::SubjectPredicate, "Karen",
                           find_entry(lex.predicates, "is an electrician")};
    ExampleOptions options;
    options.assignment = &a;
    options.rule_names = true;
    options.trailing_query = true;
    options.query = Type3Query{problem.unrelated[0], nullptr, CornerCase::Unrelated};
    Example ex = run(problem, ProblemType::Type3b, AnswerPosition::End, options);
    CHECK(ex.input ==
          "Consider the following premises. It is not overcast. It is overcast if and only "
          "if Joseph is happy. Can we infer the following from them? If we can, name the "
          "inference rule being used: Karen is not an electrician.");
    CHECK(ex.output == "No, we cannot infer that from the premises.");
    CHECK(ex.corner_case == CornerCase::Unrelated);
  }

  SUBCASE("contradictory premises") {
    InferenceProblem problem;
    problem.premises = parse_all({"forall x_4: E(x_4)", "~E(j)"});
    problem.contradictory = true;
    InferenceChain chain;
    chain.target = parse_formula("E(j)");
    problem.inferences.push_back(chain);
    problem.unrelated = parse_all({"~T(j)"});
    LexAssignment a;
    a.predicates["E"] = {false, find_entry(lex.predicates, "is an electrician")};
    a.predicates["T"] = {true, find_entry(lex.actions, "is making tea")};
    a.constants["j"] = "Joseph";
    ExampleOptions options;
    options.assignment = &a;
    options.rule_names = true;
    options.trailing_query = true;
    options.query = Type3Query{problem.unrelated[0], nullptr, CornerCase::ContradictoryPremises};
    Example ex = run(problem, ProblemType::Type3b, AnswerPosition::Begin, options);
    CHECK(ex.input ==
          "Consider the following premises. For all x_4, x_4 is an electrician. Joseph is "
          "not an electrician. Can we infer the following from them? If we can, name the "
          "inference rule being used: Joseph is not making tea.");
    CHECK(ex.output == "Yes, the premises are contradictory, so we can infer anything from them.");
    CHECK(ex.corner_case == CornerCase::ContradictoryPremises);
  }
}

TEST_CASE("golden begin/end pair shares the chain") {
  InferenceProblem problem;
  problem.premises = parse_all({"forall x_3: Q_1(x_3)", "forall x_3: ~P_3(x_3)",
                                "forall x_3: P_3(x_3) or Q_3(x_3)"});
  InferenceChain chain;
  chain.target = parse_formula("exists x_3: ~Q_3(x_3)");
  chain.kind = ChainKind::Refutes;
  chain.steps.push_back(ChainStep{
      parse_all({"forall x_3: P_3(x_3) or Q_3(x_3)", "forall x_3: ~P_3(x_3)"}),
      parse_formula("forall x_3: Q_3(x_3)"), "universal disjunctive syllogism"});
  chain.steps.push_back(ChainStep{
      parse_all({"forall x_3: Q_3(x_3)", "forall x_3: Q_1(x_3)"}),
      parse_formula("forall x_3: Q_3(x_3) and Q_1(x_3)"), "universal conjunction"});
  chain.steps.push_back(ChainStep{parse_all({"forall x_3: Q_3(x_3) and Q_1(x_3)"}),
                                  parse_formula("forall x_3: Q_3(x_3)"),
                                  "universal simplification"});
  problem.contradictions.push_back(chain);
  CHECK(verify_chain(problem.premises, chain, RuleCatalog::builtin()).ok);

  ExampleOptions options;
  options.rule_names = false;
  options.trailing_query = false;
  options.query = Type3Query{chain.target, &problem.contradictions[0], CornerCase::None};

  const std::string expected_input =
      "Consider the following premises. forall x_3: Q_1(x_3). forall x_3: ~P_3(x_3). forall "
      "x_3: P_3(x_3) or Q_3(x_3). Can we infer exists x_3: ~Q_3(x_3) from them?";
  const std::string expected_chain =
      "From forall x_3: P_3(x_3) or Q_3(x_3), forall x_3: ~P_3(x_3) we can infer forall "
      "x_3: Q_3(x_3). From forall x_3: Q_3(x_3), forall x_3: Q_1(x_3) we can infer forall "
      "x_3: Q_3(x_3) and Q_1(x_3). Finally, from forall x_3: Q_3(x_3) and Q_1(x_3) we can "
      "infer forall x_3: Q_3(x_3), which contradicts exists x_3: ~Q_3(x_3).";

  Example begin = run(problem, ProblemType::Type3a, AnswerPosition::Begin, options);
  CHECK(begin.input == expected_input);
  CHECK(begin.output ==
        "No, we can see why via the following inference chain. " + expected_chain);

  Example end = run(problem, ProblemType::Type3a, AnswerPosition::End, options);
  CHECK(end.input == expected_input);
  CHECK(end.output == expected_chain + " Therefore, the answer is no.");

  // answer_flip converts between the two and is an involution.
  Example flipped = answer_flip(begin);
  CHECK(flipped.output == end.output);
  CHECK(flipped.answer_position == AnswerPosition::End);
  Example back = answer_flip(flipped);
  CHECK(back.output == begin.output);
  CHECK(back.answer_position == AnswerPosition::Begin);
}

TEST_CASE("answer_flip leaves corner-case outputs unchanged") {
  Example obvious;
  obvious.type = ProblemType::Type3b;
  obvious.answer_position = AnswerPosition::Begin;
  obvious.output = tmpl::kObvious;
  Example flipped = answer_flip(obvious);
  CHECK(flipped.output == obvious.output);
  CHECK(flipped.answer_position == AnswerPosition::End);
  CHECK(answer_flip(flipped).output == obvious.output);

  Example wrong;
  wrong.type = ProblemType::Type1;
  CHECK_THROWS_AS(answer_flip(wrong), LogicError);
}

TEST_CASE("generated examples are faithful to the oracle") {
  const auto& catalog = RuleCatalog::builtin();
  const auto& lexicon = Lexicon::builtin();
  GenerationConfig config;
  config.seed = 77;
  config.num_problems = 120;
  auto problems = generate_problems(catalog, config);
  REQUIRE(!problems.empty());

  Rng rng(9);
  int type3_checked = 0, type2_checked = 0;
  for (const auto& problem : problems) {
    // Shuffled copy, as the builder produces.
    InferenceProblem shuffled = problem;
    rng.shuffle(shuffled.premises);

    auto e3 = make_example(shuffled, ProblemType::Type3a, AnswerPosition::Begin, catalog,
                           lexicon, config, rng);
    if (e3) {
      // The stated yes/no answer must agree with the oracle on the parsed query.
      bool says_yes = e3->output.rfind("Yes", 0) == 0;
      std::string prefix = "Can we infer ";
      auto pos = e3->input.find(prefix);
      std::string rest;
      if (pos != std::string::npos) {
        auto end = e3->input.find(" from them?", pos);
        if (end != std::string::npos)
          rest = e3->input.substr(pos + prefix.size(), end - pos - prefix.size());
      }
      if (rest == "the following") rest.clear();  // trailing prompt shape
      if (!rest.empty()) {
        Formula query = parse_formula(rest);
        auto verdict = classify_stable(shuffled.premises, query);
        REQUIRE(verdict.has_value());
        if (shuffled.contradictory) {
          CHECK(*verdict == Verdict::PremisesInconsistent);
          CHECK(says_yes);
        } else if (says_yes) {
          CHECK(*verdict == Verdict::Entailed);
        } else {
          CHECK((*verdict == Verdict::Contradicted || *verdict == Verdict::Independent));
        }
        ++type3_checked;
      }
    }

    auto e2 = make_example(shuffled, ProblemType::Type2a, AnswerPosition::Begin, catalog,
                           lexicon, config, rng);
    if (e2 && e2->corner_case == CornerCase::None) {
      // Output conclusions equal the one-step closure of the premises.
      auto closure = enumerate_one_step(shuffled.premises, catalog);
      CHECK(!closure.empty());
      for (const auto& c : closure)
        CHECK(e2->output.find(render_formula(c.conclusion)) != std::string::npos);
      ++type2_checked;
    }
  }
  CHECK(type3_checked > 20);
  CHECK(type2_checked > 20);
}

TEST_CASE("shuffling and renaming leave the answer invariant") {
  const auto& catalog = RuleCatalog::builtin();
  GenerationConfig config;
  config.seed = 31;
  config.num_problems = 40;
  auto problems = generate_problems(catalog, config);
  Rng rng(4);
  for (const auto& problem : problems) {
    if (problem.contradictory) continue;
    auto variations = make_variations(problem, 3, rng);
    for (const auto& v : variations) {
      REQUIRE(v.inferences.size() == problem.inferences.size());
      for (std::size_t i = 0; i < v.inferences.size(); ++i) {
        auto orig = classify_stable(problem.premises, problem.inferences[i].target);
        auto renamed = classify_stable(v.premises, v.inferences[i].target);
        REQUIRE(orig.has_value());
        REQUIRE(renamed.has_value());
        CHECK(*orig == *renamed);
      }
    }
  }
}
