#include "lexicon.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace loginf {

const std::string& LexEntry::form(SentenceMode mode) const {
  switch (mode) {
    case SentenceMode::Declarative: return decl;
    case SentenceMode::Condition: return cond;
    case SentenceMode::Negated: return neg;
    case SentenceMode::NegatedCondition: return neg_cond;
  }
  return decl;
}

namespace {

LexEntry predicate_entry(const std::string& complement, const std::string& plural) {
  LexEntry e;
  e.decl = "is " + complement;
  e.cond = "were " + complement;
  e.neg = "is not " + complement;
  e.neg_cond = "were not " + complement;
  e.some_subject = plural;
  e.some_complement = complement[0] == 'a' && complement.find(' ') != std::string::npos
                          ? plural
                          : complement;
  return e;
}

LexEntry action_entry(const std::string& progressive, const std::string& simple,
                      const std::string& neg_simple) {
  LexEntry e;
  e.decl = "is " + progressive;
  e.cond = simple;
  e.neg = "is not " + progressive;
  e.neg_cond = "does not " + neg_simple;
  return e;
}

LexEntry impersonal_entry(const std::string& state) {
  LexEntry e;
  e.decl = "it is " + state;
  e.cond = e.decl;
  e.neg = "it is not " + state;
  e.neg_cond = e.neg;
  return e;
}

Lexicon build_default() {
  Lexicon lex;
  // The ten most common male and female English names.
  lex.subjects = {"James", "John",  "Robert",    "Michael",  "William",
                  "David", "Richard", "Joseph",  "Thomas",   "Charles",
                  "Mary",  "Patricia", "Jennifer", "Linda",   "Elizabeth",
                  "Barbara", "Susan", "Jessica",  "Sarah",    "Karen"};

  lex.predicates = {
      predicate_entry("rich", "rich people"),
      predicate_entry("poor", "poor people"),
      predicate_entry("happy", "happy people"),
      predicate_entry("sad", "sad people"),
      predicate_entry("curious", "curious people"),
      predicate_entry("excited", "excited people"),
      predicate_entry("bored", "bored people"),
      predicate_entry("fast", "fast people"),
      predicate_entry("a lawyer", "lawyers"),
      predicate_entry("an electrician", "electricians"),
      predicate_entry("an astronaut", "astronauts"),
      predicate_entry("a doctor", "doctors"),
      predicate_entry("a nurse", "nurses"),
      predicate_entry("a teacher", "teachers"),
      predicate_entry("a writer", "writers"),
      predicate_entry("a poet", "poets"),
      predicate_entry("a musician", "musicians"),
      predicate_entry("an artist", "artists"),
      predicate_entry("a scientist", "scientists"),
      predicate_entry("a politician", "politicians"),
      predicate_entry("a soldier", "soldiers"),
      predicate_entry("a police officer", "police officers"),
      predicate_entry("a taxi driver", "taxi drivers"),
      predicate_entry("a carpenter", "carpenters"),
      predicate_entry("a mechanic", "mechanics"),
      predicate_entry("a bartender", "bartenders"),
      predicate_entry("a janitor", "janitors"),
      predicate_entry("a cashier", "cashiers"),
      predicate_entry("a sailor", "sailors"),
      predicate_entry("a server", "servers"),
  };

  lex.actions = {
      action_entry("playing squash", "plays squash", "play squash"),
      action_entry("working", "works", "work"),
      action_entry("climbing a mountain", "climbs a mountain", "climb a mountain"),
      action_entry("making tea", "makes tea", "make tea"),
      action_entry("playing tennis", "plays tennis", "play tennis"),
      action_entry("reading a book", "reads a book", "read a book"),
      action_entry("writing a letter", "writes a letter", "write a letter"),
      action_entry("cooking", "cooks", "cook"),
      action_entry("sleeping", "sleeps", "sleep"),
      action_entry("driving a car", "drives a car", "drive a car"),
      action_entry("listening to a song", "listens to a song", "listen to a song"),
      action_entry("taking a plane", "takes a plane", "take a plane"),
      action_entry("drinking water", "drinks water", "drink water"),
      action_entry("playing a game", "plays a game", "play a game"),
      LexEntry{"will go running", "goes running", "will not go running",
               "does not go running", "", ""},
  };

  lex.impersonals = {
      impersonal_entry("raining"), impersonal_entry("cloudy"),  impersonal_entry("snowing"),
      impersonal_entry("sunny"),   impersonal_entry("windy"),   impersonal_entry("cold"),
      impersonal_entry("overcast"), impersonal_entry("late"),
  };
  return lex;
}

}  // namespace

const Lexicon& Lexicon::builtin() {
  static const Lexicon lex = [] {
    Lexicon l = build_default();
    l.validate();
    return l;
  }();
  return lex;
}

void Lexicon::validate() const {
  auto expect = [](std::size_t got, std::size_t want, const char* what) {
    if (got != want)
      throw LogicError(std::string("lexicon: expected ") + std::to_string(want) + " " + what +
                       ", got " + std::to_string(got));
  };
  expect(subjects.size(), 20, "subjects");
  expect(predicates.size(), 30, "predicates");
  expect(actions.size(), 15, "actions");
  expect(impersonals.size(), 8, "impersonal actions");
  std::set<std::string> seen;
  for (const auto& s : subjects)
    if (!seen.insert(s).second) throw LogicError("lexicon: duplicate subject " + s);
  for (const auto* pool : {&predicates, &actions, &impersonals})
    for (const auto& e : *pool)
      if (!seen.insert(e.decl).second) throw LogicError("lexicon: duplicate entry " + e.decl);
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LogicError("lexicon: cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  Lexicon lex;
  lex.subjects = j.at("subjects").get<std::vector<std::string>>();
  auto read_entries = [&j](const char* key, bool with_plural) {
    std::vector<LexEntry> out;
    for (const auto& item : j.at(key)) {
      LexEntry e;
      e.decl = item.at("decl").get<std::string>();
      e.cond = item.at("cond").get<std::string>();
      e.neg = item.at("neg").get<std::string>();
      e.neg_cond = item.at("neg_cond").get<std::string>();
      if (with_plural) {
        e.some_subject = item.at("some_subject").get<std::string>();
        e.some_complement = item.at("some_complement").get<std::string>();
      }
      out.push_back(std::move(e));
    }
    return out;
  };
  lex.predicates = read_entries("predicates", true);
  lex.actions = read_entries("actions", false);
  lex.impersonals = read_entries("impersonals", false);
  lex.validate();
  return lex;
}

// ---------------------------------------------------------------------------
// Assignment sampling

LexAssignment assign_lexicon(const SymbolInventory& inventory, const Lexicon& lexicon,
                             Rng& rng) {
  // Pools are drawn without replacement for the whole example.
  std::vector<std::string> subjects = lexicon.subjects;
  std::vector<LexEntry> predicates = lexicon.predicates;
  std::vector<LexEntry> actions = lexicon.actions;
  std::vector<LexEntry> impersonals = lexicon.impersonals;
  rng.shuffle(subjects);
  rng.shuffle(predicates);
  rng.shuffle(actions);
  rng.shuffle(impersonals);

  auto pop = [](auto& pool) {
    auto item = std::move(pool.back());
    pool.pop_back();
    return item;
  };

  LexAssignment assignment;
  for (const auto& symbol : inventory.propositions) {
    std::vector<AtomPattern> kinds;
    if (!actions.empty() && !subjects.empty()) kinds.push_back(AtomPattern::SubjectAction);
    if (!predicates.empty() && !subjects.empty())
      kinds.push_back(AtomPattern::SubjectPredicate);
    if (!impersonals.empty()) kinds.push_back(AtomPattern::Impersonal);
    if (kinds.empty())
      throw LogicError("assign_lexicon: lexicon pools exhausted for proposition " + symbol);
    PropositionPhrase phrase;
    phrase.pattern = kinds[static_cast<std::size_t>(rng.below(kinds.size()))];
    switch (phrase.pattern) {
      case AtomPattern::SubjectAction:
        phrase.subject = pop(subjects);
        phrase.entry = pop(actions);
        break;
      case AtomPattern::SubjectPredicate:
        phrase.subject = pop(subjects);
        phrase.entry = pop(predicates);
        break;
      case AtomPattern::Impersonal:
        phrase.entry = pop(impersonals);
        break;
    }
    assignment.propositions.emplace(symbol, std::move(phrase));
  }

  for (const auto& symbol : inventory.predicates) {
    std::vector<bool> kinds;
    if (!actions.empty()) kinds.push_back(true);
    if (!predicates.empty()) kinds.push_back(false);
    if (kinds.empty())
      throw LogicError("assign_lexicon: lexicon pools exhausted for predicate " + symbol);
    PredicatePhrase phrase;
    phrase.is_action = kinds[static_cast<std::size_t>(rng.below(kinds.size()))];
    phrase.entry = phrase.is_action ? pop(actions) : pop(predicates);
    assignment.predicates.emplace(symbol, std::move(phrase));
  }

  for (const auto& symbol : inventory.constants) {
    if (subjects.empty())
      throw LogicError("assign_lexicon: subject pool exhausted for constant " + symbol);
    assignment.constants.emplace(symbol, pop(subjects));
  }
  return assignment;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string atom_text(const PropositionPhrase& phrase, SentenceMode mode) {
  if (phrase.pattern == AtomPattern::Impersonal) return phrase.entry.form(mode);
  return phrase.subject + " " + phrase.entry.form(mode);
}

std::string subject_of(const Term& term, const LexAssignment& assignment) {
  if (term.kind == TKind::Variable) return term.name;  // variables stay literal
  auto it = assignment.constants.find(term.name);
  if (it == assignment.constants.end())
    throw LogicError("render_nl: unmapped constant " + term.name);
  return it->second;
}

// exists x: P(x) and Q(x) over two predicate-style entries.
bool some_pattern_applies(const Formula& f, const LexAssignment& assignment) {
  if (f.kind() != FKind::Exists) return false;
  Formula body = f.left();
  if (body.kind() != FKind::And) return false;
  Formula l = body.left(), r = body.right();
  if (l.kind() != FKind::Pred || r.kind() != FKind::Pred) return false;
  if (l.arg().kind != TKind::Variable || r.arg().kind != TKind::Variable) return false;
  auto lp = assignment.predicates.find(l.symbol());
  auto rp = assignment.predicates.find(r.symbol());
  return lp != assignment.predicates.end() && rp != assignment.predicates.end() &&
         !lp->second.is_action && !rp->second.is_action;
}

}  // namespace

std::string render_nl(const Formula& f, const LexAssignment& assignment, SentenceMode mode) {
  switch (f.kind()) {
    case FKind::Atom: {
      auto it = assignment.propositions.find(f.symbol());
      if (it == assignment.propositions.end())
        throw LogicError("render_nl: unmapped proposition " + f.symbol());
      return atom_text(it->second, mode);
    }
    case FKind::Pred: {
      auto it = assignment.predicates.find(f.symbol());
      if (it == assignment.predicates.end())
        throw LogicError("render_nl: unmapped predicate " + f.symbol());
      return subject_of(f.arg(), assignment) + " " + it->second.entry.form(mode);
    }
    case FKind::Not: {
      Formula inner = f.left();
      if (inner.is_atomic()) {
        SentenceMode negated =
            (mode == SentenceMode::Condition || mode == SentenceMode::NegatedCondition)
                ? SentenceMode::NegatedCondition
                : SentenceMode::Negated;
        return render_nl(inner, assignment, negated);
      }
      return "it is not the case that " + render_nl(inner, assignment, SentenceMode::Declarative);
    }
    case FKind::And:
      return render_nl(f.left(), assignment, mode) + " and " +
             render_nl(f.right(), assignment, mode);
    case FKind::Or:
      return render_nl(f.left(), assignment, mode) + " or " +
             render_nl(f.right(), assignment, mode);
    case FKind::Implies:
      return "if " + render_nl(f.left(), assignment, SentenceMode::Condition) + ", then " +
             render_nl(f.right(), assignment, SentenceMode::Declarative);
    case FKind::Iff:
      return render_nl(f.left(), assignment, SentenceMode::Declarative) + " if and only if " +
             render_nl(f.right(), assignment, SentenceMode::Declarative);
    case FKind::ForAll:
      return "for all " + f.symbol() + ", " +
             render_nl(f.left(), assignment, SentenceMode::Declarative);
    case FKind::Exists: {
      if (some_pattern_applies(f, assignment)) {
        Formula body = f.left();
        const auto& lp = assignment.predicates.at(body.left().symbol());
        const auto& rp = assignment.predicates.at(body.right().symbol());
        return "some " + lp.entry.some_subject + " are " + rp.entry.some_complement;
      }
      return "there is at least one " + f.symbol() + " for which " +
             render_nl(f.left(), assignment, SentenceMode::Declarative);
    }
  }
  throw LogicError("render_nl: invalid formula");
}

std::string nl_sentence(const Formula& f, const LexAssignment& assignment) {
  std::string text = render_nl(f, assignment, SentenceMode::Declarative);
  if (!text.empty() && text[0] >= 'a' && text[0] <= 'z')
    text[0] = static_cast<char>(text[0] - 'a' + 'A');
  return text + ".";
}

// ---------------------------------------------------------------------------
// Canonical naming

namespace {

std::string sequence_name(const std::vector<std::string>& bases, std::size_t index) {
  std::size_t round = index / bases.size();
  const std::string& base = bases[index % bases.size()];
  return round == 0 ? base : base + "_" + std::to_string(round);
}

}  // namespace

std::vector<Formula> canonicalize_type1(const std::vector<Formula>& formulas) {
  static const std::vector<std::string> prop_bases = {"p", "q", "r", "s", "t", "u", "w"};
  static const std::vector<std::string> pred_bases = {"P", "Q", "R", "S", "T", "U", "W"};
  static const std::vector<std::string> const_bases = {"a", "b", "c", "d", "e"};
  static const std::vector<std::string> var_bases = {"x", "y", "z"};

  SymbolInventory inv = collect_symbols(formulas);
  std::map<std::string, std::string> map;
  auto assign = [&map](const std::vector<std::string>& names,
                       const std::vector<std::string>& bases) {
    for (std::size_t i = 0; i < names.size(); ++i) map[names[i]] = sequence_name(bases, i);
  };
  assign(inv.propositions, prop_bases);
  assign(inv.predicates, pred_bases);
  assign(inv.constants, const_bases);
  assign(inv.variables, var_bases);

  std::vector<Formula> out;
  out.reserve(formulas.size());
  for (const auto& f : formulas) out.push_back(rename_symbols(f, map));
  return out;
}

}  // namespace loginf
