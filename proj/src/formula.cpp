#include "formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

namespace loginf {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

std::string base_of(const std::string& name) {
  auto pos = name.find('_');
  return pos == std::string::npos ? name : name.substr(0, pos);
}

}  // namespace

Formula Formula::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Atom;
  n->symbol = std::move(name);
  return Formula(n);
}

Formula Formula::pred(std::string pred_name, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Pred;
  n->symbol = std::move(pred_name);
  n->arg = std::move(arg);
  return Formula(n);
}

Formula Formula::negate(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Not;
  n->a = f.node_;
  return Formula(n);
}

Formula Formula::conj(Formula l, Formula r) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::And;
  n->a = l.node_;
  n->b = r.node_;
  return Formula(n);
}

Formula Formula::disj(Formula l, Formula r) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Or;
  n->a = l.node_;
  n->b = r.node_;
  return Formula(n);
}

Formula Formula::implies(Formula l, Formula r) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Implies;
  n->a = l.node_;
  n->b = r.node_;
  return Formula(n);
}

Formula Formula::iff(Formula l, Formula r) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Iff;
  n->a = l.node_;
  n->b = r.node_;
  return Formula(n);
}

Formula Formula::forall(std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::ForAll;
  n->symbol = std::move(var);
  n->a = body.node_;
  return Formula(n);
}

Formula Formula::exists(std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FKind::Exists;
  n->symbol = std::move(var);
  n->a = body.node_;
  return Formula(n);
}

bool Formula::is_atomic() const {
  return kind() == FKind::Atom || kind() == FKind::Pred;
}

bool Formula::is_literal() const {
  if (is_atomic()) return true;
  return kind() == FKind::Not && left().is_atomic();
}

bool Formula::quantifier_free() const {
  switch (kind()) {
    case FKind::Atom:
    case FKind::Pred:
      return true;
    case FKind::Not:
      return left().quantifier_free();
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
      return left().quantifier_free() && right().quantifier_free();
    case FKind::ForAll:
    case FKind::Exists:
      return false;
  }
  return false;
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->kind != o.node_->kind) return false;
  switch (node_->kind) {
    case FKind::Atom:
      return node_->symbol == o.node_->symbol;
    case FKind::Pred:
      return node_->symbol == o.node_->symbol && node_->arg == o.node_->arg;
    case FKind::Not:
      return left() == o.left();
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
      return left() == o.left() && right() == o.right();
    case FKind::ForAll:
    case FKind::Exists:
      return node_->symbol == o.node_->symbol && left() == o.left();
  }
  return false;
}

Formula negate_simpl(const Formula& f) {
  if (f.kind() == FKind::Not) return f.left();
  return Formula::negate(f);
}

Formula clause_negation(const Formula& f) {
  if (f.kind() == FKind::ForAll) return Formula::exists(f.symbol(), negate_simpl(f.left()));
  if (f.kind() == FKind::Exists) return Formula::forall(f.symbol(), negate_simpl(f.left()));
  return negate_simpl(f);
}

bool is_predicate_name(const std::string& name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name[0])) != 0;
}

bool is_variable_name(const std::string& name) {
  std::string base = base_of(name);
  return base == "x" || base == "y" || base == "z";
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Formula parse_clause() {
    skip_ws();
    if (peek_keyword("forall") || peek_keyword("exists")) {
      bool universal = peek_keyword("forall");
      take_ident();
      skip_ws();
      std::size_t var_pos = pos_;
      std::string var = take_ident();
      if (var.empty() || !is_variable_name(var))
        throw ParseError("expected quantified variable", var_pos);
      skip_ws();
      if (!consume(':')) throw ParseError("expected ':' after quantifier", pos_);
      Formula body = parse_implication();
      return universal ? Formula::forall(var, body) : Formula::exists(var, body);
    }
    return parse_implication();
  }

  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
  }

 private:
  Formula parse_implication() {
    Formula lhs = parse_junction();
    skip_ws();
    if (match("<->")) return Formula::iff(lhs, parse_implication());
    if (match("->")) return Formula::implies(lhs, parse_implication());
    return lhs;
  }

  Formula parse_junction() {
    Formula lhs = parse_unary();
    skip_ws();
    if (peek_keyword("and")) {
      while (peek_keyword("and")) {
        take_ident();
        lhs = Formula::conj(lhs, parse_unary());
        skip_ws();
      }
      if (peek_keyword("or"))
        throw ParseError("'and' and 'or' may not be mixed without parentheses", pos_);
      return lhs;
    }
    if (peek_keyword("or")) {
      while (peek_keyword("or")) {
        take_ident();
        lhs = Formula::disj(lhs, parse_unary());
        skip_ws();
      }
      if (peek_keyword("and"))
        throw ParseError("'and' and 'or' may not be mixed without parentheses", pos_);
      return lhs;
    }
    return lhs;
  }

  Formula parse_unary() {
    skip_ws();
    if (consume('~')) return Formula::negate(parse_unary());
    if (consume('(')) {
      skip_ws();
      if (peek_keyword("forall") || peek_keyword("exists"))
        throw ParseError("quantifiers are only allowed at the top of a clause", pos_);
      Formula inner = parse_implication();
      skip_ws();
      if (!consume(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    std::size_t start = pos_;
    std::string name = take_ident();
    if (name.empty()) throw ParseError("expected a formula", pos_);
    if (name == "forall" || name == "exists")
      throw ParseError("quantifiers are only allowed at the top of a clause", start);
    if (name == "and" || name == "or") throw ParseError("misplaced connective", start);
    skip_ws();
    if (consume('(')) {
      if (!is_predicate_name(name))
        throw ParseError("predicate names must start with an uppercase letter", start);
      skip_ws();
      std::size_t arg_pos = pos_;
      std::string arg = take_ident();
      if (arg.empty()) throw ParseError("expected predicate argument", arg_pos);
      if (is_predicate_name(arg)) throw ParseError("predicate argument must be a term", arg_pos);
      skip_ws();
      if (!consume(')')) throw ParseError("expected ')' after predicate argument", pos_);
      Term t;
      t.kind = is_variable_name(arg) ? TKind::Variable : TKind::Constant;
      t.name = arg;
      return Formula::pred(name, t);
    }
    if (is_predicate_name(name))
      throw ParseError("predicate used without an argument", start);
    return Formula::atom(name);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])) != 0)
      ++pos_;
  }

  bool consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool match(const std::string& s) {
    if (text_.compare(pos_, s.size(), s) == 0) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  bool peek_keyword(const std::string& kw) const {
    if (text_.compare(pos_, kw.size(), kw) != 0) return false;
    std::size_t after = pos_ + kw.size();
    return after >= text_.size() || !is_ident_char(text_[after]);
  }

  std::string take_ident() {
    skip_ws();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) return {};
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(const std::string& text) {
  if (text.empty()) throw ParseError("empty input", 0);
  Parser p(text);
  Formula f = p.parse_clause();
  p.expect_end();
  return f;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void render_rec(const Formula& f, std::string& out);

// Wraps `child` in parentheses when its top connective would re-associate
// under the parent; same-operator chains on the natural side stay bare.
void render_child(const Formula& child, FKind parent, bool right_side, std::string& out) {
  FKind k = child.kind();
  bool wrap = false;
  switch (parent) {
    case FKind::Implies:
    case FKind::Iff:
      if (right_side)
        wrap = (k == FKind::Implies || k == FKind::Iff) && k != parent;
      else
        wrap = k == FKind::Implies || k == FKind::Iff;
      break;
    case FKind::And:
    case FKind::Or:
      if (k == FKind::Implies || k == FKind::Iff)
        wrap = true;
      else if (k == FKind::And || k == FKind::Or)
        wrap = k != parent || right_side;  // left-associative chains render bare
      break;
    default:
      break;
  }
  if (wrap) {
    out += '(';
    render_rec(child, out);
    out += ')';
  } else {
    render_rec(child, out);
  }
}

void render_rec(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FKind::Atom:
      out += f.symbol();
      return;
    case FKind::Pred:
      out += f.symbol();
      out += '(';
      out += f.arg().name;
      out += ')';
      return;
    case FKind::Not: {
      out += '~';
      Formula inner = f.left();
      if (inner.is_atomic() || inner.kind() == FKind::Not) {
        render_rec(inner, out);
      } else {
        out += '(';
        render_rec(inner, out);
        out += ')';
      }
      return;
    }
    case FKind::And:
      render_child(f.left(), FKind::And, false, out);
      out += " and ";
      render_child(f.right(), FKind::And, true, out);
      return;
    case FKind::Or:
      render_child(f.left(), FKind::Or, false, out);
      out += " or ";
      render_child(f.right(), FKind::Or, true, out);
      return;
    case FKind::Implies:
      render_child(f.left(), FKind::Implies, false, out);
      out += " -> ";
      render_child(f.right(), FKind::Implies, true, out);
      return;
    case FKind::Iff:
      render_child(f.left(), FKind::Iff, false, out);
      out += " <-> ";
      render_child(f.right(), FKind::Iff, true, out);
      return;
    case FKind::ForAll:
    case FKind::Exists:
      out += f.kind() == FKind::ForAll ? "forall " : "exists ";
      out += f.symbol();
      out += ": ";
      render_rec(f.left(), out);
      return;
  }
}

}  // namespace

std::string render_formula(const Formula& f) {
  std::string out;
  render_rec(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Symbol bookkeeping

bool SymbolInventory::contains(const std::string& name) const {
  auto has = [&name](const std::vector<std::string>& v) {
    return std::find(v.begin(), v.end(), name) != v.end();
  };
  return has(propositions) || has(predicates) || has(constants) || has(variables);
}

void SymbolInventory::merge(const SymbolInventory& other) {
  auto extend = [](std::vector<std::string>& dst, const std::vector<std::string>& src) {
    for (const auto& s : src)
      if (std::find(dst.begin(), dst.end(), s) == dst.end()) dst.push_back(s);
  };
  extend(propositions, other.propositions);
  extend(predicates, other.predicates);
  extend(constants, other.constants);
  extend(variables, other.variables);
}

namespace {

enum class SymbolClass { Proposition, Predicate, Constant, Variable };

void record(SymbolInventory& inv, std::map<std::string, SymbolClass>& seen,
            const std::string& name, SymbolClass cls) {
  auto it = seen.find(name);
  if (it != seen.end()) {
    if (it->second != cls)
      throw LogicError("symbol '" + name + "' used in two different classes");
    return;
  }
  seen.emplace(name, cls);
  switch (cls) {
    case SymbolClass::Proposition: inv.propositions.push_back(name); break;
    case SymbolClass::Predicate: inv.predicates.push_back(name); break;
    case SymbolClass::Constant: inv.constants.push_back(name); break;
    case SymbolClass::Variable: inv.variables.push_back(name); break;
  }
}

void collect_rec(const Formula& f, SymbolInventory& inv,
                 std::map<std::string, SymbolClass>& seen) {
  switch (f.kind()) {
    case FKind::Atom:
      record(inv, seen, f.symbol(), SymbolClass::Proposition);
      return;
    case FKind::Pred:
      record(inv, seen, f.symbol(), SymbolClass::Predicate);
      record(inv, seen, f.arg().name,
             f.arg().kind == TKind::Variable ? SymbolClass::Variable : SymbolClass::Constant);
      return;
    case FKind::Not:
      collect_rec(f.left(), inv, seen);
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
      collect_rec(f.left(), inv, seen);
      collect_rec(f.right(), inv, seen);
      return;
    case FKind::ForAll:
    case FKind::Exists:
      record(inv, seen, f.symbol(), SymbolClass::Variable);
      collect_rec(f.left(), inv, seen);
      return;
  }
}

}  // namespace

SymbolInventory collect_symbols(const Formula& f) {
  SymbolInventory inv;
  std::map<std::string, SymbolClass> seen;
  collect_rec(f, inv, seen);
  return inv;
}

SymbolInventory collect_symbols(const std::vector<Formula>& fs) {
  SymbolInventory inv;
  std::map<std::string, SymbolClass> seen;
  for (const auto& f : fs) collect_rec(f, inv, seen);
  return inv;
}

namespace {

const std::string& mapped(const std::map<std::string, std::string>& map,
                          const std::string& name) {
  auto it = map.find(name);
  return it == map.end() ? name : it->second;
}

Formula rename_rec(const Formula& f, const std::map<std::string, std::string>& map) {
  switch (f.kind()) {
    case FKind::Atom:
      return Formula::atom(mapped(map, f.symbol()));
    case FKind::Pred: {
      Term t = f.arg();
      t.name = mapped(map, t.name);
      return Formula::pred(mapped(map, f.symbol()), t);
    }
    case FKind::Not:
      return Formula::negate(rename_rec(f.left(), map));
    case FKind::And:
      return Formula::conj(rename_rec(f.left(), map), rename_rec(f.right(), map));
    case FKind::Or:
      return Formula::disj(rename_rec(f.left(), map), rename_rec(f.right(), map));
    case FKind::Implies:
      return Formula::implies(rename_rec(f.left(), map), rename_rec(f.right(), map));
    case FKind::Iff:
      return Formula::iff(rename_rec(f.left(), map), rename_rec(f.right(), map));
    case FKind::ForAll:
      return Formula::forall(mapped(map, f.symbol()), rename_rec(f.left(), map));
    case FKind::Exists:
      return Formula::exists(mapped(map, f.symbol()), rename_rec(f.left(), map));
  }
  throw LogicError("rename_symbols: invalid formula");
}

}  // namespace

Formula rename_symbols(const Formula& f, const std::map<std::string, std::string>& map) {
  SymbolInventory inv = collect_symbols(f);
  auto check_class = [&map](const std::vector<std::string>& names, bool (*pred)(const std::string&),
                            const char* what) {
    for (const auto& n : names) {
      auto it = map.find(n);
      if (it != map.end() && !pred(it->second))
        throw LogicError(std::string("rename_symbols: '") + n + "' must stay a " + what);
    }
  };
  check_class(inv.predicates, is_predicate_name, "predicate");
  check_class(inv.variables, is_variable_name, "variable");
  auto check_lower = [&map](const std::vector<std::string>& names, const char* what) {
    for (const auto& n : names) {
      auto it = map.find(n);
      if (it != map.end() && (is_predicate_name(it->second) || is_variable_name(it->second)))
        throw LogicError(std::string("rename_symbols: '") + n + "' must stay a " + what);
    }
  };
  check_lower(inv.propositions, "proposition");
  check_lower(inv.constants, "constant");

  // Reject maps that merge two distinct symbols of f.
  std::set<std::string> images;
  std::vector<const std::vector<std::string>*> classes = {
      &inv.propositions, &inv.predicates, &inv.constants, &inv.variables};
  for (const auto* names : classes)
    for (const auto& n : *names)
      if (!images.insert(mapped(map, n)).second)
        throw LogicError("rename_symbols: map collides two distinct symbols on '" +
                         mapped(map, n) + "'");

  return rename_rec(f, map);
}

}  // namespace loginf
