#include "cichon/recipe_file.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "cichon/error.hpp"

namespace cichon {

namespace {

struct Token {
  enum class Kind { Word, Punct, End };
  Kind kind;
  std::string text;
  int line;
};

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// Newlines become `;` tokens so statements may end either way.
std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '\n') {
      out.push_back({Token::Kind::Punct, ";", line});
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      // `Lc*` is one word; `a*b` is a product.
      if (j < text.size() && text[j] == '*' && (j + 1 >= text.size() || !word_char(text[j + 1]))) ++j;
      out.push_back({Token::Kind::Word, std::string(text.substr(i, j - i)), line});
      i = j;
    } else if (std::string_view("{}(),=*;").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::Punct, std::string(1, c), line});
      ++i;
    } else {
      throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ": unexpected character '" +
                                              std::string(1, c) + "'");
    }
  }
  out.push_back({Token::Kind::End, "", line});
  return out;
}

[[noreturn]] void fail(ErrorKind k, int line, const std::string& msg) {
  throw Error(k, "line " + std::to_string(line) + ": " + msg);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  RecipeFile run() {
    RecipeFile f;
    bool have_context = false;
    skip_seps();
    while (peek().kind != Token::Kind::End) {
      const Token head = word("block keyword");
      if (head.text == "context") {
        if (have_context) fail(ErrorKind::SyntaxError, head.line, "second context block");
        have_context = true;
        context(f.context);
      } else if (head.text == "recipe") {
        f.recipes.push_back(recipe());
        unique(f.recipes.back().name, recipe_names_, head.line, "recipe");
      } else if (head.text == "plan") {
        f.plans.push_back(plan());
        unique(f.plans.back().name, plan_names_, head.line, "plan");
      } else if (head.text == "assign") {
        f.assigns.push_back(assign());
        unique(f.assigns.back().name, assign_names_, head.line, "assign");
      } else {
        fail(ErrorKind::SyntaxError, head.line, "expected context, recipe, plan or assign, got '" + head.text + "'");
      }
      skip_seps();
    }
    resolve();
    return f;
  }

 private:
  const Token& peek() const { return t_[pos_]; }
  Token next() { return t_[pos_ == t_.size() - 1 ? pos_ : pos_++]; }
  bool at(std::string_view p) const { return peek().kind == Token::Kind::Punct && peek().text == p; }
  void skip_seps() {
    while (at(";")) ++pos_;
  }

  Token word(const std::string& what) {
    Token tk = next();
    if (tk.kind != Token::Kind::Word) fail(ErrorKind::SyntaxError, tk.line, "expected " + what + ", got " + shown(tk));
    return tk;
  }

  CardinalName name(const std::string& what = "cardinal") {
    Token tk = word(what);
    refs_.push_back({tk.text, tk.line});
    return tk.text;
  }

  void expect(std::string_view p) {
    Token tk = next();
    if (tk.kind != Token::Kind::Punct || tk.text != p) {
      fail(ErrorKind::SyntaxError, tk.line, "expected '" + std::string(p) + "', got " + shown(tk));
    }
  }

  /// End of a statement: `;`/newline, or the closing brace which stays.
  void end_statement() {
    if (at("}")) return;
    expect(";");
  }

  static std::string shown(const Token& tk) {
    return tk.kind == Token::Kind::End ? "end of file" : tk.text == ";" ? "end of line" : "'" + tk.text + "'";
  }

  void open_block() {
    skip_seps();
    expect("{");
    skip_seps();
  }

  /// True (and consumes it) when the block closes.
  bool close_block() {
    skip_seps();
    if (!at("}")) {
      if (peek().kind == Token::Kind::End) fail(ErrorKind::SyntaxError, peek().line, "missing '}'");
      return false;
    }
    ++pos_;
    return true;
  }

  std::vector<CardinalName> args() {
    expect("(");
    std::vector<CardinalName> out{name()};
    while (at(",")) {
      ++pos_;
      out.push_back(name());
    }
    expect(")");
    return out;
  }

  void unique(const std::string& n, std::set<std::string>& seen, int line, const std::string& what) {
    if (!seen.insert(n).second) fail(ErrorKind::SyntaxError, line, "duplicate " + what + " '" + n + "'");
  }

  void context(ContextSpec& c) {
    open_block();
    while (!close_block()) {
      const Token kw = word("context statement");
      if (kw.text == "card") {
        const Token n = word("cardinal name");
        bool regular = false;
        if (peek().kind == Token::Kind::Word && peek().text == "regular") {
          ++pos_;
          regular = true;
        }
        if (!declared_.insert(n.text).second || n.text == "aleph0" || n.text == "aleph1" || n.text == "c") {
          fail(ErrorKind::SyntaxError, n.line, "cardinal '" + n.text + "' declared twice");
        }
        c.card(n.text, regular);
      } else if (kw.text == "lt" || kw.text == "le") {
        const CardinalName a = name(), b = name();
        kw.text == "lt" ? c.lt(a, b) : c.le(a, b);
      } else if (kw.text == "assume") {
        c.assume(assumption());
      } else {
        fail(ErrorKind::SyntaxError, kw.line, "unknown context statement '" + kw.text + "'");
      }
      end_statement();
    }
  }

  Assumption assumption() {
    const Token kw = word("assumption");
    using K = Assumption::Kind;
    if (kw.text == "inaccessible") {
      const auto a = args();
      if (a.size() != 2) fail(ErrorKind::SyntaxError, kw.line, "inaccessible takes two cardinals");
      return {K::Inaccessible, a[0], a[1]};
    }
    if (kw.text == "succ") {
      const auto a = args();
      expect("=");
      const CardinalName b = name();
      if (a.size() != 1) fail(ErrorKind::SyntaxError, kw.line, "succ takes one cardinal");
      return {K::Succ, a[0], b};
    }
    if (kw.text == "pow_lt" || kw.text == "pow") {
      const auto a = args();
      expect("=");
      const Token r = word("cardinal");
      if (a.size() != 2) fail(ErrorKind::SyntaxError, kw.line, kw.text + " takes two cardinals");
      if (r.text != a[0].str()) {
        fail(ErrorKind::SyntaxError, r.line, kw.text + "(" + a[0].str() + "," + a[1].str() + ") must equal " + a[0].str());
      }
      return {kw.text == "pow" ? K::Pow : K::PowLt, a[0], a[1]};
    }
    fail(ErrorKind::SyntaxError, kw.line, "unknown assumption '" + kw.text + "'");
  }

  RecipeEntry recipe() {
    RecipeEntry e;
    e.name = word("recipe name").text;
    if (at("=")) {
      ++pos_;
      const Token kind = word("builtin or axiom");
      if (kind.text != "builtin" && kind.text != "axiom") {
        fail(ErrorKind::SyntaxError, kind.line, "expected builtin or axiom, got '" + kind.text + "'");
      }
      e.kind = kind.text == "builtin" ? RecipeEntry::Kind::Builtin : RecipeEntry::Kind::Axiom;
      const Token model = word("model name");
      e.model = model.text;
      e.args = args();
      try {
        const std::size_t n = e.kind == RecipeEntry::Kind::Builtin ? builtin_arity(e.model) : axiom_arity(e.model);
        if (n != e.args.size()) {
          fail(ErrorKind::SyntaxError, model.line,
               e.model + " takes " + std::to_string(n) + " cardinals, got " + std::to_string(e.args.size()));
        }
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::SyntaxError) throw;
        fail(ErrorKind::SyntaxError, model.line, err.message());
      }
      end_statement();
      return e;
    }
    e.recipe.name = e.name;
    const int line = peek().line;
    bool have_length = false;
    open_block();
    while (!close_block()) {
      const Token kw = word("recipe statement");
      if (kw.text == "length") {
        e.recipe.length = ordinal();
        have_length = true;
      } else if (kw.text == "cc") {
        e.recipe.cc = name();
      } else if (kw.text == "slot") {
        e.recipe.slots.push_back(slot());
      } else {
        fail(ErrorKind::SyntaxError, kw.line, "unknown recipe statement '" + kw.text + "'");
      }
      end_statement();
    }
    if (!have_length) fail(ErrorKind::SyntaxError, line, "recipe " + e.name + " has no length");
    if (e.recipe.slots.empty()) fail(ErrorKind::SyntaxError, line, "recipe " + e.name + " has no slot");
    return e;
  }

  OrdinalExpr ordinal() {
    OrdinalExpr o;
    while (true) {
      Token tk = word("cardinal");
      bool more = false;
      if (tk.text.size() > 1 && tk.text.back() == '*') {
        tk.text.pop_back();
        more = true;
      }
      refs_.push_back({tk.text, tk.line});
      o.factors.emplace_back(tk.text);
      if (!more && at("*")) {
        ++pos_;
        more = true;
      }
      if (!more) break;
    }
    return o;
  }

  Slot slot() {
    const Token cls = word("iterand class");
    const auto kind = parse_iterand_kind(cls.text);
    if (!kind) fail(ErrorKind::SyntaxError, cls.line, "unknown iterand class '" + cls.text + "'");
    Slot s{{*kind, std::nullopt}, false, std::nullopt};
    if (at("(")) {
      const auto a = args();
      if (a.size() != 1) fail(ErrorKind::SyntaxError, cls.line, cls.text + " takes one cardinal");
      s.cls.theta = a[0];
    }
    while (peek().kind == Token::Kind::Word) {
      const Token kw = next();
      if (kw.text == "cofinal") {
        s.cofinal = true;
      } else if (kw.text == "bookkeeping") {
        const Token sys = word("system");
        const auto atom = parse_atom(sys.text);
        if (!atom || !is_prs(*atom)) fail(ErrorKind::SyntaxError, sys.line, "unknown system '" + sys.text + "'");
        const Token upto = word("upto");
        if (upto.text != "upto") fail(ErrorKind::SyntaxError, upto.line, "expected upto, got '" + upto.text + "'");
        s.bookkeeping = Bookkeeping{*atom, name()};
      } else {
        fail(ErrorKind::SyntaxError, kw.line, "unknown slot option '" + kw.text + "'");
      }
    }
    return s;
  }

  Plan plan() {
    using K = ChainSpec::Kind;
    Plan p;
    p.name = word("plan name").text;
    const int line = peek().line;
    bool have_base = false;
    std::set<std::pair<int, int>> seen;
    open_block();
    while (!close_block()) {
      const Token kw = word("plan statement");
      if (kw.text == "base") {
        const Token m = word("gksmax");
        if (m.text != "gksmax") fail(ErrorKind::SyntaxError, m.line, "plans start from gksmax, got '" + m.text + "'");
        const auto a = args();
        if (a.size() != 5) fail(ErrorKind::SyntaxError, m.line, "gksmax takes 5 cardinals");
        p.base = {{a[0], a[1], a[2], a[3]}, a[4]};
        have_base = true;
      } else if (kw.text == "chain") {
        const Token k = word("d or b");
        if (k.text != "d" && k.text != "b") fail(ErrorKind::SyntaxError, k.line, "chain kind is d or b");
        const Token idx = word("index");
        if (idx.text.size() != 1 || idx.text[0] < '1' || idx.text[0] > '4') {
          fail(ErrorKind::SyntaxError, idx.line, "chain index is 1..4");
        }
        ChainSpec c{k.text == "d" ? K::D : K::B, idx.text[0] - '0', {}, {}, {}};
        if (!seen.insert({static_cast<int>(c.kind), c.index}).second) {
          fail(ErrorKind::SyntaxError, kw.line, "duplicate " + label(c));
        }
        expect("(");
        c.length = name();
        expect(",");
        const Token cl = word("closure");
        if (cl.text == "succ" && at("(")) {
          ++pos_;
          c.closure = {name(), true};
          expect(")");
        } else {
          refs_.push_back({cl.text, cl.line});
          c.closure = {cl.text, false};
        }
        expect(",");
        c.width = name();
        expect(")");
        p.steps.push_back(std::move(c));
      } else if (kw.text == "final") {
        if (!seen.insert({static_cast<int>(K::Final), 0}).second) fail(ErrorKind::SyntaxError, kw.line, "duplicate final");
        expect("(");
        p.steps.push_back({K::Final, 0, {}, {kAleph1, false}, name()});
        expect(")");
      } else {
        fail(ErrorKind::SyntaxError, kw.line, "unknown plan statement '" + kw.text + "'");
      }
      end_statement();
    }
    if (!have_base) fail(ErrorKind::SyntaxError, line, "plan " + p.name + " has no base");
    for (int i = 4; i >= 1; --i) {
      for (K k : {K::D, K::B}) {
        if (!seen.contains({static_cast<int>(k), i})) {
          fail(ErrorKind::SyntaxError, line, "plan " + p.name + " is missing " + label({k, i, {}, {}, {}}));
        }
      }
    }
    if (!seen.contains({static_cast<int>(K::Final), 0})) {
      fail(ErrorKind::SyntaxError, line, "plan " + p.name + " is missing final");
    }
    return p;
  }

  AssignmentBlock assign() {
    AssignmentBlock a;
    a.name = word("assignment name").text;
    open_block();
    while (!close_block()) {
      const Token k = word("entry");
      const auto e = parse_entry(k.text);
      if (!e) fail(ErrorKind::SyntaxError, k.line, "unknown entry '" + k.text + "'");
      expect("=");
      if (!a.values.emplace(*e, name()).second) fail(ErrorKind::SyntaxError, k.line, "entry " + k.text + " given twice");
      end_statement();
    }
    return a;
  }

  void resolve() {
    for (const auto& [n, line] : refs_) {
      if (n == "aleph0" || n == "aleph1" || n == "c" || declared_.contains(n)) continue;
      fail(ErrorKind::UnresolvedName, line, "cardinal '" + n + "' is not declared in the context");
    }
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
  std::set<std::string> declared_;
  std::vector<std::pair<std::string, int>> refs_;
  std::set<std::string> recipe_names_, plan_names_, assign_names_;
};

std::string join(const std::vector<CardinalName>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s;
}

}  // namespace

const RecipeEntry* RecipeFile::recipe(std::string_view name) const {
  for (const auto& r : recipes) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

const Plan* RecipeFile::plan(std::string_view name) const {
  for (const auto& p : plans) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const AssignmentBlock* RecipeFile::assign(std::string_view name) const {
  for (const auto& a : assigns) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

RecipeFile parse_recipe_file(std::string_view text) { return Parser(lex(text)).run(); }

std::string print_recipe_file(const RecipeFile& f) {
  std::ostringstream os;
  os << "context {\n";
  for (const auto& c : f.context.cards) os << "  card " << c.name << (c.regular ? " regular" : "") << ";\n";
  for (const auto& o : f.context.order) os << "  " << (o.strict ? "lt " : "le ") << o.lo << ' ' << o.hi << ";\n";
  for (const auto& a : f.context.assumptions) os << "  assume " << to_string(a) << ";\n";
  os << "}\n";

  for (const auto& e : f.recipes) {
    os << "\nrecipe " << e.name;
    if (e.kind != RecipeEntry::Kind::Explicit) {
      os << " = " << (e.kind == RecipeEntry::Kind::Builtin ? "builtin " : "axiom ") << e.model << '('
         << join(e.args) << ");\n";
      continue;
    }
    os << " {\n  length ";
    for (std::size_t i = 0; i < e.recipe.length.factors.size(); ++i) {
      os << (i ? " * " : "") << e.recipe.length.factors[i];
    }
    os << ";\n  cc " << e.recipe.cc << ";\n";
    for (const auto& s : e.recipe.slots) {
      os << "  slot " << to_string(s.cls) << (s.cofinal ? " cofinal" : "");
      if (s.bookkeeping) os << " bookkeeping " << to_string(s.bookkeeping->system) << " upto " << s.bookkeeping->up_to;
      os << ";\n";
    }
    os << "}\n";
  }

  for (const auto& p : f.plans) {
    os << "\nplan " << p.name << " {\n  base gksmax(" << join({p.base.theta.begin(), p.base.theta.end()}) << ','
       << p.base.theta_inf << ");\n";
    for (const auto& s : p.steps) {
      if (s.kind == ChainSpec::Kind::Final) {
        os << "  final (" << s.width << ");\n";
      } else {
        os << "  " << label(s) << " (" << s.length << ", " << to_string(s.closure) << ", " << s.width << ");\n";
      }
    }
    os << "}\n";
  }

  for (const auto& a : f.assigns) {
    os << "\nassign " << a.name << " {\n";
    for (const auto& [e, v] : a.values) os << "  " << key(e) << '=' << v << ";\n";
    os << "}\n";
  }
  return os.str();
}

RecipeFile default_library() {
  RecipeFile f;
  ContextSpec& c = f.context;
  c.card("lambda", true).lt(kAleph1, "lambda").pow("lambda", kAleph0);
  const std::vector<CardinalName> l{"l1", "l2", "l3", "l4", "l5"};
  for (const auto& n : l) c.card(n, true);
  std::vector<CardinalName> chain{kAleph1};
  chain.insert(chain.end(), l.begin(), l.end());
  c.chain(chain, false);
  c.pow_lt("l5", "l3").pow_lt("l4", "l3");
  const ContextSpec m = cichon_max_context();
  c.cards.insert(c.cards.end(), m.cards.begin(), m.cards.end());
  c.order.insert(c.order.end(), m.order.begin(), m.order.end());
  c.assumptions.insert(c.assumptions.end(), m.assumptions.begin(), m.assumptions.end());

  for (const auto& name : builtin_names()) {
    const std::size_t n = builtin_arity(name);
    std::vector<CardinalName> args = n == 1 ? std::vector<CardinalName>{"lambda"}
                                            : std::vector<CardinalName>(l.begin(), l.begin() + static_cast<long>(n));
    f.recipes.push_back({RecipeEntry::Kind::Builtin, name, {}, name, std::move(args)});
  }
  const CichonMaxNames names;
  f.recipes.push_back({RecipeEntry::Kind::Axiom,
                       "gksmax",
                       {},
                       "gksmax",
                       {names.theta[0], names.theta[1], names.theta[2], names.theta[3], names.theta_inf}});
  f.plans.push_back(canonical_plan(names));

  auto assign = [](std::string name, std::vector<CardinalName> v) {
    AssignmentBlock a{std::move(name), {}};
    for (std::size_t i = 0; i < v.size(); ++i) a.values.emplace(kEntries[i], v[i]);
    return a;
  };
  // Entry order: addN covN addM b covM nonM d cofM nonN cofN c.
  const auto& lb = names.lambda_b;
  const auto& ld = names.lambda_d;
  f.assigns.push_back(
      assign("cichon_max", {lb[0], lb[1], lb[2], lb[2], ld[3], lb[3], ld[2], ld[2], ld[1], ld[0], names.lambda_c}));
  f.assigns.push_back(assign("mod1", {"l1", "l2", "l3", "l3", "l4", "l4", "l5", "l5", "l5", "l5", "l5"}));
  // b raised above non(M): breaks b <= non(M) and add(M) = min(b, cov(M)).
  f.assigns.push_back(assign("mod1_swapped", {"l1", "l2", "l3", "l4", "l4", "l3", "l5", "l5", "l5", "l5", "l5"}));
  f.assigns.push_back(assign("incomplete", {"l1", "l2", "l3"}));
  return f;
}

std::shared_ptr<const CardContext> build_file_context(const RecipeFile& f) {
  return std::make_shared<const CardContext>(build_context(f.context));
}

std::optional<Recipe> entry_recipe(const RecipeEntry& e) {
  switch (e.kind) {
    case RecipeEntry::Kind::Explicit: return e.recipe;
    case RecipeEntry::Kind::Builtin: return builtin_recipe(e.model, e.args);
    case RecipeEntry::Kind::Axiom: break;
  }
  return std::nullopt;
}

DerivedModel run_entry(std::shared_ptr<const CardContext> ctx, const RecipeEntry& e, const RunOptions& opts) {
  if (e.kind == RecipeEntry::Kind::Axiom) return axiom_model(std::move(ctx), e.model, e.args, opts.close);
  return run_recipe(std::move(ctx), *entry_recipe(e), opts);
}

FactDB empty_entry_db(std::shared_ptr<const CardContext> ctx, const RecipeEntry& e) {
  if (e.kind == RecipeEntry::Kind::Axiom) return empty_axiom_db(std::move(ctx), e.model, e.args);
  return empty_recipe_db(std::move(ctx), *entry_recipe(e));
}

}  // namespace cichon
