#include "cichon/sysexpr.hpp"

#include <algorithm>
#include <cctype>

#include "cichon/error.hpp"

namespace cichon {

std::string_view to_string(Atom a) {
  switch (a) {
    case Atom::Lc: return "Lc*";
    case Atom::Cn: return "Cn";
    case Atom::Baire: return "ww";
    case Atom::Mg: return "Mg";
    case Atom::Meager: return "M";
  }
  return "?";
}

std::optional<Atom> parse_atom(std::string_view s) {
  if (s == "Lc*" || s == "R1") return Atom::Lc;
  if (s == "Cn" || s == "R2") return Atom::Cn;
  if (s == "ww" || s == "R3") return Atom::Baire;
  if (s == "Mg" || s == "R4") return Atom::Mg;
  if (s == "M") return Atom::Meager;
  return std::nullopt;
}

bool is_prs(Atom a) { return a != Atom::Meager; }

bool is_reserved_word(std::string_view s) {
  static constexpr std::string_view words[] = {"Lc", "Lc*", "Cn", "ww", "Mg", "M",    "R1",  "R2",
                                               "R3", "R4",  "C",  "I",  "Ord", "Prod", "Dual"};
  return std::find(std::begin(words), std::end(words), s) != std::end(words);
}

SysExpr SysExpr::atom(Atom a) {
  SysExpr e;
  e.kind_ = Kind::Atom;
  e.atom_ = a;
  e.render();
  return e;
}

SysExpr SysExpr::cideal(CardinalName index_size, CardinalName theta) {
  SysExpr e;
  e.kind_ = Kind::CIdeal;
  e.a_ = std::move(index_size);
  e.b_ = std::move(theta);
  e.render();
  return e;
}

SysExpr SysExpr::ideal(CardinalName index_size, CardinalName theta) {
  SysExpr e = cideal(std::move(index_size), std::move(theta));
  e.kind_ = Kind::Ideal;
  e.render();
  return e;
}

SysExpr SysExpr::ord(OrdinalExpr o) {
  if (o.factors.empty()) throw Error(ErrorKind::InvalidExpression, "empty ordinal product");
  if (o.factors.size() == 1) return card(o.factors.front());
  SysExpr e;
  e.kind_ = Kind::Ord;
  e.ord_ = std::move(o);
  e.render();
  return e;
}

SysExpr SysExpr::card(CardinalName mu) {
  SysExpr e;
  e.kind_ = Kind::Card;
  e.a_ = std::move(mu);
  e.render();
  return e;
}

SysExpr SysExpr::prod(std::vector<SysExpr> args) {
  if (args.empty()) throw Error(ErrorKind::InvalidExpression, "empty product");
  if (args.size() == 1) return std::move(args.front());
  SysExpr e;
  e.kind_ = Kind::Prod;
  e.args_ = std::move(args);
  e.render();
  return e;
}

SysExpr SysExpr::dual(SysExpr inner) {
  if (inner.kind_ == Kind::Dual) return inner.args_.front();
  SysExpr e;
  e.kind_ = Kind::Dual;
  e.args_.push_back(std::move(inner));
  e.render();
  return e;
}

void SysExpr::render() {
  switch (kind_) {
    case Kind::Atom: text_ = std::string(to_string(atom_)); break;
    case Kind::CIdeal: text_ = "C(" + a_.str() + "," + b_.str() + ")"; break;
    case Kind::Ideal: text_ = "I(" + a_.str() + "," + b_.str() + ")"; break;
    case Kind::Ord: text_ = "Ord(" + to_string(ord_) + ")"; break;
    case Kind::Card: text_ = a_.str(); break;
    case Kind::Prod:
      text_ = "Prod(";
      for (std::size_t i = 0; i < args_.size(); ++i) {
        if (i) text_ += ",";
        text_ += args_[i].text_;
      }
      text_ += ")";
      break;
    case Kind::Dual: text_ = "Dual(" + args_.front().text_ + ")"; break;
  }
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  SysExpr parse_all() {
    SysExpr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::InvalidExpression,
                "cannot parse '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a name");
    std::string w(s_.substr(start, pos_ - start));
    if (w == "Lc" && pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      w = "Lc*";
    }
    return w;
  }

  SysExpr expr() {
    std::string w = word();
    if (auto a = parse_atom(w)) return SysExpr::atom(*a);
    if (w == "C" || w == "I") {
      expect('(');
      std::string x = word();
      expect(',');
      std::string t = word();
      expect(')');
      return w == "C" ? SysExpr::cideal(x, t) : SysExpr::ideal(x, t);
    }
    if (w == "Ord") {
      expect('(');
      OrdinalExpr o;
      o.factors.emplace_back(word());
      while (accept('*')) o.factors.emplace_back(word());
      expect(')');
      return SysExpr::ord(std::move(o));
    }
    if (w == "Prod") {
      expect('(');
      std::vector<SysExpr> args{expr()};
      while (accept(',')) args.push_back(expr());
      expect(')');
      return SysExpr::prod(std::move(args));
    }
    if (w == "Dual") {
      expect('(');
      SysExpr e = expr();
      expect(')');
      return SysExpr::dual(std::move(e));
    }
    if (is_reserved_word(w)) fail("reserved word '" + w + "'");
    return SysExpr::card(w);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

SysExpr parse_sysexpr(std::string_view text) { return ExprParser(text).parse_all(); }

void check_expr(const CardContext& ctx, const SysExpr& e) {
  switch (e.kind()) {
    case SysExpr::Kind::Atom: return;
    case SysExpr::Kind::CIdeal:
    case SysExpr::Kind::Ideal:
      if (!ctx.known_leq(e.theta(), e.index_size())) {
        throw Error(ErrorKind::InvalidExpression, e.str() + ": " + e.theta().str() + " <= " +
                                                      e.index_size().str() + " is not derivable");
      }
      return;
    case SysExpr::Kind::Ord: check_ordinal(ctx, e.ordinal()); return;
    case SysExpr::Kind::Card:
      if (!ctx.is_regular(e.card_name())) {
        throw Error(ErrorKind::NonRegularFactor, "'" + e.card_name().str() + "' is not regular");
      }
      return;
    case SysExpr::Kind::Prod:
    case SysExpr::Kind::Dual:
      for (const auto& a : e.args()) check_expr(ctx, a);
      return;
  }
}

}  // namespace cichon
