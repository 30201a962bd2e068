#pragma once

// Symbolic relational systems. Printing is canonical, so two expressions are
// equal exactly when their strings are.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cichon/cardctx.hpp"

namespace cichon {

/// The four Polish systems plus the meager ideal <M, M, ⊆>.
enum class Atom { Lc, Cn, Baire, Mg, Meager };

inline constexpr Atom kPrsAtoms[] = {Atom::Lc, Atom::Cn, Atom::Baire, Atom::Mg};

std::string_view to_string(Atom a);
/// Accepts the printed names and the aliases R1..R4.
std::optional<Atom> parse_atom(std::string_view s);
bool is_prs(Atom a);

class SysExpr {
 public:
  enum class Kind { Atom, CIdeal, Ideal, Ord, Card, Prod, Dual };

  static SysExpr atom(Atom a);
  /// C_{[X]^{<theta}} with |X| = index_size.
  static SysExpr cideal(CardinalName index_size, CardinalName theta);
  /// [X]^{<theta} ordered by inclusion.
  static SysExpr ideal(CardinalName index_size, CardinalName theta);
  /// A product of regulars as a linear order; a single factor becomes Card.
  static SysExpr ord(OrdinalExpr e);
  static SysExpr card(CardinalName mu);
  static SysExpr prod(std::vector<SysExpr> args);
  /// Dual(Dual(e)) collapses to e.
  static SysExpr dual(SysExpr e);

  Kind kind() const noexcept { return kind_; }
  Atom atom_kind() const { return atom_; }
  const CardinalName& index_size() const { return a_; }
  const CardinalName& theta() const { return b_; }
  const CardinalName& card_name() const { return a_; }
  const OrdinalExpr& ordinal() const { return ord_; }
  const std::vector<SysExpr>& args() const { return args_; }
  /// Operand of a Dual.
  const SysExpr& inner() const { return args_.front(); }

  bool is_prs_atom() const { return kind_ == Kind::Atom && is_prs(atom_); }

  const std::string& str() const noexcept { return text_; }

  friend bool operator==(const SysExpr& a, const SysExpr& b) { return a.text_ == b.text_; }

 private:
  SysExpr() = default;
  void render();

  Kind kind_ = Kind::Atom;
  Atom atom_ = Atom::Lc;
  CardinalName a_;
  CardinalName b_;
  OrdinalExpr ord_;
  std::vector<SysExpr> args_;
  std::string text_;
};

inline std::ostream& operator<<(std::ostream& os, const SysExpr& e) { return os << e.str(); }

/// Parses the printed form (InvalidExpression on failure).
SysExpr parse_sysexpr(std::string_view text);

/// Checks names against the context: CIdeal/Ideal need theta <= index_size,
/// Card and Ord need regular names.
void check_expr(const CardContext& ctx, const SysExpr& e);

/// Words the expression syntax claims; they cannot name cardinals.
bool is_reserved_word(std::string_view s);

}  // namespace cichon
