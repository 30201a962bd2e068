#pragma once

// Symbolic cardinals: a finite set of named constants with a declared
// preorder, regularity flags and looked-up arithmetic assumptions. Nothing
// here computes cardinal arithmetic; it only answers what the declarations
// entail.

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace cichon {

class CardinalName {
 public:
  CardinalName() = default;
  CardinalName(std::string id) : id_(std::move(id)) {}
  CardinalName(const char* id) : id_(id) {}

  const std::string& str() const noexcept { return id_; }
  bool empty() const noexcept { return id_.empty(); }

  friend auto operator<=>(const CardinalName&, const CardinalName&) = default;

 private:
  std::string id_;
};

inline std::ostream& operator<<(std::ostream& os, const CardinalName& n) { return os << n.str(); }

inline const CardinalName kAleph0{"aleph0"};
inline const CardinalName kAleph1{"aleph1"};
inline const CardinalName kContinuum{"c"};

enum class Truth { False, True, Unknown };

struct Assumption {
  enum class Kind {
    PowLt,         // pow_lt(a,b)=a   a^{<b} = a
    Pow,           // pow(a,b)=a      a^b = a
    Inaccessible,  // inaccessible(a,b): mu^nu < a for mu < a, nu < b
    Succ,          // succ(a)=b
  };
  Kind kind;
  CardinalName a;
  CardinalName b;

  friend bool operator==(const Assumption&, const Assumption&) = default;
};

std::string to_string(const Assumption& a);

struct CardDecl {
  CardinalName name;
  bool regular = false;
  friend bool operator==(const CardDecl&, const CardDecl&) = default;
};

struct OrderDecl {
  CardinalName lo;
  CardinalName hi;
  bool strict = false;
  friend bool operator==(const OrderDecl&, const OrderDecl&) = default;
};

/// Ordered declarations; `build_context` turns them into a CardContext.
struct ContextSpec {
  std::vector<CardDecl> cards;
  std::vector<OrderDecl> order;
  std::vector<Assumption> assumptions;

  friend bool operator==(const ContextSpec&, const ContextSpec&) = default;

  ContextSpec& card(CardinalName name, bool regular = false);
  ContextSpec& le(CardinalName a, CardinalName b);
  ContextSpec& lt(CardinalName a, CardinalName b);
  ContextSpec& assume(Assumption a);
  ContextSpec& pow_lt(CardinalName a, CardinalName b);
  ContextSpec& pow(CardinalName a, CardinalName b);
  ContextSpec& inaccessible(CardinalName a, CardinalName b);
  ContextSpec& succ(CardinalName a, CardinalName b);
  /// Declares each name in order with `<` (or `<=` when !strict) between neighbours.
  ContextSpec& chain(std::span<const CardinalName> names, bool strict);
};

class CardContext {
 public:
  /// Names in declaration order, built-ins first.
  const std::vector<CardinalName>& names() const noexcept { return names_; }
  bool contains(const CardinalName& n) const { return index_.contains(n.str()); }
  /// Position in declaration order; throws UnknownName.
  std::size_t index_of(const CardinalName& n) const;

  bool is_regular(const CardinalName& n) const;

  /// True iff a <= b is derivable, False iff b < a is derivable.
  Truth leq(const CardinalName& a, const CardinalName& b) const;
  bool known_leq(const CardinalName& a, const CardinalName& b) const { return leq(a, b) == Truth::True; }
  bool known_lt(const CardinalName& a, const CardinalName& b) const { return leq(b, a) == Truth::False; }
  bool equivalent(const CardinalName& a, const CardinalName& b) const {
    return known_leq(a, b) && known_leq(b, a);
  }

  /// Order-theoretic min/max; nullopt when the two are not comparable.
  std::optional<CardinalName> min(const CardinalName& a, const CardinalName& b) const;
  std::optional<CardinalName> max(const CardinalName& a, const CardinalName& b) const;

  /// |mu ∩ N| for a model N of width `model_width` with width ⊆ N: min(mu, width).
  CardinalName trace(const CardinalName& mu, const CardinalName& model_width) const;

  const std::vector<Assumption>& assumptions() const noexcept { return assumptions_; }
  bool declared(const Assumption& a) const;

  /// a^{<b} = a, derivable from the declared assumptions.
  bool has_pow_lt(const CardinalName& a, const CardinalName& b) const;
  /// a^b = a, derivable from the declared assumptions.
  bool has_pow(const CardinalName& a, const CardinalName& b) const;
  bool is_inaccessible(const CardinalName& a, const CardinalName& b) const;
  std::optional<CardinalName> successor_of(const CardinalName& a) const;

  /// Regular names r with lo <= r <= hi derivable, in declaration order.
  std::vector<CardinalName> regulars_between(const CardinalName& lo, const CardinalName& hi) const;

  /// Names sorted ascending by the context order; ties and incomparable pairs
  /// keep declaration order.
  std::vector<CardinalName> sorted(std::vector<CardinalName> names) const;

 private:
  friend CardContext build_context(const ContextSpec& spec);

  void require(const CardinalName& n) const;

  std::vector<CardinalName> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<bool> regular_;
  // le_[i*n+j]: i <= j derivable; lt_[i*n+j]: i < j derivable.
  std::vector<bool> le_;
  std::vector<bool> lt_;
  std::vector<Assumption> assumptions_;
};

/// Errors: DuplicateName, UnknownName, OrderCycle.
CardContext build_context(const ContextSpec& spec);

/// Left-to-right ordinal product of regular cardinals, e.g. {lam5, lam4} = lam5·lam4.
struct OrdinalExpr {
  std::vector<CardinalName> factors;

  friend bool operator==(const OrdinalExpr&, const OrdinalExpr&) = default;
};

std::string to_string(const OrdinalExpr& e);

/// Checks every factor is declared and regular (UnknownName / NonRegularFactor).
void check_ordinal(const CardContext& ctx, const OrdinalExpr& e);
/// Cofinality of a product of regulars: its last factor.
CardinalName cf(const CardContext& ctx, const OrdinalExpr& e);
/// Cardinality of the product: the largest factor (IncomparableFactors otherwise).
CardinalName card(const CardContext& ctx, const OrdinalExpr& e);

}  // namespace cichon

template <>
struct std::hash<cichon::CardinalName> {
  std::size_t operator()(const cichon::CardinalName& n) const noexcept {
    return std::hash<std::string>{}(n.str());
  }
};
