#pragma once

// Finite relational systems <X, Y, rel> with X = [0, x_size), Y = [0, y_size).

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cichon/cover.hpp"

namespace cichon {

/// A natural number or TOP (no witnessing set exists). TOP is above every natural.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::size_t v) : v_(v) {}
  static constexpr ExtNat top() { return ExtNat{}; }

  constexpr bool is_top() const noexcept { return !v_.has_value(); }
  constexpr std::size_t value() const { return v_.value(); }

  friend constexpr bool operator==(const ExtNat&, const ExtNat&) = default;
  friend constexpr std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
    if (a.is_top() || b.is_top()) return a.is_top() <=> b.is_top();
    return *a.v_ <=> *b.v_;
  }

 private:
  std::optional<std::size_t> v_;
};

ExtNat ext_min(ExtNat a, ExtNat b);
ExtNat ext_max(ExtNat a, ExtNat b);
/// TOP absorbs.
ExtNat ext_mul(ExtNat a, ExtNat b);
std::string to_string(ExtNat n);
std::ostream& operator<<(std::ostream& os, ExtNat n);

struct Limits {
  std::size_t max_side = 12;          // |X|, |Y| for b/d
  std::size_t max_product_side = 64;  // sides of a product system
  double search_space = 1e8;          // |X'|^|X| * |Y|^|Y'| for tukey_search
};

class FinSys {
 public:
  FinSys(std::size_t x_size, std::size_t y_size);
  /// rows[x][y] == rel(x, y).
  static FinSys from_rows(const std::vector<std::vector<bool>>& rows);

  std::size_t x_size() const noexcept { return rows_.size(); }
  std::size_t y_size() const noexcept { return y_size_; }

  bool rel(std::size_t x, std::size_t y) const { return (rows_.at(x) >> y) & 1U; }
  void set(std::size_t x, std::size_t y, bool v);

  /// {y : x rel y}
  Mask row(std::size_t x) const { return rows_.at(x); }
  /// {x : x rel y}
  Mask cone(std::size_t y) const;

  friend bool operator==(const FinSys&, const FinSys&) = default;

 private:
  std::size_t y_size_;
  std::vector<Mask> rows_;
};

/// Smallest dominating D ⊆ Y; TOP when some x is in no cone.
ExtNat d_num(const FinSys& r, const Limits& lim = {});
/// Smallest unbounded F ⊆ X; TOP when some cone is all of X.
ExtNat b_num(const FinSys& r, const Limits& lim = {});

FinSys dual(const FinSys& r);
/// Pairs are indexed x * x_size(r2) + x2 and y * y_size(r2) + y2.
FinSys product(const FinSys& r, const FinSys& r2, const Limits& lim = {});

struct TukeyMorphism {
  std::vector<std::size_t> psi_minus;  // X -> X'
  std::vector<std::size_t> psi_plus;   // Y' -> Y

  friend bool operator==(const TukeyMorphism&, const TukeyMorphism&) = default;
};

/// psi_minus(x) rel' y'  =>  x rel psi_plus(y').
bool is_tukey(const FinSys& r, const FinSys& r2, const TukeyMorphism& m);

/// Lexicographically first connection r -> r2, or nullopt if none exists.
std::optional<TukeyMorphism> tukey_search(const FinSys& r, const FinSys& r2, const Limits& lim = {});

struct FinIdeal {
  std::size_t ground_size = 0;
  std::vector<Mask> members;

  friend bool operator==(const FinIdeal&, const FinIdeal&) = default;
};

/// All subsets of [n] with fewer than k elements, ordered by size then value.
FinIdeal small_sets(std::size_t n, std::size_t k);

struct IdealSystems {
  FinSys ideal;  // <I, I, ⊆>
  FinSys cover;  // <[n], I, ∈>
};

IdealSystems ideal_systems(std::size_t n, std::size_t k);
/// Requires a downward closed family; BadParameters otherwise.
IdealSystems ideal_systems(const FinIdeal& ideal);

struct Preorder {
  FinSys sys;
  bool directed = false;
};

Preorder from_preorder(const std::vector<std::vector<bool>>& rel);

FinSys parse_finsys(std::string_view text);
std::string format_finsys(const FinSys& r);
FinIdeal parse_finideal(std::string_view text);
std::string format_finideal(const FinIdeal& ideal);

}  // namespace cichon
