#pragma once

// Cardinal-characteristic values read off a closed fact database, and the
// eleven entries of the diagram as intervals of names.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cichon/cardctx.hpp"
#include "cichon/factdb.hpp"

namespace cichon {

/// [lo, hi] of names; hi absent means no upper bound is known.
struct Interval {
  CardinalName lo;
  std::optional<CardinalName> hi;

  bool pinned(const CardContext& ctx) const { return hi && ctx.equivalent(lo, *hi); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

std::string to_string(const Interval& iv, const CardContext& ctx);

struct ValueBounds {
  Interval b;
  Interval d;
};

/// Bounds for b(e) and d(e): intrinsic values for ideals, orders and products,
/// [aleph1, c] for atoms, then tightened along every stored fact until
/// nothing changes. Throws InconsistentBounds when some hi < lo.
ValueBounds value_bounds(const FactDB& db, const SysExpr& e);
/// The same computation for every expression the database knows.
std::vector<ValueBounds> all_value_bounds(const FactDB& db);

enum class Entry { addN, covN, addM, b, covM, nonM, d, cofM, nonN, cofN, c };

inline constexpr std::array<Entry, 11> kEntries = {Entry::addN, Entry::covN, Entry::addM, Entry::b,
                                                   Entry::covM, Entry::nonM, Entry::d,    Entry::cofM,
                                                   Entry::nonN, Entry::cofN, Entry::c};

/// addN, covN, ..., c as used in assignment files.
std::string_view key(Entry e);
std::optional<Entry> parse_entry(std::string_view s);

/// The ZFC arrows x <= y of the diagram (no ℵ1 or c arrows).
const std::vector<std::pair<Entry, Entry>>& diagram_arrows();

struct Constellation {
  std::map<Entry, Interval> values;

  const Interval& at(Entry e) const { return values.at(e); }
  bool fully_pinned(const CardContext& ctx) const;
  /// Pinned names per entry; nullopt when some entry is an interval.
  std::optional<std::map<Entry, CardinalName>> assignment(const CardContext& ctx) const;
};

/// Entries from the atoms' value bounds, then propagated along the arrows,
/// add(M) = min{b, cov(M)}, cof(M) = max{d, non(M)}, the ℵ1 floor and the
/// continuum ceiling. Throws InconsistentBounds.
Constellation constellation(const FactDB& db);

struct Violation {
  enum class Kind { Arrow, MinEquation, MaxEquation, Floor, Ceiling, Incomplete };
  Kind kind;
  std::vector<Entry> entries;
  std::string message;
};

std::string_view to_string(Violation::Kind k);

/// Every arrow, both equations, aleph1 <= entry <= c. A relation counts as
/// satisfied only when the context derives it.
std::vector<Violation> check_assignment(const CardContext& ctx, const std::map<Entry, CardinalName>& assignment);

/// One `entry = value` line per entry, intervals as `[lo, hi]`.
std::string format_table(const Constellation& c, const CardContext& ctx);
/// The diagram as a DOT digraph: ten entry nodes plus c, labelled with values.
std::string format_dot(const Constellation& c, const CardContext& ctx, std::string_view title = "cichon");

}  // namespace cichon
