#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cichon {

/// Bitmask over at most 64 points.
using Mask = std::uint64_t;

/// Exact minimum set cover of `universe` by members of `sets`; returns the
/// indices of an optimal subfamily, or nullopt when some point is in no set.
std::optional<std::vector<std::size_t>> min_set_cover(Mask universe, std::span<const Mask> sets);

/// Exact minimum hitting set: a smallest set of points meeting every member of
/// `family` (points range over [0, points)). nullopt when a member is empty.
std::optional<std::vector<std::size_t>> min_hitting_set(std::size_t points, std::span<const Mask> family);

}  // namespace cichon
