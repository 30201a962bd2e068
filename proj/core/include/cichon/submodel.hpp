#pragma once

// Intersecting a ccc poset with chains of elementary submodels, tracked as
// (below-set, b, d) rows for the four directed orders S_1..S_4.

#include <array>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cichon/constellation.hpp"
#include "cichon/error.hpp"
#include "cichon/factdb.hpp"

namespace cichon {

/// A closure degree: a name, or the declared successor of one.
struct ClosureRef {
  CardinalName name;
  bool succ = false;

  friend bool operator==(const ClosureRef&, const ClosureRef&) = default;
};

std::string to_string(const ClosureRef& c);

struct ChainSpec {
  enum class Kind { D, B, Final };
  Kind kind = Kind::Final;
  /// 1..4; unused for Final.
  int index = 0;
  /// Chain length; for Final the width alone matters and length is empty.
  CardinalName length;
  ClosureRef closure;
  CardinalName width;

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
};

/// "chain d 4", "chain b 1", "final".
std::string label(const ChainSpec& c);

struct GksBase {
  std::array<CardinalName, 4> theta;
  CardinalName theta_inf;

  friend bool operator==(const GksBase&, const GksBase&) = default;
};

struct Plan {
  std::string name;
  GksBase base;
  std::vector<ChainSpec> steps;

  friend bool operator==(const Plan&, const Plan&) = default;
};

struct SysState {
  /// Regulars mu with Card(mu) <= S, ascending.
  std::vector<CardinalName> below;
  CardinalName b;
  CardinalName d;

  friend bool operator==(const SysState&, const SysState&) = default;
};

/// states[0] is S_1.
using States = std::array<SysState, 4>;

struct Snapshot {
  std::string label;
  States states;
};

struct TableLog {
  std::vector<Snapshot> snapshots;
  /// Lambda_i per index i, recorded on b-step i.
  std::map<int, SysExpr> product_bounds;
  /// Steps where the two readings of the closure bound would differ.
  std::vector<std::string> notes;
};

/// S_i from the gksmax model on theta_1..theta_4, theta_inf: below = the
/// declared regulars in [theta_i, theta_inf], b = theta_i, d = theta_inf.
/// Throws MissingAssumption when a gksmax hypothesis is not derivable.
States init_from_gksmax(const CardContext& ctx, const GksBase& base);

/// One chain intersection of plan `p`, which supplies b(S_i) = theta_i and
/// lambda_i^d for the product-bound rule. Throws Unpinned when the bounds
/// fail to meet.
States step(const States& in, const ChainSpec& c, const CardContext& ctx, const Plan& p, TableLog* log = nullptr);

/// Checks the canonical order d4, b4, ..., d1, b1, final, shrinking widths
/// and the assumptions each chain needs. Throws PlanOrderViolation or
/// MissingAssumption.
void check_plan(const CardContext& ctx, const Plan& p);

/// Snapshots after init and after each chain step (final adds none).
TableLog run_tables(const CardContext& ctx, const Plan& p);

/// Lambda_i = Prod(lambda_j^d, lambda_j^b for j = i..4) read from the plan.
SysExpr product_bound(const Plan& p, int i);
/// lambda_i^b, lambda_i^d and lambda^c.
std::set<CardinalName> plan_targets(const Plan& p);
/// The continuum of the final step.
CardinalName plan_continuum(const Plan& p);

inline constexpr const char* kRuleChainProduct = "chain-product";
inline constexpr const char* kRuleChainEmbed = "chain-embed";

void register_plan_checkers(FactDB& db, const Plan& p);
/// Checkers only, c forced to the final width, for trace replay.
FactDB empty_plan_db(std::shared_ptr<const CardContext> ctx, const Plan& p);

struct PlanResult {
  TableLog log;
  FactDB db;
  Constellation constellation;
};

/// Tables, then R_i <= Lambda_i and Card(mu) <= R_i for every mu in the last
/// below-sets, closed, with the constellation under c = final width.
PlanResult run_plan(std::shared_ptr<const CardContext> ctx, const Plan& p, const CloseOptions& opts = {});

/// Below-set text: non-target members as `[lo, hi]` (or one name), then
/// targets ascending, comma separated.
std::string format_below(const std::vector<CardinalName>& below, const std::set<CardinalName>& targets,
                         const CardContext& ctx);
/// Every snapshot as a fixed-width `i | below | b | d` table.
std::string format_tables(const TableLog& log, const std::set<CardinalName>& targets, const CardContext& ctx);

/// Names used by `cichon_max_context` and `canonical_plan`.
struct CichonMaxNames {
  std::array<CardinalName, 4> lambda_b{"lambda1b", "lambda2b", "lambda3b", "lambda4b"};
  std::array<CardinalName, 4> lambda_d{"lambda1d", "lambda2d", "lambda3d", "lambda4d"};
  CardinalName lambda_c{"lambdac"};
  std::array<CardinalName, 4> theta_minus{"theta1m", "theta2m", "theta3m", "theta4m"};
  std::array<CardinalName, 4> theta_minus_succ{"theta1ms", "theta2ms", "theta3ms", "theta4ms"};
  std::array<CardinalName, 4> theta{"theta1", "theta2", "theta3", "theta4"};
  CardinalName theta_inf{"theta_inf"};
};

/// aleph1 <= l1b <= ... <= l4b <= l4d <= ... <= l1d <= lc < theta1m <
/// succ(theta1m) <= theta1 < theta2m < ... < theta4 < theta_inf, with every
/// assumption the plan and the gksmax base need.
ContextSpec cichon_max_context(const CichonMaxNames& n = {});
Plan canonical_plan(const CichonMaxNames& n = {});

}  // namespace cichon
