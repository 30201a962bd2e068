#pragma once

// Tukey facts A <= B between symbolic systems, each carrying the rule that
// produced it, and their closure under the general rules.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cichon/cardctx.hpp"
#include "cichon/sysexpr.hpp"

namespace cichon {

using ExprId = std::size_t;
using FactId = std::size_t;

struct Justification {
  std::string rule;
  std::vector<FactId> premises;
  std::string citation;
  /// key=value strings the rule checker may need (e.g. "theta=lambda2").
  std::vector<std::string> params;

  friend bool operator==(const Justification&, const Justification&) = default;
};

struct TukeyFact {
  ExprId lhs;
  ExprId rhs;
  Justification why;
};

class FactDB;

/// Empty string when (lhs, rhs, why) is a correct instance of the rule.
using RuleChecker =
    std::function<std::string(const FactDB&, const SysExpr& lhs, const SysExpr& rhs, const Justification& why)>;

struct CloseOptions {
  std::size_t max_universe = 4096;
};

struct ReplayReport {
  std::size_t checked = 0;
  std::vector<std::pair<FactId, std::string>> failures;

  bool ok() const { return failures.empty(); }
};

class FactDB {
 public:
  explicit FactDB(std::shared_ptr<const CardContext> ctx, std::optional<CardinalName> forced_c = std::nullopt);

  const CardContext& ctx() const { return *ctx_; }
  const std::shared_ptr<const CardContext>& ctx_ptr() const { return ctx_; }
  const std::optional<CardinalName>& forced_c() const { return forced_c_; }
  /// forced_c, or the symbolic continuum.
  CardinalName continuum() const { return forced_c_.value_or(kContinuum); }

  ExprId intern(const SysExpr& e);
  std::optional<ExprId> find(const SysExpr& e) const;
  const SysExpr& expr(ExprId id) const { return exprs_.at(id); }
  std::size_t expr_count() const noexcept { return exprs_.size(); }

  /// Adds lhs <= rhs. Returns the new id, or nullopt when the fact is already
  /// known or lhs == rhs. Throws PreconditionFailed on a dangling premise.
  std::optional<FactId> add(const SysExpr& lhs, const SysExpr& rhs, Justification why);

  const std::vector<TukeyFact>& facts() const noexcept { return facts_; }
  const TukeyFact& fact(FactId id) const { return facts_.at(id); }
  std::optional<FactId> find_fact(const SysExpr& lhs, const SysExpr& rhs) const;
  /// a == b or a stored fact a <= b.
  bool leq(const SysExpr& a, const SysExpr& b) const;
  bool equiv(const SysExpr& a, const SysExpr& b) const { return leq(a, b) && leq(b, a); }

  /// Least fixpoint under transitivity, duality, projections, regular embeddings,
  /// ideal collapse, trivial ideal connections, small-ideal monotonicity and
  /// cofinality. Throws DivergentUniverse past opts.max_universe expressions.
  void close(const CloseOptions& opts = {});
  bool is_closed() const noexcept { return closed_; }

  void register_checker(const std::string& rule, RuleChecker fn);
  bool has_checker(const std::string& rule) const { return checkers_.contains(rule); }

  /// Validates one justification against the facts currently stored.
  std::string verify(const SysExpr& lhs, const SysExpr& rhs, const Justification& why) const;
  /// Re-validates every stored fact; premises must precede the fact.
  ReplayReport replay() const;

  /// (lhs, rhs) strings of every fact, for order-independent comparison.
  std::set<std::pair<std::string, std::string>> relation() const;

 private:
  void ground(ExprId id);
  void propagate(FactId id);
  std::string verify_builtin(const SysExpr& lhs, const SysExpr& rhs, const Justification& why) const;

  std::shared_ptr<const CardContext> ctx_;
  std::optional<CardinalName> forced_c_;
  std::vector<SysExpr> exprs_;
  std::unordered_map<std::string, ExprId> expr_index_;
  std::vector<TukeyFact> facts_;
  std::map<std::pair<ExprId, ExprId>, FactId> fact_index_;
  std::vector<std::vector<FactId>> out_;  // facts with lhs = id
  std::vector<std::vector<FactId>> in_;   // facts with rhs = id
  std::map<std::string, RuleChecker> checkers_;
  std::size_t grounded_ = 0;
  std::size_t propagated_ = 0;
  bool closed_ = false;
};

/// The Cichoń diagram connections with C_{[R]^{<aleph1}} read as C(c, aleph1).
std::vector<std::pair<SysExpr, SysExpr>> diagram_edges(const CardinalName& continuum);

/// Adds the diagram edges, the Polish-system facts Mg <= R and nothing else.
void seed_base_facts(FactDB& db);
FactDB base_facts(std::shared_ptr<const CardContext> ctx, std::optional<CardinalName> forced_c = std::nullopt);

/// `#id LHS <= RHS  [rule; #p,#q; "citation"; k=v,...]`
std::string format_fact(const FactDB& db, FactId id);
std::string format_trace(const FactDB& db);

struct TraceEntry {
  FactId id;
  SysExpr lhs;
  SysExpr rhs;
  Justification why;
};

TraceEntry parse_trace_line(std::string_view line);
/// Rebuilds facts line by line into `db` (which should hold no facts),
/// verifying each step first. Lines that fail are reported and skipped.
ReplayReport replay_trace(FactDB& db, std::string_view trace);

}  // namespace cichon
