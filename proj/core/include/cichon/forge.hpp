#pragma once

// Finite-support iteration recipes and the rules that turn them into Tukey
// facts. The rules are trusted: they check their hypotheses against the
// context and emit conclusions, nothing more.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cichon/constellation.hpp"
#include "cichon/error.hpp"
#include "cichon/factdb.hpp"

namespace cichon {

enum class IterandKind { Cohen, Random, EvDiff, Hechler, Loc, RandomSub, HechlerSub, LocSub };

struct IterandClass {
  IterandKind kind = IterandKind::Cohen;
  /// Size bound of the Sub(theta) classes.
  std::optional<CardinalName> theta;

  bool is_sub() const;
  friend bool operator==(const IterandClass&, const IterandClass&) = default;
};

/// "Hechler", "LocSub(lambda1)", ...
std::string to_string(const IterandClass& c);
std::optional<IterandKind> parse_iterand_kind(std::string_view s);
bool kind_is_sub(IterandKind k);

/// Systems the full class adds dominating reals for (empty for Sub classes,
/// which only dominate over small models).
std::vector<SysExpr> adds_dominating(const IterandClass& c);
/// The system a Sub class's bookkeeping may dominate, i.e. that of its base.
std::vector<SysExpr> base_dominating(const IterandClass& c);

struct Goodness {
  CardinalName threshold;
  Atom system;
};

/// theta-R-goodness rows. Sub(theta) classes inherit their base's rows and
/// are theta-R-good for every Polish R.
std::vector<Goodness> goodness(const IterandClass& c);
/// Whether c is theta-R-good: some row with threshold <= theta.
bool is_good(const CardContext& ctx, const IterandClass& c, Atom r, const CardinalName& theta);

struct Bookkeeping {
  Atom system = Atom::Lc;
  CardinalName up_to;
  friend bool operator==(const Bookkeeping&, const Bookkeeping&) = default;
};

struct Slot {
  IterandClass cls;
  bool cofinal = false;
  std::optional<Bookkeeping> bookkeeping;
  friend bool operator==(const Slot&, const Slot&) = default;
};

struct Recipe {
  std::string name;
  OrdinalExpr length;
  CardinalName cc = kAleph1;
  std::vector<Slot> slots;
  friend bool operator==(const Recipe&, const Recipe&) = default;
};

struct Diagnostic {
  ErrorKind kind;
  std::string message;
};

/// Every hypothesis the rules will rely on. Empty means the recipe is usable.
std::vector<Diagnostic> validate(const CardContext& ctx, const Recipe& r);

/// A conclusion of a rule before it is stored.
struct RuleFact {
  SysExpr lhs;
  SysExpr rhs;
  std::vector<std::string> params;
};

// Rule identifiers as they appear in traces.
inline constexpr const char* kRuleCofinal = "cofinal-dominating";
inline constexpr const char* kRuleCohenLimit = "cohen-limit";
inline constexpr const char* kRuleSmallModels = "small-models";
inline constexpr const char* kRuleGoodIteration = "good-iteration";
inline constexpr const char* kRuleAxiom = "axiom-model";

// Pure rule conclusions; throw PreconditionFailed when the rule does not apply.
std::vector<RuleFact> cofinal_dominating_facts(const CardContext& ctx, const Recipe& r, const SysExpr& sys);
std::vector<RuleFact> cohen_limit_facts(const CardContext& ctx, const Recipe& r);
std::vector<RuleFact> small_models_facts(const CardContext& ctx, const Recipe& r, Atom sys, const CardinalName& theta);
std::vector<RuleFact> good_iteration_facts(const CardContext& ctx, const Recipe& r, Atom sys,
                                           const CardinalName& theta);

/// The rules applied to a database; each returns the ids of new facts.
std::vector<FactId> apply_fullgen(FactDB& db, const Recipe& r, const SysExpr& sys);
std::vector<FactId> apply_cohen_limit(FactDB& db, const Recipe& r);
std::vector<FactId> apply_itsmallsets(FactDB& db, const Recipe& r, Atom sys, const CardinalName& theta);
std::vector<FactId> apply_preEUB(FactDB& db, const Recipe& r, Atom sys, const CardinalName& theta);

/// Thresholds tried for the good-iteration rule: aleph1, cc, Sub bounds and
/// bookkeeping bounds, regular ones only, without repeats.
std::vector<CardinalName> goodness_thresholds(const CardContext& ctx, const Recipe& r);

/// Registers checkers for the four recipe rules, bound to `r`.
void register_recipe_checkers(FactDB& db, const Recipe& r);
/// Base facts under c = |length| with the recipe checkers, for trace replay.
FactDB empty_recipe_db(std::shared_ptr<const CardContext> ctx, const Recipe& r);

struct DerivedModel {
  FactDB db;
  Constellation constellation;
  /// One line per rule application, in the order applied.
  std::vector<std::string> applied;
};

struct RunOptions {
  /// Shuffles the rule applications; the closed database must not depend on it.
  std::optional<std::uint32_t> shuffle_seed;
  CloseOptions close;
};

/// validate (MissingAssumption on the first problem), every applicable rule,
/// closure and the constellation.
DerivedModel run_recipe(std::shared_ptr<const CardContext> ctx, const Recipe& r, const RunOptions& opts = {});

// Warm-up and multi-value recipes. Each expects its names declared regular in
// the context with the usual order and assumptions.
Recipe cohen_recipe(const CardinalName& lambda);
Recipe random_recipe(const CardinalName& lambda);
Recipe evdiff_recipe(const CardinalName& lambda);
Recipe hechler_recipe(const CardinalName& lambda);
Recipe loc_recipe(const CardinalName& lambda);
/// Bindings lambda1..lambda5.
Recipe mod1_recipe(const std::vector<CardinalName>& l);
/// Bindings lambda1..lambda4.
Recipe mod2_recipe(const std::vector<CardinalName>& l);
Recipe mod3_recipe(const std::vector<CardinalName>& l);
Recipe mod5_recipe(const std::vector<CardinalName>& l);

/// Recipe builtins by name (cohen, random, evdiff, hechler, loc, mod1, mod2,
/// mod3, mod5). BadParameters on an unknown name or wrong arity.
Recipe builtin_recipe(const std::string& name, const std::vector<CardinalName>& args);
std::vector<std::string> builtin_names();
std::size_t builtin_arity(const std::string& name);

/// Models whose constructions are out of reach, asserted from their
/// statements: gksmax(l1..l5), kst(l1..l5), bcm(l0..l6).
std::vector<std::string> axiom_names();
std::size_t axiom_arity(const std::string& name);
/// Hypotheses not derivable from the context.
std::vector<Diagnostic> axiom_diagnostics(const CardContext& ctx, const std::string& name,
                                          const std::vector<CardinalName>& args);
/// The asserted facts and the forced continuum.
std::vector<RuleFact> axiom_facts(const CardContext& ctx, const std::string& name,
                                  const std::vector<CardinalName>& args);
CardinalName axiom_continuum(const std::string& name, const std::vector<CardinalName>& args);
void register_axiom_checker(FactDB& db, const std::string& name, const std::vector<CardinalName>& args);
FactDB empty_axiom_db(std::shared_ptr<const CardContext> ctx, const std::string& name,
                      const std::vector<CardinalName>& args);
/// Throws MissingAssumption when a hypothesis is not derivable.
DerivedModel axiom_model(std::shared_ptr<const CardContext> ctx, const std::string& name,
                         const std::vector<CardinalName>& args, const CloseOptions& opts = {});

}  // namespace cichon
