#pragma once

// The text format shared by every command: a context block, recipes, plans
// and assignments, with `#` comments.
//
//   context { card lambda regular; lt aleph1 lambda; assume pow(lambda,aleph0)=lambda; }
//   recipe h { length lambda; cc aleph1; slot Hechler cofinal; }
//   recipe c = builtin cohen(lambda);
//   recipe g = axiom gksmax(l1,l2,l3,l4,l5);
//   plan p { base gksmax(t1,t2,t3,t4,tinf); chain d 4 (l4d, succ(t4m), t4); ... final (lc); }
//   assign a { addN=aleph1; ...; c=lambda; }
//
// Statements end at `;` or a newline.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cichon/constellation.hpp"
#include "cichon/forge.hpp"
#include "cichon/submodel.hpp"

namespace cichon {

struct RecipeEntry {
  enum class Kind { Explicit, Builtin, Axiom };
  Kind kind = Kind::Explicit;
  std::string name;
  /// Explicit only.
  Recipe recipe;
  /// Builtin or axiom model name and its bindings.
  std::string model;
  std::vector<CardinalName> args;

  friend bool operator==(const RecipeEntry&, const RecipeEntry&) = default;
};

struct AssignmentBlock {
  std::string name;
  std::map<Entry, CardinalName> values;

  friend bool operator==(const AssignmentBlock&, const AssignmentBlock&) = default;
};

struct RecipeFile {
  ContextSpec context;
  std::vector<RecipeEntry> recipes;
  std::vector<Plan> plans;
  std::vector<AssignmentBlock> assigns;

  const RecipeEntry* recipe(std::string_view name) const;
  const Plan* plan(std::string_view name) const;
  const AssignmentBlock* assign(std::string_view name) const;

  friend bool operator==(const RecipeFile&, const RecipeFile&) = default;
};

/// First error only, as "line N: ...". SyntaxError for malformed text,
/// UnresolvedName for cardinals the context does not declare.
RecipeFile parse_recipe_file(std::string_view text);
/// Canonical text; parse_recipe_file(print_recipe_file(f)) == f.
std::string print_recipe_file(const RecipeFile& f);

/// Every builtin over one context: warm-ups on `lambda`, the multi-value
/// models on aleph1 <= l1 <= ... <= l5, gksmax and plan `cichon_max` on the
/// names of `CichonMaxNames`, and assignments `cichon_max`, `mod1`,
/// `mod1_swapped` and `incomplete`.
RecipeFile default_library();

/// Builds the declared context (built-ins aleph0, aleph1, c included).
std::shared_ptr<const CardContext> build_file_context(const RecipeFile& f);

/// Runs a recipe entry: builtins expand and run, axioms assert.
DerivedModel run_entry(std::shared_ptr<const CardContext> ctx, const RecipeEntry& e, const RunOptions& opts = {});
/// The recipe behind an explicit or builtin entry; nullopt for axioms.
std::optional<Recipe> entry_recipe(const RecipeEntry& e);
/// A database with every checker the entry's rules need, for trace replay.
FactDB empty_entry_db(std::shared_ptr<const CardContext> ctx, const RecipeEntry& e);

}  // namespace cichon
