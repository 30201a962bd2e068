#include <algorithm>

#include "cichon/error.hpp"
#include "cichon/forge.hpp"

namespace cichon {

namespace {

Slot full(IterandKind k) { return {{k, std::nullopt}, true, std::nullopt}; }

Slot sub(IterandKind k, const CardinalName& theta, Atom sys) {
  return {{k, theta}, true, Bookkeeping{sys, theta}};
}

Recipe single(std::string name, const CardinalName& lambda, IterandKind k) {
  return {std::move(name), OrdinalExpr{{lambda}}, kAleph1, {full(k)}};
}

void arity(const std::string& name, const std::vector<CardinalName>& l, std::size_t n) {
  if (l.size() != n) {
    throw Error(ErrorKind::BadParameters,
                name + " takes " + std::to_string(n) + " cardinals, got " + std::to_string(l.size()));
  }
}

const std::vector<std::pair<std::string, std::size_t>>& recipe_table() {
  static const std::vector<std::pair<std::string, std::size_t>> t = {
      {"cohen", 1}, {"random", 1}, {"evdiff", 1}, {"hechler", 1}, {"loc", 1},
      {"mod1", 5},  {"mod2", 4},   {"mod3", 4},   {"mod5", 4},
  };
  return t;
}

const std::vector<std::pair<std::string, std::size_t>>& axiom_table() {
  static const std::vector<std::pair<std::string, std::size_t>> t = {{"gksmax", 5}, {"kst", 5}, {"bcm", 7}};
  return t;
}

SysExpr R(int i) { return SysExpr::atom(kPrsAtoms[i - 1]); }

}  // namespace

Recipe cohen_recipe(const CardinalName& l) { return single("cohen", l, IterandKind::Cohen); }
Recipe random_recipe(const CardinalName& l) { return single("random", l, IterandKind::Random); }
Recipe evdiff_recipe(const CardinalName& l) { return single("evdiff", l, IterandKind::EvDiff); }
Recipe hechler_recipe(const CardinalName& l) { return single("hechler", l, IterandKind::Hechler); }
Recipe loc_recipe(const CardinalName& l) { return single("loc", l, IterandKind::Loc); }

Recipe mod1_recipe(const std::vector<CardinalName>& l) {
  arity("mod1", l, 5);
  return {"mod1",
          OrdinalExpr{{l[4], l[3]}},
          kAleph1,
          {full(IterandKind::EvDiff), sub(IterandKind::LocSub, l[0], Atom::Lc),
           sub(IterandKind::RandomSub, l[1], Atom::Cn), sub(IterandKind::HechlerSub, l[2], Atom::Baire)}};
}

Recipe mod2_recipe(const std::vector<CardinalName>& l) {
  arity("mod2", l, 4);
  return {"mod2",
          OrdinalExpr{{l[3]}},
          kAleph1,
          {sub(IterandKind::LocSub, l[0], Atom::Lc), sub(IterandKind::RandomSub, l[1], Atom::Cn),
           sub(IterandKind::HechlerSub, l[2], Atom::Baire)}};
}

Recipe mod3_recipe(const std::vector<CardinalName>& l) {
  arity("mod3", l, 4);
  return {"mod3",
          OrdinalExpr{{l[3], l[2]}},
          kAleph1,
          {sub(IterandKind::LocSub, l[0], Atom::Lc), sub(IterandKind::HechlerSub, l[1], Atom::Baire),
           full(IterandKind::Random)}};
}

Recipe mod5_recipe(const std::vector<CardinalName>& l) {
  arity("mod5", l, 4);
  return {"mod5",
          OrdinalExpr{{l[3], l[2]}},
          kAleph1,
          {sub(IterandKind::LocSub, l[0], Atom::Lc), sub(IterandKind::RandomSub, l[1], Atom::Cn),
           full(IterandKind::Hechler)}};
}

Recipe builtin_recipe(const std::string& name, const std::vector<CardinalName>& args) {
  if (name == "mod1") return mod1_recipe(args);
  if (name == "mod2") return mod2_recipe(args);
  if (name == "mod3") return mod3_recipe(args);
  if (name == "mod5") return mod5_recipe(args);
  arity(name, args, 1);
  if (name == "cohen") return cohen_recipe(args[0]);
  if (name == "random") return random_recipe(args[0]);
  if (name == "evdiff") return evdiff_recipe(args[0]);
  if (name == "hechler") return hechler_recipe(args[0]);
  if (name == "loc") return loc_recipe(args[0]);
  throw Error(ErrorKind::BadParameters, "no builtin recipe '" + name + "'");
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [n, k] : recipe_table()) out.push_back(n);
  return out;
}

std::size_t builtin_arity(const std::string& name) {
  for (const auto& [n, k] : recipe_table()) {
    if (n == name) return k;
  }
  throw Error(ErrorKind::BadParameters, "no builtin recipe '" + name + "'");
}

std::vector<std::string> axiom_names() {
  std::vector<std::string> out;
  for (const auto& [n, k] : axiom_table()) out.push_back(n);
  return out;
}

std::size_t axiom_arity(const std::string& name) {
  for (const auto& [n, k] : axiom_table()) {
    if (n == name) return k;
  }
  throw Error(ErrorKind::BadParameters, "no axiom model '" + name + "'");
}

std::vector<Diagnostic> axiom_diagnostics(const CardContext& ctx, const std::string& name,
                                          const std::vector<CardinalName>& l) {
  arity(name, l, axiom_arity(name));
  std::vector<Diagnostic> out;
  auto miss = [&](const std::string& what) {
    out.push_back({ErrorKind::MissingAssumption, name + " needs " + what});
  };
  for (const auto& n : l) {
    if (!ctx.contains(n)) {
      out.push_back({ErrorKind::UnknownName, name + ": unknown cardinal '" + n.str() + "'"});
    }
  }
  if (!out.empty()) return out;

  // Regular uncountable non-decreasing chain over the first `regular` names.
  const std::size_t regular = name == "bcm" ? 6 : 4;
  for (std::size_t i = 0; i < regular; ++i) {
    if (!ctx.is_regular(l[i])) miss(l[i].str() + " regular");
  }
  if (!ctx.known_leq(kAleph1, l[0])) miss("aleph1 <= " + l[0].str());
  for (std::size_t i = 0; i + 1 < regular; ++i) {
    if (!ctx.known_leq(l[i], l[i + 1])) miss(l[i].str() + " <= " + l[i + 1].str());
  }
  auto pow_lt = [&](const CardinalName& a, const CardinalName& b) {
    if (!ctx.has_pow_lt(a, b)) miss("pow_lt(" + a.str() + "," + b.str() + ")=" + a.str());
  };
  auto inacc = [&](const CardinalName& a) {
    if (!ctx.is_inaccessible(a, kAleph1)) miss("inaccessible(" + a.str() + ",aleph1)");
  };
  if (name == "gksmax") {
    pow_lt(l[2], l[2]);
    inacc(l[3]);
    pow_lt(l[4], l[3]);
    if (!ctx.known_leq(l[3], l[4])) miss(l[3].str() + " <= " + l[4].str());
  } else if (name == "kst") {
    pow_lt(l[1], l[1]);
    inacc(l[2]);
    inacc(l[3]);
    pow_lt(l[4], l[3]);
    if (!ctx.known_lt(l[3], l[4])) miss(l[3].str() + " < " + l[4].str());
  } else {
    if (!ctx.known_leq(l[5], l[6])) miss(l[5].str() + " <= " + l[6].str());
    pow_lt(l[6], l[3]);
  }
  return out;
}

CardinalName axiom_continuum(const std::string& name, const std::vector<CardinalName>& l) {
  arity(name, l, axiom_arity(name));
  return l.back();
}

std::vector<RuleFact> axiom_facts(const CardContext&, const std::string& name, const std::vector<CardinalName>& l) {
  arity(name, l, axiom_arity(name));
  std::vector<RuleFact> out;
  const std::vector<std::string> p{"model=" + name};
  auto equiv = [&](const SysExpr& a, const SysExpr& b) {
    out.push_back({a, b, p});
    out.push_back({b, a, p});
  };
  if (name == "gksmax") {
    for (int i = 1; i <= 4; ++i) equiv(R(i), SysExpr::cideal(l[4], l[i - 1]));
  } else if (name == "kst") {
    // R2 and R3 trade places.
    const std::size_t theta[] = {0, 2, 1, 3};
    for (int i = 1; i <= 4; ++i) equiv(R(i), SysExpr::ideal(l[4], l[theta[i - 1]]));
  } else {
    for (int i = 1; i <= 3; ++i) equiv(R(i), SysExpr::cideal(l[6], l[i]));
    out.push_back({SysExpr::card(l[4]), R(4), p});
    out.push_back({SysExpr::card(l[5]), R(4), p});
    out.push_back({R(4), SysExpr::prod({SysExpr::card(l[5]), SysExpr::card(l[4])}), p});
  }
  return out;
}

void register_axiom_checker(FactDB& db, const std::string& name, const std::vector<CardinalName>& args) {
  db.register_checker(kRuleAxiom, [name, args](const FactDB& d, const SysExpr& lhs, const SysExpr& rhs,
                                               const Justification& why) -> std::string {
    if (!why.premises.empty()) return "axiom-model takes no premises";
    try {
      const auto diags = axiom_diagnostics(d.ctx(), name, args);
      if (!diags.empty()) return diags.front().message;
      for (const auto& f : axiom_facts(d.ctx(), name, args)) {
        if (f.lhs == lhs && f.rhs == rhs) return "";
      }
    } catch (const Error& e) {
      return e.what();
    }
    return name + " does not assert " + lhs.str() + " <= " + rhs.str();
  });
}

FactDB empty_axiom_db(std::shared_ptr<const CardContext> ctx, const std::string& name,
                      const std::vector<CardinalName>& args) {
  FactDB db(std::move(ctx), axiom_continuum(name, args));
  register_axiom_checker(db, name, args);
  return db;
}

DerivedModel axiom_model(std::shared_ptr<const CardContext> ctx, const std::string& name,
                         const std::vector<CardinalName>& args, const CloseOptions& opts) {
  const auto diags = axiom_diagnostics(*ctx, name, args);
  if (!diags.empty()) throw Error(diags.front().kind, diags.front().message);
  DerivedModel m{empty_axiom_db(ctx, name, args), {}, {}};
  seed_base_facts(m.db);
  for (const auto& f : axiom_facts(*ctx, name, args)) {
    m.db.add(f.lhs, f.rhs, {kRuleAxiom, {}, "asserted from the statement of " + name, f.params});
  }
  m.applied.push_back(name + ": asserted");
  m.db.close(opts);
  m.constellation = constellation(m.db);
  return m;
}

}  // namespace cichon
