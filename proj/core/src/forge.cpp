#include "cichon/forge.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "cichon/error.hpp"

namespace cichon {

namespace {

SysExpr atom(Atom a) { return SysExpr::atom(a); }

const char* const kCiteCofinal = "an FS iteration adding R-dominating reals cofinally often forces R <= length";
const char* const kCiteCohenLimit = "an FS iteration of limit length forces length <= Mg";
const char* const kCiteSmall = "bookkeeping over models of size <theta forces R <= C_[c]^<theta";
const char* const kCiteGood = "an FS iteration of theta-cc theta-R-good posets forces C_[length]^<theta <= R";

[[noreturn]] void unmet(const std::string& rule, const std::string& what) {
  throw Error(ErrorKind::PreconditionFailed, rule + ": " + what);
}

bool uncountable_regular(const CardContext& ctx, const CardinalName& t) {
  return ctx.contains(t) && ctx.is_regular(t) && ctx.known_leq(kAleph1, t);
}

std::string param(const std::vector<std::string>& params, const std::string& k) {
  for (const auto& p : params) {
    if (p.rfind(k + "=", 0) == 0) return p.substr(k.size() + 1);
  }
  return "";
}

/// Checks that (lhs, rhs) is among the recomputed conclusions.
std::string match(const std::vector<RuleFact>& facts, const SysExpr& lhs, const SysExpr& rhs,
                  const Justification& why) {
  if (!why.premises.empty()) return why.rule + " takes no premises";
  for (const auto& f : facts) {
    if (f.lhs == lhs && f.rhs == rhs) return "";
  }
  return why.rule + " does not conclude " + lhs.str() + " <= " + rhs.str();
}

std::vector<FactId> store(FactDB& db, const std::vector<RuleFact>& facts, const char* rule, const char* cite) {
  std::vector<FactId> ids;
  for (const auto& f : facts) {
    if (auto id = db.add(f.lhs, f.rhs, {rule, {}, cite, f.params})) ids.push_back(*id);
  }
  return ids;
}

}  // namespace

bool kind_is_sub(IterandKind k) {
  return k == IterandKind::RandomSub || k == IterandKind::HechlerSub || k == IterandKind::LocSub;
}

bool IterandClass::is_sub() const { return kind_is_sub(kind); }

std::string to_string(const IterandClass& c) {
  std::string s;
  switch (c.kind) {
    case IterandKind::Cohen: s = "Cohen"; break;
    case IterandKind::Random: s = "Random"; break;
    case IterandKind::EvDiff: s = "EvDiff"; break;
    case IterandKind::Hechler: s = "Hechler"; break;
    case IterandKind::Loc: s = "Loc"; break;
    case IterandKind::RandomSub: s = "RandomSub"; break;
    case IterandKind::HechlerSub: s = "HechlerSub"; break;
    case IterandKind::LocSub: s = "LocSub"; break;
  }
  if (c.theta) s += "(" + c.theta->str() + ")";
  return s;
}

std::optional<IterandKind> parse_iterand_kind(std::string_view s) {
  static const std::pair<std::string_view, IterandKind> names[] = {
      {"Cohen", IterandKind::Cohen},         {"Random", IterandKind::Random},
      {"EvDiff", IterandKind::EvDiff},       {"Hechler", IterandKind::Hechler},
      {"Loc", IterandKind::Loc},             {"RandomSub", IterandKind::RandomSub},
      {"HechlerSub", IterandKind::HechlerSub}, {"LocSub", IterandKind::LocSub},
  };
  for (const auto& [n, k] : names) {
    if (n == s) return k;
  }
  return std::nullopt;
}

std::vector<SysExpr> base_dominating(const IterandClass& c) {
  switch (c.kind) {
    case IterandKind::Cohen: return {SysExpr::dual(atom(Atom::Mg))};
    case IterandKind::Random:
    case IterandKind::RandomSub: return {atom(Atom::Cn)};
    case IterandKind::EvDiff: return {atom(Atom::Mg)};
    case IterandKind::Hechler:
    case IterandKind::HechlerSub: return {atom(Atom::Baire)};
    case IterandKind::Loc:
    case IterandKind::LocSub: return {atom(Atom::Lc)};
  }
  return {};
}

std::vector<SysExpr> adds_dominating(const IterandClass& c) {
  if (c.is_sub()) return {};
  return base_dominating(c);
}

std::vector<Goodness> goodness(const IterandClass& c) {
  std::vector<Goodness> rows;
  auto at = [&](const CardinalName& t, std::initializer_list<Atom> as) {
    for (Atom a : as) rows.push_back({t, a});
  };
  switch (c.kind) {
    case IterandKind::Cohen: at(kAleph1, {Atom::Lc, Atom::Cn, Atom::Baire, Atom::Mg}); break;
    case IterandKind::EvDiff: at(kAleph1, {Atom::Baire, Atom::Cn, Atom::Lc}); break;
    case IterandKind::Random:
    case IterandKind::RandomSub: at(kAleph1, {Atom::Baire, Atom::Lc}); break;
    case IterandKind::Hechler:
    case IterandKind::HechlerSub: at(kAleph1, {Atom::Cn, Atom::Lc}); break;
    case IterandKind::Loc:
    case IterandKind::LocSub: break;
  }
  if (c.is_sub() && c.theta) at(*c.theta, {Atom::Lc, Atom::Cn, Atom::Baire, Atom::Mg});
  return rows;
}

bool is_good(const CardContext& ctx, const IterandClass& c, Atom r, const CardinalName& theta) {
  for (const auto& g : goodness(c)) {
    if (g.system == r && ctx.contains(g.threshold) && ctx.known_leq(g.threshold, theta)) return true;
  }
  return false;
}

std::vector<Diagnostic> validate(const CardContext& ctx, const Recipe& r) {
  std::vector<Diagnostic> out;
  auto diag = [&](ErrorKind k, std::string m) { out.push_back({k, r.name + ": " + std::move(m)}); };

  if (r.length.factors.empty()) {
    diag(ErrorKind::PreconditionFailed, "the iteration has zero length");
    return out;
  }
  CardinalName size, cof;
  try {
    check_ordinal(ctx, r.length);
    size = card(ctx, r.length);
    cof = cf(ctx, r.length);
  } catch (const Error& e) {
    diag(e.kind(), e.message());
    return out;
  }
  if (!uncountable_regular(ctx, r.cc)) {
    diag(ErrorKind::PreconditionFailed, "cc bound '" + r.cc.str() + "' must be a declared uncountable regular");
  }
  if (r.slots.empty()) diag(ErrorKind::PreconditionFailed, "no iterands");
  if (!ctx.has_pow(size, kAleph0) && !ctx.has_pow_lt(size, kAleph1)) {
    diag(ErrorKind::MissingAssumption,
         "pow(" + size.str() + ",aleph0)=" + size.str() + " is needed to force c=" + size.str());
  }

  bool any_cofinal_dominating = false;
  for (const auto& s : r.slots) {
    const std::string cls = to_string(s.cls);
    if (s.cls.is_sub() != s.cls.theta.has_value()) {
      diag(ErrorKind::PreconditionFailed, cls + ": only the Sub classes take a size bound");
      continue;
    }
    if (s.cls.theta && !uncountable_regular(ctx, *s.cls.theta)) {
      diag(ErrorKind::PreconditionFailed, cls + ": size bound must be a declared uncountable regular");
    }
    if (s.cofinal && !adds_dominating(s.cls).empty()) any_cofinal_dominating = true;
    if (!s.bookkeeping) continue;
    const auto& bk = *s.bookkeeping;
    const auto dom = base_dominating(s.cls);
    if (std::find(dom.begin(), dom.end(), atom(bk.system)) == dom.end()) {
      diag(ErrorKind::PreconditionFailed,
           cls + " adds no " + std::string(to_string(bk.system)) + "-dominating reals to book-keep");
    }
    if (s.cls.theta && bk.up_to != *s.cls.theta) {
      diag(ErrorKind::PreconditionFailed, cls + ": bookkeeping bound must equal the size bound");
    }
    if (!uncountable_regular(ctx, bk.up_to)) {
      diag(ErrorKind::PreconditionFailed, cls + ": bookkeeping bound must be a declared uncountable regular");
      continue;
    }
    if (!ctx.known_leq(bk.up_to, cof)) {
      diag(ErrorKind::MissingAssumption, cls + ": needs " + bk.up_to.str() + " <= cf(length)=" + cof.str());
    }
    if (!ctx.known_leq(r.cc, bk.up_to)) {
      diag(ErrorKind::MissingAssumption, cls + ": needs cc " + r.cc.str() + " <= " + bk.up_to.str());
    }
    if (!ctx.has_pow_lt(size, bk.up_to)) {
      diag(ErrorKind::MissingAssumption, cls + ": bookkeeping needs pow_lt(" + size.str() + "," + bk.up_to.str() +
                                             ")=" + size.str());
    }
  }
  if (any_cofinal_dominating) {
    if (!ctx.known_leq(kAleph1, cof)) {
      diag(ErrorKind::MissingAssumption, "cofinal dominating reals need cf(length)=" + cof.str() + " uncountable");
    }
    if (!ctx.known_leq(r.cc, cof)) {
      diag(ErrorKind::MissingAssumption, "cofinal dominating reals need cc " + r.cc.str() + " <= cf(length)");
    }
  }
  return out;
}

std::vector<RuleFact> cofinal_dominating_facts(const CardContext& ctx, const Recipe& r, const SysExpr& sys) {
  const bool found = std::any_of(r.slots.begin(), r.slots.end(), [&](const Slot& s) {
    const auto dom = adds_dominating(s.cls);
    return s.cofinal && std::find(dom.begin(), dom.end(), sys) != dom.end();
  });
  if (!found) unmet(kRuleCofinal, "no cofinal slot adds " + sys.str() + "-dominating reals");
  if (r.length.factors.empty()) unmet(kRuleCofinal, "zero length");
  const CardinalName k = cf(ctx, r.length);
  if (!ctx.known_leq(kAleph1, k)) unmet(kRuleCofinal, "cf(length)=" + k.str() + " is not uncountable");
  if (!ctx.known_leq(r.cc, k)) unmet(kRuleCofinal, "cc " + r.cc.str() + " is not below cf(length)");
  const SysExpr nu = SysExpr::ord(r.length);
  std::vector<RuleFact> out{{sys, nu, {"system=" + sys.str()}}};
  if (sys.is_prs_atom()) out.push_back({nu, atom(Atom::Mg), {"system=" + sys.str()}});
  return out;
}

std::vector<RuleFact> cohen_limit_facts(const CardContext& ctx, const Recipe& r) {
  if (r.length.factors.empty()) unmet(kRuleCohenLimit, "zero length");
  if (r.slots.empty()) unmet(kRuleCohenLimit, "no iterands");
  check_ordinal(ctx, r.length);
  std::vector<RuleFact> out{{SysExpr::ord(r.length), atom(Atom::Mg), {}}};
  const bool pure = std::all_of(r.slots.begin(), r.slots.end(),
                                [](const Slot& s) { return s.cls.kind == IterandKind::Cohen; });
  if (pure) out.push_back({SysExpr::cideal(card(ctx, r.length), kAleph1), atom(Atom::Mg), {"cohen-product"}});
  return out;
}

std::vector<RuleFact> small_models_facts(const CardContext& ctx, const Recipe& r, Atom sys,
                                         const CardinalName& theta) {
  const bool found = std::any_of(r.slots.begin(), r.slots.end(), [&](const Slot& s) {
    return s.bookkeeping && s.bookkeeping->system == sys && s.bookkeeping->up_to == theta;
  });
  const std::string what = std::string(to_string(sys)) + " up to " + theta.str();
  if (!found) unmet(kRuleSmallModels, "no slot book-keeps " + what);
  if (!uncountable_regular(ctx, theta)) unmet(kRuleSmallModels, theta.str() + " is not uncountable regular");
  if (!ctx.known_leq(r.cc, theta)) unmet(kRuleSmallModels, "cc " + r.cc.str() + " is not below " + theta.str());
  if (!ctx.known_leq(theta, cf(ctx, r.length))) unmet(kRuleSmallModels, theta.str() + " exceeds cf(length)");
  return {{atom(sys), SysExpr::cideal(card(ctx, r.length), theta),
           {"system=" + std::string(to_string(sys)), "theta=" + theta.str()}}};
}

std::vector<RuleFact> good_iteration_facts(const CardContext& ctx, const Recipe& r, Atom sys,
                                           const CardinalName& theta) {
  if (!is_prs(sys)) unmet(kRuleGoodIteration, "goodness is defined for Polish systems only");
  if (!uncountable_regular(ctx, theta)) unmet(kRuleGoodIteration, theta.str() + " is not uncountable regular");
  if (r.length.factors.empty()) unmet(kRuleGoodIteration, "zero length");
  if (!ctx.known_leq(r.cc, theta)) unmet(kRuleGoodIteration, "cc " + r.cc.str() + " is not below " + theta.str());
  const CardinalName size = card(ctx, r.length);
  if (!ctx.known_leq(theta, size)) unmet(kRuleGoodIteration, "length is shorter than " + theta.str());
  for (const auto& s : r.slots) {
    if (!is_good(ctx, s.cls, sys, theta)) {
      unmet(kRuleGoodIteration,
            to_string(s.cls) + " is not " + theta.str() + "-" + std::string(to_string(sys)) + "-good");
    }
  }
  return {{SysExpr::cideal(size, theta), atom(sys),
           {"system=" + std::string(to_string(sys)), "theta=" + theta.str()}}};
}

std::vector<FactId> apply_fullgen(FactDB& db, const Recipe& r, const SysExpr& sys) {
  return store(db, cofinal_dominating_facts(db.ctx(), r, sys), kRuleCofinal, kCiteCofinal);
}

std::vector<FactId> apply_cohen_limit(FactDB& db, const Recipe& r) {
  return store(db, cohen_limit_facts(db.ctx(), r), kRuleCohenLimit, kCiteCohenLimit);
}

std::vector<FactId> apply_itsmallsets(FactDB& db, const Recipe& r, Atom sys, const CardinalName& theta) {
  return store(db, small_models_facts(db.ctx(), r, sys, theta), kRuleSmallModels, kCiteSmall);
}

std::vector<FactId> apply_preEUB(FactDB& db, const Recipe& r, Atom sys, const CardinalName& theta) {
  return store(db, good_iteration_facts(db.ctx(), r, sys, theta), kRuleGoodIteration, kCiteGood);
}

std::vector<CardinalName> goodness_thresholds(const CardContext& ctx, const Recipe& r) {
  std::vector<CardinalName> out;
  auto push = [&](const CardinalName& t) {
    if (uncountable_regular(ctx, t) && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  };
  push(kAleph1);
  push(r.cc);
  for (const auto& s : r.slots) {
    if (s.cls.theta) push(*s.cls.theta);
    if (s.bookkeeping) push(s.bookkeeping->up_to);
  }
  return out;
}

void register_recipe_checkers(FactDB& db, const Recipe& r) {
  auto guarded = [](auto compute) -> RuleChecker {
    return [compute](const FactDB& d, const SysExpr& lhs, const SysExpr& rhs, const Justification& why) {
      try {
        return match(compute(d.ctx(), why), lhs, rhs, why);
      } catch (const Error& e) {
        return std::string(e.what());
      }
    };
  };
  auto atom_param = [](const Justification& why) {
    auto a = parse_atom(param(why.params, "system"));
    if (!a) throw Error(ErrorKind::PreconditionFailed, why.rule + ": missing system parameter");
    return *a;
  };
  db.register_checker(kRuleCofinal, guarded([r](const CardContext& c, const Justification& why) {
                        return cofinal_dominating_facts(c, r, parse_sysexpr(param(why.params, "system")));
                      }));
  db.register_checker(kRuleCohenLimit,
                      guarded([r](const CardContext& c, const Justification&) { return cohen_limit_facts(c, r); }));
  db.register_checker(kRuleSmallModels, guarded([r, atom_param](const CardContext& c, const Justification& why) {
                        return small_models_facts(c, r, atom_param(why), param(why.params, "theta"));
                      }));
  db.register_checker(kRuleGoodIteration, guarded([r, atom_param](const CardContext& c, const Justification& why) {
                        return good_iteration_facts(c, r, atom_param(why), param(why.params, "theta"));
                      }));
}

FactDB empty_recipe_db(std::shared_ptr<const CardContext> ctx, const Recipe& r) {
  const CardinalName c = card(*ctx, r.length);
  FactDB db(std::move(ctx), c);
  register_recipe_checkers(db, r);
  return db;
}

DerivedModel run_recipe(std::shared_ptr<const CardContext> ctx, const Recipe& r, const RunOptions& opts) {
  const auto diags = validate(*ctx, r);
  if (!diags.empty()) {
    const auto missing = std::find_if(diags.begin(), diags.end(),
                                      [](const Diagnostic& d) { return d.kind == ErrorKind::MissingAssumption; });
    const Diagnostic& first = missing != diags.end() ? *missing : diags.front();
    throw Error(first.kind, first.message);
  }

  DerivedModel m{empty_recipe_db(ctx, r), {}, {}};
  seed_base_facts(m.db);
  const CardContext& c = *ctx;

  struct Task {
    std::string label;
    std::function<std::vector<FactId>(FactDB&)> run;
    bool optional;
  };
  std::vector<Task> tasks;
  for (const auto& s : r.slots) {
    if (!s.cofinal) continue;
    for (const auto& sys : adds_dominating(s.cls)) {
      tasks.push_back({std::string(kRuleCofinal) + " " + sys.str(),
                       [&r, sys](FactDB& db) { return apply_fullgen(db, r, sys); }, false});
    }
  }
  tasks.push_back({kRuleCohenLimit, [&r](FactDB& db) { return apply_cohen_limit(db, r); }, false});
  for (const auto& s : r.slots) {
    if (!s.bookkeeping) continue;
    const Bookkeeping bk = *s.bookkeeping;
    tasks.push_back({std::string(kRuleSmallModels) + " " + std::string(to_string(bk.system)) + " theta=" +
                         bk.up_to.str(),
                     [&r, bk](FactDB& db) { return apply_itsmallsets(db, r, bk.system, bk.up_to); }, false});
  }
  for (Atom sys : kPrsAtoms) {
    for (const auto& t : goodness_thresholds(c, r)) {
      tasks.push_back({std::string(kRuleGoodIteration) + " " + std::string(to_string(sys)) + " theta=" + t.str(),
                       [&r, sys, t](FactDB& db) { return apply_preEUB(db, r, sys, t); }, true});
    }
  }
  if (opts.shuffle_seed) {
    std::mt19937 rng(*opts.shuffle_seed);
    std::shuffle(tasks.begin(), tasks.end(), rng);
  }

  for (const auto& t : tasks) {
    try {
      const auto ids = t.run(m.db);
      m.applied.push_back(t.label + ": " + std::to_string(ids.size()) + " new fact(s)");
    } catch (const Error& e) {
      if (!t.optional || e.kind() != ErrorKind::PreconditionFailed) throw;
    }
  }
  m.db.close(opts.close);
  m.constellation = constellation(m.db);
  return m;
}

}  // namespace cichon
