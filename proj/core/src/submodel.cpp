#include "cichon/submodel.hpp"

#include <algorithm>
#include <sstream>

#include "cichon/error.hpp"
#include "cichon/forge.hpp"

namespace cichon {

namespace {

SysExpr R(int i) { return SysExpr::atom(kPrsAtoms[i - 1]); }

std::vector<CardinalName> gks_args(const GksBase& b) {
  return {b.theta[0], b.theta[1], b.theta[2], b.theta[3], b.theta_inf};
}

CardinalName min_of(const CardContext& ctx, const CardinalName& a, const CardinalName& b) {
  auto m = ctx.min(a, b);
  if (!m) throw Error(ErrorKind::IncomparableNames, a.str() + " and " + b.str() + " are not comparable");
  return *m;
}

CardinalName max_of(const CardContext& ctx, const CardinalName& a, const CardinalName& b) {
  auto m = ctx.max(a, b);
  if (!m) throw Error(ErrorKind::IncomparableNames, a.str() + " and " + b.str() + " are not comparable");
  return *m;
}

bool fits(const CardContext& ctx, const CardinalName& mu, const CardinalName& width) {
  switch (ctx.leq(mu, width)) {
    case Truth::True: return true;
    case Truth::False: return false;
    case Truth::Unknown: break;
  }
  throw Error(ErrorKind::IncomparableNames, mu.str() + " and width " + width.str() + " are not comparable");
}

void require_name(const CardContext& ctx, const CardinalName& n, const std::string& where) {
  if (!ctx.contains(n)) throw Error(ErrorKind::UnknownName, where + ": unknown cardinal '" + n.str() + "'");
}

const ChainSpec& find_step(const Plan& p, ChainSpec::Kind k, int i) {
  for (const auto& s : p.steps) {
    if (s.kind == k && s.index == i) return s;
  }
  throw Error(ErrorKind::PlanOrderViolation, "plan " + p.name + " lacks " + label({k, i, {}, {}, {}}));
}

CardinalName resolve(const CardContext& ctx, const ClosureRef& c) {
  require_name(ctx, c.name, "closure");
  if (!c.succ) return c.name;
  auto s = ctx.successor_of(c.name);
  if (!s) throw Error(ErrorKind::MissingAssumption, "no declared successor of " + c.name.str());
  return *s;
}

std::string below_text(const std::vector<CardinalName>& below) {
  std::string out = "{";
  for (std::size_t k = 0; k < below.size(); ++k) out += (k ? ", " : "") + below[k].str();
  return out + "}";
}

}  // namespace

std::string to_string(const ClosureRef& c) { return c.succ ? "succ(" + c.name.str() + ")" : c.name.str(); }

std::string label(const ChainSpec& c) {
  switch (c.kind) {
    case ChainSpec::Kind::D: return "chain d " + std::to_string(c.index);
    case ChainSpec::Kind::B: return "chain b " + std::to_string(c.index);
    case ChainSpec::Kind::Final: break;
  }
  return "final";
}

States init_from_gksmax(const CardContext& ctx, const GksBase& base) {
  const auto diags = axiom_diagnostics(ctx, "gksmax", gks_args(base));
  if (!diags.empty()) throw Error(ErrorKind::MissingAssumption, diags.front().message);
  States out;
  for (int i = 0; i < 4; ++i) {
    out[i].below = ctx.sorted(ctx.regulars_between(base.theta[i], base.theta_inf));
    out[i].b = base.theta[i];
    out[i].d = base.theta_inf;
  }
  return out;
}

SysExpr product_bound(const Plan& p, int i) {
  std::vector<SysExpr> args;
  for (int j = i; j <= 4; ++j) {
    args.push_back(SysExpr::card(find_step(p, ChainSpec::Kind::D, j).length));
    args.push_back(SysExpr::card(find_step(p, ChainSpec::Kind::B, j).length));
  }
  return SysExpr::prod(std::move(args));
}

std::set<CardinalName> plan_targets(const Plan& p) {
  std::set<CardinalName> out;
  for (const auto& s : p.steps) {
    out.insert(s.kind == ChainSpec::Kind::Final ? s.width : s.length);
  }
  return out;
}

CardinalName plan_continuum(const Plan& p) { return find_step(p, ChainSpec::Kind::Final, 0).width; }

void check_plan(const CardContext& ctx, const Plan& p) {
  using K = ChainSpec::Kind;
  if (p.steps.size() != 9) {
    throw Error(ErrorKind::PlanOrderViolation,
                "plan " + p.name + " has " + std::to_string(p.steps.size()) + " steps, expected 9");
  }
  for (std::size_t k = 0; k < 9; ++k) {
    const auto& s = p.steps[k];
    const K want_kind = k == 8 ? K::Final : (k % 2 == 0 ? K::D : K::B);
    const int want_index = k == 8 ? 0 : 4 - static_cast<int>(k / 2);
    if (s.kind != want_kind || s.index != want_index) {
      throw Error(ErrorKind::PlanOrderViolation, "step " + std::to_string(k + 1) + " is " + label(s) +
                                                     ", expected " + label({want_kind, want_index, {}, {}, {}}));
    }
  }
  for (std::size_t k = 0; k < 9; ++k) {
    const auto& s = p.steps[k];
    const std::string where = label(s);
    require_name(ctx, s.width, where);
    if (k > 0 && !ctx.known_lt(s.width, p.steps[k - 1].width)) {
      throw Error(ErrorKind::PlanOrderViolation, where + ": width " + s.width.str() + " is not below " +
                                                     p.steps[k - 1].width.str());
    }
    if (s.kind != K::Final) {
      require_name(ctx, s.length, where);
      if (!ctx.is_regular(s.length)) {
        throw Error(ErrorKind::NonRegularFactor, where + ": length " + s.length.str() + " is not regular");
      }
    }
    const CardinalName closure = resolve(ctx, s.closure);
    auto miss = [&](const std::string& what) { throw Error(ErrorKind::MissingAssumption, where + " needs " + what); };
    switch (s.kind) {
      case K::D: {
        const auto& theta = p.base.theta[s.index - 1];
        const auto& minus = find_step(p, K::B, s.index).width;
        if (s.width != theta) miss("width " + theta.str());
        if (!s.closure.succ || s.closure.name != minus) miss("closure succ(" + minus.str() + ")");
        if (!ctx.has_pow(theta, minus)) miss("pow(" + theta.str() + "," + minus.str() + ")=" + theta.str());
        break;
      }
      case K::B:
        if (closure != s.width) miss("closure equal to width " + s.width.str());
        if (!ctx.has_pow_lt(s.width, s.width)) {
          miss("pow_lt(" + s.width.str() + "," + s.width.str() + ")=" + s.width.str());
        }
        break;
      case K::Final:
        if (closure != kAleph1) miss("closure aleph1");
        if (!ctx.has_pow(s.width, kAleph0)) miss("pow(" + s.width.str() + ",aleph0)=" + s.width.str());
        break;
    }
  }
}

States step(const States& in, const ChainSpec& c, const CardContext& ctx, const Plan& p, TableLog* log) {
  const CardinalName& width = c.width;
  if (c.kind == ChainSpec::Kind::Final) {
    for (int i = 0; i < 4; ++i) {
      bool ok = fits(ctx, in[i].d, width);
      for (const auto& mu : in[i].below) ok = ok && fits(ctx, mu, width);
      if (!ok) {
        throw Error(ErrorKind::PlanOrderViolation,
                    "final width " + width.str() + " does not exceed the values of S_" + std::to_string(i + 1));
      }
    }
    return in;
  }

  const CardinalName closure = resolve(ctx, c.closure);
  States out = in;
  for (int i = 1; i <= 4; ++i) {
    const SysState& s = in[i - 1];
    std::vector<CardinalName> kept;
    bool collapsed = false;
    for (const auto& mu : s.below) {
      if (fits(ctx, mu, width)) {
        kept.push_back(mu);
      } else {
        collapsed = true;
      }
    }
    if (!collapsed && fits(ctx, s.d, width)) continue;

    if (std::find(kept.begin(), kept.end(), c.length) == kept.end()) kept.push_back(c.length);
    SysState next{ctx.sorted(std::move(kept)), {}, {}};
    const bool product = c.kind == ChainSpec::Kind::B && c.index == i;
    if (product) {
      const auto& theta = p.base.theta[i - 1];
      if (!ctx.known_lt(width, theta)) {
        throw Error(ErrorKind::PreconditionFailed,
                    label(c) + ": b(S_" + std::to_string(i) + ") = " + theta.str() + " is not above " + width.str());
      }
      next.d = find_step(p, ChainSpec::Kind::D, i).length;
      next.b = c.length;
      if (log) log->product_bounds.insert_or_assign(i, product_bound(p, i));
    } else {
      next.d = ctx.trace(s.d, width);
      next.b = min_of(ctx, s.b, min_of(ctx, closure, c.length));
      const CardinalName loose = min_of(ctx, s.b, closure);
      if (log && !ctx.equivalent(loose, next.b)) {
        log->notes.push_back(label(c) + ", S_" + std::to_string(i) + ": min(b, closure) = " + loose.str() +
                             " but min(b, closure, length) = " + next.b.str());
      }
    }

    CardinalName lo = next.below.front(), hi = next.below.front();
    for (const auto& mu : next.below) {
      lo = min_of(ctx, lo, mu);
      hi = max_of(ctx, hi, mu);
    }
    if (!ctx.equivalent(lo, next.b) || !ctx.equivalent(hi, next.d)) {
      throw Error(ErrorKind::Unpinned, label(c) + ", S_" + std::to_string(i) + ": below-set " +
                                           below_text(next.below) + " does not pin b = " + next.b.str() +
                                           ", d = " + next.d.str());
    }
    out[i - 1] = std::move(next);
  }
  return out;
}

TableLog run_tables(const CardContext& ctx, const Plan& p) {
  check_plan(ctx, p);
  TableLog log;
  States cur = init_from_gksmax(ctx, p.base);
  log.snapshots.push_back({"gksmax", cur});
  for (const auto& c : p.steps) {
    cur = step(cur, c, ctx, p, &log);
    if (c.kind != ChainSpec::Kind::Final) log.snapshots.push_back({label(c), cur});
  }
  return log;
}

void register_plan_checkers(FactDB& db, const Plan& p) {
  auto index_of = [](const Justification& why) -> int {
    for (const auto& kv : why.params) {
      if (kv.rfind("index=", 0) == 0) return std::atoi(kv.c_str() + 6);
    }
    return 0;
  };
  db.register_checker(kRuleChainProduct, [p, index_of](const FactDB& d, const SysExpr& lhs, const SysExpr& rhs,
                                                       const Justification& why) -> std::string {
    if (!why.premises.empty()) return "chain-product takes no premises";
    const int i = index_of(why);
    if (i < 1 || i > 4) return "chain-product needs index=1..4";
    try {
      const auto log = run_tables(d.ctx(), p);
      const auto it = log.product_bounds.find(i);
      if (it == log.product_bounds.end()) return "plan records no product bound for index " + std::to_string(i);
      if (lhs == R(i) && rhs == it->second) return "";
    } catch (const Error& e) {
      return e.what();
    }
    return "plan " + p.name + " does not bound " + lhs.str() + " by " + rhs.str();
  });
  db.register_checker(kRuleChainEmbed, [p, index_of](const FactDB& d, const SysExpr& lhs, const SysExpr& rhs,
                                                     const Justification& why) -> std::string {
    if (!why.premises.empty()) return "chain-embed takes no premises";
    const int i = index_of(why);
    if (i < 1 || i > 4) return "chain-embed needs index=1..4";
    if (!(rhs == R(i)) || lhs.kind() != SysExpr::Kind::Card) return "chain-embed concludes Card(mu) <= R_i";
    try {
      const auto log = run_tables(d.ctx(), p);
      const auto& below = log.snapshots.back().states[i - 1].below;
      if (std::find(below.begin(), below.end(), lhs.card_name()) != below.end()) return "";
    } catch (const Error& e) {
      return e.what();
    }
    return lhs.card_name().str() + " is not below S_" + std::to_string(i) + " after plan " + p.name;
  });
}

FactDB empty_plan_db(std::shared_ptr<const CardContext> ctx, const Plan& p) {
  FactDB db(std::move(ctx), plan_continuum(p));
  register_plan_checkers(db, p);
  return db;
}

PlanResult run_plan(std::shared_ptr<const CardContext> ctx, const Plan& p, const CloseOptions& opts) {
  PlanResult r{run_tables(*ctx, p), empty_plan_db(ctx, p), {}};
  seed_base_facts(r.db);
  for (int i = 1; i <= 4; ++i) {
    const std::string idx = "index=" + std::to_string(i);
    r.db.add(R(i), r.log.product_bounds.at(i),
             {kRuleChainProduct, {}, "intersection with a chain of elementary submodels", {idx}});
    for (const auto& mu : r.log.snapshots.back().states[i - 1].below) {
      r.db.add(SysExpr::card(mu), R(i),
               {kRuleChainEmbed, {}, "regular below the intersected order", {idx, "card=" + mu.str()}});
    }
  }
  r.db.close(opts);
  r.constellation = constellation(r.db);
  return r;
}

std::string format_below(const std::vector<CardinalName>& below, const std::set<CardinalName>& targets,
                         const CardContext& ctx) {
  std::vector<CardinalName> rest, hit;
  for (const auto& mu : ctx.sorted(below)) (targets.contains(mu) ? hit : rest).push_back(mu);
  std::vector<std::string> parts;
  if (rest.size() == 1) {
    parts.push_back(rest.front().str());
  } else if (!rest.empty()) {
    parts.push_back("[" + rest.front().str() + ", " + rest.back().str() + "]");
  }
  for (const auto& mu : hit) parts.push_back(mu.str());
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? ", " : "") + parts[k];
  return out;
}

std::string format_tables(const TableLog& log, const std::set<CardinalName>& targets, const CardContext& ctx) {
  std::ostringstream os;
  for (const auto& snap : log.snapshots) {
    std::vector<std::array<std::string, 4>> rows{{"i", "below", "b", "d"}};
    for (int i = 0; i < 4; ++i) {
      const auto& s = snap.states[i];
      rows.push_back({std::to_string(i + 1), format_below(s.below, targets, ctx), s.b.str(), s.d.str()});
    }
    std::array<std::size_t, 4> w{};
    for (const auto& r : rows) {
      for (int k = 0; k < 4; ++k) w[k] = std::max(w[k], r[k].size());
    }
    os << "== " << snap.label << " ==\n";
    for (const auto& r : rows) {
      std::string line;
      for (int k = 0; k < 4; ++k) {
        std::string cell = r[k];
        if (k < 3) cell.resize(w[k], ' ');
        line += (k ? " | " : "") + cell;
      }
      os << line << '\n';
    }
  }
  return os.str();
}

ContextSpec cichon_max_context(const CichonMaxNames& n) {
  ContextSpec s;
  std::vector<CardinalName> low{kAleph1};
  for (int i = 0; i < 4; ++i) s.card(n.lambda_b[i], true), low.push_back(n.lambda_b[i]);
  for (int i = 3; i >= 0; --i) s.card(n.lambda_d[i], true), low.push_back(n.lambda_d[i]);
  s.card(n.lambda_c);
  low.push_back(n.lambda_c);
  s.chain(low, false);

  CardinalName prev = n.lambda_c;
  for (int i = 0; i < 4; ++i) {
    s.card(n.theta_minus[i], true).card(n.theta_minus_succ[i], true).card(n.theta[i], true);
    s.lt(prev, n.theta_minus[i]).lt(n.theta_minus[i], n.theta_minus_succ[i]).le(n.theta_minus_succ[i], n.theta[i]);
    s.succ(n.theta_minus[i], n.theta_minus_succ[i]);
    s.pow(n.theta[i], n.theta_minus[i]).pow_lt(n.theta_minus[i], n.theta_minus[i]);
    prev = n.theta[i];
  }
  s.card(n.theta_inf, true).lt(prev, n.theta_inf);
  s.pow(n.lambda_c, kAleph0);
  s.pow_lt(n.theta[2], n.theta[2]).inaccessible(n.theta[3], kAleph1).pow_lt(n.theta_inf, n.theta[3]);
  return s;
}

Plan canonical_plan(const CichonMaxNames& n) {
  using K = ChainSpec::Kind;
  Plan p{"cichon_max", {n.theta, n.theta_inf}, {}};
  for (int i = 4; i >= 1; --i) {
    p.steps.push_back({K::D, i, n.lambda_d[i - 1], {n.theta_minus[i - 1], true}, n.theta[i - 1]});
    p.steps.push_back({K::B, i, n.lambda_b[i - 1], {n.theta_minus[i - 1], false}, n.theta_minus[i - 1]});
  }
  p.steps.push_back({K::Final, 0, {}, {kAleph1, false}, n.lambda_c});
  return p;
}

}  // namespace cichon
