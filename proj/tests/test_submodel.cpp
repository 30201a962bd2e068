#include <gtest/gtest.h>

#include <algorithm>

#include "cichon/error.hpp"
#include "cichon/submodel.hpp"
#include "expected_tables.hpp"

using namespace cichon;

namespace {

std::shared_ptr<const CardContext> make(const ContextSpec& s) {
  return std::make_shared<const CardContext>(build_context(s));
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::BadParameters;
}

ContextSpec without(ContextSpec s, Assumption::Kind k, const char* a) {
  std::erase_if(s.assumptions, [&](const Assumption& x) { return x.kind == k && x.a == CardinalName(a); });
  return s;
}

}  // namespace

TEST(Submodel, TablesMatchTheTranscription) {
  const auto ctx = make(cichon_max_context());
  const Plan p = canonical_plan();
  const TableLog log = run_tables(*ctx, p);
  const auto targets = plan_targets(p);
  const auto& want = expected::tables();
  ASSERT_EQ(log.snapshots.size(), want.size());
  for (std::size_t s = 0; s < want.size(); ++s) {
    EXPECT_EQ(log.snapshots[s].label, want[s].label);
    for (int i = 0; i < 4; ++i) {
      const auto& got = log.snapshots[s].states[i];
      const auto& row = want[s].rows[i];
      EXPECT_EQ(format_below(got.below, targets, *ctx), row.below) << want[s].label << " S_" << i + 1;
      EXPECT_EQ(got.b.str(), row.b) << want[s].label << " S_" << i + 1;
      EXPECT_EQ(got.d.str(), row.d) << want[s].label << " S_" << i + 1;
    }
  }
}

TEST(Submodel, FinalConstellation) {
  const auto r = run_plan(make(cichon_max_context()), canonical_plan());
  const auto a = r.constellation.assignment(r.db.ctx());
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, expected::final_assignment());
  EXPECT_TRUE(check_assignment(r.db.ctx(), *a).empty());
}

TEST(Submodel, ProductBounds) {
  const Plan p = canonical_plan();
  const auto r = run_plan(make(cichon_max_context()), p);
  ASSERT_EQ(r.log.product_bounds.size(), 4u);
  EXPECT_EQ(product_bound(p, 4).str(), "Prod(lambda4d,lambda4b)");
  EXPECT_EQ(product_bound(p, 1).args().size(), 8u);
  const CichonMaxNames n;
  for (int i = 1; i <= 4; ++i) {
    const SysExpr bound = product_bound(p, i);
    EXPECT_EQ(r.log.product_bounds.at(i), bound);
    const SysExpr ri = SysExpr::atom(kPrsAtoms[i - 1]);
    const auto id = r.db.find_fact(ri, bound);
    ASSERT_TRUE(id) << i;
    EXPECT_EQ(r.db.fact(*id).why.rule, kRuleChainProduct);
    const auto vb = value_bounds(r.db, bound);
    EXPECT_EQ(vb.b.lo, n.lambda_b[i - 1]) << i;
    EXPECT_TRUE(vb.b.pinned(r.db.ctx()));
    EXPECT_EQ(vb.d.lo, n.lambda_d[i - 1]) << i;
    EXPECT_TRUE(vb.d.pinned(r.db.ctx()));
    // Every pinned value embeds into R_i.
    for (const auto& mu : {n.lambda_b[i - 1], n.lambda_d[i - 1]}) EXPECT_TRUE(r.db.leq(SysExpr::card(mu), ri));
  }
}

TEST(Submodel, Deterministic) {
  const auto ctx = make(cichon_max_context());
  const auto a = run_plan(ctx, canonical_plan());
  const auto b = run_plan(ctx, canonical_plan());
  EXPECT_EQ(a.db.relation(), b.db.relation());
  EXPECT_EQ(format_tables(a.log, plan_targets(canonical_plan()), *ctx),
            format_tables(b.log, plan_targets(canonical_plan()), *ctx));
  EXPECT_EQ(a.log.notes, b.log.notes);
}

// Once S_i is pinned by its own b-step, later chains leave it alone.
TEST(Submodel, PinnedRowsStayPinned) {
  const auto ctx = make(cichon_max_context());
  const auto log = run_tables(*ctx, canonical_plan());
  for (int i = 1; i <= 4; ++i) {
    const std::string own = "chain b " + std::to_string(i);
    const auto at = std::find_if(log.snapshots.begin(), log.snapshots.end(),
                                 [&](const Snapshot& s) { return s.label == own; });
    ASSERT_NE(at, log.snapshots.end());
    for (auto later = at; later != log.snapshots.end(); ++later) EXPECT_EQ(later->states[i - 1], at->states[i - 1]);
  }
}

TEST(Submodel, RenamedCardinals) {
  CichonMaxNames n;
  for (auto& x : n.lambda_b) x = CardinalName("x" + x.str());
  for (auto& x : n.lambda_d) x = CardinalName("x" + x.str());
  n.lambda_c = "xc";
  const auto r = run_plan(make(cichon_max_context(n)), canonical_plan(n));
  const auto a = r.constellation.assignment(r.db.ctx());
  ASSERT_TRUE(a);
  for (const auto& [e, v] : expected::final_assignment()) {
    const std::string want = e == Entry::c ? "xc" : "x" + v.str();
    EXPECT_EQ(a->at(e).str(), want);
  }
}

TEST(Submodel, TraceReplays) {
  const auto ctx = make(cichon_max_context());
  const Plan p = canonical_plan();
  const auto r = run_plan(ctx, p);
  EXPECT_TRUE(r.db.replay().ok());
  FactDB empty = empty_plan_db(ctx, p);
  const auto rep = replay_trace(empty, format_trace(r.db));
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.checked, r.db.facts().size());
}

TEST(SubmodelErrors, MissingBaseAssumption) {
  const auto ctx = make(without(cichon_max_context(), Assumption::Kind::PowLt, "theta_inf"));
  EXPECT_EQ(kind_of([&] { run_plan(ctx, canonical_plan()); }), ErrorKind::MissingAssumption);
}

TEST(SubmodelErrors, MissingSuccessor) {
  const auto ctx = make(without(cichon_max_context(), Assumption::Kind::Succ, "theta2m"));
  EXPECT_EQ(kind_of([&] { check_plan(*ctx, canonical_plan()); }), ErrorKind::MissingAssumption);
}

TEST(SubmodelErrors, WrongOrder) {
  const auto ctx = make(cichon_max_context());
  Plan p = canonical_plan();
  std::swap(p.steps[0], p.steps[1]);
  EXPECT_EQ(kind_of([&] { check_plan(*ctx, p); }), ErrorKind::PlanOrderViolation);
  p = canonical_plan();
  p.steps.pop_back();
  EXPECT_EQ(kind_of([&] { check_plan(*ctx, p); }), ErrorKind::PlanOrderViolation);
}

TEST(SubmodelErrors, NonRegularLength) {
  const auto ctx = make(cichon_max_context());
  Plan p = canonical_plan();
  p.steps[2].length = "lambdac";
  EXPECT_EQ(kind_of([&] { check_plan(*ctx, p); }), ErrorKind::NonRegularFactor);
}

TEST(SubmodelErrors, Unpinned) {
  const auto ctx = make(cichon_max_context());
  const Plan p = canonical_plan();
  const States s = init_from_gksmax(*ctx, p.base);
  ChainSpec bad = p.steps.front();
  // A closure below the chain length leaves b under the least member.
  bad.closure = {kAleph1, false};
  EXPECT_EQ(kind_of([&] { step(s, bad, *ctx, p); }), ErrorKind::Unpinned);
}

TEST(SubmodelErrors, FinalTooNarrow) {
  const auto ctx = make(cichon_max_context());
  const Plan p = canonical_plan();
  const States s = init_from_gksmax(*ctx, p.base);
  EXPECT_EQ(kind_of([&] { step(s, p.steps.back(), *ctx, p); }), ErrorKind::PlanOrderViolation);
}
