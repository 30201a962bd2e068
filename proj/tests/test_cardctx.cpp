#include <gtest/gtest.h>

#include <random>

#include "cichon/cardctx.hpp"
#include "cichon/error.hpp"
#include "cichon/submodel.hpp"

using namespace cichon;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::BadParameters;
}

CardContext two_lambdas() {
  ContextSpec s;
  s.card("l1", true).card("l2", true).card("w");
  s.lt(kAleph1, "l1").le("l1", "l2");
  return build_context(s);
}

}  // namespace

TEST(CardContext, BuiltinsAreOrdered) {
  const CardContext ctx = build_context({});
  EXPECT_TRUE(ctx.known_lt(kAleph0, kAleph1));
  EXPECT_TRUE(ctx.known_leq(kAleph1, kContinuum));
  EXPECT_TRUE(ctx.is_regular(kAleph1));
  EXPECT_FALSE(ctx.is_regular(kContinuum));
  EXPECT_EQ(ctx.successor_of(kAleph0), kAleph1);
}

TEST(CardContext, DeclarationErrors) {
  EXPECT_EQ(kind_of([] { build_context(ContextSpec{}.card("a").card("a")); }), ErrorKind::DuplicateName);
  EXPECT_EQ(kind_of([] { build_context(ContextSpec{}.card("a").lt("a", "b")); }), ErrorKind::UnknownName);
  EXPECT_EQ(kind_of([] { build_context(ContextSpec{}.card("a").card("b").lt("a", "b").le("b", "a")); }),
            ErrorKind::OrderCycle);
  // A non-strict cycle is an equivalence, not an error.
  const auto ctx = build_context(ContextSpec{}.card("a").card("b").le("a", "b").le("b", "a"));
  EXPECT_TRUE(ctx.equivalent("a", "b"));
}

TEST(CardContext, UnknownComparisons) {
  const CardContext ctx = two_lambdas();
  EXPECT_EQ(ctx.leq("l1", "l2"), Truth::True);
  EXPECT_EQ(ctx.leq("l2", "l1"), Truth::Unknown);
  EXPECT_EQ(ctx.leq("l2", kAleph1), Truth::False);
  EXPECT_EQ(ctx.leq("w", "l1"), Truth::Unknown);
  EXPECT_FALSE(ctx.min("w", "l1").has_value());
  EXPECT_EQ(kind_of([&] { ctx.trace("w", "l1"); }), ErrorKind::IncomparableNames);
}

TEST(CardContext, LeqIsAPreorderOnTheChain) {
  const CardContext ctx = build_context(cichon_max_context());
  const auto& names = ctx.names();
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  for (int i = 0; i < 2000; ++i) {
    const auto &a = names[pick(rng)], &b = names[pick(rng)], &c = names[pick(rng)];
    EXPECT_TRUE(ctx.known_leq(a, a));
    if (ctx.known_leq(a, b) && ctx.known_leq(b, c)) EXPECT_TRUE(ctx.known_leq(a, c)) << a << b << c;
    if (ctx.known_lt(a, b)) EXPECT_FALSE(ctx.known_leq(b, a));
  }
}

TEST(CardContext, TraceIsMinWithWidth) {
  const CardContext ctx = build_context(cichon_max_context());
  std::vector<CardinalName> comparable;
  for (const auto& n : ctx.names()) {
    if (n != kContinuum) comparable.push_back(n);
  }
  for (const auto& mu : comparable) {
    for (const auto& th : comparable) {
      const auto t = ctx.trace(mu, th);
      EXPECT_TRUE(ctx.known_leq(t, mu));
      EXPECT_TRUE(ctx.known_leq(t, th));
      EXPECT_EQ(ctx.equivalent(t, mu), ctx.known_leq(mu, th)) << mu << " " << th;
    }
  }
}

TEST(CardContext, Assumptions) {
  ContextSpec s;
  s.card("m", true).card("ms", true).card("l", true).card("t", true);
  s.lt(kAleph1, "m").le("ms", "t").lt("l", "m");
  s.succ("m", "ms").pow("t", "m").pow_lt("l", "l").inaccessible("t", kAleph1);
  const CardContext ctx = build_context(s);
  EXPECT_EQ(ctx.successor_of("m"), CardinalName("ms"));
  EXPECT_TRUE(ctx.known_lt("m", "ms"));
  EXPECT_TRUE(ctx.has_pow("t", "m"));
  EXPECT_TRUE(ctx.has_pow("t", kAleph1));
  // t^m = t gives t^{<m+} = t.
  EXPECT_TRUE(ctx.has_pow_lt("t", "ms"));
  EXPECT_FALSE(ctx.has_pow_lt("t", "t"));
  EXPECT_TRUE(ctx.has_pow_lt("l", "l"));
  EXPECT_TRUE(ctx.has_pow_lt("l", kAleph0));
  EXPECT_FALSE(ctx.has_pow("l", "l"));
  EXPECT_TRUE(ctx.is_inaccessible("t", kAleph1));
  EXPECT_FALSE(ctx.is_inaccessible("l", kAleph1));
}

TEST(CardContext, RegularsBetweenAndSorted) {
  const CardContext ctx = two_lambdas();
  EXPECT_EQ(ctx.regulars_between(kAleph1, "l2"), (std::vector<CardinalName>{kAleph1, "l1", "l2"}));
  EXPECT_EQ(ctx.sorted({"l2", "l1", kAleph1}), (std::vector<CardinalName>{kAleph1, "l1", "l2"}));
  // l1 <= l2 is only non-strict; l1 still comes first.
  EXPECT_EQ(ctx.sorted({"l2", "l1"}), (std::vector<CardinalName>{"l1", "l2"}));
  // Incomparable names keep their order.
  EXPECT_EQ(ctx.sorted({"w", "l1"}), (std::vector<CardinalName>{"w", "l1"}));
}

TEST(OrdinalExpr, CofinalityAndCardinality) {
  const CardContext ctx = two_lambdas();
  const OrdinalExpr e{{"l2", "l1"}};
  EXPECT_EQ(cf(ctx, e), CardinalName("l1"));
  EXPECT_EQ(card(ctx, e), CardinalName("l2"));
  EXPECT_TRUE(ctx.known_leq(cf(ctx, e), card(ctx, e)));
  EXPECT_EQ(to_string(e), "l2*l1");
  EXPECT_EQ(kind_of([&] { check_ordinal(ctx, OrdinalExpr{{"w"}}); }), ErrorKind::NonRegularFactor);
  EXPECT_EQ(kind_of([&] { card(ctx, OrdinalExpr{{"w", "l1"}}); }), ErrorKind::IncomparableFactors);
}

TEST(OrdinalExpr, CfNeverExceedsCard) {
  const CardContext ctx = build_context(cichon_max_context());
  std::vector<CardinalName> regs;
  for (const auto& n : ctx.names()) {
    if (ctx.is_regular(n) && n != kAleph0) regs.push_back(n);
  }
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, regs.size() - 1);
  for (int i = 0; i < 300; ++i) {
    OrdinalExpr e;
    for (int k = 0; k < 1 + i % 3; ++k) e.factors.push_back(regs[pick(rng)]);
    EXPECT_TRUE(ctx.known_leq(cf(ctx, e), card(ctx, e))) << to_string(e);
  }
}
