#include <gtest/gtest.h>

#include <random>

#include "cichon/cover.hpp"
#include "cichon/error.hpp"
#include "cichon/finrel.hpp"
#include "oracles.hpp"

using namespace cichon;

namespace {

FinSys cones3() {
  // cone(0) = {0,1}, cone(1) = {1,2}, cone(2) = {0,2}
  return FinSys::from_rows({{true, false, true}, {true, true, false}, {false, true, true}});
}

const ExtNat TOP = ExtNat::top();

}  // namespace

TEST(ExtNat, TopIsAboveNaturals) {
  EXPECT_LT(ExtNat(1000), TOP);
  EXPECT_EQ(ext_min(TOP, 3), ExtNat(3));
  EXPECT_EQ(ext_max(TOP, 3), TOP);
  EXPECT_EQ(ext_mul(TOP, 2), TOP);
  EXPECT_EQ(ext_mul(2, 3), ExtNat(6));
  EXPECT_EQ(to_string(TOP), "inf");
}

TEST(Finrel, DominatingNumber) {
  EXPECT_EQ(d_num(oracle::leq(3)), ExtNat(1));
  EXPECT_EQ(d_num(oracle::identity(3)), ExtNat(3));
  EXPECT_EQ(d_num(cones3()), ExtNat(2));
  EXPECT_EQ(oracle::d_num(cones3()), ExtNat(2));
  EXPECT_EQ(d_num(FinSys::from_rows({{false}})), TOP);
}

TEST(Finrel, UnboundingNumber) {
  EXPECT_EQ(b_num(oracle::leq(3)), TOP);
  EXPECT_EQ(b_num(oracle::identity(3)), ExtNat(2));
  EXPECT_EQ(b_num(cones3()), ExtNat(3));
  EXPECT_EQ(oracle::b_num(cones3()), ExtNat(3));
}

TEST(Finrel, Dual) {
  const FinSys id = oracle::identity(3);
  EXPECT_EQ(dual(dual(id)), id);
  EXPECT_EQ(b_num(dual(cones3())), ExtNat(2));
  EXPECT_EQ(d_num(dual(oracle::leq(3))), TOP);
  EXPECT_EQ(oracle::d_num(dual(oracle::leq(3))), TOP);
}

TEST(Finrel, Product) {
  const FinSys p = product(oracle::identity(2), oracle::leq(3));
  EXPECT_EQ(p.x_size(), 6u);
  EXPECT_EQ(b_num(p), ExtNat(2));
  EXPECT_EQ(d_num(p), ExtNat(2));
  EXPECT_EQ(oracle::d_num(p), ExtNat(2));
  const FinSys one = FinSys::from_rows({{true}});
  const FinSys r = cones3();
  const FinSys rp = product(r, one);
  EXPECT_TRUE(tukey_search(r, rp).has_value());
  EXPECT_TRUE(tukey_search(rp, r).has_value());
  Limits tight;
  tight.max_product_side = 4;
  EXPECT_THROW(product(r, r, tight), Error);
}

TEST(Finrel, TukeySearch) {
  const FinSys r = cones3();
  const auto self = tukey_search(r, r);
  ASSERT_TRUE(self);
  EXPECT_TRUE(is_tukey(r, r, *self));
  EXPECT_EQ(self->psi_minus, (std::vector<std::size_t>{0, 1, 2}));
  const auto up = tukey_search(oracle::identity(2), oracle::identity(3));
  ASSERT_TRUE(up);
  EXPECT_TRUE(is_tukey(oracle::identity(2), oracle::identity(3), *up));
  EXPECT_FALSE(tukey_search(oracle::identity(3), oracle::identity(2)));
  Limits tiny;
  tiny.search_space = 10;
  try {
    tukey_search(oracle::identity(4), oracle::identity(5), tiny);
    FAIL() << "expected SearchSpaceTooLarge";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SearchSpaceTooLarge);
  }
}

TEST(Finrel, IdealSystems) {
  const auto s = ideal_systems(3, 2);
  EXPECT_EQ(b_num(s.cover), ExtNat(2));
  EXPECT_EQ(d_num(s.cover), ExtNat(3));
  EXPECT_EQ(b_num(s.ideal), ExtNat(2));
  EXPECT_EQ(d_num(s.ideal), ExtNat(3));
  EXPECT_EQ(oracle::b_num(s.ideal), ExtNat(2));
  EXPECT_EQ(oracle::d_num(s.ideal), ExtNat(3));
  Limits wide;
  wide.max_side = 32;
  for (std::size_t n = 2; n <= 5; ++n) EXPECT_EQ(d_num(ideal_systems(n, n).cover, wide), ExtNat(2)) << n;
  EXPECT_THROW(ideal_systems(3, 0), Error);
  EXPECT_THROW(ideal_systems(FinIdeal{3, {0b000, 0b011}}), Error);
}

TEST(Finrel, TrivialIdealConnections) {
  Limits lim;
  lim.max_side = 32;
  lim.search_space = 1e12;
  // k = 1 gives the ideal {0}, which misses the singletons.
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t k = 2; k <= n; ++k) {
      const auto s = ideal_systems(n, k);
      if (n <= 3) {
        EXPECT_TRUE(tukey_search(s.cover, s.ideal, lim).has_value()) << n << k;
        EXPECT_TRUE(tukey_search(dual(s.cover), s.ideal, lim).has_value()) << n << k;
      }
      // add <= cov, add <= non, cov <= cof, non <= cof.
      EXPECT_LE(b_num(s.ideal, lim), d_num(s.cover, lim));
      EXPECT_LE(b_num(s.ideal, lim), b_num(s.cover, lim));
      EXPECT_LE(d_num(s.cover, lim), d_num(s.ideal, lim));
      EXPECT_LE(b_num(s.cover, lim), d_num(s.ideal, lim));
    }
  }
}

TEST(Finrel, Preorders) {
  const auto chain = from_preorder({{true, true, true}, {false, true, true}, {false, false, true}});
  EXPECT_TRUE(chain.directed);
  EXPECT_EQ(b_num(chain.sys), TOP);
  EXPECT_EQ(d_num(chain.sys), ExtNat(1));
  EXPECT_FALSE(from_preorder({{true, false}, {false, true}}).directed);
  // 0 < 1 and 2 < 3 below a common top 4.
  std::vector<std::vector<bool>> v(5, std::vector<bool>(5, false));
  for (int i = 0; i < 5; ++i) v[i][i] = v[i][4] = true;
  v[0][1] = v[2][3] = true;
  const auto two = from_preorder(v);
  EXPECT_TRUE(two.directed);
  EXPECT_EQ(d_num(two.sys), ExtNat(1));
  EXPECT_THROW(from_preorder({{true, true}, {false, false}}), Error);
}

TEST(Finrel, MatchesOracleOnRandomSystems) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<std::size_t> side(1, 7);
  for (int i = 0; i < 400; ++i) {
    const FinSys r = oracle::random_sys(rng, side(rng), side(rng), 0.3 + 0.1 * (i % 5));
    ASSERT_EQ(d_num(r), oracle::d_num(r)) << format_finsys(r);
    ASSERT_EQ(b_num(r), oracle::b_num(r)) << format_finsys(r);
  }
}

TEST(Finrel, SearchMatchesOracle) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::size_t> side(1, 3);
  for (int i = 0; i < 300; ++i) {
    const FinSys r = oracle::random_sys(rng, side(rng), side(rng));
    const FinSys r2 = oracle::random_sys(rng, side(rng), side(rng));
    const auto m = tukey_search(r, r2);
    ASSERT_EQ(m.has_value(), oracle::tukey_exists(r, r2)) << format_finsys(r) << format_finsys(r2);
    if (m) EXPECT_TRUE(is_tukey(r, r2, *m));
  }
}

TEST(Finrel, Formats) {
  const FinSys r = cones3();
  EXPECT_EQ(parse_finsys(format_finsys(r)), r);
  EXPECT_EQ(parse_finsys("# cones\n2 2\n10\n0 1\n"), oracle::identity(2));
  EXPECT_THROW(parse_finsys("2 2\n10\n"), Error);
  EXPECT_THROW(parse_finsys("1 2\n1x\n"), Error);
  const FinIdeal small = small_sets(3, 2);
  EXPECT_EQ(small.members.size(), 4u);
  EXPECT_EQ(parse_finideal(format_finideal(small)), small);
}

TEST(Cover, ExactSolvers) {
  const std::vector<Mask> sets{0b011, 0b110, 0b101, 0b001};
  const auto c = min_set_cover(0b111, sets);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->size(), 2u);
  EXPECT_FALSE(min_set_cover(0b1000, sets));
  const std::vector<Mask> fam{0b001, 0b010, 0b100};
  const auto h = min_hitting_set(3, fam);
  ASSERT_TRUE(h);
  EXPECT_EQ(h->size(), 3u);
  const std::vector<Mask> with_empty{0b001, 0};
  EXPECT_FALSE(min_hitting_set(3, with_empty));
}
