#include <gtest/gtest.h>

#include "support.hpp"

using namespace seplen;

namespace {

TwoNParams params(std::vector<int> a, std::vector<int> b) {
  TwoNParams p;
  p.n = a.size();
  for (int x : a) p.a.emplace_back(x);
  for (int x : b) p.b.emplace_back(x);
  return p;
}

Rational big(const char* s) { return Rational(Integer(s)); }

}  // namespace

TEST(TwoN, CanonicalPointShape) {
  const auto p = params({1, 2}, {3, 5});
  const auto z = canonical_point(p);
  ASSERT_EQ(z.rows(), 4u);
  using G = GaussianRational;
  // row 2i-1: (|0> + a_i|1>, |i-1>); row 2i: (|0> + i b_i|1>, |i-1>)
  EXPECT_EQ(z.coord(0, 0, 1), G(1));
  EXPECT_EQ(z.coord(1, 0, 1), G(Rational(0), Rational(3)));
  EXPECT_EQ(z.coord(3, 1, 1), G(1));
  EXPECT_EQ(z.coord(3, 1, 0), G(0));
}

TEST(TwoN, DeterminantNTwo) {
  const auto p = params({1, 2}, {3, 5});
  EXPECT_EQ(det_msharp(p), Rational(-86528));
  EXPECT_EQ(closed_form(p), Rational(86528));
  EXPECT_EQ(block_det(p, {0, 1}), Rational(2704));
  EXPECT_EQ(block_closed_form(p, {0, 1}), Rational(2704));
  EXPECT_EQ(exact_determinant(displayed_block(1, 2, 3, 5)), Rational(-2704));
  const auto msharp = build_msharp(p);
  EXPECT_EQ(msharp.matrix.rows(), 16u);
  EXPECT_EQ(msharp.matrix.cols(), 16u);
  EXPECT_EQ(build_mdoublesharp(p).matrix.rows(), 8u);
}

TEST(TwoN, DeterminantNThree) {
  const auto p = params({2, -3, 5}, {7, 1, -4});
  EXPECT_EQ(det_msharp(p), big("-5689981347220684800000"));
  EXPECT_EQ(closed_form(p), big("5689981347220684800000"));
  EXPECT_EQ(block_det(p, {0, 1}), Rational(608400));
  EXPECT_EQ(block_det(p, {0, 2}), Rational(6290064));
  EXPECT_EQ(block_det(p, {1, 2}), Rational(774400));
  EXPECT_TRUE(verify_theorem(p).passed());
}

TEST(TwoN, RationalParameters) {
  TwoNParams p;
  p.n = 2;
  p.a = {Rational(1, 2), Rational(-3, 7)};
  p.b = {Rational(5, 3), Rational(2)};
  const auto rep = verify_theorem(p);
  EXPECT_TRUE(rep.generic());
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(abs(rep.det_msharp), rep.closed_form);
}

TEST(TwoN, BlocksMatchDisplayUpToColumnSigns) {
  const auto p = params({2, -3, 5}, {7, 1, -4});
  for (BlockIndex uv : {BlockIndex{0, 1}, BlockIndex{0, 2}, BlockIndex{1, 2}}) {
    const auto cmp = compare_to_display(block_matrix(p, uv),
                                        displayed_block(p.a[uv.u], p.a[uv.v], p.b[uv.u], p.b[uv.v]));
    EXPECT_TRUE(cmp.matches());
  }
  EXPECT_THROW(block_matrix(p, {1, 1}), std::out_of_range);
  EXPECT_THROW(block_matrix(p, {0, 3}), std::out_of_range);
}

TEST(TwoN, NonGenericParameters) {
  for (const auto& p : {params({1, 1}, {3, 5}), params({1, 2}, {3, 3}), params({2, 3}, {1, 6}),
                        params({1, 2, 3}, {4, 5, 4})}) {
    const auto rep = verify_theorem(p);
    EXPECT_FALSE(rep.generic());
    EXPECT_EQ(rep.closed_form, Rational(0));
    EXPECT_EQ(rep.det_msharp, Rational(0));
    EXPECT_EQ(rep.jacobian_rank, p.order() - 2);
    EXPECT_TRUE(rep.passed());
  }
}

// det M# vanishes but the removed columns keep M at full rank.
TEST(TwoN, ZeroAStillFullRank) {
  const auto rep = verify_theorem(params({0, 2}, {3, 5}));
  EXPECT_FALSE(rep.generic());
  EXPECT_EQ(rep.det_msharp, Rational(0));
  EXPECT_EQ(rep.jacobian_rank, 16u);
  EXPECT_TRUE(rep.passed());
}

TEST(TwoN, Invariants) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto rep = verify_theorem(n, 17);
    EXPECT_TRUE(rep.generic()) << n;
    for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << "N=" << n << ": " << c.name << " " << c.detail;
    EXPECT_EQ(rep.blocks.size(), n * (n - 1) / 2);
    EXPECT_EQ(rep.jacobian_rank, 4 * n * n);
    EXPECT_EQ(build_mdoublesharp(rep.params).matrix.rows(), 4 * n * (n - 1));
  }
}

TEST(TwoN, Validation) {
  EXPECT_THROW(verify_theorem(params({1}, {2})), std::invalid_argument);
  TwoNParams p = params({1, 2}, {3, 5});
  p.b.pop_back();
  EXPECT_THROW(verify_theorem(p), std::invalid_argument);
  EXPECT_THROW(random_generic_params(1, 0), std::invalid_argument);
}
