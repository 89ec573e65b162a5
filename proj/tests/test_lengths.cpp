#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

using namespace seplen;
using G = GaussianRational;

TEST(Lc, KnownValues) {
  EXPECT_EQ(l_c(Dims{2, 2}), 4u);
  EXPECT_EQ(l_c(Dims{2, 3}), 6u);
  EXPECT_EQ(l_c(Dims{2, 4}), 8u);
  EXPECT_EQ(l_c(Dims{3, 3}), 9u);
  EXPECT_EQ(l_c(Dims{2, 2, 2}), 10u);
  EXPECT_EQ(l_c(Dims{4, 4}), 20u);
  for (int n = 2; n <= 20; ++n) EXPECT_EQ(l_c(Dims{2, n}), static_cast<std::uint64_t>(2 * n)) << n;
}

TEST(Lc, Bounds) {
  const auto b = length_bounds(Dims{2, 3});
  EXPECT_EQ(b.d, 6u);
  EXPECT_EQ(b.l_c, 6u);
  EXPECT_EQ(b.l_crit_lower, 6u);
  EXPECT_EQ(b.l_max_upper, 36u);
  EXPECT_EQ(product_cone_dim(Dims{2, 3}), 7u);
}

TEST(Lc, PermutationInvariant) {
  EXPECT_EQ(l_c(Dims{2, 3, 5}), l_c(Dims{5, 2, 3}));
  EXPECT_EQ(l_c(Dims{4, 2, 2}), l_c(Dims{2, 4, 2}));
}

// Exhaustive: l_c >= d always, with equality exactly for two parties and (d1-2)(d2-2) <= 1.
TEST(Lc, AtLeastDWithStatedEquality) {
  std::size_t checked = 0;
  std::vector<int> dims;
  auto rec = [&](auto&& self, int from, int depth) -> void {
    if (dims.size() >= 2) {
      const Dims d(dims);
      const auto lc = l_c(d);
      ASSERT_GE(lc, d.total()) << d.to_string();
      const bool eq = dims.size() == 2 && (dims[0] - 2) * (dims[1] - 2) <= 1;
      ASSERT_EQ(lc == d.total(), eq) << d.to_string();
      ASSERT_EQ(l_c_equals_d(d), eq) << d.to_string();
      ++checked;
    }
    if (depth == 6) return;
    for (int x = from; x <= 9; ++x) {
      dims.push_back(x);
      self(self, x, depth + 1);
      dims.pop_back();
    }
  };
  rec(rec, 2, 0);
  EXPECT_EQ(checked, 2994u);  // multisets of size 2..6 from {2..9}
}

TEST(Classifier, SmallRanks) {
  // rank 1: a product state
  const auto one = small_length_classify(phi_r(random_exact_point(Dims{2, 3}, 1, 1)), Dims{2, 3});
  EXPECT_EQ(one.verdict, LengthVerdict::exact);
  EXPECT_EQ(one.length, 1u);
  EXPECT_TRUE(one.separability_assumed);

  const auto two = small_length_classify(phi_r(random_exact_point(Dims{2, 3}, 2, 2)), Dims{2, 3});
  EXPECT_EQ(two.verdict, LengthVerdict::exact);
  EXPECT_EQ(two.length, 2u);

  const auto three = small_length_classify(phi_r(random_exact_point(Dims{3, 3}, 3, 3)), Dims{3, 3});
  EXPECT_EQ(three.verdict, LengthVerdict::exact);
  EXPECT_EQ(three.length, 3u);
  EXPECT_EQ(three.ranks.size(), 4u);
}

TEST(Classifier, BirankFourThreeIsUpperBound) {
  const auto f = birank43();
  const auto c = small_length_classify(f.rho, f.dims);
  EXPECT_EQ(c.verdict, LengthVerdict::upper_bound);
  EXPECT_EQ(c.length, 4u);
  EXPECT_EQ(c.lower_bound, 4u);
  EXPECT_EQ(to_string(c.verdict), "upper-bound");
}

TEST(Classifier, LargeIsUnknownWithLowerBound) {
  const auto rho = phi_r(random_exact_point(Dims{3, 3}, 6, 4));
  const auto c = small_length_classify(rho, Dims{3, 3});
  EXPECT_EQ(c.verdict, LengthVerdict::unknown);
  EXPECT_FALSE(c.length.has_value());
  EXPECT_EQ(c.lower_bound, 6u);
}

TEST(Classifier, FloatAgrees) {
  const auto z = random_exact_point(Dims{2, 2, 2}, 3, 9);
  const auto e = small_length_classify(phi_r(z), Dims{2, 2, 2});
  const auto f = small_length_classify(phi_r(to_float(z)), Dims{2, 2, 2});
  EXPECT_EQ(e.ranks, f.ranks);
  EXPECT_EQ(e.verdict, f.verdict);
}

// Membership in the rank-r filtration is monotone: adding a product vector never lowers any rank.
TEST(Classifier, NestedRanksMonotone) {
  const Dims dims{2, 3};
  auto z = random_exact_point(dims, 1, 11);
  auto prev = small_length_classify(phi_r(z), dims).ranks;
  for (std::size_t k = 2; k <= 7; ++k) {
    z = z.with_row(random_exact_point(dims, 1, 100 + k).row(0));
    const auto cur = small_length_classify(phi_r(z), dims).ranks;
    for (std::size_t m = 0; m < cur.size(); ++m) EXPECT_GE(cur[m], prev[m]);
    EXPECT_LE(*std::max_element(cur.begin(), cur.end()), k);
    prev = cur;
  }
}
