#include <gtest/gtest.h>

#include "support.hpp"

using namespace seplen;

TEST(Critical, ConfirmedOnSmallCases) {
  for (const Dims& d : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
    const auto rep = verify_critical(d, 3, 0, Backend::exact);
    EXPECT_EQ(rep.verdict, ConjectureVerdict::confirmed) << d.to_string();
    EXPECT_EQ(rep.l_c, l_c(d));
    EXPECT_EQ(rep.ranks.generic_rank, d.hermitian_dim());
  }
}

TEST(Critical, OneFewerIsNotFull) {
  // At r = L_c - 1 the rank stays below d^2.
  const Dims d{2, 3};
  EXPECT_LT(generic_rank(d, l_c(d) - 1, 3, 0, Backend::exact).generic_rank, d.hermitian_dim());
}

TEST(Critical, FloatBackendSmoke) {
  const auto rep = verify_critical(Dims{2, 2, 2}, 2, 1, Backend::floating);
  EXPECT_EQ(rep.verdict, ConjectureVerdict::confirmed);
  EXPECT_EQ(rep.ranks.backend, Backend::floating);
}

TEST(Critical, ResourceCap) {
  RunLimits lim;
  lim.hermitian_cap = 100;
  EXPECT_THROW(verify_critical(Dims{3, 4}, 1, 0, Backend::automatic, std::nullopt, lim), resource_error);
  EXPECT_THROW(filtration_dims(Dims{3, 4}, {2}, 1, 0, Backend::automatic, std::nullopt, lim), resource_error);
  lim.force = true;
  EXPECT_NO_THROW(verify_critical(Dims{3, 4}, 1, 0, Backend::floating, std::nullopt, lim));
}

TEST(Filtration, TwoByThree) {
  const auto e = filtration_dims(Dims{2, 3}, {5, 6}, 3, 0, Backend::exact);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0].dim, 33u);
  EXPECT_EQ(e[1].dim, 35u);
}

TEST(Filtration, TwoByNAtDMinusOneAndD) {
  for (int n = 2; n <= 4; ++n) {
    const Dims dims{2, n};
    const std::size_t d = dims.total();
    const auto e = filtration_dims(dims, {d - 1, d}, 3, 0, Backend::exact);
    EXPECT_EQ(e[0].dim, d * d - 3) << n;
    EXPECT_EQ(e[1].dim, d * d - 1) << n;
  }
}

TEST(Filtration, Monotone) {
  const Dims dims{2, 3};
  std::vector<std::size_t> rs{1, 2, 3, 4, 5, 6, 7};
  const auto e = filtration_dims(dims, rs, 2, 3, Backend::exact);
  for (std::size_t i = 1; i < e.size(); ++i) EXPECT_GE(e[i].dim, e[i - 1].dim);
  EXPECT_EQ(e.back().dim, dims.hermitian_dim() - 1);
}
