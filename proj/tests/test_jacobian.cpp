#include <gtest/gtest.h>

#include "support.hpp"

using namespace seplen;
using G = GaussianRational;

TEST(Labels, IndexingRoundTrips) {
  const Dims dims{2, 3};
  const auto rows = row_labels(dims);
  ASSERT_EQ(rows.size(), 36u);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(row_index(dims, rows[i]), i);
  const auto cols = col_labels(dims, 3);
  ASSERT_EQ(cols.size(), 30u);
  for (std::size_t i = 0; i < cols.size(); ++i) EXPECT_EQ(col_index(dims, 3, cols[i]), i);
  EXPECT_EQ(to_string(cols[0]), "(1,1,0,xi)");
  EXPECT_EQ(to_string(cols[11]), "(2,1,0,eta)");
  EXPECT_THROW(col_index(dims, 3, ColLabel{4, 1, 0, Coord::xi}), std::out_of_range);
  EXPECT_THROW(col_index(dims, 3, ColLabel{1, 2, 3, Coord::xi}), std::out_of_range);
}

TEST(Coefficients, HermitianSymmetry) {
  const Dims dims{2, 3};
  const auto z = random_exact_point(dims, 3, 5);
  const auto rho = phi_r(z);
  for (std::size_t j = 0; j < dims.total(); ++j)
    for (std::size_t k = 0; k < dims.total(); ++k) {
      const auto jj = dims.multi_index(j);
      const auto kk = dims.multi_index(k);
      const G c = coefficient_c(z, jj, kk);
      EXPECT_EQ(c, coefficient_c(z, kk, jj).conj());
      EXPECT_EQ(c, rho(j, k));
    }
}

TEST(Worked, TwoQubitComplexMatrix) {
  const auto mp = build_mprime(support::two_qubit_p());
  std::vector<std::string> labels;
  const auto nz = support::nonzero_rows(mp, labels);
  EXPECT_EQ(labels, support::worked_row_labels());
  EXPECT_EQ(nz, support::worked_mprime());
}

TEST(Worked, TwoQubitRealMatrix) {
  const auto m = build_m(support::two_qubit_p());
  std::vector<std::string> labels;
  const auto nz = support::nonzero_rows(m, labels);
  EXPECT_EQ(labels, support::worked_row_labels());
  EXPECT_EQ(nz, support::worked_m());
  EXPECT_EQ(exact_rank(m.entries), 5u);
  EXPECT_EQ(jacobian_rank(support::two_qubit_p()), 5u);
  EXPECT_EQ(jacobian_rank(to_float(support::two_qubit_p())), 5u);
}

TEST(Jacobian, BlockwiseMatchesSplitting) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto z = random_exact_point(Dims{2, 3}, 2, seed);
    const auto a = build_m(z);
    const auto b = build_m(build_mprime(z), z.dims());
    EXPECT_EQ(a.entries, b.entries);
  }
}

TEST(Jacobian, ConjugateRowSymmetry) {
  for (const auto& c : support::derivative_corpus()) {
    const auto z = random_exact_point(c.dims, c.r, c.seed);
    const auto mp = build_mprime(z);
    const auto zf = random_float_point(c.dims, c.r, c.seed);
    const auto mf = build_mprime(zf);
    const std::size_t d = c.dims.total();
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t col = 0; col < mp.entries.cols(); ++col) {
          ASSERT_EQ(mp.entries(j * d + k, col), mp.entries(k * d + j, col).conj());
          ASSERT_EQ(mf.entries(j * d + k, col), std::conj(mf.entries(k * d + j, col)));
        }
  }
}

TEST(Jacobian, GenericRankSmallCases) {
  EXPECT_EQ(generic_rank(Dims{2, 2}, 1, 3, 0, Backend::exact).generic_rank, 5u);
  EXPECT_EQ(generic_rank(Dims{2, 3}, 1, 3, 0, Backend::exact).generic_rank, 7u);
  EXPECT_EQ(generic_rank(Dims{3, 3}, 1, 3, 0, Backend::exact).generic_rank, 9u);
  EXPECT_EQ(generic_rank(Dims{2, 3}, 5, 3, 0, Backend::exact).generic_rank, 34u);
  EXPECT_EQ(generic_rank(Dims{2, 2}, 4, 3, 0, Backend::exact).generic_rank, 16u);
  EXPECT_EQ(generic_rank(Dims{2, 3}, 5, 3, 0, Backend::floating).generic_rank, 34u);
}

TEST(Jacobian, ReportIsDeterministicAcrossWorkers) {
  const auto a = generic_rank(Dims{2, 3}, 3, 5, 42, Backend::exact, std::nullopt, 1);
  const auto b = generic_rank(Dims{2, 3}, 3, 5, 42, Backend::exact, std::nullopt, 4);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].sample_seed, b.samples[i].sample_seed);
    EXPECT_EQ(a.samples[i].rank, b.samples[i].rank);
  }
  EXPECT_THROW(generic_rank(Dims{2, 2}, 1, 0, 0), std::invalid_argument);
  EXPECT_THROW(generic_rank(Dims{2, 2}, 0, 1, 0), std::invalid_argument);
}

TEST(Jacobian, BackendResolution) {
  EXPECT_EQ(resolve_backend(Dims{2, 2}, Backend::automatic), Backend::exact);
  EXPECT_EQ(resolve_backend(Dims{5, 6}, Backend::automatic), Backend::exact);     // 900
  EXPECT_EQ(resolve_backend(Dims{6, 6}, Backend::automatic), Backend::floating);  // 1296
  EXPECT_EQ(resolve_backend(Dims{6, 6}, Backend::exact), Backend::exact);
}

TEST(Jacobian, ExactAndFloatRanksAgree) {
  for (const auto& c : support::derivative_corpus()) {
    const auto z = random_exact_point(c.dims, c.r, c.seed);
    EXPECT_EQ(jacobian_rank(z), jacobian_rank(to_float(z))) << c.dims.to_string() << " r=" << c.r;
  }
}

TEST(Jacobian, RowPermutationInvariance) {
  for (const auto& c : support::derivative_corpus()) {
    const auto z = random_exact_point(c.dims, c.r, c.seed);
    std::vector<std::size_t> perm(c.r);
    for (std::size_t i = 0; i < c.r; ++i) perm[i] = c.r - 1 - i;
    EXPECT_EQ(jacobian_rank(z), jacobian_rank(z.permuted(perm)));
  }
}

TEST(Jacobian, ZeroLocalVectorDropsRow) {
  auto z = random_exact_point(Dims{2, 2}, 2, 1);
  z.coord(1, 0, 0) = G(0);
  z.coord(1, 0, 1) = G(0);
  EXPECT_TRUE(z.has_zero_component());
  // Phi is quadratic in each local vector, so a zero factor kills the whole row's derivative.
  EXPECT_EQ(jacobian_rank(z), 5u);
}

TEST(FiniteDifference, RandomPoints) {
  for (const auto& c : support::derivative_corpus())
    EXPECT_LE(finite_difference_check(random_float_point(c.dims, c.r, c.seed), 1e-5), 1e-6);
}

TEST(FiniteDifference, IdentityPoint) {
  for (const Dims& d : {Dims{2, 2}, Dims{2, 3}, Dims{2, 2, 2}})
    EXPECT_LE(finite_difference_check(*identity_point(d).float_point, 1e-5), 1e-6);
}

TEST(FiniteDifference, ScaledPoints) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto z = random_float_point(Dims{2, 3}, 2, seed);
    std::vector<ProductVector<Complex>> rows;
    for (const auto& row : z.row_list()) {
      auto comps = row.components();
      for (auto& v : comps)
        for (auto& x : v) x *= 10.0;
      rows.emplace_back(comps);
    }
    EXPECT_LE(finite_difference_check(PointMatrix<Complex>(z.dims(), rows), 1e-5), 1e-5);
  }
}

// The numerically differentiated Jacobian has the same rank as the analytic one.
TEST(FiniteDifference, JacobianRankMatches) {
  for (const auto& c : support::derivative_corpus()) {
    const auto z = random_float_point(c.dims, c.r, c.seed);
    const auto an = build_m(z);
    const std::size_t d = c.dims.total();
    const double h = 1e-5;
    Matrix<double> fd(d * d, an.col_labels.size());
    for (std::size_t col = 0; col < an.col_labels.size(); ++col) {
      const ColLabel& l = an.col_labels[col];
      const Complex step = l.w == Coord::xi ? Complex(h, 0) : Complex(0, h);
      auto shifted = [&](double sign) {
        std::vector<ProductVector<Complex>> rows(z.row_list());
        rows[l.s - 1][l.t - 1][static_cast<std::size_t>(l.m)] += sign * step;
        return hermitian_coordinates(phi_r(PointMatrix<Complex>(z.dims(), rows)).matrix());
      };
      const auto p = shifted(1.0);
      const auto m = shifted(-1.0);
      for (std::size_t row = 0; row < d * d; ++row) fd(row, col) = (p[row] - m[row]) / (2 * h);
    }
    EXPECT_EQ(numerical_rank(fd, 1e-7), numerical_rank(an.entries)) << c.dims.to_string() << " r=" << c.r;
  }
}
