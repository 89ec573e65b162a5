#pragma once

// Reproducible fixtures: the Tiles UPB state, the identity point and the
// birank (4,3) two-qubit state, each with machine-checked assertions.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "seplen/hilbert.hpp"
#include "seplen/lengths.hpp"

namespace seplen {

struct Assertion {
  std::string name;
  std::string expected;
  std::string observed;
  bool passed = false;
};

struct Fixture {
  std::string name;
  Dims dims;
  std::optional<PointMatrix<GaussianRational>> exact_point;
  std::optional<PointMatrix<Complex>> float_point;
  HermitianOperator<GaussianRational> rho;
  std::vector<Assertion> assertions;

  [[nodiscard]] bool passed() const {
    for (const auto& a : assertions)
      if (!a.passed) return false;
    return true;
  }
};

namespace detail {

inline void expect(Fixture& f, std::string name, const std::string& expected, const std::string& observed) {
  f.assertions.push_back({std::move(name), expected, observed, expected == observed});
}

inline std::string pair_str(std::pair<std::size_t, std::size_t> p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

inline std::vector<GaussianRational> rational_vector(std::initializer_list<Rational> xs) {
  std::vector<GaussianRational> out;
  for (const auto& x : xs) out.emplace_back(x);
  return out;
}

}  // namespace detail

/// The five Tiles UPB vectors plus the unique sixth product vector in their
/// span, in 3 x 3. psi_1..psi_4 carry a 1/sqrt2 amplitude; the exact payload
/// stores sqrt2 * psi_i (rational) and folds 1/2 into the projector weight, so
/// rho is exactly rational.
inline Fixture tiles() {
  using detail::rational_vector;
  Fixture f;
  f.name = "tiles";
  f.dims = Dims{3, 3};
  const Rational third(1, 3);
  const Rational ninth(1, 9);
  // (scaled local vectors, weight) for psi_1..psi_6
  const std::vector<std::pair<ProductVector<GaussianRational>, Rational>> vecs = {
      {ProductVector<GaussianRational>({rational_vector({1, 0, 0}), rational_vector({1, -1, 0})}), Rational(1, 2)},
      {ProductVector<GaussianRational>({rational_vector({0, 0, 1}), rational_vector({0, 1, -1})}), Rational(1, 2)},
      {ProductVector<GaussianRational>({rational_vector({1, -1, 0}), rational_vector({0, 0, 1})}), Rational(1, 2)},
      {ProductVector<GaussianRational>({rational_vector({0, 1, -1}), rational_vector({1, 0, 0})}), Rational(1, 2)},
      {ProductVector<GaussianRational>({rational_vector({third, third, third}), rational_vector({1, 1, 1})}), Rational(1)},
      {ProductVector<GaussianRational>(
           {rational_vector({2 * ninth, -ninth, 2 * ninth}), rational_vector({2, -1, 2})}),
       Rational(1)},
  };

  std::vector<ProductVector<GaussianRational>> exact_rows;
  std::vector<std::vector<GaussianRational>> flat;
  Matrix<GaussianRational> rho(9, 9);
  for (const auto& [v, w] : vecs) {
    exact_rows.push_back(v);
    flat.push_back(flatten(f.dims, v));
    add_projector<GaussianRational>(rho, flat.back(), GaussianRational(w));
  }
  f.exact_point = PointMatrix<GaussianRational>(f.dims, exact_rows);
  f.rho = HermitianOperator<GaussianRational>(rho);

  // Float vectors with the true 1/sqrt2 amplitudes on the first party.
  std::vector<ProductVector<Complex>> float_rows;
  for (const auto& [v, w] : vecs) {
    const double amp = std::sqrt(w.get_d());
    std::vector<std::vector<Complex>> comps;
    for (std::size_t q = 0; q < 2; ++q) {
      std::vector<Complex> c;
      for (const auto& x : v[q]) c.push_back(to_complex(x) * (q == 0 ? amp : 1.0));
      comps.push_back(std::move(c));
    }
    float_rows.emplace_back(std::move(comps));
  }
  f.float_point = PointMatrix<Complex>(f.dims, float_rows);

  detail::expect(f, "birank (exact)", "(5,5)", detail::pair_str(birank(f.rho, f.dims)));
  detail::expect(f, "birank (float)", "(5,5)", detail::pair_str(birank(phi_r(*f.float_point), f.dims)));

  // 81 x 6 coordinate matrix of the six projectors.
  Matrix<GaussianRational> coords(81, 6);
  Matrix<GaussianRational> gram(6, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t r = 0; r < 9; ++r)
      for (std::size_t c = 0; c < 9; ++c)
        coords(r * 9 + c, i) = GaussianRational(vecs[i].second) * flat[i][r] * flat[i][c].conj();
  }
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      GaussianRational ip;
      for (std::size_t r = 0; r < 9; ++r) ip += flat[i][r].conj() * flat[j][r];
      gram(i, j) = GaussianRational(vecs[i].second * vecs[j].second * ip.norm());
    }
  detail::expect(f, "projector coordinate matrix rank", "6", std::to_string(exact_rank(coords)));
  detail::expect(f, "Hilbert-Schmidt Gram matrix rank", "6", std::to_string(exact_rank(gram)));

  // psi_1..psi_5 are pairwise orthogonal.
  bool orthogonal = true;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) {
      GaussianRational ip;
      for (std::size_t r = 0; r < 9; ++r) ip += flat[i][r].conj() * flat[j][r];
      orthogonal = orthogonal && ip.is_zero();
    }
  detail::expect(f, "psi_1..psi_5 pairwise orthogonal", "true", orthogonal ? "true" : "false");

  // psi_6 = (1/3)(psi_5 + sqrt2 (psi_1 - psi_2 + psi_3 - psi_4)); sqrt2 psi_i are the stored vectors.
  bool relation = true;
  double worst = 0.0;
  const auto fl = [&](std::size_t i) { return flatten(f.dims, f.float_point->row(i)); };
  const auto f1 = fl(0), f2 = fl(1), f3 = fl(2), f4 = fl(3), f5 = fl(4), f6 = fl(5);
  for (std::size_t r = 0; r < 9; ++r) {
    const GaussianRational rhs =
        GaussianRational(third) * (flat[4][r] + flat[0][r] - flat[1][r] + flat[2][r] - flat[3][r]);
    relation = relation && rhs == flat[5][r];
    const Complex frhs = (f5[r] + std::sqrt(2.0) * (f1[r] - f2[r] + f3[r] - f4[r])) / 3.0;
    worst = std::max(worst, std::abs(frhs - f6[r]));
  }
  detail::expect(f, "psi_6 linear relation (exact)", "true", relation ? "true" : "false");
  detail::expect(f, "psi_6 linear relation (float, 1e-12)", "true", worst <= 1e-12 ? "true" : "false");

  const auto cls = small_length_classify(f.rho, f.dims);
  detail::expect(f, "classifier", "unknown, lower bound 5",
                 std::string(to_string(cls.verdict)) + ", lower bound " + std::to_string(cls.lower_bound));
  return f;
}

/// Point with one row |s_1>...|s_n> per basis sequence s, so Phi_d(p) = I_d.
inline Fixture identity_point(const Dims& dims) {
  Fixture f;
  f.name = "identity";
  f.dims = dims;
  const std::size_t d = dims.total();
  std::vector<ProductVector<GaussianRational>> rows;
  for (std::size_t s = 0; s < d; ++s) {
    const auto seq = dims.multi_index(s);
    std::vector<std::vector<GaussianRational>> comps;
    for (std::size_t q = 0; q < dims.parties(); ++q) {
      std::vector<GaussianRational> v(static_cast<std::size_t>(dims[q]));
      v[static_cast<std::size_t>(seq[q])] = GaussianRational(1);
      comps.push_back(std::move(v));
    }
    rows.emplace_back(std::move(comps));
  }
  f.exact_point = PointMatrix<GaussianRational>(dims, rows);
  f.float_point = to_float(*f.exact_point);
  f.rho = phi_r(*f.exact_point);
  detail::expect(f, "Phi_d(p) = I_d (exact)", "true",
                 f.rho.matrix() == Matrix<GaussianRational>::identity(d) ? "true" : "false");
  const auto frho = phi_r(*f.float_point);
  detail::expect(f, "Phi_d(p) = I_d (float)", "true",
                 frho.matrix() == Matrix<Complex>::identity(d) ? "true" : "false");
  if (dims == Dims{2, 2}) {
    // rows (|0>,|0>), (|0>,|1>), (|1>,|0>), (|1>,|1>)
    bool shown = true;
    const int expected[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (std::size_t s = 0; s < 4; ++s)
      for (std::size_t q = 0; q < 2; ++q)
        for (std::size_t j = 0; j < 2; ++j)
          shown = shown && f.exact_point->coord(s, q, j) == GaussianRational(j == static_cast<std::size_t>(expected[s][q]) ? 1 : 0);
    detail::expect(f, "two-qubit point matches the 4 x 2 listing", "true", shown ? "true" : "false");
  }
  return f;
}

/// I_4 + (|00> + |11>)(<00| + <11|): length 4 with birank (4,3).
inline Fixture birank43() {
  Fixture f;
  f.name = "birank43";
  f.dims = Dims{2, 2};
  Matrix<GaussianRational> m = Matrix<GaussianRational>::identity(4);
  const std::vector<GaussianRational> phi{1, 0, 0, 1};
  add_projector<GaussianRational>(m, phi);
  f.rho = HermitianOperator<GaussianRational>(m);
  detail::expect(f, "birank (exact)", "(4,3)", detail::pair_str(birank(f.rho, f.dims)));
  detail::expect(f, "birank (float)", "(4,3)", detail::pair_str(birank(to_float(f.rho), f.dims)));
  detail::expect(f, "trace", "6", to_string(f.rho.trace()));
  detail::expect(f, "positive semidefinite", "true", is_positive_semidefinite(f.rho) ? "true" : "false");
  const auto cls = small_length_classify(f.rho, f.dims);
  detail::expect(f, "classifier", "upper-bound 4",
                 std::string(to_string(cls.verdict)) + " " + (cls.length ? std::to_string(*cls.length) : "-"));
  return f;
}

}  // namespace seplen
