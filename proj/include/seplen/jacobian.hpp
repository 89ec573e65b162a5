#pragma once

// Labeled Jacobian matrices of Phi_r.
//
// M'_r is complex with d^2 rows labeled (j;k) and 2 r sum d_q columns
// labeled (s,t,m,w), both in lexicographic order with xi < eta. The entry in
// row (j;k), column (s,t,m,xi) is
//   (delta_{m,j_t} conj(z^{(s,t)}_{k_t}) + delta_{m,k_t} z^{(s,t)}_{j_t}) * prod_{q != t} z^{(s,q)}_{j_q} conj(z^{(s,q)}_{k_q})
// and the eta column carries i (delta_{m,j_t} conj(.) - delta_{m,k_t} (.)) times the same product.
// M_r is real: rows with j < k keep the real part, j > k the imaginary part,
// and diagonal rows are already real.

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "seplen/dims.hpp"
#include "seplen/hilbert.hpp"
#include "seplen/linalg.hpp"
#include "seplen/random.hpp"

namespace seplen {

struct RowLabel {
  std::vector<int> j;
  std::vector<int> k;
  friend bool operator==(const RowLabel&, const RowLabel&) = default;
};

enum class Coord { xi, eta };

/// Column label; s and t are 1-based, m is a 0-based local basis index.
struct ColLabel {
  std::size_t s = 1;
  std::size_t t = 1;
  int m = 0;
  Coord w = Coord::xi;
  friend bool operator==(const ColLabel&, const ColLabel&) = default;
};

inline std::string to_string(const RowLabel& l) {
  std::string out;
  for (std::size_t q = 0; q < l.j.size(); ++q) out += (q ? "," : "") + std::to_string(l.j[q]);
  out += ";";
  for (std::size_t q = 0; q < l.k.size(); ++q) out += (q ? "," : "") + std::to_string(l.k[q]);
  return out;
}

inline std::string to_string(const ColLabel& l) {
  return "(" + std::to_string(l.s) + "," + std::to_string(l.t) + "," + std::to_string(l.m) + "," +
         (l.w == Coord::xi ? "xi" : "eta") + ")";
}

template <class S>
struct LabeledJacobian {
  Matrix<S> entries;
  std::vector<RowLabel> row_labels;
  std::vector<ColLabel> col_labels;
};

inline std::vector<RowLabel> row_labels(const Dims& dims) {
  const std::size_t d = dims.total();
  std::vector<RowLabel> out;
  out.reserve(d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) out.push_back({dims.multi_index(j), dims.multi_index(k)});
  return out;
}

inline std::vector<ColLabel> col_labels(const Dims& dims, std::size_t r) {
  std::vector<ColLabel> out;
  out.reserve(2 * r * dims.local_sum());
  for (std::size_t s = 1; s <= r; ++s)
    for (std::size_t t = 1; t <= dims.parties(); ++t)
      for (int m = 0; m < dims[t - 1]; ++m) {
        out.push_back({s, t, m, Coord::xi});
        out.push_back({s, t, m, Coord::eta});
      }
  return out;
}

inline std::size_t row_index(const Dims& dims, const RowLabel& l) {
  return dims.flat_index(l.j) * dims.total() + dims.flat_index(l.k);
}

inline std::size_t col_index(const Dims& dims, std::size_t r, const ColLabel& l) {
  if (l.s < 1 || l.s > r || l.t < 1 || l.t > dims.parties() || l.m < 0 || l.m >= dims[l.t - 1])
    throw std::out_of_range("column label out of range");
  std::size_t offset = 0;
  for (std::size_t q = 0; q + 1 < l.t; ++q) offset += static_cast<std::size_t>(dims[q]);
  return (l.s - 1) * 2 * dims.local_sum() + 2 * (offset + static_cast<std::size_t>(l.m)) + (l.w == Coord::eta ? 1 : 0);
}

/// c(j;k) = sum_s prod_q z^{(s,q)}_{j_q} conj(z^{(s,q)}_{k_q}).
template <class T>
T coefficient_c(const PointMatrix<T>& z, std::span<const int> j, std::span<const int> k) {
  const Dims& dims = z.dims();
  (void)dims.flat_index(j);
  (void)dims.flat_index(k);
  T sum{};
  for (std::size_t s = 0; s < z.rows(); ++s) {
    T prod(1);
    for (std::size_t q = 0; q < dims.parties(); ++q)
      prod *= z.coord(s, q, j[q]) * scalar_traits<T>::conj(z.coord(s, q, k[q]));
    sum += prod;
  }
  return sum;
}

namespace detail {

inline Complex times_i(const Complex& z) { return {-z.imag(), z.real()}; }
inline GaussianRational times_i(const GaussianRational& z) { return {Rational(-z.im), z.re}; }

// Builds the block of M'_1 for one row s of the point into out (d^2 x 2 sum d_q).
template <class T>
void fill_mprime_block(const PointMatrix<T>& z, std::size_t s, Matrix<T>& out, std::size_t col0) {
  const Dims& dims = z.dims();
  const std::size_t n = dims.parties();
  const std::size_t d = dims.total();
  // pairs[q][a * d_q + b] = z_a conj(z_b) for party q.
  std::vector<std::vector<T>> pairs(n);
  std::vector<std::size_t> offsets(n, 0);
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t dq = static_cast<std::size_t>(dims[q]);
    pairs[q].resize(dq * dq);
    for (std::size_t a = 0; a < dq; ++a)
      for (std::size_t b = 0; b < dq; ++b)
        pairs[q][a * dq + b] = z.coord(s, q, a) * scalar_traits<T>::conj(z.coord(s, q, b));
    if (q > 0) offsets[q] = offsets[q - 1] + static_cast<std::size_t>(dims[q - 1]);
  }
  std::vector<std::vector<int>> multi(d);
  for (std::size_t f = 0; f < d; ++f) multi[f] = dims.multi_index(f);

  for (std::size_t jf = 0; jf < d; ++jf) {
    const auto& j = multi[jf];
    for (std::size_t kf = 0; kf < d; ++kf) {
      const auto& k = multi[kf];
      const std::size_t row = jf * d + kf;
      for (std::size_t t = 0; t < n; ++t) {
        T rest(1);
        bool zero = false;
        for (std::size_t q = 0; q < n && !zero; ++q) {
          if (q == t) continue;
          const T& p = pairs[q][static_cast<std::size_t>(j[q]) * static_cast<std::size_t>(dims[q]) +
                                static_cast<std::size_t>(k[q])];
          if (scalar_traits<T>::is_zero(p)) zero = true;
          else rest *= p;
        }
        if (zero) continue;
        const std::size_t base = col0 + 2 * offsets[t];
        const std::size_t cj = base + 2 * static_cast<std::size_t>(j[t]);
        const std::size_t ck = base + 2 * static_cast<std::size_t>(k[t]);
        const T a = scalar_traits<T>::conj(z.coord(s, t, k[t])) * rest;  // delta_{m,j_t} term
        const T b = z.coord(s, t, j[t]) * rest;                           // delta_{m,k_t} term
        out(row, cj) += a;
        out(row, cj + 1) += times_i(a);
        out(row, ck) += b;
        out(row, ck + 1) -= times_i(b);
      }
    }
  }
}

template <class T>
typename scalar_traits<T>::real_type real_part_for_row(const T& x, std::size_t jf, std::size_t kf) {
  return jf > kf ? scalar_traits<T>::imag(x) : scalar_traits<T>::real(x);
}

}  // namespace detail

/// The complex matrix M'_r, assembled block by block: [M'_1(z^(1)) ... M'_1(z^(r))].
template <class T>
LabeledJacobian<T> build_mprime(const PointMatrix<T>& z) {
  const Dims& dims = z.dims();
  const std::size_t d = dims.total();
  const std::size_t block = 2 * dims.local_sum();
  LabeledJacobian<T> out{Matrix<T>(d * d, block * z.rows()), row_labels(dims), col_labels(dims, z.rows())};
  for (std::size_t s = 0; s < z.rows(); ++s) detail::fill_mprime_block(z, s, out.entries, s * block);
  return out;
}

/// Row-splitting M'_r -> M_r.
template <class T>
LabeledJacobian<typename scalar_traits<T>::real_type> build_m(const LabeledJacobian<T>& mprime, const Dims& dims) {
  using R = typename scalar_traits<T>::real_type;
  const std::size_t d = dims.total();
  LabeledJacobian<R> out{Matrix<R>(mprime.entries.rows(), mprime.entries.cols()), mprime.row_labels,
                         mprime.col_labels};
  for (std::size_t row = 0; row < mprime.entries.rows(); ++row) {
    const std::size_t jf = row / d;
    const std::size_t kf = row % d;
    for (std::size_t c = 0; c < mprime.entries.cols(); ++c)
      out.entries(row, c) = detail::real_part_for_row(mprime.entries(row, c), jf, kf);
  }
  return out;
}

/// The real Jacobian M_r of Phi_r at z. Assembled one block at a time so the
/// complex matrix is never held in full.
template <class T>
LabeledJacobian<typename scalar_traits<T>::real_type> build_m(const PointMatrix<T>& z) {
  using R = typename scalar_traits<T>::real_type;
  const Dims& dims = z.dims();
  const std::size_t d = dims.total();
  const std::size_t block = 2 * dims.local_sum();
  LabeledJacobian<R> out{Matrix<R>(d * d, block * z.rows()), row_labels(dims), col_labels(dims, z.rows())};
  for (std::size_t s = 0; s < z.rows(); ++s) {
    Matrix<T> tmp(d * d, block);
    detail::fill_mprime_block(z, s, tmp, 0);
    for (std::size_t row = 0; row < d * d; ++row)
      for (std::size_t c = 0; c < block; ++c)
        out.entries(row, s * block + c) = detail::real_part_for_row(tmp(row, c), row / d, row % d);
  }
  return out;
}

/// Rank of M_r at z: exact over Q for the exact backend, SVD-based otherwise.
template <class T>
std::size_t jacobian_rank(const PointMatrix<T>& z, std::optional<double> tol = std::nullopt) {
  return rank(build_m(z).entries, tol);
}

/// Independent real coordinates of rho in the row order of M_r.
inline std::vector<double> hermitian_coordinates(const Matrix<Complex>& rho) {
  const std::size_t d = rho.rows();
  std::vector<double> out(d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) out[j * d + k] = j > k ? rho(j, k).imag() : rho(j, k).real();
  return out;
}

/// Central-difference Jacobian of z -> coordinates(Phi_r(z)) compared with
/// build_m. Returns the max relative deviation over entries where either
/// value exceeds 1e-8 in magnitude.
///
/// Phi_r is a sum over rows, so the partial derivative in a coordinate of row
/// s only involves the projector of that row; differences are taken on it
/// alone.
inline double finite_difference_check(const PointMatrix<Complex>& z, double h) {
  const Dims& dims = z.dims();
  const std::size_t d = dims.total();
  const auto analytic = build_m(z);
  const auto cols = analytic.col_labels;
  double worst = 0.0;
  auto projector_coords = [&](const ProductVector<Complex>& row) {
    Matrix<Complex> p(d, d);
    const auto v = flatten(dims, row);
    add_projector<Complex>(p, v);
    return hermitian_coordinates(p);
  };
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const ColLabel& l = cols[c];
    const Complex step = l.w == Coord::xi ? Complex(h, 0.0) : Complex(0.0, h);
    ProductVector<Complex> plus = z.row(l.s - 1);
    ProductVector<Complex> minus = plus;
    plus[l.t - 1][static_cast<std::size_t>(l.m)] += step;
    minus[l.t - 1][static_cast<std::size_t>(l.m)] -= step;
    const auto fp = projector_coords(plus);
    const auto fm = projector_coords(minus);
    for (std::size_t row = 0; row < d * d; ++row) {
      const double fd = (fp[row] - fm[row]) / (2.0 * h);
      const double an = analytic.entries(row, c);
      const double mag = std::max(std::abs(fd), std::abs(an));
      if (mag > 1e-8) worst = std::max(worst, std::abs(fd - an) / mag);
    }
  }
  return worst;
}

/// exact when d^2 <= 1200, float otherwise.
inline Backend resolve_backend(const Dims& dims, Backend b) {
  if (b != Backend::automatic) return b;
  return dims.hermitian_dim() <= 1200 ? Backend::exact : Backend::floating;
}

struct RankSample {
  std::uint64_t sample_seed = 0;
  std::size_t rank = 0;
  bool zero_component = false;
};

struct RankReport {
  Dims dims;
  std::size_t r = 0;
  Backend backend = Backend::exact;
  std::uint64_t seed = 0;
  std::optional<double> tolerance;
  std::vector<RankSample> samples;
  std::size_t generic_rank = 0;
  std::size_t upper_bound = 0;
  std::vector<std::string> warnings;
};

/// Rank of M_r at one random point drawn from sample_seed.
inline RankSample sample_jacobian_rank(const Dims& dims, std::size_t r, Backend backend, std::uint64_t sample_seed,
                                       std::optional<double> tol) {
  RankSample out{sample_seed, 0, false};
  if (backend == Backend::exact) {
    const auto z = random_exact_point(dims, r, sample_seed);
    out.zero_component = z.has_zero_component();
    out.rank = jacobian_rank(z);
  } else {
    const auto z = random_float_point(dims, r, sample_seed);
    out.zero_component = z.has_zero_component();
    out.rank = jacobian_rank(z, tol);
  }
  return out;
}

/// Max over random samples of rank M_r: the generic rank, i.e. dim K S'_r.
/// Samples run concurrently on up to `workers` threads; results do not depend
/// on scheduling.
inline RankReport generic_rank(const Dims& dims, std::size_t r, std::size_t samples, std::uint64_t seed,
                               Backend backend = Backend::automatic, std::optional<double> tol = std::nullopt,
                               std::size_t workers = 0) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  RankReport rep;
  rep.dims = dims;
  rep.r = r;
  rep.backend = resolve_backend(dims, backend);
  rep.seed = seed;
  if (rep.backend == Backend::floating) rep.tolerance = tol;
  rep.upper_bound = dims.hermitian_dim();
  rep.samples.resize(samples);
  if (workers == 0) workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < samples; start += workers) {
    const std::size_t stop = std::min(samples, start + workers);
    std::vector<std::future<RankSample>> jobs;
    for (std::size_t i = start; i < stop; ++i)
      jobs.push_back(std::async(std::launch::async, sample_jacobian_rank, std::cref(dims), r, rep.backend,
                                sample_seed(seed, i), tol));
    for (std::size_t i = start; i < stop; ++i) rep.samples[i] = jobs[i - start].get();
  }
  for (const auto& smp : rep.samples) {
    rep.generic_rank = std::max(rep.generic_rank, smp.rank);
    if (smp.zero_component)
      rep.warnings.push_back("sample " + std::to_string(smp.sample_seed) + " has a zero local vector");
  }
  return rep;
}

}  // namespace seplen
