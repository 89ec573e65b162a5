#pragma once

// Rank and determinant kernels.
//
// Exact backend: fraction-free (Bareiss) elimination over Z or Z[i] after
// clearing denominators row by row. A rank computed modulo a prime is a
// lower bound for the rank over Q(i); when that lower bound already reaches
// min(rows, cols) it certifies the exact rank and elimination over the
// integers is skipped.
//
// Float backend: singular values via Eigen's BDCSVD, rank = #{sigma_k > tol * sigma_1}.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "seplen/matrix.hpp"
#include "seplen/scalar.hpp"

namespace seplen {

struct GaussianInteger {
  Integer re;
  Integer im;
  [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

namespace detail {

inline bool is_zero(const Integer& x) { return sgn(x) == 0; }
inline bool is_zero(const GaussianInteger& x) { return x.is_zero(); }

// x <- (p * x - f * y) / prev, exact.
inline void bareiss_update(Integer& x, const Integer& p, const Integer& f, const Integer& y, const Integer& prev,
                           Integer& tmp) {
  mpz_mul(tmp.get_mpz_t(), p.get_mpz_t(), x.get_mpz_t());
  mpz_submul(tmp.get_mpz_t(), f.get_mpz_t(), y.get_mpz_t());
  mpz_divexact(x.get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
}

inline void bareiss_update(GaussianInteger& x, const GaussianInteger& p, const GaussianInteger& f,
                           const GaussianInteger& y, const GaussianInteger& prev, Integer& tmp) {
  // num = p*x - f*y
  Integer nr = p.re * x.re - p.im * x.im - (f.re * y.re - f.im * y.im);
  Integer ni = p.re * x.im + p.im * x.re - (f.re * y.im + f.im * y.re);
  if (sgn(prev.im) == 0) {
    mpz_divexact(x.re.get_mpz_t(), nr.get_mpz_t(), prev.re.get_mpz_t());
    mpz_divexact(x.im.get_mpz_t(), ni.get_mpz_t(), prev.re.get_mpz_t());
    return;
  }
  // num * conj(prev) / |prev|^2
  tmp = prev.re * prev.re + prev.im * prev.im;
  Integer r = nr * prev.re + ni * prev.im;
  Integer i = ni * prev.re - nr * prev.im;
  mpz_divexact(x.re.get_mpz_t(), r.get_mpz_t(), tmp.get_mpz_t());
  mpz_divexact(x.im.get_mpz_t(), i.get_mpz_t(), tmp.get_mpz_t());
}

template <class Ring>
struct EchelonResult {
  std::size_t rank = 0;
  int sign = 1;
  Ring last_pivot{};
};

// Fraction-free row echelon form, in place. Pivot columns that are zero
// below the current row are skipped, so every stored entry stays a minor of
// the input and each division is exact.
template <class Ring>
EchelonResult<Ring> bareiss_echelon(Matrix<Ring>& a) {
  EchelonResult<Ring> res;
  Ring prev;
  if constexpr (std::is_same_v<Ring, Integer>) {
    prev = 1;
  } else {
    prev.re = 1;
  }
  Integer tmp;
  std::size_t r = 0;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(a(p, c))) ++p;
    if (p == rows) continue;
    if (p != r) {
      a.swap_rows(p, r);
      res.sign = -res.sign;
    }
    const Ring pivot = a(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Ring f = a(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) bareiss_update(a(i, j), pivot, f, a(r, j), prev, tmp);
      a(i, c) = Ring{};
    }
    prev = pivot;
    ++r;
  }
  res.rank = r;
  res.last_pivot = prev;
  return res;
}

// Row-wise denominator clearing; returns the product of the row multipliers.
inline Integer clear_denominators(const Matrix<Rational>& m, Matrix<Integer>& out) {
  out = Matrix<Integer>(m.rows(), m.cols());
  Integer scale = 1;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer l = 1;
    for (const Rational& q : m.row(r)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_num() * (l / m(r, c).get_den());
    scale *= l;
  }
  return scale;
}

inline void clear_denominators(const Matrix<GaussianRational>& m, Matrix<GaussianInteger>& out) {
  out = Matrix<GaussianInteger>(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer l = 1;
    for (const GaussianRational& z : m.row(r)) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), z.re.get_den_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), z.im.get_den_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out(r, c).re = m(r, c).re.get_num() * (l / m(r, c).re.get_den());
      out(r, c).im = m(r, c).im.get_num() * (l / m(r, c).im.get_den());
    }
  }
}

// ---- modular arithmetic -------------------------------------------------

struct PrimeField {
  std::uint64_t p;
  std::uint64_t sqrt_minus_one;  // i in F_p (p = 1 mod 4)

  [[nodiscard]] std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  }
  [[nodiscard]] std::uint64_t pow(std::uint64_t b, std::uint64_t e) const {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
  [[nodiscard]] std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
  [[nodiscard]] std::uint64_t reduce(const Integer& z) const {
    return static_cast<std::uint64_t>(mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p)));
  }
};

// Primes below 2^31 with p = 1 mod 4; products of two residues fit in 64 bits.
inline const std::vector<PrimeField>& rank_primes() {
  static const std::vector<PrimeField> fields = [] {
    std::vector<PrimeField> out;
    std::uint64_t cand = (std::uint64_t{1} << 31) - 1;
    while (out.size() < 2) {
      cand -= 1;
      if (cand % 4 != 1) continue;
      if (mpz_probab_prime_p(Integer(static_cast<unsigned long>(cand)).get_mpz_t(), 40) == 0) continue;
      PrimeField f{cand, 0};
      for (std::uint64_t c = 2;; ++c) {
        if (f.pow(c, (cand - 1) / 2) == cand - 1) {
          f.sqrt_minus_one = f.pow(c, (cand - 1) / 4);
          break;
        }
      }
      out.push_back(f);
    }
    return out;
  }();
  return fields;
}

// Rank of a residue matrix over F_p; destroys the input.
inline std::size_t modular_rank(std::vector<std::uint64_t>& a, std::size_t rows, std::size_t cols,
                                const PrimeField& f) {
  const std::uint64_t p = f.p;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    const std::uint64_t inv = f.inv(a[r * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = f.mul(a[r * cols + j], inv);
    const std::uint64_t* prow = &a[r * cols];
    for (std::size_t i = r + 1; i < rows; ++i) {
      std::uint64_t* row = &a[i * cols];
      const std::uint64_t factor = row[c];
      if (factor == 0) continue;
      const std::uint64_t neg = p - factor;
      for (std::size_t j = c; j < cols; ++j) row[j] = (row[j] + neg * prow[j]) % p;
    }
    ++r;
  }
  return r;
}

inline std::size_t modular_rank(const Matrix<Integer>& m, const PrimeField& f) {
  std::vector<std::uint64_t> a(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a[r * m.cols() + c] = f.reduce(m(r, c));
  return modular_rank(a, m.rows(), m.cols(), f);
}

inline std::size_t modular_rank(const Matrix<GaussianInteger>& m, const PrimeField& f) {
  std::vector<std::uint64_t> a(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      a[r * m.cols() + c] = (f.reduce(m(r, c).re) + f.mul(f.reduce(m(r, c).im), f.sqrt_minus_one)) % f.p;
  return modular_rank(a, m.rows(), m.cols(), f);
}

template <class Ring>
std::size_t certified_rank(Matrix<Ring> a) {
  const std::size_t full = std::min(a.rows(), a.cols());
  if (full == 0) return 0;
  for (const PrimeField& f : rank_primes())
    if (modular_rank(a, f) == full) return full;
  return bareiss_echelon(a).rank;
}

}  // namespace detail

/// Exact rank over Q.
inline std::size_t exact_rank(const Matrix<Rational>& m) {
  Matrix<Integer> a;
  detail::clear_denominators(m, a);
  return detail::certified_rank(std::move(a));
}

/// Exact rank over Q(i); uses the integer path when every entry is real.
inline std::size_t exact_rank(const Matrix<GaussianRational>& m) {
  bool real = true;
  for (std::size_t r = 0; r < m.rows() && real; ++r)
    for (const auto& z : m.row(r))
      if (sgn(z.im) != 0) {
        real = false;
        break;
      }
  if (real) return exact_rank(m.map([](const GaussianRational& z) { return z.re; }));
  Matrix<GaussianInteger> a;
  detail::clear_denominators(m, a);
  return detail::certified_rank(std::move(a));
}

/// Rank by fraction-free elimination only (no modular shortcut).
inline std::size_t bareiss_rank(const Matrix<Rational>& m) {
  Matrix<Integer> a;
  detail::clear_denominators(m, a);
  return detail::bareiss_echelon(a).rank;
}

/// Exact determinant via Bareiss elimination.
inline Rational exact_determinant(const Matrix<Rational>& m) {
  if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return Rational(1);
  Matrix<Integer> a;
  const Integer scale = detail::clear_denominators(m, a);
  const auto res = detail::bareiss_echelon(a);
  if (res.rank < m.rows()) return Rational(0);
  Rational det(res.last_pivot * res.sign, scale);
  det.canonicalize();
  return det;
}

// ---- float backend -------------------------------------------------------

/// Default relative tolerance n * 2^-40 for an n-sized problem.
inline double default_rank_tolerance(std::size_t n) { return static_cast<double>(n) * std::ldexp(1.0, -40); }

inline Eigen::VectorXd singular_values(const Matrix<double>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  return Eigen::BDCSVD<Eigen::MatrixXd>(e).singularValues();
}

inline Eigen::VectorXd singular_values(const Matrix<Complex>& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  return Eigen::BDCSVD<Eigen::MatrixXcd>(e).singularValues();
}

/// Counts singular values above tol * sigma_max; tol defaults to max(rows, cols) * 2^-40.
template <class T>
std::size_t numerical_rank(const Matrix<T>& m, std::optional<double> tol = std::nullopt) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const Eigen::VectorXd sv = singular_values(m);
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double t = tol.value_or(default_rank_tolerance(std::max(m.rows(), m.cols()))) * sv(0);
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > t) ++rank;
  return rank;
}

inline std::size_t rank(const Matrix<Rational>& m, std::optional<double> = std::nullopt) { return exact_rank(m); }
inline std::size_t rank(const Matrix<GaussianRational>& m, std::optional<double> = std::nullopt) {
  return exact_rank(m);
}
inline std::size_t rank(const Matrix<double>& m, std::optional<double> tol = std::nullopt) {
  return numerical_rank(m, tol);
}
inline std::size_t rank(const Matrix<Complex>& m, std::optional<double> tol = std::nullopt) {
  return numerical_rank(m, tol);
}

}  // namespace seplen
