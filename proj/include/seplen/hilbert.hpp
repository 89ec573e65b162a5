#pragma once

// Tensor-product Hilbert space primitives: product vectors, points of
// H_x^r, the mixing map Phi_r, partial transposes, rank and birank.

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "seplen/dims.hpp"
#include "seplen/linalg.hpp"
#include "seplen/matrix.hpp"
#include "seplen/scalar.hpp"

namespace seplen {

class not_hermitian_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// n local vectors, component q living in C^{d_q}.
template <class T>
class ProductVector {
 public:
  ProductVector() = default;
  explicit ProductVector(std::vector<std::vector<T>> components) : components_(std::move(components)) {}

  [[nodiscard]] std::size_t parties() const noexcept { return components_.size(); }
  [[nodiscard]] const std::vector<T>& operator[](std::size_t q) const { return components_.at(q); }
  [[nodiscard]] std::vector<T>& operator[](std::size_t q) { return components_.at(q); }
  [[nodiscard]] const std::vector<std::vector<T>>& components() const noexcept { return components_; }

  void check(const Dims& dims) const {
    if (components_.size() != dims.parties()) throw dimension_error("product vector has wrong number of parties");
    for (std::size_t q = 0; q < components_.size(); ++q)
      if (components_[q].size() != static_cast<std::size_t>(dims[q]))
        throw dimension_error("local vector has wrong dimension");
  }

  [[nodiscard]] bool has_zero_component() const {
    for (const auto& v : components_) {
      bool all_zero = true;
      for (const T& x : v) all_zero = all_zero && scalar_traits<T>::is_zero(x);
      if (all_zero) return true;
    }
    return false;
  }

  friend bool operator==(const ProductVector& a, const ProductVector& b) { return a.components_ == b.components_; }

 private:
  std::vector<std::vector<T>> components_;
};

/// A point z of H_x^r, stored as r rows of product vectors.
template <class T>
class PointMatrix {
 public:
  PointMatrix() = default;
  PointMatrix(Dims dims, std::vector<ProductVector<T>> rows) : dims_(std::move(dims)), rows_(std::move(rows)) {
    for (const auto& row : rows_) row.check(dims_);
  }

  [[nodiscard]] const Dims& dims() const noexcept { return dims_; }
  /// Number of product vectors r.
  [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }
  [[nodiscard]] const ProductVector<T>& row(std::size_t s) const { return rows_.at(s); }
  [[nodiscard]] const std::vector<ProductVector<T>>& row_list() const noexcept { return rows_; }

  /// zeta^{(s,q)}_j with 0-based s and q.
  [[nodiscard]] const T& coord(std::size_t s, std::size_t q, std::size_t j) const { return rows_[s][q][j]; }
  T& coord(std::size_t s, std::size_t q, std::size_t j) { return rows_[s][q][j]; }

  /// 2 r sum_q d_q
  [[nodiscard]] std::size_t real_coordinate_count() const { return 2 * rows_.size() * dims_.local_sum(); }

  [[nodiscard]] bool has_zero_component() const {
    for (const auto& row : rows_)
      if (row.has_zero_component()) return true;
    return false;
  }

  /// Rows permuted: result row i is this row perm[i].
  [[nodiscard]] PointMatrix permuted(std::span<const std::size_t> perm) const {
    std::vector<ProductVector<T>> out;
    out.reserve(perm.size());
    for (std::size_t s : perm) out.push_back(rows_.at(s));
    return PointMatrix(dims_, std::move(out));
  }

  [[nodiscard]] PointMatrix with_row(ProductVector<T> extra) const {
    auto out = rows_;
    out.push_back(std::move(extra));
    return PointMatrix(dims_, std::move(out));
  }

 private:
  Dims dims_;
  std::vector<ProductVector<T>> rows_;
};

template <class T>
bool is_hermitian(const Matrix<T>& m) {
  if (!m.square()) return false;
  if constexpr (scalar_traits<T>::exact) {
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = r; c < m.cols(); ++c)
        if (m(r, c) != scalar_traits<T>::conj(m(c, r))) return false;
    return true;
  } else {
    double scale = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (const auto& x : m.row(r)) scale = std::max(scale, std::abs(x));
    const double tol = 1e-12 * scale;
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = r; c < m.cols(); ++c)
        if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return false;
    return true;
  }
}

/// A d x d Hermitian operator over the chosen scalar backend.
template <class T>
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(Matrix<T> m) : m_(std::move(m)) {
    if (!is_hermitian(m_)) throw not_hermitian_error("operator is not Hermitian");
  }

  [[nodiscard]] const Matrix<T>& matrix() const noexcept { return m_; }
  [[nodiscard]] std::size_t size() const noexcept { return m_.rows(); }
  const T& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  [[nodiscard]] T trace() const {
    T t{};
    for (std::size_t k = 0; k < m_.rows(); ++k) t += m_(k, k);
    return t;
  }

  friend bool operator==(const HermitianOperator& a, const HermitianOperator& b) { return a.m_ == b.m_; }

 private:
  Matrix<T> m_;
};

/// Kronecker product of the components, flat index order of Dims.
template <class T>
std::vector<T> flatten(const Dims& dims, const ProductVector<T>& v) {
  v.check(dims);
  std::vector<T> out{T(1)};
  for (std::size_t q = 0; q < v.parties(); ++q) {
    std::vector<T> next;
    next.reserve(out.size() * v[q].size());
    for (const T& a : out)
      for (const T& b : v[q]) next.push_back(a * b);
    out = std::move(next);
  }
  return out;
}

/// |v><v| added into acc with the given weight.
template <class T>
void add_projector(Matrix<T>& acc, std::span<const T> v, const T& weight = T(1)) {
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (scalar_traits<T>::is_zero(v[r])) continue;
    const T left = weight * v[r];
    for (std::size_t c = 0; c < v.size(); ++c) acc(r, c) += left * scalar_traits<T>::conj(v[c]);
  }
}

/// Phi_r(z) = sum_s |z^(s)><z^(s)|. Never renormalizes.
template <class T>
HermitianOperator<T> phi_r(const PointMatrix<T>& z) {
  const std::size_t d = z.dims().total();
  Matrix<T> acc(d, d);
  for (const auto& row : z.row_list()) {
    const auto v = flatten(z.dims(), row);
    add_projector<T>(acc, v);
  }
  return HermitianOperator<T>(std::move(acc));
}

/// Bitmask of parties (bit q = party q, 0-based) from a list of indices.
inline std::uint32_t party_mask(const Dims& dims, std::span<const std::size_t> parties) {
  std::uint32_t mask = 0;
  for (std::size_t q : parties) {
    if (q >= dims.parties()) throw std::out_of_range("party index out of range");
    mask |= std::uint32_t{1} << q;
  }
  return mask;
}

/// Transposes the tensor factors whose bit is set in mask.
template <class T>
HermitianOperator<T> partial_transpose(const HermitianOperator<T>& rho, const Dims& dims, std::uint32_t mask) {
  const std::size_t d = dims.total();
  if (rho.size() != d) throw dimension_error("operator size does not match dims");
  if (dims.parties() < 32 && (mask >> dims.parties()) != 0) throw std::out_of_range("party index out of range");
  Matrix<T> out(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      std::size_t nr = 0;
      std::size_t nc = 0;
      for (std::size_t q = 0; q < dims.parties(); ++q) {
        const std::size_t st = dims.stride(q);
        const std::size_t dq = static_cast<std::size_t>(dims[q]);
        std::size_t jr = (r / st) % dq;
        std::size_t jc = (c / st) % dq;
        if (mask & (std::uint32_t{1} << q)) std::swap(jr, jc);
        nr += jr * st;
        nc += jc * st;
      }
      out(nr, nc) = rho(r, c);
    }
  }
  return HermitianOperator<T>(std::move(out));
}

template <class T>
HermitianOperator<T> partial_transpose(const HermitianOperator<T>& rho, const Dims& dims,
                                       std::span<const std::size_t> parties) {
  return partial_transpose(rho, dims, party_mask(dims, parties));
}

template <class T>
std::size_t rank(const HermitianOperator<T>& rho, std::optional<double> tol = std::nullopt) {
  if constexpr (scalar_traits<T>::exact) {
    return exact_rank(rho.matrix());
  } else {
    return numerical_rank(rho.matrix(), tol.value_or(default_rank_tolerance(rho.size())));
  }
}

/// (rank rho, rank Gamma_1 rho); bipartite only.
template <class T>
std::pair<std::size_t, std::size_t> birank(const HermitianOperator<T>& rho, const Dims& dims,
                                           std::optional<double> tol = std::nullopt) {
  if (dims.parties() != 2) throw dimension_error("birank is defined for bipartite systems");
  return {rank(rho, tol), rank(partial_transpose(rho, dims, std::uint32_t{1}), tol)};
}

/// Exact PSD test via pivoted LDL^dagger over Q(i).
inline bool is_positive_semidefinite(const HermitianOperator<GaussianRational>& rho) {
  Matrix<GaussianRational> a = rho.matrix();
  const std::size_t n = a.rows();
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      const int s = sgn(a(k, k).re);
      if (s < 0) return false;
      if (s > 0 && piv == n) piv = k;
    }
    if (piv == n) {
      // All remaining diagonal entries vanish; a PSD matrix then has zero rows there.
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (!done[r] && !done[c] && !a(r, c).is_zero()) return false;
      return true;
    }
    done[piv] = true;
    const GaussianRational p = a(piv, piv);
    for (std::size_t r = 0; r < n; ++r) {
      if (done[r] || a(r, piv).is_zero()) continue;
      const GaussianRational f = a(r, piv) / p;
      for (std::size_t c = 0; c < n; ++c) {
        if (done[c]) continue;
        a(r, c) -= f * a(piv, c);
      }
    }
  }
  return true;
}

/// Float PSD test: smallest eigenvalue >= -d * ulp * max(1, |lambda_max|).
inline bool is_positive_semidefinite(const HermitianOperator<Complex>& rho) {
  const std::size_t n = rho.size();
  Eigen::MatrixXcd e(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) e(r, c) = rho(r, c);
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(e, Eigen::EigenvaluesOnly).eigenvalues();
  if (ev.size() == 0) return true;
  const double scale = std::max(1.0, std::abs(ev(ev.size() - 1)));
  return ev(0) >= -static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;
}

template <class T>
HermitianOperator<Complex> to_float(const HermitianOperator<T>& rho) {
  if constexpr (std::is_same_v<T, Complex>) {
    return rho;
  } else {
    return HermitianOperator<Complex>(rho.matrix().map([](const GaussianRational& z) { return to_complex(z); }));
  }
}

template <class T>
PointMatrix<Complex> to_float(const PointMatrix<T>& z) {
  if constexpr (std::is_same_v<T, Complex>) {
    return z;
  } else {
    std::vector<ProductVector<Complex>> rows;
    for (const auto& row : z.row_list()) {
      std::vector<std::vector<Complex>> comps;
      for (const auto& v : row.components()) {
        std::vector<Complex> w;
        for (const auto& x : v) w.push_back(to_complex(x));
        comps.push_back(std::move(w));
      }
      rows.emplace_back(std::move(comps));
    }
    return PointMatrix<Complex>(z.dims(), std::move(rows));
  }
}

}  // namespace seplen
