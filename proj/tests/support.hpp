#pragma once

// Shared fixtures for the test binaries.

#include <string>
#include <vector>

#include "seplen/seplen.hpp"

namespace seplen::support {

/// p = [|0>, |0>] in 2 x 2, one row.
inline PointMatrix<GaussianRational> two_qubit_p() {
  using G = GaussianRational;
  return PointMatrix<G>(Dims{2, 2}, {ProductVector<G>({{G(1), G(0)}, {G(1), G(0)}})});
}

/// Nonzero rows of M'_1 at p, labels 00;00 00;01 00;10 01;00 10;00.
inline Matrix<GaussianRational> worked_mprime() {
  using G = GaussianRational;
  const G i = G::i();
  const G mi(Rational(0), Rational(-1));
  const std::vector<std::vector<G>> rows = {{2, 0, 0, 0, 2, 0, 0, 0},
                                            {0, 0, 0, 0, 0, 0, 1, mi},
                                            {0, 0, 1, mi, 0, 0, 0, 0},
                                            {0, 0, 0, 0, 0, 0, 1, i},
                                            {0, 0, 1, i, 0, 0, 0, 0}};
  Matrix<G> m(5, 8);
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 8; ++c) m(r, c) = rows[r][c];
  return m;
}

inline Matrix<Rational> worked_m() {
  const int rows[5][8] = {{2, 0, 0, 0, 2, 0, 0, 0},
                          {0, 0, 0, 0, 0, 0, 1, 0},
                          {0, 0, 1, 0, 0, 0, 0, 0},
                          {0, 0, 0, 0, 0, 0, 0, 1},
                          {0, 0, 0, 1, 0, 0, 0, 0}};
  Matrix<Rational> m(5, 8);
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 8; ++c) m(r, c) = rows[r][c];
  return m;
}

inline const std::vector<std::string>& worked_row_labels() {
  static const std::vector<std::string> labels = {"0,0;0,0", "0,0;0,1", "0,0;1,0", "0,1;0,0", "1,0;0,0"};
  return labels;
}

/// Drops all-zero rows; labels of the kept rows go to `labels`.
template <class S>
Matrix<S> nonzero_rows(const LabeledJacobian<S>& j, std::vector<std::string>& labels) {
  std::vector<std::size_t> keep;
  std::vector<std::size_t> all_cols;
  for (std::size_t c = 0; c < j.entries.cols(); ++c) all_cols.push_back(c);
  for (std::size_t r = 0; r < j.entries.rows(); ++r) {
    bool nz = false;
    for (std::size_t c = 0; c < j.entries.cols(); ++c) nz = nz || !(j.entries(r, c) == S(0));
    if (nz) {
      keep.push_back(r);
      labels.push_back(to_string(j.row_labels[r]));
    }
  }
  return j.entries.select(keep, all_cols);
}

/// The 20-point derivative corpus: (dims, r, seed) over (2,2), (2,3), (3,3) and r = 1, 2, 3.
struct CorpusPoint {
  Dims dims;
  std::size_t r;
  std::uint64_t seed;
};

inline std::vector<CorpusPoint> derivative_corpus() {
  const std::vector<Dims> dims = {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}};
  std::vector<CorpusPoint> out;
  for (std::size_t i = 0; i < 20; ++i) out.push_back({dims[i % 3], 1 + (i / 3) % 3, sample_seed(2024, i)});
  return out;
}

}  // namespace seplen::support
