#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "seplen/hilbert.hpp"

namespace seplen {

/// splitmix64 finalizer; used to derive independent per-sample seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of sample i under a run seed, independent of evaluation order.
inline std::uint64_t sample_seed(std::uint64_t seed, std::size_t i) {
  return mix_seed(mix_seed(seed) ^ static_cast<std::uint64_t>(i));
}

inline constexpr int kExactCoordinateBound = 99;

/// Random point with integer coordinates xi, eta uniform in [-99, 99].
inline PointMatrix<GaussianRational> random_exact_point(const Dims& dims, std::size_t r, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> coord(-kExactCoordinateBound, kExactCoordinateBound);
  std::vector<ProductVector<GaussianRational>> rows;
  rows.reserve(r);
  for (std::size_t s = 0; s < r; ++s) {
    std::vector<std::vector<GaussianRational>> comps;
    for (std::size_t q = 0; q < dims.parties(); ++q) {
      std::vector<GaussianRational> v;
      for (int j = 0; j < dims[q]; ++j) {
        const int re = coord(gen);
        const int im = coord(gen);
        v.emplace_back(Rational(re), Rational(im));
      }
      comps.push_back(std::move(v));
    }
    rows.emplace_back(std::move(comps));
  }
  return PointMatrix<GaussianRational>(dims, std::move(rows));
}

/// Random point with standard normal real coordinates.
inline PointMatrix<Complex> random_float_point(const Dims& dims, std::size_t r, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<ProductVector<Complex>> rows;
  rows.reserve(r);
  for (std::size_t s = 0; s < r; ++s) {
    std::vector<std::vector<Complex>> comps;
    for (std::size_t q = 0; q < dims.parties(); ++q) {
      std::vector<Complex> v;
      for (int j = 0; j < dims[q]; ++j) {
        const double re = normal(gen);
        const double im = normal(gen);
        v.emplace_back(re, im);
      }
      comps.push_back(std::move(v));
    }
    rows.emplace_back(std::move(comps));
  }
  return PointMatrix<Complex>(dims, std::move(rows));
}

}  // namespace seplen
