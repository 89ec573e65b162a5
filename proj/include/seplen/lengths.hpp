#pragma once

// Closed-form length quantities and the rank-based small-length classifier.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "seplen/dims.hpp"
#include "seplen/hilbert.hpp"

namespace seplen {

/// dim K S'_1 = 1 + 2 sum (d_i - 1), the generic rank of dPhi_1.
inline std::uint64_t product_cone_dim(const Dims& dims) {
  std::uint64_t s = 1;
  for (int d : dims.values()) s += 2 * static_cast<std::uint64_t>(d - 1);
  return s;
}

/// L_c = ceil(d^2 / (1 + 2 sum (d_i - 1))).
inline std::uint64_t l_c(const Dims& dims) {
  const std::uint64_t d = dims.total();
  const std::uint64_t num = d * d;
  const std::uint64_t den = product_cone_dim(dims);
  return (num + den - 1) / den;
}

/// True iff n = 2 and (d_1 - 2)(d_2 - 2) <= 1, i.e. exactly when L_c = d.
inline bool l_c_equals_d(const Dims& dims) {
  return dims.parties() == 2 && (dims[0] - 2) * (dims[1] - 2) <= 1;
}

/// d <= L_c <= L_crit <= L_max <= d^2. Only L_c is known in closed form, so
/// the L_crit and L_max slots hold the bounds that follow from the chain.
struct LengthBounds {
  std::uint64_t d = 0;
  std::uint64_t l_c = 0;
  std::uint64_t l_crit_lower = 0;
  std::uint64_t l_max_upper = 0;
};

inline LengthBounds length_bounds(const Dims& dims) {
  const std::uint64_t d = dims.total();
  const std::uint64_t lc = l_c(dims);
  return {d, lc, lc, d * d};
}

enum class LengthVerdict { exact, upper_bound, unknown };

inline std::string_view to_string(LengthVerdict v) {
  switch (v) {
    case LengthVerdict::exact: return "exact";
    case LengthVerdict::upper_bound: return "upper-bound";
    case LengthVerdict::unknown: return "unknown";
  }
  return "unknown";
}

struct LengthClassification {
  LengthVerdict verdict = LengthVerdict::unknown;
  /// The exact length or the upper bound; empty when unknown.
  std::optional<std::size_t> length;
  /// max_Gamma rank(Gamma rho); always a lower bound on the length.
  std::size_t lower_bound = 0;
  /// rank of Gamma rho for every subset mask 0 .. 2^n - 1 (bit q = party q).
  std::vector<std::size_t> ranks;
  /// The input is assumed separable by the caller and never certified here.
  bool separability_assumed = true;
};

/// Classifies a separable rho of small length from the ranks of all its
/// partial transposes.
template <class T>
LengthClassification small_length_classify(const HermitianOperator<T>& rho, const Dims& dims,
                                           std::optional<double> tol = std::nullopt) {
  if (rho.size() != dims.total()) throw dimension_error("operator size does not match dims");
  if (dims.parties() > 16) throw dimension_error("too many parties to enumerate partial transposes");
  LengthClassification out;
  const std::uint32_t count = std::uint32_t{1} << dims.parties();
  out.ranks.reserve(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) out.ranks.push_back(rank(partial_transpose(rho, dims, mask), tol));
  const auto [lo, hi] = std::minmax_element(out.ranks.begin(), out.ranks.end());
  out.lower_bound = *hi;
  if (*hi <= 2) {
    out.verdict = LengthVerdict::exact;
    out.length = *hi;
  } else if (*lo == 3 && *hi == 3) {
    out.verdict = LengthVerdict::exact;
    out.length = 3;
  } else if (*hi == 4) {
    out.verdict = LengthVerdict::upper_bound;
    out.length = 4;
  } else {
    out.verdict = LengthVerdict::unknown;
  }
  return out;
}

}  // namespace seplen
