#pragma once

// L_crit = L_c checks: dPhi_{L_c} has rank d^2 at generic points iff the
// length filtration reaches full dimension at L_c.

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seplen/jacobian.hpp"
#include "seplen/lengths.hpp"

namespace seplen {

class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultHermitianCap = 4096;

enum class ConjectureVerdict { confirmed, not_confirmed };

inline std::string_view to_string(ConjectureVerdict v) {
  return v == ConjectureVerdict::confirmed ? "confirmed" : "not-confirmed-at-sampled-points";
}

struct ConjectureReport {
  Dims dims;
  std::size_t d = 0;
  std::size_t l_c = 0;
  RankReport ranks;
  ConjectureVerdict verdict = ConjectureVerdict::not_confirmed;
};

struct RunLimits {
  std::size_t hermitian_cap = kDefaultHermitianCap;
  bool force = false;
};

inline void check_resources(const Dims& dims, const RunLimits& limits) {
  if (!limits.force && dims.hermitian_dim() > limits.hermitian_cap)
    throw resource_error("d^2 = " + std::to_string(dims.hermitian_dim()) + " exceeds the cap of " +
                         std::to_string(limits.hermitian_cap) + "; raise the cap or force the run");
}

/// Generic rank of dPhi_{L_c}; confirmed iff it equals d^2.
inline ConjectureReport verify_critical(const Dims& dims, std::size_t samples, std::uint64_t seed,
                                        Backend backend = Backend::automatic, std::optional<double> tol = std::nullopt,
                                        const RunLimits& limits = {}) {
  check_resources(dims, limits);
  ConjectureReport rep;
  rep.dims = dims;
  rep.d = dims.total();
  rep.l_c = static_cast<std::size_t>(l_c(dims));
  rep.ranks = generic_rank(dims, rep.l_c, samples, seed, backend, tol);
  rep.verdict = rep.ranks.generic_rank == dims.hermitian_dim() ? ConjectureVerdict::confirmed
                                                               : ConjectureVerdict::not_confirmed;
  return rep;
}

struct FiltrationEntry {
  std::size_t r = 0;
  std::size_t generic_rank = 0;
  /// generic_rank - 1: the cone K S'_r minus its scaling direction.
  std::size_t dim = 0;
  RankReport ranks;
};

inline std::vector<FiltrationEntry> filtration_dims(const Dims& dims, const std::vector<std::size_t>& r_list,
                                                    std::size_t samples, std::uint64_t seed,
                                                    Backend backend = Backend::automatic,
                                                    std::optional<double> tol = std::nullopt,
                                                    const RunLimits& limits = {}) {
  check_resources(dims, limits);
  std::vector<FiltrationEntry> out;
  for (std::size_t r : r_list) {
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    FiltrationEntry e;
    e.r = r;
    e.ranks = generic_rank(dims, r, samples, seed, backend, tol);
    e.generic_rank = e.ranks.generic_rank;
    e.dim = e.generic_rank == 0 ? 0 : e.generic_rank - 1;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace seplen
