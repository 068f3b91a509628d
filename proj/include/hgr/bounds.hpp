#pragma once

#include <cstddef>
#include <utility>

namespace hgr {

/// (1/16) √(m/N). Throws HypothesisViolated when N < m.
double lower_bound_risk(std::size_t m, std::size_t n);

struct BoundsInput {
  double m = 1;
  double kappa = 1;
  double L = 1;
  double c_pi = 1;
  double C_pi = 1;
  double epsilon = 0.1;
  double delta = 0.1;
};

/// Sample thresholds for recovery from an MM oracle. Logs are natural.
struct SampleBounds {
  double k_coefficient = 0;  // 2^14 m² κ² L² / (c_π² ε²)
  double k_log = 0;          // log(6 m C_π / δ)
  double k_raw = 0;          // product of the two
  double n_first = 0;        // 2 m κ / c_π · log(3 m C_π / δ)
  double n_first_log = 0;
  double n_second = 0;       // 8 m / ε² · log(6 m / δ)
  double n_second_log = 0;
  double k_min = 0;          // ceil(k_raw)
  double n_min = 0;          // ceil(max(n_first, n_second))
};

/// Throws InvalidArgument unless m, κ, L, C_π ≥ 1, 0 < c_π ≤ 1 and ε, δ ∈ (0, 1).
SampleBounds mm_sample_bounds(const BoundsInput& b);

/// Extremes a distribution over m0 outcomes with range ratio κ0 can reach:
/// min ≥ 1/(m0 κ0), max ≤ κ0/(m0 + κ0 - 1). Throws InvalidArgument for m0 < 1 or κ0 < 1.
std::pair<double, double> lemma_rr_bounds(double m0, double kappa0);

}  // namespace hgr
