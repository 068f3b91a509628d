#include "hgr/bounds.hpp"

#include <cmath>
#include <string>

#include "hgr/error.hpp"

namespace hgr {

double lower_bound_risk(std::size_t m, std::size_t n) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "m must be positive");
  if (n < m)
    throw Error(ErrorKind::HypothesisViolated,
                "N = " + std::to_string(n) + " is below m = " + std::to_string(m));
  return std::sqrt(static_cast<double>(m) / static_cast<double>(n)) / 16.0;
}

SampleBounds mm_sample_bounds(const BoundsInput& b) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::InvalidArgument, what);
  };
  require(b.m >= 1, "m must be at least 1");
  require(b.kappa >= 1, "kappa must be at least 1");
  require(b.L >= 1, "L must be at least 1");
  require(b.c_pi > 0 && b.c_pi <= 1, "c_pi must lie in (0, 1]");
  require(b.C_pi >= 1, "C_pi must be at least 1");
  require(b.epsilon > 0 && b.epsilon < 1, "epsilon must lie in (0, 1)");
  require(b.delta > 0 && b.delta < 1, "delta must lie in (0, 1)");

  SampleBounds s;
  const double eps2 = b.epsilon * b.epsilon;
  s.k_coefficient = 16384.0 * b.m * b.m * b.kappa * b.kappa * b.L * b.L / (b.c_pi * b.c_pi * eps2);
  s.k_log = std::log(6.0 * b.m * b.C_pi / b.delta);
  s.k_raw = s.k_coefficient * s.k_log;
  s.n_first_log = std::log(3.0 * b.m * b.C_pi / b.delta);
  s.n_first = 2.0 * b.m * b.kappa / b.c_pi * s.n_first_log;
  s.n_second_log = std::log(6.0 * b.m / b.delta);
  s.n_second = 8.0 * b.m / eps2 * s.n_second_log;
  s.k_min = std::ceil(s.k_raw);
  s.n_min = std::ceil(std::max(s.n_first, s.n_second));
  return s;
}

std::pair<double, double> lemma_rr_bounds(double m0, double kappa0) {
  if (!(m0 >= 1)) throw Error(ErrorKind::InvalidArgument, "m0 must be at least 1");
  if (!(kappa0 >= 1)) throw Error(ErrorKind::InvalidArgument, "kappa0 must be at least 1");
  return {1.0 / (m0 * kappa0), kappa0 / (m0 + kappa0 - 1.0)};
}

}  // namespace hgr
