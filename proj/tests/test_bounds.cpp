#include <doctest.h>

#include <cmath>
#include <random>

#include "hgr/bounds.hpp"
#include "support.hpp"

using namespace hgr;
using namespace hgr::testing;

TEST_CASE("minimax lower bound") {
  CHECK(lower_bound_risk(100, 10000) == 0.00625);
  CHECK(lower_bound_risk(7, 7) == 0.0625);
  CHECK(lower_bound_risk(5, 1000) == doctest::Approx(0.004419417382415922).epsilon(1e-14));
  CHECK(kind_of([] { lower_bound_risk(10, 9); }) == ErrorKind::HypothesisViolated);
  CHECK(kind_of([] { lower_bound_risk(0, 9); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("oracle sample thresholds") {
  BoundsInput b{10, 3, 2, 0.5, 2, 0.1, 0.1};
  auto r = mm_sample_bounds(b);
  // Values evaluated separately in double precision with natural logs.
  CHECK(r.k_raw == doctest::Approx(167275899183.39188).epsilon(1e-12));
  CHECK(r.k_min == 167275899184.0);
  CHECK(r.n_first == doctest::Approx(767.6315586259376).epsilon(1e-12));
  CHECK(r.n_second == doctest::Approx(51175.43724172916).epsilon(1e-12));
  CHECK(r.n_min == 51176.0);
  CHECK(r.k_log == doctest::Approx(std::log(1200.0)).epsilon(1e-15));

  auto half = b;
  half.epsilon = 0.05;
  auto rh = mm_sample_bounds(half);
  CHECK(rh.k_raw == 4 * r.k_raw);
  CHECK(rh.n_second == 4 * r.n_second);
  CHECK(rh.n_first == r.n_first);

  auto shifted = b;
  shifted.delta = 0.1 / std::exp(1.0);
  auto rs = mm_sample_bounds(shifted);
  CHECK(rs.k_log == doctest::Approx(r.k_log + 1).epsilon(1e-14));
  CHECK(rs.n_first_log == doctest::Approx(r.n_first_log + 1).epsilon(1e-14));
  CHECK(rs.n_second_log == doctest::Approx(r.n_second_log + 1).epsilon(1e-14));

  auto bad = b;
  bad.epsilon = 1.0;
  CHECK(kind_of([&] { mm_sample_bounds(bad); }) == ErrorKind::InvalidArgument);
  bad = b;
  bad.c_pi = 0;
  CHECK(kind_of([&] { mm_sample_bounds(bad); }) == ErrorKind::InvalidArgument);
  bad = b;
  bad.m = 0.5;
  CHECK(kind_of([&] { mm_sample_bounds(bad); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("oracle sample thresholds are monotone") {
  const BoundsInput base{10, 3, 2, 0.5, 2, 0.1, 0.1};
  auto at = [&](auto field, double v) {
    BoundsInput b = base;
    b.*field = v;
    return mm_sample_bounds(b);
  };
  auto nondecreasing = [&](auto field, std::vector<double> values, int dir) {
    for (std::size_t i = 1; i < values.size(); ++i) {
      auto lo = at(field, values[i - 1]), hi = at(field, values[i]);
      if (dir > 0) {
        CHECK(hi.k_min >= lo.k_min);
        CHECK(hi.n_min >= lo.n_min);
      } else {
        CHECK(hi.k_min <= lo.k_min);
        CHECK(hi.n_min <= lo.n_min);
      }
    }
  };
  nondecreasing(&BoundsInput::m, {1, 2, 5, 10, 50}, +1);
  nondecreasing(&BoundsInput::kappa, {1, 2, 3, 10, 100}, +1);
  nondecreasing(&BoundsInput::L, {1, 2, 3, 8}, +1);
  nondecreasing(&BoundsInput::C_pi, {1, 2, 3, 5}, +1);
  nondecreasing(&BoundsInput::c_pi, {0.05, 0.1, 0.25, 0.5, 1.0}, -1);
  nondecreasing(&BoundsInput::epsilon, {0.01, 0.05, 0.1, 0.5, 0.9}, -1);
  nondecreasing(&BoundsInput::delta, {0.01, 0.05, 0.1, 0.5, 0.9}, -1);
}

TEST_CASE("range ratio extremes") {
  CHECK(lemma_rr_bounds(2, 1) == std::pair<double, double>{0.5, 0.5});
  auto a = lemma_rr_bounds(2, 3);
  CHECK(a.first == doctest::Approx(1.0 / 6).epsilon(1e-15));
  CHECK(a.second == doctest::Approx(0.75).epsilon(1e-15));
  auto b = lemma_rr_bounds(3, 2);
  CHECK(b.first == doctest::Approx(1.0 / 6).epsilon(1e-15));
  CHECK(b.second == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(kind_of([] { lemma_rr_bounds(0.5, 2); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { lemma_rr_bounds(2, 0.5); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("range ratio extremes hold on random distributions") {
  std::mt19937_64 gen(21);
  for (int m0 : {2, 3, 5})
    for (int k0 : {1, 2, 3}) {
      const auto [lo, hi] = lemma_rr_bounds(m0, k0);
      std::bernoulli_distribution heavy(0.5);
      for (int t = 0; t < 1000; ++t) {
        std::vector<double> w(m0);
        double sum = 0;
        for (auto& x : w) sum += (x = heavy(gen) ? k0 : 1.0);
        for (auto& x : w) {
          x /= sum;
          CHECK(x >= lo - 1e-15);
          CHECK(x <= hi + 1e-15);
        }
      }
    }
}
