#include "hgr/rng.hpp"

#include <cmath>

#include "hgr/error.hpp"

namespace hgr {

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_stream(std::uint64_t seed, std::string_view purpose, std::uint64_t index) {
  std::uint64_t state = splitmix64(seed ^ fnv1a64(purpose));
  return splitmix64(state ^ index);
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::InvalidArgument, "uniform_below(0)");
  // Largest multiple of bound that fits; reject the tail to stay unbiased.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  for (;;) {
    std::uint64_t x = engine_();
    if (x < limit) return x % bound;
  }
}

AliasTable::AliasTable(std::span<const double> weights) : prob_(weights.size()), alias_(weights.size()) {
  const std::size_t n = weights.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "alias table needs at least one weight");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorKind::InvalidWeight, "negative or non-finite weight");
    total += w;
  }
  if (!(total > 0.0)) throw Error(ErrorKind::InvalidWeight, "weights sum to zero");

  std::vector<double> scaled(n);
  std::vector<std::size_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / total;
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    small.pop_back();
    const std::size_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to round-off.
  for (std::size_t i : large) {
    prob_[i] = 1.0;
    alias_[i] = i;
  }
  std::size_t positive = 0;
  while (weights[positive] == 0.0) ++positive;
  for (std::size_t i : small) {
    prob_[i] = weights[i] > 0.0 ? 1.0 : 0.0;
    alias_[i] = weights[i] > 0.0 ? i : positive;
  }
}

std::size_t AliasTable::sample(Rng& rng) const {
  const std::size_t column = static_cast<std::size_t>(rng.uniform_below(prob_.size()));
  return rng.uniform01() < prob_[column] ? column : alias_[column];
}

}  // namespace hgr
