#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace hgr {

/// Derives an independent 64-bit seed for stream(seed, purpose, index).
///
/// The rule is fixed so that experiments reproduce bit-for-bit on any platform:
///   tag   = FNV-1a-64(purpose)
///   state = seed
///   state = splitmix64(state ^ tag); state = splitmix64(state ^ index)
/// where splitmix64 is the standard finalizer (Steele, Lea, Flood 2014) applied
/// after adding the golden-ratio increment 0x9e3779b97f4a7c15.
std::uint64_t derive_stream(std::uint64_t seed, std::string_view purpose, std::uint64_t index = 0);

std::uint64_t fnv1a64(std::string_view bytes);

/// Reproducible generator. The engine is std::mt19937_64, whose output sequence
/// is fixed by the standard. Conversions to doubles and bounded integers are
/// done here rather than with <random> distributions, which are
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::string_view purpose, std::uint64_t index = 0)
      : engine_(derive_stream(seed, purpose, index)) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on {0, ..., bound - 1}; bound must be positive. Unbiased (rejection).
  std::uint64_t uniform_below(std::uint64_t bound);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// Walker/Vose alias table for O(1) categorical draws.
class AliasTable {
 public:
  /// Weights need not be normalized but must be nonnegative with a positive sum.
  explicit AliasTable(std::span<const double> weights);

  std::size_t sample(Rng& rng) const;
  std::size_t size() const noexcept { return prob_.size(); }

 private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

}  // namespace hgr
