#include "hgr/generators.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "hgr/error.hpp"
#include "hgr/rng.hpp"
#include "text_util.hpp"

namespace hgr {

namespace {

NodeId node(std::size_t i) { return NodeId(std::to_string(i)); }

Hyperedge pair_edge(std::size_t a, std::size_t b) { return Hyperedge{node(a), node(b)}; }

WeightedHypergraph unit_weights(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<std::pair<Hyperedge, double>> edges;
  edges.reserve(pairs.size());
  for (auto [a, b] : pairs) edges.emplace_back(pair_edge(a, b), 1.0);
  return WeightedHypergraph(edges);
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Maximum redraws before giving up on a nearly-disconnected density.
constexpr std::size_t kMaxRejections = 1'000'000;

}  // namespace

std::string_view to_string(Structure s) noexcept {
  switch (s) {
    case Structure::Star: return "star";
    case Structure::X: return "x";
    case Structure::Chain: return "chain";
    case Structure::Wcgnm: return "wcgnm";
    case Structure::Frucht: return "frucht";
  }
  return "?";
}

Structure parse_structure(std::string_view name) {
  const auto lower = detail::to_lower(name);
  for (auto s : {Structure::Star, Structure::X, Structure::Chain, Structure::Wcgnm, Structure::Frucht})
    if (lower == to_string(s)) return s;
  throw Error(ErrorKind::InvalidArgument, "unknown structure '" + std::string(name) + "'");
}

WeightedHypergraph star(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidSize, "star needs n >= 2");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 1; i < n; ++i) pairs.emplace_back(0, i);
  return unit_weights(pairs);
}

WeightedHypergraph x_graph(std::size_t n) {
  if (n < 5) throw Error(ErrorKind::InvalidSize, "x_graph needs n >= 5");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = 1; k <= 4; ++k) pairs.emplace_back(0, k);
  for (std::size_t i = 0; 4 * i + 5 <= n - 1; ++i) {
    for (std::size_t k = 1; k <= 4; ++k) {
      const std::size_t a = 4 * i + k;
      if (a + 4 <= n - 1) pairs.emplace_back(a, a + 4);
    }
  }
  return unit_weights(pairs);
}

WeightedHypergraph chain(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidSize, "chain needs n >= 2");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return unit_weights(pairs);
}

std::size_t wcgnm_edge_count(std::size_t n, double p) {
  const double exact = p * static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return static_cast<std::size_t>(std::floor(exact + 0.5));
}

WeightedHypergraph wcgnm(std::size_t n, double p, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::InvalidSize, "wcgnm needs n >= 2");
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "wcgnm density must lie in (0, 1]");
  const std::size_t m = wcgnm_edge_count(n, p);
  if (m < n - 1)
    throw Error(ErrorKind::CannotBeConnected,
                "m(n) = " + std::to_string(m) + " < n - 1 = " + std::to_string(n - 1));

  std::vector<std::pair<std::size_t, std::size_t>> all;
  all.reserve(n * (n - 1) / 2);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) all.emplace_back(a, b);

  Rng rng(seed, "wcgnm");
  for (std::size_t attempt = 0; attempt < kMaxRejections; ++attempt) {
    // Partial Fisher-Yates: the first m slots become a uniform m-subset.
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(all.size() - i));
      std::swap(all[i], all[j]);
    }
    DisjointSets sets(n);
    std::size_t merges = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (sets.unite(all[i].first, all[i].second)) ++merges;
    if (merges == n - 1) {
      return unit_weights(std::vector<std::pair<std::size_t, std::size_t>>(all.begin(), all.begin() + m));
    }
  }
  throw Error(ErrorKind::CannotBeConnected, "no connected draw after " + std::to_string(kMaxRejections) + " attempts");
}

WeightedHypergraph frucht() {
  // 12-cycle with chords given in LCF notation [-5,-2,-4,2,5,-2,2,5,-2,-5,4,2].
  constexpr std::array<int, 12> lcf{-5, -2, -4, 2, 5, -2, 2, 5, -2, -5, 4, 2};
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::vector<bool>> seen(12, std::vector<bool>(12, false));
  auto add = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    if (!seen[a][b]) {
      seen[a][b] = true;
      pairs.emplace_back(a, b);
    }
  };
  for (std::size_t i = 0; i < 12; ++i) {
    add(i, (i + 1) % 12);
    add(i, static_cast<std::size_t>((static_cast<int>(i) + lcf[i] + 12) % 12));
  }
  return unit_weights(pairs);
}

WeightedHypergraph assign_weights(const WeightedHypergraph& h, double w_min, double w_max, std::uint64_t seed) {
  if (!(w_min > 0.0) || !(w_max > 0.0) || !std::isfinite(w_min) || !std::isfinite(w_max))
    throw Error(ErrorKind::InvalidWeights, "weight bounds must be positive");
  if (w_max < w_min) throw Error(ErrorKind::InvalidWeights, "w_max < w_min");
  if (h.empty()) throw Error(ErrorKind::EmptyHypergraph, "no edges to weight");

  Rng rng(seed, "weights");
  std::map<Hyperedge, double> weighted;
  for (const auto& [e, w] : h.edges()) weighted.emplace_hint(weighted.end(), e, rng.coin() ? w_max : w_min);
  return normalize(WeightedHypergraph(std::move(weighted)));
}

WeightedHypergraph generate(const GeneratorSpec& spec) {
  WeightedHypergraph base;
  switch (spec.structure) {
    case Structure::Star: base = star(spec.n); break;
    case Structure::X: base = x_graph(spec.n); break;
    case Structure::Chain: base = chain(spec.n); break;
    case Structure::Wcgnm: base = wcgnm(spec.n, spec.p, spec.seed); break;
    case Structure::Frucht: base = frucht(); break;
  }
  return assign_weights(base, spec.w_min, spec.w_max, spec.seed);
}

}  // namespace hgr
