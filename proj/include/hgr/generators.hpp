#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "hgr/hypergraph.hpp"

namespace hgr {

enum class Structure { Star, X, Chain, Wcgnm, Frucht };

std::string_view to_string(Structure s) noexcept;
/// Accepts star, x, chain, wcgnm, frucht (case-insensitive).
Structure parse_structure(std::string_view name);

struct GeneratorSpec {
  Structure structure = Structure::Star;
  std::size_t n = 6;
  double p = 0.2;  // WCGNM only
  double w_min = 1.0;
  double w_max = 1.0;
  std::uint64_t seed = 0;
};

// Generated nodes are the decimal tokens "0".."n-1". Unit weights, not normalized.

WeightedHypergraph star(std::size_t n);
/// Spokes {0,k} for k = 1..4 plus {4i+k, 4i+k+4} whenever 4i+k+4 <= n-1.
WeightedHypergraph x_graph(std::size_t n);
WeightedHypergraph chain(std::size_t n);

/// round-half-up of p*n*(n-1)/2.
std::size_t wcgnm_edge_count(std::size_t n, double p);

/// Uniform connected simple graph with wcgnm_edge_count(n, p) edges, by rejection
/// (edge sets are redrawn until connected).
WeightedHypergraph wcgnm(std::size_t n, double p, std::uint64_t seed);

/// The Frucht graph: 12 vertices, 3-regular, trivial automorphism group.
WeightedHypergraph frucht();

/// Each edge independently gets w_min or w_max with probability 1/2, then the
/// result is normalized.
WeightedHypergraph assign_weights(const WeightedHypergraph& h, double w_min, double w_max, std::uint64_t seed);

/// Structure followed by assign_weights, with per-purpose derived streams.
WeightedHypergraph generate(const GeneratorSpec& spec);

}  // namespace hgr
