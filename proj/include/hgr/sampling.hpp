#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hgr/hypergraph.hpp"

namespace hgr {

/// e⁻: the visible nodes of a hyperedge plus the number of masked slots.
struct MaskedHyperedge {
  std::vector<NodeId> visible;  // strictly ascending, possibly empty
  std::uint32_t masked_count = 1;

  MaskedHyperedge() = default;
  MaskedHyperedge(std::vector<NodeId> visible_nodes, std::uint32_t masked);

  /// Visible tokens joined by '+', then '|', then masked_count. E.g. "0|1".
  std::string key() const;
  static MaskedHyperedge from_key(std::string_view key);

  /// True when e is a completion: visible ⊂ e and |e| = |visible| + masked_count.
  bool completed_by(const Hyperedge& e) const;

  friend bool operator==(const MaskedHyperedge&, const MaskedHyperedge&) = default;
  friend auto operator<=>(const MaskedHyperedge&, const MaskedHyperedge&) = default;
};

using MaskSupport = std::vector<std::pair<MaskedHyperedge, double>>;

/// π(e⁻ | e). Implementations list a finite support with positive probabilities
/// summing to one, sorted by masked form.
class MaskingStrategy {
 public:
  virtual ~MaskingStrategy() = default;
  virtual std::string name() const = 0;
  virtual MaskSupport support(const Hyperedge& e) const = 0;
  /// π(m | e); zero outside the support.
  virtual double probability(const MaskedHyperedge& m, const Hyperedge& e) const;
};

/// Masks exactly one node, chosen uniformly.
class UniformSingleMask final : public MaskingStrategy {
 public:
  std::string name() const override { return "uniform1"; }
  MaskSupport support(const Hyperedge& e) const override;
  double probability(const MaskedHyperedge& m, const Hyperedge& e) const override;
};

std::shared_ptr<const MaskingStrategy> uniform_single_mask();
/// Looks a strategy up by name ("uniform1").
std::shared_ptr<const MaskingStrategy> masking_strategy(std::string_view name);

// ---------------------------------------------------------------------------

struct Dataset {
  std::vector<Hyperedge> samples;

  std::size_t size() const noexcept { return samples.size(); }
  /// f_N(e).
  std::map<Hyperedge, std::uint64_t> counts() const;
};

struct MMRecord {
  Hyperedge full;
  MaskedHyperedge masked;
};

/// N outer draws × K masked variants, stored outer-major: record t*K + k.
struct MMDataset {
  std::vector<MMRecord> records;
  std::size_t n_outer = 0;
  std::size_t k_inner = 0;

  /// The N outer draws e_1..e_N.
  Dataset outer_samples() const;
};

Dataset sample_dataset(const WeightedHypergraph& h, std::size_t n_samples, std::uint64_t seed);
MMDataset sample_mm_dataset(const WeightedHypergraph& h, std::size_t n_outer, std::size_t k_inner,
                            const MaskingStrategy& strategy, std::uint64_t seed);

/// .ds: one sample per line, tokens separated by spaces.
std::string encode_dataset(const Dataset& d);
Dataset decode_dataset(std::string_view text);

/// .mm: optional "#mm <N> <K>" header, then `<full tokens>\t<visible tokens> _...` per record.
std::string encode_mm_dataset(const MMDataset& d);
MMDataset decode_mm_dataset(std::string_view text);

// ---------------------------------------------------------------------------

/// Hyperedges as vertices; e1 ↔ e2 when they share a masked form of positive probability.
class MetaGraph {
 public:
  const std::vector<Hyperedge>& vertices() const noexcept { return vertices_; }
  /// Neighbours of vertex i in ascending index order (vertices are sorted canonically).
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return adjacency_[i]; }
  /// Shared forms for an adjacent pair, sorted; empty when not adjacent.
  const std::vector<MaskedHyperedge>& shared_forms(std::size_t i, std::size_t j) const;
  bool adjacent(std::size_t i, std::size_t j) const;
  std::size_t index_of(const Hyperedge& e) const;

 private:
  friend MetaGraph build_meta_graph(const WeightedHypergraph&, const MaskingStrategy&);

  std::vector<Hyperedge> vertices_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<MaskedHyperedge>> shared_;
};

MetaGraph build_meta_graph(const WeightedHypergraph& h, const MaskingStrategy& strategy);

/// L = 1 + diameter, counting hyperedges on a shortest ↔ path including both ends.
struct PathLengthBound {
  std::size_t L = 0;
  bool connected = true;
};

/// Throws EmptyHypergraph for a meta-graph without vertices.
PathLengthBound mm_path_length_bound(const MetaGraph& mg);

struct StrategyConstants {
  double c_pi = 0.0;       // min over e and supported e⁻ of π(e⁻|e)
  std::size_t C_pi = 0;    // max support size
};

StrategyConstants strategy_constants(const WeightedHypergraph& h, const MaskingStrategy& strategy);

}  // namespace hgr
