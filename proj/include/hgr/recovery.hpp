#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hgr/hypergraph.hpp"
#include "hgr/oracle.hpp"
#include "hgr/sampling.hpp"

namespace hgr {

/// Candidate hyperedges E₀ for oracle recovery.
class CandidateSet {
 public:
  /// Every 2-subset of the given nodes.
  static CandidateSet all_pairs(std::set<NodeId> nodes);
  /// All pairs over the nodes the oracle has observed.
  static CandidateSet all_pairs_from(const MMOracle& oracle);
  /// Explicit list; duplicates are dropped.
  static CandidateSet explicit_list(std::vector<Hyperedge> edges);

  /// Materialized candidates in canonical order.
  std::vector<Hyperedge> edges() const;
  bool is_all_pairs() const noexcept { return all_pairs_; }

 private:
  bool all_pairs_ = false;
  std::set<NodeId> nodes_;
  std::set<Hyperedge> explicit_;
};

enum class RatioAggregation {
  SmallestSharedForm,  // the canonically smallest shared masked form
  GeometricMean,       // mean of log-ratios over every usable shared form
};

struct RecoveryOptions {
  RatioAggregation aggregation = RatioAggregation::SmallestSharedForm;
};

/// Plug-in estimate: the empirical distribution of the samples. Throws EmptyDataset.
WeightedHypergraph recover_from_dataset(const Dataset& d);

struct OracleRecovery {
  WeightedHypergraph hypergraph;
  bool meta_connected = true;
  std::size_t components = 1;
};

/// Two-phase recovery from an oracle. Phase 1 keeps candidate e when M(e|e⁻) > 0 for some e⁻ in the
/// support of π(·|e). Phase 2 seeds each ↔-component at its smallest kept edge
/// with weight 1, propagates with bf_weight_estimation, then normalizes globally.
/// Throws NothingRecovered when Phase 1 keeps nothing.
OracleRecovery recover_from_oracle(const MMOracle& oracle, const CandidateSet& candidates,
                                   const MaskingStrategy& strategy, const RecoveryOptions& options = {});

/// Breadth-first propagation of relative weights from e_init over the
/// ↔ relation restricted to `edges`. Entries of `w_tilde` that are already positive
/// are never overwritten. Neighbours are visited in canonical order.
///
/// For each newly reached e' the ratio uses the smallest masked form shared with
/// the edge it was reached from for which both beliefs are positive. An edge whose
/// shared forms all have a zero belief is left for another path; if nothing else
/// reaches it, UndefinedRatio is thrown.
void bf_weight_estimation(const Hyperedge& e_init, const std::vector<Hyperedge>& edges, const MMOracle& oracle,
                          const MaskingStrategy& strategy, std::map<Hyperedge, double>& w_tilde,
                          const RecoveryOptions& options = {});

struct RecoveryReport {
  double weighted_error = 0.0;
  std::set<Hyperedge> sketch_missing;   // in truth, absent from the recovered graph
  std::set<Hyperedge> sketch_spurious;  // recovered but not in truth
  std::map<Hyperedge, double> per_edge_abs_error;
  bool meta_connected = true;
};

/// Compares relabel(recovered, φ) (identity when φ is absent) against truth.
RecoveryReport recovery_report(const WeightedHypergraph& recovered, const WeightedHypergraph& truth,
                               const std::optional<NodeRelabeling>& relabeling = std::nullopt,
                               bool meta_connected = true);

/// JSON document with fields d, sketch_missing, sketch_spurious, meta_connected, per_edge.
std::string serialize_report(const RecoveryReport& report);

}  // namespace hgr
