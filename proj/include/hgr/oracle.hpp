#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "hgr/hypergraph.hpp"
#include "hgr/sampling.hpp"

namespace hgr {

using Belief = std::map<Hyperedge, double>;

/// M(e | e⁻), the belief of a masked-modeling model.
class MMOracle {
 public:
  virtual ~MMOracle() = default;

  /// Distribution over completions of m, or nullopt (Unseen) when m carries no mass.
  virtual std::optional<Belief> query(const MaskedHyperedge& m) const = 0;
  /// M(e | m); 0 when m is unseen or e is not in its support.
  virtual double belief(const Hyperedge& e, const MaskedHyperedge& m) const = 0;
  /// Nodes appearing in any masked form or completion the oracle knows about.
  virtual std::set<NodeId> observed_nodes() const = 0;
};

/// Count-ratio oracle: the cross-entropy minimizer over an MM dataset.
class TabularOracle final : public MMOracle {
 public:
  using Counts = std::map<MaskedHyperedge, std::map<Hyperedge, std::uint64_t>>;

  TabularOracle() = default;
  /// Throws InvalidArgument when a completion is inconsistent with its masked form.
  explicit TabularOracle(Counts counts);

  std::optional<Belief> query(const MaskedHyperedge& m) const override;
  double belief(const Hyperedge& e, const MaskedHyperedge& m) const override;
  std::set<NodeId> observed_nodes() const override;

  const Counts& counts() const noexcept { return counts_; }
  bool empty() const noexcept { return counts_.empty(); }

 private:
  Counts counts_;
  std::map<MaskedHyperedge, std::uint64_t> totals_;
};

TabularOracle train_tabular(const MMDataset& d);

/// Population posterior P(e | m) = w(e) π(m|e) / Σ w(e') π(m|e').
class ExactOracle final : public MMOracle {
 public:
  /// Throws NotNormalized unless h is normalized.
  ExactOracle(WeightedHypergraph h, std::shared_ptr<const MaskingStrategy> strategy);

  std::optional<Belief> query(const MaskedHyperedge& m) const override;
  double belief(const Hyperedge& e, const MaskedHyperedge& m) const override;
  std::set<NodeId> observed_nodes() const override { return hypergraph_.nodes(); }

  const WeightedHypergraph& hypergraph() const noexcept { return hypergraph_; }
  const MaskingStrategy& strategy() const noexcept { return *strategy_; }

 private:
  WeightedHypergraph hypergraph_;
  std::shared_ptr<const MaskingStrategy> strategy_;
  // Unnormalized posterior mass w(e) π(m|e), per masked form.
  std::map<MaskedHyperedge, std::map<Hyperedge, double>> mass_;
};

/// Like query(), but throws Unseen instead of returning nullopt.
Belief query_or_throw(const MMOracle& oracle, const MaskedHyperedge& m);

/// ŵ(e1)/ŵ(e2) = M(e1|m) π(m|e2) / (M(e2|m) π(m|e1)).
/// Throws NotShared unless π(m|e1) > 0 and π(m|e2) > 0, UndefinedRatio when M(e2|m) = 0.
double relative_weight(const MMOracle& oracle, const Hyperedge& e1, const Hyperedge& e2,
                       const MaskedHyperedge& m, const MaskingStrategy& strategy);

/// JSON document {"kind": "tabular", "counts": {"<masked key>": {"<edge key>": n}}}
/// or {"kind": "exact", "mask": "<strategy>", "hypergraph": "<.hg text>"}.
std::string serialize_oracle(const TabularOracle& oracle);
std::string serialize_oracle(const ExactOracle& oracle);
std::unique_ptr<MMOracle> deserialize_oracle(std::string_view json_text);

}  // namespace hgr
