#include "hgr/recovery.hpp"

#include <cmath>
#include <deque>
#include <numeric>

#include <json.hpp>

#include "hgr/error.hpp"

namespace hgr {

// ---------------------------------------------------------------------------
// Candidates

CandidateSet CandidateSet::all_pairs(std::set<NodeId> nodes) {
  CandidateSet c;
  c.all_pairs_ = true;
  c.nodes_ = std::move(nodes);
  return c;
}

CandidateSet CandidateSet::all_pairs_from(const MMOracle& oracle) { return all_pairs(oracle.observed_nodes()); }

CandidateSet CandidateSet::explicit_list(std::vector<Hyperedge> edges) {
  CandidateSet c;
  c.explicit_.insert(edges.begin(), edges.end());
  return c;
}

std::vector<Hyperedge> CandidateSet::edges() const {
  if (!all_pairs_) return {explicit_.begin(), explicit_.end()};
  std::vector<Hyperedge> out;
  const std::vector<NodeId> nodes(nodes_.begin(), nodes_.end());
  out.reserve(nodes.size() * (nodes.size() - (nodes.empty() ? 0 : 1)) / 2);
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b) out.push_back(Hyperedge{nodes[a], nodes[b]});
  return out;  // ascending: (a, b) pairs over sorted nodes
}

// ---------------------------------------------------------------------------
// Plug-in estimation

WeightedHypergraph recover_from_dataset(const Dataset& d) {
  if (d.size() == 0) throw Error(ErrorKind::EmptyDataset, "cannot recover from an empty dataset");
  const double n = static_cast<double>(d.size());
  std::map<Hyperedge, double> weights;
  for (const auto& [e, count] : d.counts()) weights.emplace_hint(weights.end(), e, static_cast<double>(count) / n);
  // Counts over N sum to one up to round-off well inside the 1e-9 tolerance.
  return WeightedHypergraph(std::move(weights), true);
}

// ---------------------------------------------------------------------------
// Oracle recovery

namespace {

/// ↔ structure over a fixed edge list (sorted canonically).
struct ShareIndex {
  std::vector<Hyperedge> edges;
  std::vector<MaskSupport> supports;
  std::map<MaskedHyperedge, std::vector<std::size_t>> by_form;

  ShareIndex(std::vector<Hyperedge> list, const MaskingStrategy& strategy) : edges(std::move(list)) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    supports.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      supports.push_back(strategy.support(edges[i]));
      for (const auto& [form, p] : supports.back())
        if (p > 0.0) by_form[form].push_back(i);
    }
  }

  std::size_t index_of(const Hyperedge& e) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e)
      throw Error(ErrorKind::InvalidArgument, "edge " + e.key() + " is not among the kept edges");
    return static_cast<std::size_t>(it - edges.begin());
  }

  /// Neighbour index -> shared forms (ascending), neighbours in canonical order.
  std::map<std::size_t, std::vector<const MaskedHyperedge*>> neighbors(std::size_t i) const {
    std::map<std::size_t, std::vector<const MaskedHyperedge*>> out;
    for (const auto& [form, p] : supports[i]) {
      if (!(p > 0.0)) continue;
      auto it = by_form.find(form);
      for (std::size_t j : it->second)
        if (j != i) out[j].push_back(&it->first);
    }
    return out;
  }

  /// Component label per edge, numbered by smallest member.
  std::vector<std::size_t> components() const {
    std::vector<std::size_t> parent(edges.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [form, members] : by_form)
      for (std::size_t k = 1; k < members.size(); ++k) {
        auto a = find(members[0]), b = find(members[k]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    std::vector<std::size_t> label(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) label[i] = find(i);
    return label;
  }
};

/// π(m|from) M(to|m) / (π(m|to) M(from|m)) aggregated over the usable shared forms.
std::optional<double> propagated_ratio(const Hyperedge& from, const Hyperedge& to,
                                       const std::vector<const MaskedHyperedge*>& forms, const MMOracle& oracle,
                                       const MaskingStrategy& strategy, RatioAggregation aggregation) {
  double log_sum = 0.0;
  std::size_t used = 0;
  for (const MaskedHyperedge* m : forms) {
    const double m_from = oracle.belief(from, *m);
    const double m_to = oracle.belief(to, *m);
    if (!(m_from > 0.0) || !(m_to > 0.0)) continue;
    const double ratio = (strategy.probability(*m, from) * m_to) / (strategy.probability(*m, to) * m_from);
    if (aggregation == RatioAggregation::SmallestSharedForm) return ratio;
    log_sum += std::log(ratio);
    ++used;
  }
  if (used == 0) return std::nullopt;
  return std::exp(log_sum / static_cast<double>(used));
}

void propagate(const ShareIndex& index, std::size_t start, const MMOracle& oracle, const MaskingStrategy& strategy,
               std::map<Hyperedge, double>& w_tilde, const RecoveryOptions& options) {
  auto current = [&](std::size_t i) {
    auto it = w_tilde.find(index.edges[i]);
    return it == w_tilde.end() ? 0.0 : it->second;
  };
  std::deque<std::size_t> queue{start};
  while (!queue.empty()) {
    const std::size_t e = queue.front();
    queue.pop_front();
    for (const auto& [next, forms] : index.neighbors(e)) {
      if (current(next) > 0.0) continue;
      auto ratio = propagated_ratio(index.edges[e], index.edges[next], forms, oracle, strategy, options.aggregation);
      if (!ratio || !(*ratio > 0.0)) continue;  // reachable only through a different edge, if at all
      w_tilde[index.edges[next]] = *ratio * current(e);
      queue.push_back(next);
    }
  }
  const auto labels = index.components();
  for (std::size_t i = 0; i < index.edges.size(); ++i) {
    if (labels[i] == labels[start] && !(current(i) > 0.0))
      throw Error(ErrorKind::UndefinedRatio,
                  "no shared masked form with positive beliefs reaches " + index.edges[i].key());
  }
}

}  // namespace

void bf_weight_estimation(const Hyperedge& e_init, const std::vector<Hyperedge>& edges, const MMOracle& oracle,
                          const MaskingStrategy& strategy, std::map<Hyperedge, double>& w_tilde,
                          const RecoveryOptions& options) {
  const ShareIndex index(edges, strategy);
  const std::size_t start = index.index_of(e_init);
  auto& seed = w_tilde[e_init];
  if (!(seed > 0.0)) seed = 1.0;
  propagate(index, start, oracle, strategy, w_tilde, options);
}

OracleRecovery recover_from_oracle(const MMOracle& oracle, const CandidateSet& candidates,
                                   const MaskingStrategy& strategy, const RecoveryOptions& options) {
  // Phase 1: keep every candidate that some supported masked form predicts.
  std::vector<Hyperedge> kept;
  for (const auto& e : candidates.edges()) {
    for (const auto& [form, p] : strategy.support(e)) {
      if (p > 0.0 && oracle.belief(e, form) > 0.0) {
        kept.push_back(e);
        break;
      }
    }
  }
  if (kept.empty()) throw Error(ErrorKind::NothingRecovered, "no candidate hyperedge has positive belief");

  // Phase 2: one seed per ↔-component.
  const ShareIndex index(std::move(kept), strategy);
  const auto labels = index.components();
  std::map<Hyperedge, double> w_tilde;
  std::size_t components = 0;
  for (std::size_t i = 0; i < index.edges.size(); ++i) {
    if (labels[i] != i) continue;  // i is the smallest member of its component
    ++components;
    w_tilde[index.edges[i]] = 1.0;
    propagate(index, i, oracle, strategy, w_tilde, options);
  }

  OracleRecovery out;
  out.hypergraph = normalize(WeightedHypergraph(std::move(w_tilde)));
  out.components = components;
  out.meta_connected = components == 1;
  return out;
}

// ---------------------------------------------------------------------------
// Reporting

RecoveryReport recovery_report(const WeightedHypergraph& recovered, const WeightedHypergraph& truth,
                               const std::optional<NodeRelabeling>& relabeling, bool meta_connected) {
  const WeightedHypergraph mapped = relabeling ? relabel(recovered, *relabeling) : recovered;
  RecoveryReport report;
  report.weighted_error = dissimilarity(mapped, truth);
  auto diff = sketch_diff(truth, mapped);
  report.sketch_missing = std::move(diff.missing);
  report.sketch_spurious = std::move(diff.spurious);
  for (const auto& [e, w] : truth.edges()) report.per_edge_abs_error[e] = std::abs(w - mapped.weight(e));
  for (const auto& [e, w] : mapped.edges())
    if (!truth.contains(e)) report.per_edge_abs_error[e] = w;
  report.meta_connected = meta_connected;
  return report;
}

std::string serialize_report(const RecoveryReport& report) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["d"] = report.weighted_error;
  doc["sketch_missing"] = ordered_json::array();
  for (const auto& e : report.sketch_missing) doc["sketch_missing"].push_back(e.key());
  doc["sketch_spurious"] = ordered_json::array();
  for (const auto& e : report.sketch_spurious) doc["sketch_spurious"].push_back(e.key());
  doc["meta_connected"] = report.meta_connected;
  ordered_json per_edge = ordered_json::object();
  for (const auto& [e, err] : report.per_edge_abs_error) per_edge[e.key()] = err;
  doc["per_edge"] = std::move(per_edge);
  return doc.dump(2) + "\n";
}

}  // namespace hgr
