#include "hgr/oracle.hpp"

#include <json.hpp>

#include "hgr/error.hpp"

namespace hgr {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Tabular

TabularOracle::TabularOracle(Counts counts) : counts_(std::move(counts)) {
  for (auto it = counts_.begin(); it != counts_.end();) {
    std::uint64_t total = 0;
    for (auto inner = it->second.begin(); inner != it->second.end();) {
      if (!it->first.completed_by(inner->first))
        throw Error(ErrorKind::InvalidArgument,
                    "edge " + inner->first.key() + " does not complete masked form " + it->first.key());
      if (inner->second == 0) {
        inner = it->second.erase(inner);
        continue;
      }
      total += inner->second;
      ++inner;
    }
    if (total == 0) {
      it = counts_.erase(it);
      continue;
    }
    totals_.emplace(it->first, total);
    ++it;
  }
}

std::optional<Belief> TabularOracle::query(const MaskedHyperedge& m) const {
  auto it = counts_.find(m);
  if (it == counts_.end()) return std::nullopt;
  const double total = static_cast<double>(totals_.at(m));
  Belief out;
  for (const auto& [e, c] : it->second) out.emplace_hint(out.end(), e, static_cast<double>(c) / total);
  return out;
}

double TabularOracle::belief(const Hyperedge& e, const MaskedHyperedge& m) const {
  auto it = counts_.find(m);
  if (it == counts_.end()) return 0.0;
  auto inner = it->second.find(e);
  if (inner == it->second.end()) return 0.0;
  return static_cast<double>(inner->second) / static_cast<double>(totals_.at(m));
}

std::set<NodeId> TabularOracle::observed_nodes() const {
  std::set<NodeId> out;
  for (const auto& [m, inner] : counts_) {
    out.insert(m.visible.begin(), m.visible.end());
    for (const auto& [e, c] : inner) out.insert(e.nodes().begin(), e.nodes().end());
  }
  return out;
}

TabularOracle train_tabular(const MMDataset& d) {
  TabularOracle::Counts counts;
  for (const auto& r : d.records) ++counts[r.masked][r.full];
  return TabularOracle(std::move(counts));
}

// ---------------------------------------------------------------------------
// Exact

ExactOracle::ExactOracle(WeightedHypergraph h, std::shared_ptr<const MaskingStrategy> strategy)
    : hypergraph_(std::move(h)), strategy_(std::move(strategy)) {
  if (!hypergraph_.normalized()) throw Error(ErrorKind::NotNormalized, "exact oracle needs a normalized hypergraph");
  if (!strategy_) throw Error(ErrorKind::InvalidArgument, "exact oracle needs a masking strategy");
  for (const auto& [e, w] : hypergraph_.edges())
    for (const auto& [form, p] : strategy_->support(e))
      if (p > 0.0) mass_[form][e] = w * p;
}

std::optional<Belief> ExactOracle::query(const MaskedHyperedge& m) const {
  auto it = mass_.find(m);
  if (it == mass_.end()) return std::nullopt;
  double total = 0.0;
  for (const auto& [e, x] : it->second) total += x;
  Belief out;
  for (const auto& [e, x] : it->second) out.emplace_hint(out.end(), e, x / total);
  return out;
}

double ExactOracle::belief(const Hyperedge& e, const MaskedHyperedge& m) const {
  auto it = mass_.find(m);
  if (it == mass_.end()) return 0.0;
  auto inner = it->second.find(e);
  if (inner == it->second.end()) return 0.0;
  double total = 0.0;
  for (const auto& [edge, x] : it->second) total += x;
  return inner->second / total;
}

// ---------------------------------------------------------------------------

Belief query_or_throw(const MMOracle& oracle, const MaskedHyperedge& m) {
  auto result = oracle.query(m);
  if (!result) throw Error(ErrorKind::Unseen, "masked form " + m.key() + " was never observed");
  return *std::move(result);
}

double relative_weight(const MMOracle& oracle, const Hyperedge& e1, const Hyperedge& e2,
                       const MaskedHyperedge& m, const MaskingStrategy& strategy) {
  const double pi1 = strategy.probability(m, e1);
  const double pi2 = strategy.probability(m, e2);
  if (!(pi1 > 0.0) || !(pi2 > 0.0))
    throw Error(ErrorKind::NotShared, "masked form " + m.key() + " is not shared by " + e1.key() + " and " + e2.key());
  const double m2 = oracle.belief(e2, m);
  if (!(m2 > 0.0)) throw Error(ErrorKind::UndefinedRatio, "M(" + e2.key() + " | " + m.key() + ") = 0");
  return (oracle.belief(e1, m) * pi2) / (m2 * pi1);
}

// ---------------------------------------------------------------------------
// Serialization

std::string serialize_oracle(const TabularOracle& oracle) {
  json counts = json::object();
  for (const auto& [m, inner] : oracle.counts()) {
    json row = json::object();
    for (const auto& [e, c] : inner) row[e.key()] = c;
    counts[m.key()] = std::move(row);
  }
  json doc;
  doc["kind"] = "tabular";
  doc["counts"] = std::move(counts);
  return doc.dump(2) + "\n";
}

std::string serialize_oracle(const ExactOracle& oracle) {
  json doc;
  doc["kind"] = "exact";
  doc["mask"] = oracle.strategy().name();
  doc["hypergraph"] = encode(oracle.hypergraph());
  return doc.dump(2) + "\n";
}

std::unique_ptr<MMOracle> deserialize_oracle(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("oracle document: ") + e.what());
  }
  try {
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "tabular") {
      TabularOracle::Counts counts;
      for (const auto& [mkey, row] : doc.at("counts").items()) {
        auto& inner = counts[MaskedHyperedge::from_key(mkey)];
        for (const auto& [ekey, c] : row.items()) inner[Hyperedge::from_key(ekey)] = c.get<std::uint64_t>();
      }
      return std::make_unique<TabularOracle>(std::move(counts));
    }
    if (kind == "exact") {
      auto h = decode(doc.at("hypergraph").get<std::string>());
      return std::make_unique<ExactOracle>(normalize(h), masking_strategy(doc.at("mask").get<std::string>()));
    }
    throw Error(ErrorKind::ParseError, "unknown oracle kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("oracle document: ") + e.what());
  }
}

}  // namespace hgr
