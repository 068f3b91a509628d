#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hgr/error.hpp"
#include "hgr/hypergraph.hpp"

namespace hgr::testing {

inline std::optional<ErrorKind> kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline std::string kind_name(const std::function<void()>& f) {
  auto k = kind_of(f);
  return k ? std::string(to_string(*k)) : std::string("no error");
}

struct EdgeSpec {
  std::vector<std::string> nodes;
  double weight;
};

inline WeightedHypergraph hg(const std::vector<EdgeSpec>& edges, bool normalized = false) {
  std::vector<std::pair<Hyperedge, double>> out;
  for (const auto& e : edges) {
    std::vector<NodeId> nodes(e.nodes.begin(), e.nodes.end());
    out.emplace_back(Hyperedge(nodes), e.weight);
  }
  return WeightedHypergraph(out, normalized);
}

inline Hyperedge he(std::initializer_list<const char*> nodes) {
  std::vector<NodeId> v;
  for (const char* n : nodes) v.emplace_back(n);
  return Hyperedge(v);
}

/// Reference dissimilarity over string keys, independent of the library's merge walk.
inline double reference_dissimilarity(const WeightedHypergraph& a, const WeightedHypergraph& b) {
  std::map<std::string, double> diff;
  for (const auto& [e, w] : a.edges()) diff[e.key()] += w;
  for (const auto& [e, w] : b.edges()) diff[e.key()] -= w;
  double sum = 0;
  for (const auto& [k, v] : diff) sum += v < 0 ? -v : v;
  return sum;
}

}  // namespace hgr::testing
