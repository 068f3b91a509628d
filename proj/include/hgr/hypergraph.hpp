#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hgr {

/// Entity identifier. A nonempty token without whitespace, ordered bytewise.
class NodeId {
 public:
  NodeId() = default;
  explicit NodeId(std::string token);
  NodeId(const char* token) : NodeId(std::string(token)) {}

  const std::string& token() const noexcept { return token_; }

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend std::strong_ordering operator<=>(const NodeId& a, const NodeId& b) {
    return a.token_.compare(b.token_) <=> 0;
  }

 private:
  std::string token_;
};

/// A set of at least two distinct nodes, stored in ascending order.
class Hyperedge {
 public:
  Hyperedge() = default;
  /// Sorts and deduplicates; throws InvalidSize when fewer than two distinct nodes remain.
  explicit Hyperedge(std::vector<NodeId> nodes);
  Hyperedge(std::initializer_list<NodeId> nodes) : Hyperedge(std::vector<NodeId>(nodes)) {}

  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool contains(const NodeId& v) const;

  /// Tokens joined by '+'.
  std::string key() const;
  /// Inverse of key().
  static Hyperedge from_key(std::string_view key);

  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
  friend auto operator<=>(const Hyperedge&, const Hyperedge&) = default;

 private:
  std::vector<NodeId> nodes_;
};

/// Bijection between node sets, given as an explicit pair list.
class NodeRelabeling {
 public:
  NodeRelabeling() = default;
  /// Throws NotABijection if a source or target repeats with a different partner.
  explicit NodeRelabeling(const std::vector<std::pair<NodeId, NodeId>>& pairs);

  static NodeRelabeling identity(const std::set<NodeId>& nodes);

  /// Throws IncompleteMapping when v is outside the domain.
  const NodeId& apply(const NodeId& v) const;
  Hyperedge apply(const Hyperedge& e) const;
  bool covers(const NodeId& v) const { return forward_.count(v) != 0; }

  NodeRelabeling inverse() const;
  NodeRelabeling compose(const NodeRelabeling& after) const;  // after ∘ this

  const std::map<NodeId, NodeId>& pairs() const noexcept { return forward_; }
  std::size_t size() const noexcept { return forward_.size(); }

  friend bool operator==(const NodeRelabeling&, const NodeRelabeling&) = default;

 private:
  std::map<NodeId, NodeId> forward_;
};

/// Undirected simple graph over opaque string vertex ids.
class SimpleGraph {
 public:
  using Edge = std::pair<std::string, std::string>;

  void add_vertex(const std::string& v);
  /// Adds both endpoints; self-loops throw InvalidArgument, duplicates are ignored.
  void add_edge(const std::string& a, const std::string& b);

  const std::set<std::string>& vertices() const noexcept { return vertices_; }
  /// Stored with first < second.
  const std::set<Edge>& edges() const noexcept { return edges_; }
  bool has_edge(const std::string& a, const std::string& b) const;
  std::size_t degree(const std::string& v) const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  std::set<std::string> vertices_;
  std::set<Edge> edges_;
};

/// H = (V, E, w) with positive weights. V is derived from the edges.
class WeightedHypergraph {
 public:
  static constexpr double kNormalizationTolerance = 1e-9;
  static constexpr double kEqualityTolerance = 1e-12;

  WeightedHypergraph() = default;
  /// Throws InvalidWeight for nonpositive or non-finite weights and DuplicateEdge on repeats.
  /// With normalized=true the weights must sum to 1 within 1e-9 (NotNormalized otherwise).
  explicit WeightedHypergraph(const std::vector<std::pair<Hyperedge, double>>& edges,
                              bool normalized = false);
  explicit WeightedHypergraph(std::map<Hyperedge, double> edges, bool normalized = false);

  const std::map<Hyperedge, double>& edges() const noexcept { return edges_; }
  bool normalized() const noexcept { return normalized_; }
  bool empty() const noexcept { return edges_.empty(); }

  std::set<NodeId> nodes() const;
  std::size_t node_count() const { return nodes().size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool contains(const Hyperedge& e) const { return edges_.count(e) != 0; }
  /// Weight of e, or 0 when e is absent.
  double weight(const Hyperedge& e) const;

  double min_weight() const;
  double max_weight() const;
  /// max/min weight; 1 for the empty hypergraph.
  double range_ratio() const;
  double total_weight() const;

  /// Same edge set and weights within 1e-12. The normalized flag is not compared.
  friend bool operator==(const WeightedHypergraph& a, const WeightedHypergraph& b);

 private:
  void validate(bool normalized);

  std::map<Hyperedge, double> edges_;
  bool normalized_ = false;
};

WeightedHypergraph normalize(const WeightedHypergraph& h);

/// Sum over E1 ∪ E2 of |w1(e) - w2(e)|, with absent edges weighing 0.
double dissimilarity(const WeightedHypergraph& h1, const WeightedHypergraph& h2);

WeightedHypergraph relabel(const WeightedHypergraph& h, const NodeRelabeling& phi);

/// One vertex per hyperedge (named by its key), adjacent iff the hyperedges intersect.
SimpleGraph line_graph(const WeightedHypergraph& h);

struct SketchDiff {
  std::set<Hyperedge> missing;   // E1 \ E2
  std::set<Hyperedge> spurious;  // E2 \ E1
};

SketchDiff sketch_diff(const WeightedHypergraph& h1, const WeightedHypergraph& h2);

/// Text encoding in the `#hg v1` format; weights use 17 significant digits.
std::string encode(const WeightedHypergraph& h);
WeightedHypergraph decode(std::string_view text);

WeightedHypergraph read_hypergraph(const std::string& path);
void write_hypergraph(const std::string& path, const WeightedHypergraph& h);

/// 17 significant digits, general notation. Round-trips every finite double.
std::string format_double(double x);

}  // namespace hgr
