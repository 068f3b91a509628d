#include "hgr/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "hgr/error.hpp"
#include "text_util.hpp"

namespace hgr {

namespace {

constexpr double kWeightBucket = 1e-9;

std::vector<NodeId> sorted_nodes(const WeightedHypergraph& h) {
  const auto s = h.nodes();
  return {s.begin(), s.end()};
}

void require_same_size(std::size_t n1, std::size_t n2) {
  if (n1 != n2)
    throw Error(ErrorKind::SizeMismatch,
                "|V1| = " + std::to_string(n1) + " but |V2| = " + std::to_string(n2));
}

/// relabel(h1, φ) equals h2: same edges, weights within 1e-9.
bool carries_onto(const WeightedHypergraph& h1, const WeightedHypergraph& h2, const NodeRelabeling& phi) {
  if (h1.edge_count() != h2.edge_count()) return false;
  for (const auto& [e, w] : h1.edges()) {
    auto it = h2.edges().find(phi.apply(e));
    if (it == h2.edges().end() || std::abs(it->second - w) > kWeightBucket) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Colored graphs and refinement

struct ColoredGraph {
  // (neighbour, edge label) per vertex.
  std::vector<std::vector<std::pair<std::size_t, int>>> adj;

  explicit ColoredGraph(std::size_t n) : adj(n) {}
  std::size_t size() const { return adj.size(); }
  void connect(std::size_t a, std::size_t b, int label) {
    adj[a].emplace_back(b, label);
    adj[b].emplace_back(a, label);
  }
};

/// Dense ids by first occurrence in vertex order.
template <class Key>
std::vector<int> densify(const std::vector<Key>& keys) {
  std::map<Key, int> ids;
  std::vector<int> out(keys.size());
  for (std::size_t v = 0; v < keys.size(); ++v) {
    auto [it, inserted] = ids.emplace(keys[v], static_cast<int>(ids.size()));
    out[v] = it->second;
  }
  return out;
}

int class_count(const std::vector<int>& colors) {
  return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
}

/// Stable refinement of a dense coloring.
std::vector<int> refine(const ColoredGraph& g, std::vector<int> colors, std::size_t* rounds = nullptr) {
  using Signature = std::pair<int, std::vector<std::pair<int, int>>>;
  colors = densify(colors);
  int classes = class_count(colors);
  while (true) {
    if (rounds) ++*rounds;
    std::vector<Signature> sig(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
      sig[v].first = colors[v];
      auto& nb = sig[v].second;
      nb.reserve(g.adj[v].size());
      for (const auto& [u, label] : g.adj[v]) nb.emplace_back(label, colors[u]);
      std::sort(nb.begin(), nb.end());
    }
    auto next = densify(sig);
    const int next_classes = class_count(next);
    colors = std::move(next);
    if (next_classes == classes) return colors;
    classes = next_classes;
  }
}

// ---------------------------------------------------------------------------
// Joint graph for a pair of hypergraphs

struct JointGraph {
  ColoredGraph graph{0};
  std::vector<int> base;  // initial colors before anchors
  std::vector<NodeId> nodes1, nodes2;
  std::vector<Hyperedge> edges1, edges2;
  bool incidence = false;
  std::size_t offset2 = 0;  // first side-2 vertex

  std::size_t side1_size() const { return offset2; }
  std::size_t node1(std::size_t i) const { return i; }
  std::size_t node2(std::size_t i) const { return offset2 + i; }
  std::size_t edge1(std::size_t j) const { return nodes1.size() + j; }
  std::size_t edge2(std::size_t j) const { return offset2 + nodes2.size() + j; }
  bool is_side1(std::size_t v) const { return v < offset2; }
};

std::size_t index_in(const std::vector<NodeId>& sorted, const NodeId& v) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  if (it == sorted.end() || *it != v) return sorted.size();
  return static_cast<std::size_t>(it - sorted.begin());
}

std::size_t index_in(const std::vector<Hyperedge>& sorted, const Hyperedge& e) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), e);
  if (it == sorted.end() || *it != e) return sorted.size();
  return static_cast<std::size_t>(it - sorted.begin());
}

JointGraph build_joint(const WeightedHypergraph& h1, const WeightedHypergraph& h2) {
  JointGraph j;
  j.nodes1 = sorted_nodes(h1);
  j.nodes2 = sorted_nodes(h2);
  for (const auto& [e, w] : h1.edges()) {
    j.edges1.push_back(e);
    if (e.size() > 2) j.incidence = true;
  }
  for (const auto& [e, w] : h2.edges()) {
    j.edges2.push_back(e);
    if (e.size() > 2) j.incidence = true;
  }

  // Weight buckets shared by both sides.
  std::vector<double> weights;
  for (const auto& [e, w] : h1.edges()) weights.push_back(w);
  for (const auto& [e, w] : h2.edges()) weights.push_back(w);
  std::sort(weights.begin(), weights.end());
  std::vector<double> bucket_start;
  for (double w : weights)
    if (bucket_start.empty() || w - bucket_start.back() > kWeightBucket) bucket_start.push_back(w);
  auto bucket = [&](double w) {
    auto it = std::upper_bound(bucket_start.begin(), bucket_start.end(), w);
    return static_cast<int>(it - bucket_start.begin()) - 1;
  };

  const std::size_t side1 = j.nodes1.size() + (j.incidence ? j.edges1.size() : 0);
  const std::size_t side2 = j.nodes2.size() + (j.incidence ? j.edges2.size() : 0);
  j.offset2 = side1;
  j.graph = ColoredGraph(side1 + side2);
  j.base.assign(side1 + side2, 0);

  auto add_side = [&](const WeightedHypergraph& h, const std::vector<NodeId>& nodes, bool first) {
    std::size_t k = 0;
    for (const auto& [e, w] : h.edges()) {
      const int b = bucket(w);
      if (j.incidence) {
        const std::size_t ev = first ? j.edge1(k) : j.edge2(k);
        j.base[ev] = 1 + b;
        for (const auto& v : e.nodes()) {
          const std::size_t i = index_in(nodes, v);
          j.graph.connect(first ? j.node1(i) : j.node2(i), ev, 0);
        }
      } else {
        const std::size_t a = index_in(nodes, e.nodes()[0]);
        const std::size_t c = index_in(nodes, e.nodes()[1]);
        j.graph.connect(first ? j.node1(a) : j.node2(a), first ? j.node1(c) : j.node2(c), b);
      }
      ++k;
    }
  };
  add_side(h1, j.nodes1, true);
  add_side(h2, j.nodes2, false);
  return j;
}

/// Initial coloring with anchors individualized. Anchor tags are appended to the
/// base color so anchored items share a color across sides and nothing else.
std::vector<int> anchored_colors(const JointGraph& j, const AnchorSet& anchors, std::vector<int> base) {
  std::vector<std::vector<int>> tags(base.size());
  int tag = 0;
  for (const auto& [a, b] : anchors.node_pairs) {
    tags[j.node1(index_in(j.nodes1, a))].push_back(tag);
    tags[j.node2(index_in(j.nodes2, b))].push_back(tag);
    ++tag;
  }
  for (const auto& [e1, e2] : anchors.edge_pairs) {
    const std::size_t k1 = index_in(j.edges1, e1), k2 = index_in(j.edges2, e2);
    if (j.incidence) {
      tags[j.edge1(k1)].push_back(tag);
      tags[j.edge2(k2)].push_back(tag);
    } else {
      for (const auto& v : e1.nodes()) tags[j.node1(index_in(j.nodes1, v))].push_back(tag);
      for (const auto& v : e2.nodes()) tags[j.node2(index_in(j.nodes2, v))].push_back(tag);
    }
    ++tag;
  }
  std::vector<std::pair<int, std::vector<int>>> keys(base.size());
  for (std::size_t v = 0; v < base.size(); ++v) {
    std::sort(tags[v].begin(), tags[v].end());
    keys[v] = {base[v], std::move(tags[v])};
  }
  return densify(keys);
}

/// False when plain refinement already separates the two sides, in which case no
/// anchor can be judged and the inputs are not isomorphic.
bool check_anchors(const JointGraph& j, const AnchorSet& anchors) {
  std::set<NodeId> seen1, seen2;
  for (const auto& [a, b] : anchors.node_pairs) {
    if (index_in(j.nodes1, a) == j.nodes1.size())
      throw Error(ErrorKind::InconsistentAnchors, "anchor node " + a.token() + " is not in the first hypergraph");
    if (index_in(j.nodes2, b) == j.nodes2.size())
      throw Error(ErrorKind::InconsistentAnchors, "anchor node " + b.token() + " is not in the second hypergraph");
    if (!seen1.insert(a).second || !seen2.insert(b).second)
      throw Error(ErrorKind::InconsistentAnchors, "anchor node " + a.token() + " or " + b.token() + " repeats");
  }
  std::set<Hyperedge> eseen1, eseen2;
  for (const auto& [e1, e2] : anchors.edge_pairs) {
    if (index_in(j.edges1, e1) == j.edges1.size())
      throw Error(ErrorKind::InconsistentAnchors, "anchor edge " + e1.key() + " is not in the first hypergraph");
    if (index_in(j.edges2, e2) == j.edges2.size())
      throw Error(ErrorKind::InconsistentAnchors, "anchor edge " + e2.key() + " is not in the second hypergraph");
    if (!eseen1.insert(e1).second || !eseen2.insert(e2).second)
      throw Error(ErrorKind::InconsistentAnchors, "anchor edge " + e1.key() + " or " + e2.key() + " repeats");
  }

  const auto plain = refine(j.graph, j.base);
  std::vector<long> balance(static_cast<std::size_t>(class_count(plain)), 0);
  for (std::size_t v = 0; v < plain.size(); ++v) balance[static_cast<std::size_t>(plain[v])] += j.is_side1(v) ? 1 : -1;
  if (std::any_of(balance.begin(), balance.end(), [](long b) { return b != 0; })) return false;

  for (const auto& [a, b] : anchors.node_pairs) {
    if (plain[j.node1(index_in(j.nodes1, a))] != plain[j.node2(index_in(j.nodes2, b))])
      throw Error(ErrorKind::InconsistentAnchors,
                  "anchor " + a.token() + " ~ " + b.token() + " pairs nodes with different refined colors");
  }
  for (const auto& [e1, e2] : anchors.edge_pairs) {
    bool same = false;
    if (j.incidence) {
      same = plain[j.edge1(index_in(j.edges1, e1))] == plain[j.edge2(index_in(j.edges2, e2))];
    } else {
      std::vector<int> c1, c2;
      for (const auto& v : e1.nodes()) c1.push_back(plain[j.node1(index_in(j.nodes1, v))]);
      for (const auto& v : e2.nodes()) c2.push_back(plain[j.node2(index_in(j.nodes2, v))]);
      std::sort(c1.begin(), c1.end());
      std::sort(c2.begin(), c2.end());
      same = c1 == c2;
    }
    if (!same)
      throw Error(ErrorKind::InconsistentAnchors,
                  "anchor " + e1.key() + " ~ " + e2.key() + " pairs edges with different refined colors");
  }
  return true;
}

struct IrSearch {
  const JointGraph& j;
  const WeightedHypergraph& h1;
  const WeightedHypergraph& h2;
  IrStats stats;

  /// Per color: (side-1 count, side-2 count). False when unbalanced.
  bool balanced(const std::vector<int>& colors, std::vector<std::pair<std::size_t, std::size_t>>& counts) const {
    counts.assign(static_cast<std::size_t>(class_count(colors)), {0, 0});
    for (std::size_t v = 0; v < colors.size(); ++v) {
      auto& c = counts[static_cast<std::size_t>(colors[v])];
      (j.is_side1(v) ? c.first : c.second)++;
    }
    return std::all_of(counts.begin(), counts.end(), [](const auto& c) { return c.first == c.second; });
  }

  std::optional<NodeRelabeling> leaf(const std::vector<int>& colors) const {
    std::map<int, std::size_t> side2_by_color;
    for (std::size_t i = 0; i < j.nodes2.size(); ++i) side2_by_color[colors[j.node2(i)]] = i;
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(j.nodes1.size());
    for (std::size_t i = 0; i < j.nodes1.size(); ++i)
      pairs.emplace_back(j.nodes1[i], j.nodes2[side2_by_color.at(colors[j.node1(i)])]);
    NodeRelabeling phi(pairs);
    if (!carries_onto(h1, h2, phi)) return std::nullopt;
    return phi;
  }

  std::optional<NodeRelabeling> search(std::vector<int> colors, std::size_t depth) {
    colors = refine(j.graph, std::move(colors), &stats.refinements);
    std::vector<std::pair<std::size_t, std::size_t>> counts;
    if (!balanced(colors, counts)) return std::nullopt;

    // Smallest non-singleton class, ties to the smaller color id.
    int target = -1;
    std::size_t best = 0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (counts[c].first > 1 && (target < 0 || counts[c].first < best)) {
        target = static_cast<int>(c);
        best = counts[c].first;
      }
    }
    if (target < 0) return leaf(colors);

    std::size_t pivot = 0;
    while (colors[pivot] != target) ++pivot;  // first side-1 vertex of the class
    const int fresh = class_count(colors);
    for (std::size_t w = j.offset2; w < colors.size(); ++w) {
      if (colors[w] != target) continue;
      if (depth == 0) ++stats.root_branches;
      auto next = colors;
      next[pivot] = fresh;
      next[w] = fresh;
      if (auto found = search(std::move(next), depth + 1)) return found;
      ++stats.backtracks;
    }
    return std::nullopt;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Formats

AnchorSet parse_anchors(std::string_view text) {
  AnchorSet out;
  std::size_t line_no = 0;
  for (auto line : detail::split_on(text, '\n')) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto tok = detail::split_ws(line);
    if (tok.size() != 3)
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 3 fields");
    try {
      if (tok[0] == "node") {
        out.node_pairs.emplace_back(NodeId(std::string(tok[1])), NodeId(std::string(tok[2])));
      } else if (tok[0] == "edge") {
        out.edge_pairs.emplace_back(Hyperedge::from_key(tok[1]), Hyperedge::from_key(tok[2]));
      } else {
        throw Error(ErrorKind::ParseError, "unknown anchor kind '" + std::string(tok[0]) + "'");
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ParseError && std::string_view(e.what()).find("line ") != std::string_view::npos)
        throw;
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string encode_anchors(const AnchorSet& anchors) {
  std::string out;
  for (const auto& [a, b] : anchors.node_pairs) out += "node " + a.token() + " " + b.token() + "\n";
  for (const auto& [a, b] : anchors.edge_pairs) out += "edge " + a.key() + " " + b.key() + "\n";
  return out;
}

std::string encode_alignment(const Alignment& a) {
  std::string out;
  for (const auto& [v1, v2] : a.mapping.pairs()) out += v1.token() + " " + v2.token() + "\n";
  out += "#cost " + format_double(a.cost) + "\n";
  return out;
}

NodeRelabeling parse_relabeling(std::string_view text) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::size_t line_no = 0;
  for (auto line : detail::split_on(text, '\n')) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto tok = detail::split_ws(line);
    if (tok.size() != 2)
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected '<v1> <v2>'");
    pairs.emplace_back(NodeId(std::string(tok[0])), NodeId(std::string(tok[1])));
  }
  return NodeRelabeling(pairs);
}

// ---------------------------------------------------------------------------
// Coloring and WL

std::size_t Coloring::class_count() const {
  std::set<int> ids;
  for (const auto& [v, c] : colors) ids.insert(c);
  return ids.size();
}

std::vector<std::vector<std::string>> Coloring::classes() const {
  std::map<int, std::vector<std::string>> by;
  for (const auto& [v, c] : colors) by[c].push_back(v);
  std::vector<std::vector<std::string>> out;
  for (auto& [c, vs] : by) out.push_back(std::move(vs));
  return out;
}

Coloring uniform_coloring(const SimpleGraph& g) {
  Coloring c;
  for (const auto& v : g.vertices()) c.colors.emplace(v, 0);
  return c;
}

Coloring wl_refine(const SimpleGraph& g, const Coloring& initial) {
  const std::vector<std::string> vertices(g.vertices().begin(), g.vertices().end());
  auto index = [&](const std::string& v) {
    return static_cast<std::size_t>(std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin());
  };
  ColoredGraph cg(vertices.size());
  for (const auto& [a, b] : g.edges()) cg.connect(index(a), index(b), 0);
  std::vector<int> colors(vertices.size(), 0);
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    auto it = initial.colors.find(vertices[v]);
    if (it == initial.colors.end())
      throw Error(ErrorKind::InvalidArgument, "initial coloring misses vertex " + vertices[v]);
    colors[v] = it->second;
  }
  const auto stable = refine(cg, std::move(colors));
  Coloring out;
  for (std::size_t v = 0; v < vertices.size(); ++v) out.colors.emplace(vertices[v], stable[v]);
  return out;
}

// ---------------------------------------------------------------------------
// Alignment

Alignment align_exact(const WeightedHypergraph& h1, const WeightedHypergraph& h2, std::size_t max_nodes) {
  const auto v1 = sorted_nodes(h1);
  const auto v2 = sorted_nodes(h2);
  require_same_size(v1.size(), v2.size());
  if (v1.size() > max_nodes)
    throw Error(ErrorKind::TooLarge, std::to_string(v1.size()) + " nodes exceed the exhaustive cap of " +
                                         std::to_string(max_nodes));

  using IndexEdge = std::vector<std::size_t>;
  auto indexed = [](const WeightedHypergraph& h, const std::vector<NodeId>& nodes) {
    std::vector<std::pair<IndexEdge, double>> out;
    for (const auto& [e, w] : h.edges()) {
      IndexEdge ie;
      for (const auto& v : e.nodes()) ie.push_back(index_in(nodes, v));
      out.emplace_back(std::move(ie), w);
    }
    return out;
  };
  const auto e1 = indexed(h1, v1);
  auto e2 = indexed(h2, v2);
  std::sort(e2.begin(), e2.end());

  std::vector<std::size_t> perm(v1.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> best_perm = perm;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<IndexEdge, double>> mapped(e1.size());
  do {
    for (std::size_t k = 0; k < e1.size(); ++k) {
      auto& [ie, w] = mapped[k];
      ie.clear();
      for (std::size_t x : e1[k].first) ie.push_back(perm[x]);
      std::sort(ie.begin(), ie.end());
      w = e1[k].second;
    }
    std::sort(mapped.begin(), mapped.end());
    double cost = 0.0;
    std::size_t a = 0, b = 0;
    while (a < mapped.size() || b < e2.size()) {
      if (b == e2.size() || (a < mapped.size() && mapped[a].first < e2[b].first)) {
        cost += mapped[a++].second;
      } else if (a == mapped.size() || e2[b].first < mapped[a].first) {
        cost += e2[b++].second;
      } else {
        cost += std::abs(mapped[a++].second - e2[b++].second);
      }
    }
    if (cost < best - WeightedHypergraph::kEqualityTolerance) {
      best = cost;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (std::size_t i = 0; i < v1.size(); ++i) pairs.emplace_back(v1[i], v2[best_perm[i]]);
  Alignment out{NodeRelabeling(pairs), 0.0};
  out.cost = dissimilarity(relabel(h1, out.mapping), h2);
  return out;
}

Alignment align_by_hyperedge_ids(const WeightedHypergraph& h1, const WeightedHypergraph& h2,
                                 const std::vector<std::pair<Hyperedge, Hyperedge>>& edge_pairs) {
  const auto v1 = sorted_nodes(h1);
  const auto v2 = sorted_nodes(h2);
  require_same_size(v1.size(), v2.size());
  if (edge_pairs.size() != h1.edge_count() || edge_pairs.size() != h2.edge_count())
    throw Error(ErrorKind::NotABijection, "edge correspondence must cover every hyperedge of both sides");

  std::vector<std::vector<std::size_t>> label1(v1.size()), label2(v2.size());
  std::set<Hyperedge> seen1, seen2;
  for (std::size_t k = 0; k < edge_pairs.size(); ++k) {
    const auto& [a, b] = edge_pairs[k];
    if (!h1.contains(a)) throw Error(ErrorKind::NotABijection, "edge " + a.key() + " is not in the first hypergraph");
    if (!h2.contains(b)) throw Error(ErrorKind::NotABijection, "edge " + b.key() + " is not in the second hypergraph");
    if (!seen1.insert(a).second || !seen2.insert(b).second)
      throw Error(ErrorKind::NotABijection, "edge " + a.key() + " or " + b.key() + " is paired twice");
    for (const auto& v : a.nodes()) label1[index_in(v1, v)].push_back(k + 1);
    for (const auto& v : b.nodes()) label2[index_in(v2, v)].push_back(k + 1);
  }

  auto order = [](std::vector<std::vector<std::size_t>>& labels, const std::vector<NodeId>& nodes) {
    for (auto& l : labels) std::sort(l.rbegin(), l.rend());
    std::vector<std::size_t> idx(labels.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return labels[x] < labels[y]; });
    std::string ambiguous;
    for (std::size_t p = 0; p < idx.size();) {
      std::size_t q = p + 1;
      while (q < idx.size() && labels[idx[q]] == labels[idx[p]]) ++q;
      if (q - p > 1) {
        ambiguous += ambiguous.empty() ? "{" : " {";
        for (std::size_t r = p; r < q; ++r) ambiguous += (r == p ? "" : ",") + nodes[idx[r]].token();
        ambiguous += "}";
      }
      p = q;
    }
    if (!ambiguous.empty())
      throw Error(ErrorKind::AmbiguousLabels, "nodes share identifier tuples: " + ambiguous);
    return idx;
  };
  const auto o1 = order(label1, v1);
  const auto o2 = order(label2, v2);

  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (std::size_t p = 0; p < o1.size(); ++p) pairs.emplace_back(v1[o1[p]], v2[o2[p]]);
  NodeRelabeling phi(pairs);
  for (const auto& [a, b] : edge_pairs)
    if (phi.apply(a) != b)
      throw Error(ErrorKind::NotAnIsomorphism, "induced map sends " + a.key() + " to " + phi.apply(a).key() +
                                                   " instead of " + b.key());
  Alignment out{std::move(phi), 0.0};
  out.cost = dissimilarity(relabel(h1, out.mapping), h2);
  return out;
}

IrResult align_wl_anchored(const WeightedHypergraph& h1, const WeightedHypergraph& h2, const AnchorSet& anchors) {
  const JointGraph j = build_joint(h1, h2);
  require_same_size(j.nodes1.size(), j.nodes2.size());
  IrResult result;
  if (!check_anchors(j, anchors) || h1.edge_count() != h2.edge_count()) return result;

  IrSearch search{j, h1, h2, {}};
  auto start = anchored_colors(j, anchors, j.base);
  {
    const auto refined = refine(j.graph, start);
    search.stats.discrete_after_anchors = class_count(refined) == static_cast<int>(refined.size() / 2) &&
                                          refined.size() == 2 * j.side1_size();
  }
  if (auto phi = search.search(std::move(start), 0)) {
    Alignment a{*std::move(phi), 0.0};
    a.cost = dissimilarity(relabel(h1, a.mapping), h2);
    result.alignment = std::move(a);
  }
  result.stats = search.stats;
  return result;
}

Dataset fuse_datasets(const Dataset& d1, const Dataset& d2, const NodeRelabeling& phi_star) {
  Dataset out;
  out.samples.reserve(d1.size() + d2.size());
  for (const auto& e : d1.samples) out.samples.push_back(phi_star.apply(e));
  out.samples.insert(out.samples.end(), d2.samples.begin(), d2.samples.end());
  return out;
}

}  // namespace hgr
