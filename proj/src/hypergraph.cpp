#include "hgr/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>

#include "hgr/error.hpp"
#include "text_util.hpp"

namespace hgr {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyHypergraph: return "EmptyHypergraph";
    case ErrorKind::NotABijection: return "NotABijection";
    case ErrorKind::IncompleteMapping: return "IncompleteMapping";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::InvalidWeight: return "InvalidWeight";
    case ErrorKind::InvalidSize: return "InvalidSize";
    case ErrorKind::InvalidWeights: return "InvalidWeights";
    case ErrorKind::CannotBeConnected: return "CannotBeConnected";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Unseen: return "Unseen";
    case ErrorKind::UndefinedRatio: return "UndefinedRatio";
    case ErrorKind::NotShared: return "NotShared";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::NothingRecovered: return "NothingRecovered";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::AmbiguousLabels: return "AmbiguousLabels";
    case ErrorKind::NotAnIsomorphism: return "NotAnIsomorphism";
    case ErrorKind::NoIsomorphism: return "NoIsomorphism";
    case ErrorKind::InconsistentAnchors: return "InconsistentAnchors";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::InvalidForLogFit: return "InvalidForLogFit";
    case ErrorKind::UnknownEntity: return "UnknownEntity";
    case ErrorKind::EmptyEntities: return "EmptyEntities";
    case ErrorKind::UndefinedScore: return "UndefinedScore";
    case ErrorKind::AuthError: return "AuthError";
    case ErrorKind::HttpError: return "HttpError";
    case ErrorKind::NetworkError: return "NetworkError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// NodeId / Hyperedge

NodeId::NodeId(std::string token) : token_(std::move(token)) {
  if (token_.empty()) throw Error(ErrorKind::InvalidArgument, "empty node token");
  for (char c : token_) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f')
      throw Error(ErrorKind::InvalidArgument, "node token contains whitespace: '" + token_ + "'");
  }
}

Hyperedge::Hyperedge(std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  if (nodes_.size() < 2)
    throw Error(ErrorKind::InvalidSize, "a hyperedge needs at least two distinct nodes");
}

bool Hyperedge::contains(const NodeId& v) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), v);
}

std::string Hyperedge::key() const {
  std::string out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i) out += '+';
    out += nodes_[i].token();
  }
  return out;
}

Hyperedge Hyperedge::from_key(std::string_view key) {
  std::vector<NodeId> nodes;
  for (auto part : detail::split_on(key, '+')) {
    if (part.empty()) throw Error(ErrorKind::ParseError, "empty token in edge key '" + std::string(key) + "'");
    nodes.emplace_back(std::string(part));
  }
  return Hyperedge(std::move(nodes));
}

// ---------------------------------------------------------------------------
// NodeRelabeling

NodeRelabeling::NodeRelabeling(const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::map<NodeId, NodeId> backward;
  for (const auto& [from, to] : pairs) {
    auto [it, inserted] = forward_.emplace(from, to);
    if (!inserted && it->second != to)
      throw Error(ErrorKind::NotABijection, "node " + from.token() + " mapped twice");
    auto [bit, binserted] = backward.emplace(to, from);
    if (!binserted && bit->second != from)
      throw Error(ErrorKind::NotABijection,
                  "nodes " + bit->second.token() + " and " + from.token() + " both map to " + to.token());
  }
}

NodeRelabeling NodeRelabeling::identity(const std::set<NodeId>& nodes) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(nodes.size());
  for (const auto& v : nodes) pairs.emplace_back(v, v);
  return NodeRelabeling(pairs);
}

const NodeId& NodeRelabeling::apply(const NodeId& v) const {
  auto it = forward_.find(v);
  if (it == forward_.end()) throw Error(ErrorKind::IncompleteMapping, "no image for node " + v.token());
  return it->second;
}

Hyperedge NodeRelabeling::apply(const Hyperedge& e) const {
  std::vector<NodeId> mapped;
  mapped.reserve(e.size());
  for (const auto& v : e.nodes()) mapped.push_back(apply(v));
  return Hyperedge(std::move(mapped));
}

NodeRelabeling NodeRelabeling::inverse() const {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(forward_.size());
  for (const auto& [a, b] : forward_) pairs.emplace_back(b, a);
  return NodeRelabeling(pairs);
}

NodeRelabeling NodeRelabeling::compose(const NodeRelabeling& after) const {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(forward_.size());
  for (const auto& [a, b] : forward_) pairs.emplace_back(a, after.apply(b));
  return NodeRelabeling(pairs);
}

// ---------------------------------------------------------------------------
// SimpleGraph

void SimpleGraph::add_vertex(const std::string& v) { vertices_.insert(v); }

void SimpleGraph::add_edge(const std::string& a, const std::string& b) {
  if (a == b) throw Error(ErrorKind::InvalidArgument, "self-loop on " + a);
  vertices_.insert(a);
  vertices_.insert(b);
  edges_.insert(a < b ? Edge{a, b} : Edge{b, a});
}

bool SimpleGraph::has_edge(const std::string& a, const std::string& b) const {
  return edges_.count(a < b ? Edge{a, b} : Edge{b, a}) != 0;
}

std::size_t SimpleGraph::degree(const std::string& v) const {
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) {
    return e.first == v || e.second == v;
  }));
}

// ---------------------------------------------------------------------------
// WeightedHypergraph

WeightedHypergraph::WeightedHypergraph(const std::vector<std::pair<Hyperedge, double>>& edges,
                                       bool normalized) {
  for (const auto& [e, w] : edges) {
    if (!edges_.emplace(e, w).second) throw Error(ErrorKind::DuplicateEdge, "edge " + e.key() + " repeated");
  }
  validate(normalized);
}

WeightedHypergraph::WeightedHypergraph(std::map<Hyperedge, double> edges, bool normalized)
    : edges_(std::move(edges)) {
  validate(normalized);
}

void WeightedHypergraph::validate(bool normalized) {
  for (const auto& [e, w] : edges_) {
    if (!(w > 0.0) || !std::isfinite(w))
      throw Error(ErrorKind::InvalidWeight, "edge " + e.key() + " has weight " + format_double(w));
  }
  if (normalized) {
    if (std::abs(total_weight() - 1.0) > kNormalizationTolerance)
      throw Error(ErrorKind::NotNormalized, "weights sum to " + format_double(total_weight()));
  }
  normalized_ = normalized;
}

std::set<NodeId> WeightedHypergraph::nodes() const {
  std::set<NodeId> out;
  for (const auto& [e, w] : edges_) out.insert(e.nodes().begin(), e.nodes().end());
  return out;
}

double WeightedHypergraph::weight(const Hyperedge& e) const {
  auto it = edges_.find(e);
  return it == edges_.end() ? 0.0 : it->second;
}

double WeightedHypergraph::min_weight() const {
  if (edges_.empty()) throw Error(ErrorKind::EmptyHypergraph, "no edges");
  double lo = edges_.begin()->second;
  for (const auto& [e, w] : edges_) lo = std::min(lo, w);
  return lo;
}

double WeightedHypergraph::max_weight() const {
  if (edges_.empty()) throw Error(ErrorKind::EmptyHypergraph, "no edges");
  double hi = edges_.begin()->second;
  for (const auto& [e, w] : edges_) hi = std::max(hi, w);
  return hi;
}

double WeightedHypergraph::range_ratio() const {
  if (edges_.empty()) return 1.0;
  return max_weight() / min_weight();
}

double WeightedHypergraph::total_weight() const {
  double s = 0.0;
  for (const auto& [e, w] : edges_) s += w;
  return s;
}

bool operator==(const WeightedHypergraph& a, const WeightedHypergraph& b) {
  if (a.edges_.size() != b.edges_.size()) return false;
  auto ia = a.edges_.begin();
  auto ib = b.edges_.begin();
  for (; ia != a.edges_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (std::abs(ia->second - ib->second) > WeightedHypergraph::kEqualityTolerance) return false;
  }
  return true;
}

WeightedHypergraph normalize(const WeightedHypergraph& h) {
  if (h.empty()) throw Error(ErrorKind::EmptyHypergraph, "cannot normalize a hypergraph without edges");
  if (h.normalized()) return h;
  const double total = h.total_weight();
  std::map<Hyperedge, double> scaled;
  for (const auto& [e, w] : h.edges()) scaled.emplace_hint(scaled.end(), e, w / total);
  return WeightedHypergraph(std::move(scaled), true);
}

double dissimilarity(const WeightedHypergraph& h1, const WeightedHypergraph& h2) {
  // Merge walk over the two sorted edge maps.
  double d = 0.0;
  auto a = h1.edges().begin(), ae = h1.edges().end();
  auto b = h2.edges().begin(), be = h2.edges().end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      d += a->second;
      ++a;
    } else if (a == ae || b->first < a->first) {
      d += b->second;
      ++b;
    } else {
      d += std::abs(a->second - b->second);
      ++a;
      ++b;
    }
  }
  return d;
}

WeightedHypergraph relabel(const WeightedHypergraph& h, const NodeRelabeling& phi) {
  std::map<Hyperedge, double> mapped;
  for (const auto& [e, w] : h.edges()) mapped.emplace(phi.apply(e), w);
  // A bijection cannot merge edges, so the map keeps every edge.
  return WeightedHypergraph(std::move(mapped), h.normalized());
}

SimpleGraph line_graph(const WeightedHypergraph& h) {
  SimpleGraph g;
  std::vector<std::string> keys;
  std::map<NodeId, std::vector<std::size_t>> incidence;
  for (const auto& [e, w] : h.edges()) {
    keys.push_back(e.key());
    g.add_vertex(keys.back());
    for (const auto& v : e.nodes()) incidence[v].push_back(keys.size() - 1);
  }
  for (const auto& [v, list] : incidence) {
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j) g.add_edge(keys[list[i]], keys[list[j]]);
  }
  return g;
}

SketchDiff sketch_diff(const WeightedHypergraph& h1, const WeightedHypergraph& h2) {
  SketchDiff out;
  for (const auto& [e, w] : h1.edges())
    if (!h2.contains(e)) out.missing.insert(e);
  for (const auto& [e, w] : h2.edges())
    if (!h1.contains(e)) out.spurious.insert(e);
  return out;
}

// ---------------------------------------------------------------------------
// .hg format

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string encode(const WeightedHypergraph& h) {
  std::string out = "#hg v1\n";
  if (h.normalized()) out += "#normalized\n";
  for (const auto& [e, w] : h.edges()) {
    out += "edge";
    for (const auto& v : e.nodes()) {
      out += ' ';
      out += v.token();
    }
    out += ' ';
    out += format_double(w);
    out += '\n';
  }
  return out;
}

WeightedHypergraph decode(std::string_view text) {
  auto lines = detail::split_on(text, '\n');
  auto fail = [](std::size_t line_no, const std::string& what) -> Error {
    return Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + what);
  };
  if (lines.empty() || detail::trim(lines[0]) != "#hg v1") throw fail(1, "expected header '#hg v1'");

  bool normalized = false;
  std::map<Hyperedge, double> edges;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto line = detail::trim(lines[i]);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line == "#normalized") normalized = true;
      continue;
    }
    auto tokens = detail::split_ws(line);
    if (tokens.front() != "edge") throw fail(line_no, "unknown record '" + std::string(tokens.front()) + "'");
    if (tokens.size() < 4) throw fail(line_no, "an edge needs at least two nodes and a weight");
    double w = 0.0;
    if (!detail::parse_double(tokens.back(), w))
      throw fail(line_no, "bad weight '" + std::string(tokens.back()) + "'");
    std::vector<NodeId> nodes;
    for (std::size_t t = 1; t + 1 < tokens.size(); ++t) nodes.emplace_back(std::string(tokens[t]));
    Hyperedge e;
    try {
      e = Hyperedge(std::move(nodes));
    } catch (const Error& err) {
      throw fail(line_no, err.what());
    }
    if (!(w > 0.0) || !std::isfinite(w))
      throw Error(ErrorKind::InvalidWeight, "line " + std::to_string(line_no) + ": weight must be positive");
    if (!edges.emplace(e, w).second)
      throw Error(ErrorKind::DuplicateEdge, "line " + std::to_string(line_no) + ": edge " + e.key() + " repeated");
  }
  return WeightedHypergraph(std::move(edges), normalized);
}

WeightedHypergraph read_hypergraph(const std::string& path) { return decode(detail::read_file(path)); }

void write_hypergraph(const std::string& path, const WeightedHypergraph& h) {
  detail::write_file(path, encode(h));
}

}  // namespace hgr
