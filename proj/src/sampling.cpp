#include "hgr/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "hgr/error.hpp"
#include "hgr/rng.hpp"
#include "text_util.hpp"

namespace hgr {

// ---------------------------------------------------------------------------
// MaskedHyperedge

MaskedHyperedge::MaskedHyperedge(std::vector<NodeId> visible_nodes, std::uint32_t masked)
    : visible(std::move(visible_nodes)), masked_count(masked) {
  std::sort(visible.begin(), visible.end());
  if (std::adjacent_find(visible.begin(), visible.end()) != visible.end())
    throw Error(ErrorKind::InvalidArgument, "masked form repeats a visible node");
  if (masked_count < 1) throw Error(ErrorKind::InvalidArgument, "masked form must mask at least one slot");
}

std::string MaskedHyperedge::key() const {
  std::string out;
  for (std::size_t i = 0; i < visible.size(); ++i) {
    if (i) out += '+';
    out += visible[i].token();
  }
  out += '|';
  out += std::to_string(masked_count);
  return out;
}

MaskedHyperedge MaskedHyperedge::from_key(std::string_view key) {
  const auto bar = key.rfind('|');
  if (bar == std::string_view::npos) throw Error(ErrorKind::ParseError, "masked key without '|': " + std::string(key));
  unsigned long long count = 0;
  if (!detail::parse_u64(key.substr(bar + 1), count) || count < 1 ||
      count > std::numeric_limits<std::uint32_t>::max())
    throw Error(ErrorKind::ParseError, "bad masked count in key " + std::string(key));
  std::vector<NodeId> visible;
  auto head = key.substr(0, bar);
  if (!head.empty()) {
    for (auto part : detail::split_on(head, '+')) {
      if (part.empty()) throw Error(ErrorKind::ParseError, "empty token in masked key " + std::string(key));
      visible.emplace_back(std::string(part));
    }
  }
  return MaskedHyperedge(std::move(visible), static_cast<std::uint32_t>(count));
}

bool MaskedHyperedge::completed_by(const Hyperedge& e) const {
  if (e.size() != visible.size() + masked_count) return false;
  return std::includes(e.nodes().begin(), e.nodes().end(), visible.begin(), visible.end());
}

// ---------------------------------------------------------------------------
// Strategies

double MaskingStrategy::probability(const MaskedHyperedge& m, const Hyperedge& e) const {
  for (const auto& [form, p] : support(e))
    if (form == m) return p;
  return 0.0;
}

MaskSupport UniformSingleMask::support(const Hyperedge& e) const {
  MaskSupport out;
  out.reserve(e.size());
  const double p = 1.0 / static_cast<double>(e.size());
  for (std::size_t skip = 0; skip < e.size(); ++skip) {
    std::vector<NodeId> visible;
    visible.reserve(e.size() - 1);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != skip) visible.push_back(e.nodes()[i]);
    out.emplace_back(MaskedHyperedge(std::move(visible), 1), p);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

double UniformSingleMask::probability(const MaskedHyperedge& m, const Hyperedge& e) const {
  if (m.masked_count != 1 || !m.completed_by(e)) return 0.0;
  return 1.0 / static_cast<double>(e.size());
}

std::shared_ptr<const MaskingStrategy> uniform_single_mask() {
  static const auto instance = std::make_shared<const UniformSingleMask>();
  return instance;
}

std::shared_ptr<const MaskingStrategy> masking_strategy(std::string_view name) {
  if (name == "uniform1" || name == "uniform_single") return uniform_single_mask();
  throw Error(ErrorKind::InvalidArgument, "unknown masking strategy '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Datasets

std::map<Hyperedge, std::uint64_t> Dataset::counts() const {
  std::map<Hyperedge, std::uint64_t> out;
  for (const auto& e : samples) ++out[e];
  return out;
}

Dataset MMDataset::outer_samples() const {
  Dataset d;
  d.samples.reserve(n_outer);
  for (std::size_t t = 0; t < n_outer; ++t) d.samples.push_back(records[t * k_inner].full);
  return d;
}

namespace {

void require_normalized(const WeightedHypergraph& h) {
  if (h.empty()) throw Error(ErrorKind::EmptyHypergraph, "cannot sample from an empty hypergraph");
  if (!h.normalized()) throw Error(ErrorKind::NotNormalized, "sampling requires a normalized hypergraph");
}

struct EdgeTable {
  std::vector<Hyperedge> edges;
  std::vector<double> weights;
};

EdgeTable edge_table(const WeightedHypergraph& h) {
  EdgeTable t;
  for (const auto& [e, w] : h.edges()) {
    t.edges.push_back(e);
    t.weights.push_back(w);
  }
  return t;
}

const MaskedHyperedge& draw_form(const MaskSupport& support, Rng& rng) {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (const auto& [form, p] : support) {
    acc += p;
    if (u < acc) return form;
  }
  return support.back().first;
}

}  // namespace

Dataset sample_dataset(const WeightedHypergraph& h, std::size_t n_samples, std::uint64_t seed) {
  require_normalized(h);
  if (n_samples < 1) throw Error(ErrorKind::InvalidArgument, "n_samples must be at least 1");
  const auto table = edge_table(h);
  const AliasTable alias(table.weights);
  Rng rng(seed, "dataset");
  Dataset d;
  d.samples.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) d.samples.push_back(table.edges[alias.sample(rng)]);
  return d;
}

MMDataset sample_mm_dataset(const WeightedHypergraph& h, std::size_t n_outer, std::size_t k_inner,
                            const MaskingStrategy& strategy, std::uint64_t seed) {
  require_normalized(h);
  if (n_outer < 1 || k_inner < 1) throw Error(ErrorKind::InvalidArgument, "n_outer and k_inner must be at least 1");
  const auto table = edge_table(h);
  std::vector<MaskSupport> supports;
  supports.reserve(table.edges.size());
  for (const auto& e : table.edges) supports.push_back(strategy.support(e));

  const AliasTable alias(table.weights);
  Rng outer(seed, "mm-outer");
  Rng masks(seed, "mm-mask");
  MMDataset d;
  d.n_outer = n_outer;
  d.k_inner = k_inner;
  d.records.reserve(n_outer * k_inner);
  for (std::size_t t = 0; t < n_outer; ++t) {
    const std::size_t idx = alias.sample(outer);
    for (std::size_t k = 0; k < k_inner; ++k)
      d.records.push_back(MMRecord{table.edges[idx], draw_form(supports[idx], masks)});
  }
  return d;
}

namespace {
std::string tokens_line(const std::vector<NodeId>& nodes) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += ' ';
    out += nodes[i].token();
  }
  return out;
}

Hyperedge parse_sample(std::string_view line, std::size_t line_no) {
  std::vector<NodeId> nodes;
  for (auto tok : detail::split_ws(line)) nodes.emplace_back(std::string(tok));
  try {
    return Hyperedge(std::move(nodes));
  } catch (const Error& err) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + err.what());
  }
}
}  // namespace

std::string encode_dataset(const Dataset& d) {
  std::string out;
  for (const auto& e : d.samples) {
    out += tokens_line(e.nodes());
    out += '\n';
  }
  return out;
}

Dataset decode_dataset(std::string_view text) {
  Dataset d;
  auto lines = detail::split_on(text, '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto line = detail::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    d.samples.push_back(parse_sample(line, i + 1));
  }
  return d;
}

std::string encode_mm_dataset(const MMDataset& d) {
  std::string out = "#mm " + std::to_string(d.n_outer) + " " + std::to_string(d.k_inner) + "\n";
  for (const auto& r : d.records) {
    out += tokens_line(r.full.nodes());
    out += '\t';
    out += tokens_line(r.masked.visible);
    for (std::uint32_t i = 0; i < r.masked.masked_count; ++i) out += r.masked.visible.empty() && i == 0 ? "_" : " _";
    out += '\n';
  }
  return out;
}

MMDataset decode_mm_dataset(std::string_view text) {
  MMDataset d;
  bool have_header = false;
  auto lines = detail::split_on(text, '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto line = detail::trim(lines[i]);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto tokens = detail::split_ws(line);
      if (tokens.size() == 3 && tokens[0] == "#mm") {
        unsigned long long n = 0, k = 0;
        if (!detail::parse_u64(tokens[1], n) || !detail::parse_u64(tokens[2], k))
          throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": bad #mm header");
        d.n_outer = n;
        d.k_inner = k;
        have_header = true;
      }
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected a tab between full and masked");
    MMRecord rec{parse_sample(line.substr(0, tab), line_no), {}};
    std::vector<NodeId> visible;
    std::uint32_t masked = 0;
    for (auto tok : detail::split_ws(line.substr(tab + 1))) {
      if (tok == "_")
        ++masked;
      else
        visible.emplace_back(std::string(tok));
    }
    if (masked == 0) throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": no masked slot");
    rec.masked = MaskedHyperedge(std::move(visible), masked);
    if (!rec.masked.completed_by(rec.full))
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": masked form does not match its sample");
    d.records.push_back(std::move(rec));
  }
  if (!have_header) {
    d.n_outer = d.records.size();
    d.k_inner = 1;
  } else if (d.n_outer * d.k_inner != d.records.size()) {
    throw Error(ErrorKind::ParseError, "#mm header promises " + std::to_string(d.n_outer * d.k_inner) +
                                           " records, found " + std::to_string(d.records.size()));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Meta-graph

const std::vector<MaskedHyperedge>& MetaGraph::shared_forms(std::size_t i, std::size_t j) const {
  static const std::vector<MaskedHyperedge> none;
  auto it = shared_.find(i < j ? std::pair{i, j} : std::pair{j, i});
  return it == shared_.end() ? none : it->second;
}

bool MetaGraph::adjacent(std::size_t i, std::size_t j) const {
  return shared_.count(i < j ? std::pair{i, j} : std::pair{j, i}) != 0;
}

std::size_t MetaGraph::index_of(const Hyperedge& e) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), e);
  if (it == vertices_.end() || *it != e) throw Error(ErrorKind::InvalidArgument, "edge " + e.key() + " not in meta-graph");
  return static_cast<std::size_t>(it - vertices_.begin());
}

MetaGraph build_meta_graph(const WeightedHypergraph& h, const MaskingStrategy& strategy) {
  MetaGraph mg;
  std::map<MaskedHyperedge, std::vector<std::size_t>> by_form;
  for (const auto& [e, w] : h.edges()) {
    const std::size_t idx = mg.vertices_.size();
    mg.vertices_.push_back(e);
    for (const auto& [form, p] : strategy.support(e))
      if (p > 0.0) by_form[form].push_back(idx);
  }
  // Forms are visited in ascending order, so each shared list comes out sorted.
  for (const auto& [form, members] : by_form)
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) mg.shared_[{members[a], members[b]}].push_back(form);

  mg.adjacency_.assign(mg.vertices_.size(), {});
  for (const auto& [pair, forms] : mg.shared_) {
    mg.adjacency_[pair.first].push_back(pair.second);
    mg.adjacency_[pair.second].push_back(pair.first);
  }
  for (auto& list : mg.adjacency_) std::sort(list.begin(), list.end());
  return mg;
}

PathLengthBound mm_path_length_bound(const MetaGraph& mg) {
  const std::size_t n = mg.vertices().size();
  if (n == 0) throw Error(ErrorKind::EmptyHypergraph, "meta-graph has no vertices");
  std::size_t diameter = 0;
  std::vector<std::size_t> dist(n);
  constexpr auto kUnreached = std::numeric_limits<std::size_t>::max();
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnreached);
    std::deque<std::size_t> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : mg.neighbors(u)) {
        if (dist[v] == kUnreached) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (std::size_t d : dist) {
      if (d == kUnreached) return PathLengthBound{0, false};
      diameter = std::max(diameter, d);
    }
  }
  return PathLengthBound{diameter + 1, true};
}

StrategyConstants strategy_constants(const WeightedHypergraph& h, const MaskingStrategy& strategy) {
  StrategyConstants out{1.0, 0};
  for (const auto& [e, w] : h.edges()) {
    const auto support = strategy.support(e);
    out.C_pi = std::max(out.C_pi, support.size());
    for (const auto& [form, p] : support) out.c_pi = std::min(out.c_pi, p);
  }
  return out;
}

}  // namespace hgr
