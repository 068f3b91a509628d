#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <random>

#include "hgr/alignment.hpp"
#include "hgr/generators.hpp"
#include "hgr/recovery.hpp"
#include "support.hpp"

using namespace hgr;
using namespace hgr::testing;

namespace {

NodeRelabeling random_bijection(const std::set<NodeId>& nodes, std::uint64_t seed, const std::string& prefix = "") {
  std::vector<NodeId> src(nodes.begin(), nodes.end()), dst;
  for (const auto& v : src) dst.emplace_back(prefix + v.token());
  std::mt19937_64 gen(seed);
  std::shuffle(dst.begin(), dst.end(), gen);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (std::size_t i = 0; i < src.size(); ++i) pairs.emplace_back(src[i], dst[i]);
  return NodeRelabeling(pairs);
}

std::string mapped_key(const Hyperedge& e, const std::map<std::string, std::string>& phi) {
  std::vector<std::string> names;
  for (const auto& v : e.nodes()) names.push_back(phi.at(v.token()));
  std::sort(names.begin(), names.end());
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : "+") + n;
  return out;
}

// Minimum dissimilarity over all bijections, computed on string keys.
double brute_force_cost(const WeightedHypergraph& h1, const WeightedHypergraph& h2) {
  std::vector<std::string> v1, v2;
  for (const auto& v : h1.nodes()) v1.push_back(v.token());
  for (const auto& v : h2.nodes()) v2.push_back(v.token());
  std::sort(v2.begin(), v2.end());
  double best = 1e300;
  do {
    std::map<std::string, std::string> phi;
    for (std::size_t i = 0; i < v1.size(); ++i) phi[v1[i]] = v2[i];
    std::map<std::string, double> diff;
    for (const auto& [e, w] : h1.edges()) diff[mapped_key(e, phi)] += w;
    for (const auto& [e, w] : h2.edges()) diff[e.key()] -= w;
    double sum = 0;
    for (const auto& [k, x] : diff) sum += std::abs(x);
    best = std::min(best, sum);
  } while (std::next_permutation(v2.begin(), v2.end()));
  return best;
}

bool verified(const WeightedHypergraph& h1, const WeightedHypergraph& h2, const NodeRelabeling& phi) {
  auto mapped = relabel(h1, phi);
  if (mapped.edge_count() != h2.edge_count()) return false;
  for (const auto& [e, w] : mapped.edges())
    if (!h2.contains(e) || std::abs(h2.weight(e) - w) > 1e-9) return false;
  return true;
}

std::vector<std::pair<Hyperedge, Hyperedge>> true_edge_pairs(const WeightedHypergraph& h, const NodeRelabeling& phi) {
  std::vector<std::pair<Hyperedge, Hyperedge>> out;
  for (const auto& [e, w] : h.edges()) out.emplace_back(e, phi.apply(e));
  return out;
}

SimpleGraph simple(const WeightedHypergraph& h) {
  SimpleGraph g;
  for (const auto& [e, w] : h.edges()) g.add_edge(e.nodes()[0].token(), e.nodes()[1].token());
  return g;
}

std::set<std::set<std::string>> partition(const Coloring& c) {
  std::set<std::set<std::string>> out;
  for (const auto& cls : c.classes()) out.insert(std::set<std::string>(cls.begin(), cls.end()));
  return out;
}

NodeId nid(const char* s) { return NodeId(s); }

}  // namespace

TEST_CASE("align by hyperedge ids: spec examples") {
  auto h1 = hg({{{"p", "q"}, 1}, {{"q", "r"}, 1}});
  auto h2 = hg({{{"x", "y"}, 1}, {{"y", "z"}, 1}});
  auto a = align_by_hyperedge_ids(h1, h2, {{he({"p", "q"}), he({"x", "y"})}, {he({"q", "r"}), he({"y", "z"})}});
  CHECK(a.mapping.apply(nid("p")) == nid("x"));
  CHECK(a.mapping.apply(nid("q")) == nid("y"));
  CHECK(a.mapping.apply(nid("r")) == nid("z"));
  CHECK(a.cost == 0.0);

  auto s1 = star(6);
  auto phi = random_bijection(s1.nodes(), 3, "s");
  auto s2 = relabel(s1, phi);
  auto sa = align_by_hyperedge_ids(s1, s2, true_edge_pairs(s1, phi));
  CHECK(sa.mapping == phi);

  auto t1 = hg({{{"a", "b"}, 1}, {{"b", "c"}, 1}, {{"a", "c"}, 1}});
  auto tphi = NodeRelabeling({{nid("a"), nid("z")}, {nid("b"), nid("x")}, {nid("c"), nid("y")}});
  auto ta = align_by_hyperedge_ids(t1, relabel(t1, tphi), true_edge_pairs(t1, tphi));
  CHECK(ta.mapping == tphi);
}

TEST_CASE("align by hyperedge ids: errors") {
  auto two = hg({{{"a", "b"}, 1}, {{"c", "d"}, 1}});
  const std::vector<std::pair<Hyperedge, Hyperedge>> same{{he({"a", "b"}), he({"a", "b"})}, {he({"c", "d"}), he({"c", "d"})}};
  CHECK(kind_of([&] { align_by_hyperedge_ids(two, two, same); }) == ErrorKind::AmbiguousLabels);
  try {
    align_by_hyperedge_ids(two, two, same);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("{a,b}") != std::string::npos);
  }

  auto path = hg({{{"a", "b"}, 1}, {{"b", "c"}, 1}, {{"c", "d"}, 1}});
  auto st = hg({{{"0", "1"}, 1}, {{"0", "2"}, 1}, {{"0", "3"}, 1}});
  const std::vector<std::pair<Hyperedge, Hyperedge>> forced{
      {he({"a", "b"}), he({"0", "1"})}, {he({"b", "c"}), he({"0", "2"})}, {he({"c", "d"}), he({"0", "3"})}};
  CHECK(kind_of([&] { align_by_hyperedge_ids(path, st, forced); }) == ErrorKind::NotAnIsomorphism);
  CHECK(kind_of([&] { align_by_hyperedge_ids(path, st, {forced[0], forced[1]}); }) == ErrorKind::NotABijection);
}

TEST_CASE("exact alignment") {
  auto h = normalize(hg({{{"0", "1"}, 1}, {{"1", "2"}, 2}, {{"2", "3"}, 3}}));
  auto id = align_exact(h, h);
  CHECK(id.cost == 0.0);
  CHECK(id.mapping == NodeRelabeling::identity(h.nodes()));

  auto phi = random_bijection(h.nodes(), 1, "n");
  auto a = align_exact(h, relabel(h, phi));
  CHECK(a.cost == 0.0);
  CHECK(a.mapping == phi);

  CHECK(kind_of([] { align_exact(star(4), star(5)); }) == ErrorKind::SizeMismatch);
  CHECK(kind_of([] { align_exact(star(9), star(9)); }) == ErrorKind::TooLarge);
  CHECK(align_exact(star(9), star(9), 9).cost == 0.0);

  // Lexicographically smallest minimizer under automorphisms.
  auto s = star(4);
  auto sa = align_exact(s, s);
  CHECK(sa.mapping == NodeRelabeling::identity(s.nodes()));
}

TEST_CASE("exact alignment against a brute-force reference") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const std::size_t n = 4 + s % 5;
    auto h1 = assign_weights(wcgnm(n, 0.5, s), 1, 10, s);
    auto phi = random_bijection(h1.nodes(), s + 1000, "v");
    auto h2 = relabel(h1, phi);
    auto a = align_exact(h1, h2);
    CHECK(a.cost == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(verified(h1, h2, a.mapping));

    auto ids = align_by_hyperedge_ids(h1, h2, true_edge_pairs(h1, phi));
    CHECK(verified(h1, h2, ids.mapping));
    CHECK(ids.cost == 0.0);

    if (s % 10 == 0) {
      auto other = assign_weights(wcgnm(n, 0.5, s + 77), 1, 10, s + 5);
      const double ref = brute_force_cost(h1, other);
      auto b = align_exact(h1, other);
      CHECK(b.cost == doctest::Approx(ref).epsilon(1e-12));
      CHECK(dissimilarity(relabel(h1, b.mapping), other) == doctest::Approx(b.cost).epsilon(1e-12));
      auto moved = relabel(h1, random_bijection(h1.nodes(), s + 9));
      CHECK(align_exact(moved, other).cost == doctest::Approx(b.cost).epsilon(1e-12));
    }
  }
}

TEST_CASE("1-WL refinement") {
  auto g = simple(star(6));
  auto c = wl_refine(g, uniform_coloring(g));
  CHECK(c.class_count() == 2);
  CHECK(partition(c) == std::set<std::set<std::string>>{{"0"}, {"1", "2", "3", "4", "5"}});

  auto f = simple(frucht());
  CHECK(wl_refine(f, uniform_coloring(f)).class_count() == 1);
  for (const auto& v : f.vertices()) {
    Coloring one = uniform_coloring(f);
    one.colors[v] = 1;
    CHECK(wl_refine(f, one).discrete());
  }

  auto chain5 = simple(chain(5));
  CHECK(partition(wl_refine(chain5, uniform_coloring(chain5))) ==
        std::set<std::set<std::string>>{{"0", "4"}, {"1", "3"}, {"2"}});

  Coloring partial;
  partial.colors["0"] = 0;
  CHECK(kind_of([&] { wl_refine(chain5, partial); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("1-WL is invariant under renaming and equitable") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto h = wcgnm(9, 0.3, s);
    auto g = simple(h);
    auto c = wl_refine(g, uniform_coloring(g));

    auto phi = random_bijection(h.nodes(), s + 50, "r");
    auto g2 = simple(relabel(h, phi));
    auto c2 = wl_refine(g2, uniform_coloring(g2));
    std::set<std::set<std::string>> mapped_back;
    auto inv = phi.inverse();
    for (const auto& cls : partition(c2)) {
      std::set<std::string> back;
      for (const auto& v : cls) back.insert(inv.apply(NodeId(v)).token());
      mapped_back.insert(back);
    }
    CHECK(mapped_back == partition(c));

    for (const auto& cls : c.classes()) {
      std::optional<std::multiset<int>> first;
      for (const auto& v : cls) {
        std::multiset<int> nb;
        for (const auto& u : g.vertices())
          if (g.has_edge(v, u)) nb.insert(c.colors.at(u));
        if (!first) first = nb;
        CHECK(nb == *first);
      }
    }
  }
}

TEST_CASE("anchored individualization-refinement on Frucht") {
  auto f = frucht();
  auto phi = random_bijection(f.nodes(), 17, "f");
  auto f2 = relabel(f, phi);

  AnchorSet anchors;
  anchors.node_pairs.emplace_back(nid("0"), phi.apply(nid("0")));
  auto anchored = align_wl_anchored(f, f2, anchors);
  REQUIRE(anchored.alignment.has_value());
  CHECK(anchored.alignment->mapping == phi);
  CHECK(anchored.alignment->cost == 0.0);
  CHECK(anchored.stats.backtracks == 0);
  CHECK(anchored.stats.discrete_after_anchors);

  auto free = align_wl_anchored(f, f2);
  REQUIRE(free.alignment.has_value());
  CHECK(free.alignment->mapping == phi);
  CHECK(free.stats.root_branches <= 12);
  CHECK_FALSE(free.stats.discrete_after_anchors);

  std::size_t hits = 0;
  for (const auto& v : f.nodes()) {
    AnchorSet a;
    a.node_pairs.emplace_back(nid("0"), v);
    auto r = align_wl_anchored(f, f, a);
    if (r.alignment) {
      ++hits;
      CHECK(v == nid("0"));
      CHECK(r.alignment->mapping == NodeRelabeling::identity(f.nodes()));
    }
  }
  CHECK(hits == 1);
}

TEST_CASE("anchored search errors and non-isomorphic inputs") {
  auto r = align_wl_anchored(star(6), chain(6));
  CHECK_FALSE(r.alignment.has_value());
  AnchorSet leaf_to_inner;
  leaf_to_inner.node_pairs.emplace_back(nid("1"), nid("1"));
  CHECK_FALSE(align_wl_anchored(star(6), chain(6), leaf_to_inner).alignment.has_value());

  CHECK(kind_of([] { align_wl_anchored(star(5), star(6)); }) == ErrorKind::SizeMismatch);

  AnchorSet center_to_leaf;
  center_to_leaf.node_pairs.emplace_back(nid("0"), nid("1"));
  CHECK(kind_of([&] { align_wl_anchored(star(6), star(6), center_to_leaf); }) == ErrorKind::InconsistentAnchors);

  AnchorSet unknown;
  unknown.node_pairs.emplace_back(nid("0"), nid("zz"));
  CHECK(kind_of([&] { align_wl_anchored(star(6), star(6), unknown); }) == ErrorKind::InconsistentAnchors);

  AnchorSet repeated;
  repeated.node_pairs = {{nid("1"), nid("1")}, {nid("1"), nid("2")}};
  CHECK(kind_of([&] { align_wl_anchored(star(6), star(6), repeated); }) == ErrorKind::InconsistentAnchors);

  AnchorSet edge;
  edge.edge_pairs.emplace_back(he({"0", "1"}), he({"0", "3"}));
  auto er = align_wl_anchored(star(6), star(6), edge);
  REQUIRE(er.alignment.has_value());
  CHECK(er.alignment->mapping.apply(nid("1")) == nid("3"));

  // Weights act as colors: a relabeled copy with one weight moved is not isomorphic.
  auto w1 = normalize(hg({{{"0", "1"}, 1}, {{"1", "2"}, 2}, {{"2", "3"}, 1}}));
  auto w2 = normalize(hg({{{"0", "1"}, 2}, {{"1", "2"}, 1}, {{"2", "3"}, 1}}));
  CHECK_FALSE(align_wl_anchored(w1, w2).alignment.has_value());
}

TEST_CASE("anchored search is sound on random small pairs") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const std::size_t n = 4 + s % 5;
    auto h1 = assign_weights(wcgnm(n, 0.5, s), 1, 10, s);
    auto phi = random_bijection(h1.nodes(), s + 300, "w");
    auto h2 = relabel(h1, phi);

    auto plain = align_wl_anchored(h1, h2);
    REQUIRE(plain.alignment.has_value());
    CHECK(verified(h1, h2, plain.alignment->mapping));
    CHECK(align_exact(h1, h2).cost == 0.0);

    AnchorSet a;
    const auto v = *h1.nodes().begin();
    a.node_pairs.emplace_back(v, phi.apply(v));
    auto anchored = align_wl_anchored(h1, h2, a);
    REQUIRE(anchored.alignment.has_value());
    CHECK(verified(h1, h2, anchored.alignment->mapping));
    CHECK(anchored.alignment->mapping.apply(v) == phi.apply(v));
  }
}

TEST_CASE("anchored search on hyperedges of size three") {
  auto h = normalize(hg({{{"0", "1", "2"}, 1}, {{"1", "2", "3"}, 2}, {{"3", "4"}, 1}, {{"0", "4"}, 3}}));
  auto phi = random_bijection(h.nodes(), 5, "t");
  auto r = align_wl_anchored(h, relabel(h, phi));
  REQUIRE(r.alignment.has_value());
  CHECK(verified(h, relabel(h, phi), r.alignment->mapping));

  auto moved = normalize(hg({{{"0", "1", "3"}, 1}, {{"1", "2", "3"}, 2}, {{"3", "4"}, 1}, {{"0", "4"}, 3}}));
  CHECK_FALSE(align_wl_anchored(h, moved).alignment.has_value());
}

TEST_CASE("large star through hyperedge ids") {
  auto big = star(10000);
  auto phi = random_bijection(big.nodes(), 2, "L");
  auto moved = relabel(big, phi);
  const auto start = std::chrono::steady_clock::now();
  auto a = align_by_hyperedge_ids(big, moved, true_edge_pairs(big, phi));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(a.mapping == phi);
  CHECK(secs < 5.0);
}

TEST_CASE("dataset fusion") {
  auto truth = generate({Structure::Star, 6, 0.2, 1, 10, 2});
  auto d1 = sample_dataset(truth, 300, 1);
  auto d2 = sample_dataset(truth, 200, 2);
  auto id = NodeRelabeling::identity(truth.nodes());
  CHECK(fuse_datasets(d1, Dataset{}, id).samples == d1.samples);
  CHECK(fuse_datasets(d1, d2, id).size() == 500);

  auto phi = random_bijection(truth.nodes(), 4, "m");
  auto moved1 = Dataset{};
  for (const auto& e : d1.samples) moved1.samples.push_back(phi.apply(e));
  auto d2m = Dataset{};
  for (const auto& e : d2.samples) d2m.samples.push_back(phi.apply(e));
  auto fused = fuse_datasets(d1, d2m, phi);
  auto concat = moved1;
  concat.samples.insert(concat.samples.end(), d2m.samples.begin(), d2m.samples.end());
  CHECK(fused.samples == concat.samples);
  auto a = recover_from_dataset(fused), b = recover_from_dataset(concat);
  for (const auto& [e, w] : a.edges()) CHECK(b.weight(e) == w);

  NodeRelabeling partial(std::vector<std::pair<NodeId, NodeId>>{{nid("0"), nid("0")}});
  CHECK(kind_of([&] { fuse_datasets(d1, d2, partial); }) == ErrorKind::IncompleteMapping);
}

TEST_CASE("anchor and alignment files") {
  AnchorSet a;
  a.node_pairs.emplace_back(nid("0"), nid("x"));
  a.edge_pairs.emplace_back(he({"0", "1"}), he({"x", "y"}));
  const auto text = encode_anchors(a);
  CHECK(text == "node 0 x\nedge 0+1 x+y\n");
  auto back = parse_anchors("# comment\n" + text);
  CHECK(back.node_pairs == a.node_pairs);
  CHECK(back.edge_pairs == a.edge_pairs);
  CHECK(kind_of([] { parse_anchors("vertex 0 1\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_anchors("node 0\n"); }) == ErrorKind::ParseError);

  Alignment al{NodeRelabeling({{nid("0"), nid("b")}, {nid("1"), nid("a")}}), 0.25};
  const auto out = encode_alignment(al);
  CHECK(out == "0 b\n1 a\n#cost 0.25\n");
  CHECK(parse_relabeling(out) == al.mapping);
}
