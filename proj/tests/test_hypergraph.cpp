#include <doctest.h>

#include <random>

#include "hgr/generators.hpp"
#include "hgr/hypergraph.hpp"
#include "support.hpp"

using namespace hgr;
using namespace hgr::testing;

TEST_CASE("node ids order bytewise") {
  CHECK(NodeId("10") < NodeId("2"));
  CHECK(kind_of([] { NodeId(""); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { NodeId("a b"); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("hyperedges are sorted sets of size at least two") {
  CHECK(he({"b", "a", "b"}).key() == "a+b");
  CHECK(he({"b", "a"}) == he({"a", "b"}));
  CHECK(kind_of([] { he({"a", "a"}); }) == ErrorKind::InvalidSize);
  CHECK(Hyperedge::from_key("x+y+z") == he({"z", "y", "x"}));
}

TEST_CASE("normalize") {
  auto one = normalize(hg({{{"a", "b"}, 5}}));
  CHECK(one.weight(he({"a", "b"})) == 1.0);
  CHECK(one.normalized());

  auto two = normalize(hg({{{"a", "b"}, 1}, {{"a", "c"}, 3}}));
  CHECK(two.weight(he({"a", "b"})) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(two.weight(he({"a", "c"})) == doctest::Approx(0.75).epsilon(1e-15));

  auto again = normalize(two);
  CHECK(again.edges() == two.edges());

  CHECK(kind_of([] { normalize(WeightedHypergraph()); }) == ErrorKind::EmptyHypergraph);
}

TEST_CASE("weights are validated") {
  CHECK(kind_of([] { hg({{{"a", "b"}, 0}}); }) == ErrorKind::InvalidWeight);
  CHECK(kind_of([] { hg({{{"a", "b"}, -1}}); }) == ErrorKind::InvalidWeight);
  CHECK(kind_of([] { hg({{{"a", "b"}, 0.5}}, true); }) == ErrorKind::NotNormalized);
  CHECK(kind_of([] { hg({{{"a", "b"}, 1}, {{"b", "a"}, 1}}); }) == ErrorKind::DuplicateEdge);
}

TEST_CASE("dissimilarity examples") {
  auto h = hg({{{"a", "b"}, 0.4}, {{"a", "c"}, 0.6}}, true);
  CHECK(dissimilarity(h, h) == 0.0);
  auto disjoint = hg({{{"x", "y"}, 0.5}, {{"y", "z"}, 0.5}}, true);
  CHECK(dissimilarity(h, disjoint) == doctest::Approx(2.0).epsilon(1e-15));
  auto single = hg({{{"a", "b"}, 1.0}}, true);
  auto pair = hg({{{"a", "b"}, 0.4}, {{"c", "d"}, 0.6}}, true);
  CHECK(dissimilarity(single, pair) == doctest::Approx(1.2).epsilon(1e-15));
}

TEST_CASE("dissimilarity is a metric bounded by 2 on normalized inputs") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> w(0.1, 5.0);
  std::bernoulli_distribution keep(0.5);
  const std::vector<std::vector<std::string>> pool{{"0", "1"}, {"0", "2"}, {"1", "2"}, {"2", "3"},
                                                   {"0", "1", "2"}, {"1", "3"}};
  auto random_h = [&] {
    std::vector<EdgeSpec> edges;
    for (const auto& nodes : pool)
      if (keep(gen)) edges.push_back({nodes, w(gen)});
    if (edges.empty()) edges.push_back({pool[0], 1.0});
    return normalize(hg(edges));
  };
  for (int t = 0; t < 200; ++t) {
    auto a = random_h(), b = random_h(), c = random_h();
    const double ab = dissimilarity(a, b);
    CHECK(ab == doctest::Approx(reference_dissimilarity(a, b)).epsilon(1e-12));
    CHECK(ab == doctest::Approx(dissimilarity(b, a)).epsilon(1e-15));
    CHECK(ab >= 0.0);
    CHECK(ab <= 2.0 + 1e-12);
    CHECK(dissimilarity(a, c) <= ab + dissimilarity(b, c) + 1e-12);
  }
}

TEST_CASE("relabel") {
  auto h = star(6);
  CHECK(relabel(h, NodeRelabeling::identity(h.nodes())) == h);

  NodeRelabeling swap({{"0", "0"}, {"1", "2"}, {"2", "1"}, {"3", "3"}, {"4", "4"}, {"5", "5"}});
  auto weighted = assign_weights(h, 1, 10, 3);
  CHECK(relabel(relabel(weighted, swap), swap.inverse()) == weighted);
  CHECK(relabel(weighted, swap).normalized());

  CHECK(kind_of([] { NodeRelabeling({{"a", "x"}, {"b", "x"}}); }) == ErrorKind::NotABijection);
  CHECK(kind_of([] { NodeRelabeling({{"a", "x"}, {"a", "y"}}); }) == ErrorKind::NotABijection);
  NodeRelabeling partial(std::vector<std::pair<NodeId, NodeId>>{{"0", "0"}});
  CHECK(kind_of([&] { relabel(h, partial); }) == ErrorKind::IncompleteMapping);
}

TEST_CASE("relabel preserves dissimilarity") {
  auto a = assign_weights(chain(5), 1, 10, 1);
  auto b = assign_weights(star(5), 1, 10, 2);
  NodeRelabeling phi({{"0", "3"}, {"1", "0"}, {"2", "4"}, {"3", "1"}, {"4", "2"}});
  CHECK(dissimilarity(relabel(a, phi), relabel(b, phi)) == doctest::Approx(dissimilarity(a, b)).epsilon(1e-15));
}

TEST_CASE("range ratio") {
  CHECK(star(5).range_ratio() == 1.0);
  auto h = hg({{{"a", "b"}, 1}, {{"a", "c"}, 4}});
  CHECK(h.range_ratio() == 4.0);
  CHECK(WeightedHypergraph().range_ratio() == 1.0);
  CHECK(kind_of([] { WeightedHypergraph().min_weight(); }) == ErrorKind::EmptyHypergraph);
}

TEST_CASE("line graph") {
  auto lg = line_graph(hg({{{"0", "1"}, 1}, {{"0", "2"}, 1}}));
  CHECK(lg.vertices().size() == 2);
  CHECK(lg.edges().size() == 1);
  CHECK(line_graph(hg({{{"0", "1"}, 1}, {{"2", "3"}, 1}})).edges().empty());

  auto path = line_graph(chain(4));
  CHECK(path.vertices().size() == 3);
  CHECK(path.edges().size() == 2);
  CHECK(path.has_edge("0+1", "1+2"));
  CHECK(path.has_edge("1+2", "2+3"));
  CHECK_FALSE(path.has_edge("0+1", "2+3"));
}

TEST_CASE("sketch diff") {
  auto ab = hg({{{"a", "b"}, 1}, {{"b", "c"}, 1}});
  auto bc = hg({{{"b", "c"}, 1}, {{"c", "d"}, 1}});
  auto d = sketch_diff(ab, bc);
  CHECK(d.missing == std::set<Hyperedge>{he({"a", "b"})});
  CHECK(d.spurious == std::set<Hyperedge>{he({"c", "d"})});
  auto same = sketch_diff(ab, ab);
  CHECK(same.missing.empty());
  CHECK(same.spurious.empty());
  auto single = sketch_diff(hg({{{"a", "b"}, 1}}), hg({{{"b", "c"}, 1}}));
  CHECK(single.missing.size() == 1);
  CHECK(single.spurious.size() == 1);
}

TEST_CASE(".hg round trip") {
  auto h = generate({Structure::Star, 6, 0.2, 1, 10, 5});
  auto text = encode(h);
  CHECK(text.rfind("#hg v1\n#normalized\n", 0) == 0);
  auto back = decode(text);
  CHECK(back == h);
  CHECK(back.normalized());
  for (const auto& [e, w] : h.edges()) CHECK(back.weight(e) == w);  // bit-exact

  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> w(1e-6, 1e6);
  for (int t = 0; t < 50; ++t) {
    auto r = hg({{{"p", "q"}, w(gen)}, {{"q", "r", "s"}, w(gen)}, {{"10", "2"}, w(gen)}});
    auto r2 = decode(encode(r));
    for (const auto& [e, x] : r.edges()) CHECK(r2.weight(e) == x);
  }
}

TEST_CASE(".hg parse errors") {
  auto missing_weight = [] { decode("#hg v1\nedge 0 1\n"); };
  CHECK(kind_of(missing_weight) == ErrorKind::ParseError);
  try {
    missing_weight();
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK(kind_of([] { decode("#hg v1\nedge a b 1.0\nedge a b 1.0\n"); }) == ErrorKind::DuplicateEdge);
  CHECK(kind_of([] { decode("edge a b 1.0\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { decode("#hg v1\nedge a b x\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { decode("#hg v1\nedge a b -1\n"); }) == ErrorKind::InvalidWeight);
  auto commented = decode("#hg v1\n# note\n\nedge a b 2\n");
  CHECK(commented.edge_count() == 1);
}
