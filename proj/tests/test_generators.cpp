#include <doctest.h>

#include <cmath>
#include <functional>
#include <queue>

#include "hgr/generators.hpp"
#include "hgr/rng.hpp"
#include "support.hpp"

using namespace hgr;
using namespace hgr::testing;

namespace {

std::set<std::string> keys(const WeightedHypergraph& h) {
  std::set<std::string> out;
  for (const auto& [e, w] : h.edges()) out.insert(e.key());
  return out;
}

bool connected(const WeightedHypergraph& h) {
  const auto nodes = h.nodes();
  if (nodes.empty()) return true;
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const auto& [e, w] : h.edges())
    for (const auto& a : e.nodes())
      for (const auto& b : e.nodes())
        if (a != b) adj[a].push_back(b);
  std::set<NodeId> seen{*nodes.begin()};
  std::queue<NodeId> q;
  q.push(*nodes.begin());
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    for (const auto& u : adj[v])
      if (seen.insert(u).second) q.push(u);
  }
  return seen.size() == nodes.size();
}

// Brute-force automorphism count of a simple graph given as adjacency sets.
std::size_t count_automorphisms(const std::vector<std::set<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  std::size_t count = 0;
  std::function<void(int)> extend = [&](int v) {
    if (v == n) {
      ++count;
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || adj[w].size() != adj[v].size()) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = (adj[v].count(u) != 0) == (adj[w].count(image[u]) != 0);
      if (!ok) continue;
      used[w] = true;
      image[v] = w;
      extend(v + 1);
      used[w] = false;
    }
  };
  extend(0);
  return count;
}

std::uint64_t ref_splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

TEST_CASE("rng stream derivation") {
  CHECK(ref_splitmix(0) == 0xe220a8397b1dcdafULL);  // published first output for seed 0
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(derive_stream(42, "dataset", 3) == ref_splitmix(ref_splitmix(42 ^ fnv1a64("dataset")) ^ 3));
  CHECK(derive_stream(1, "a", 0) != derive_stream(1, "b", 0));
  CHECK(derive_stream(1, "a", 0) != derive_stream(1, "a", 1));

  Rng a(5, "x"), b(5, "x");
  for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng r(9);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(r.uniform_below(7) < 7);
  }
}

TEST_CASE("alias table frequencies") {
  const std::vector<double> w{0.1, 0.0, 0.6, 0.3};
  AliasTable table(w);
  Rng rng(3);
  std::vector<std::size_t> counts(w.size());
  const std::size_t n = 400000;
  for (std::size_t i = 0; i < n; ++i) ++counts[table.sample(rng)];
  CHECK(counts[1] == 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double sigma = std::sqrt(w[i] * (1 - w[i]) / n);
    CHECK(std::abs(static_cast<double>(counts[i]) / n - w[i]) <= 6 * sigma + 1e-12);
  }
  CHECK(kind_of([] { AliasTable(std::vector<double>{}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { AliasTable(std::vector<double>{0.0, 0.0}); }) == ErrorKind::InvalidWeight);
}

TEST_CASE("star") {
  CHECK(keys(star(6)) == std::set<std::string>{"0+1", "0+2", "0+3", "0+4", "0+5"});
  CHECK(keys(star(2)) == std::set<std::string>{"0+1"});
  CHECK(kind_of([] { star(1); }) == ErrorKind::InvalidSize);
  CHECK_FALSE(star(6).normalized());
  const auto s6 = star(6);
  for (const auto& [e, w] : s6.edges()) CHECK(w == 1.0);
}

TEST_CASE("x graph") {
  CHECK(keys(x_graph(6)) == std::set<std::string>{"0+1", "0+2", "0+3", "0+4", "1+5"});
  CHECK(keys(x_graph(9)) ==
        std::set<std::string>{"0+1", "0+2", "0+3", "0+4", "1+5", "2+6", "3+7", "4+8"});
  CHECK(kind_of([] { x_graph(4); }) == ErrorKind::InvalidSize);
  // Set-builder re-evaluation for a range of sizes.
  for (std::size_t n = 5; n <= 30; ++n) {
    std::set<std::string> expect;
    for (int k = 1; k <= 4; ++k) expect.insert("0+" + std::to_string(k));
    for (std::size_t i = 0; 4 * i + 5 <= n; ++i)
      for (std::size_t k = 1; k <= 4; ++k)
        if (4 * i + k + 4 <= n - 1) {
          const auto a = std::to_string(4 * i + k), b = std::to_string(4 * i + k + 4);
          expect.insert(std::min(a, b) + "+" + std::max(a, b));
        }
    CHECK(keys(x_graph(n)) == expect);
  }
}

TEST_CASE("chain") {
  CHECK(keys(chain(3)) == std::set<std::string>{"0+1", "1+2"});
  CHECK(keys(chain(2)) == std::set<std::string>{"0+1"});
  CHECK(chain(6).edge_count() == 5);
  CHECK(connected(chain(6)));
  CHECK(kind_of([] { chain(1); }) == ErrorKind::InvalidSize);
  for (std::size_t n = 2; n < 20; ++n) {
    CHECK(star(n).edge_count() == n - 1);
    CHECK(chain(n).edge_count() == n - 1);
  }
}

TEST_CASE("wcgnm") {
  CHECK(wcgnm_edge_count(10, 0.2) == 9);
  CHECK(wcgnm_edge_count(5, 1.0) == 10);
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto tree = wcgnm(10, 0.2, s);
    CHECK(tree.edge_count() == 9);
    CHECK(tree.node_count() == 10);
    CHECK(connected(tree));
  }
  CHECK(wcgnm(5, 1.0, 1).edge_count() == 10);
  CHECK(kind_of([] { wcgnm(10, 0.05, 1); }) == ErrorKind::CannotBeConnected);
  CHECK(wcgnm(12, 0.3, 4) == wcgnm(12, 0.3, 4));
  CHECK_FALSE(wcgnm(12, 0.3, 4) == wcgnm(12, 0.3, 5));
}

TEST_CASE("frucht") {
  auto f = frucht();
  CHECK(f.node_count() == 12);
  CHECK(f.edge_count() == 18);
  std::vector<std::set<int>> adj(12);
  for (const auto& [e, w] : f.edges()) {
    const int a = std::stoi(e.nodes()[0].token()), b = std::stoi(e.nodes()[1].token());
    adj[a].insert(b);
    adj[b].insert(a);
  }
  for (const auto& nb : adj) CHECK(nb.size() == 3);
  CHECK(connected(f));
  CHECK(count_automorphisms(adj) == 1);
}

TEST_CASE("assign weights") {
  std::size_t mixed = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto h = assign_weights(star(6), 1.0, 10.0, s);
    CHECK(h.normalized());
    CHECK(h.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
    const double k = h.range_ratio();
    CHECK((std::abs(k - 1.0) < 1e-12 || std::abs(k - 10.0) < 1e-9));
    if (std::abs(k - 10.0) < 1e-9) ++mixed;
    auto h100 = assign_weights(chain(8), 1.0, 100.0, s);
    const double k100 = h100.range_ratio();
    CHECK((std::abs(k100 - 1.0) < 1e-12 || std::abs(k100 - 100.0) < 1e-9));
  }
  CHECK(mixed > 30);

  auto uniform = assign_weights(star(5), 1.0, 1.0, 0);
  for (const auto& [e, w] : uniform.edges()) CHECK(w == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(assign_weights(star(6), 1, 10, 8) == assign_weights(star(6), 1, 10, 8));
  CHECK(kind_of([] { assign_weights(star(3), 0.0, 1.0, 0); }) == ErrorKind::InvalidWeights);
  CHECK(kind_of([] { assign_weights(star(3), 2.0, 1.0, 0); }) == ErrorKind::InvalidWeights);
}

TEST_CASE("structure names") {
  CHECK(parse_structure("STAR") == Structure::Star);
  CHECK(parse_structure("wcgnm") == Structure::Wcgnm);
  CHECK(kind_of([] { parse_structure("ring"); }) == ErrorKind::InvalidArgument);
  auto g = generate({Structure::Frucht, 12, 0.2, 1, 1, 0});
  CHECK(g.edge_count() == 18);
  CHECK(g.normalized());
}
