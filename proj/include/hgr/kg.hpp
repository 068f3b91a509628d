#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "hgr/hypergraph.hpp"

namespace hgr {

/// Undirected weighted graph over entity strings. No self-loops, weights > 0.
class KnowledgeGraph {
 public:
  /// Keeps the larger weight when the pair already exists. Self-loops are ignored.
  void add_edge(const std::string& a, const std::string& b, double weight);

  bool contains(const std::string& entity) const { return adjacency_.count(entity) != 0; }
  std::size_t entity_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const;
  /// Each undirected edge once as (a, b, weight) with a < b, ascending.
  std::vector<std::tuple<std::string, std::string, double>> edges() const;
  /// 0 when absent.
  double weight(const std::string& a, const std::string& b) const;
  /// Neighbours by descending weight, ties by ascending name.
  std::vector<std::pair<std::string, double>> ranked_neighbors(const std::string& entity) const;

 private:
  std::map<std::string, std::map<std::string, double>> adjacency_;
};

/// TSV `start<TAB>end<TAB>weight`. Entities are trimmed and lowercased; blank lines and
/// lines starting with '#' are skipped. Throws ParseError (with line) and InvalidWeight.
KnowledgeGraph parse_edge_list(std::string_view text);
KnowledgeGraph ingest_edge_list(const std::string& path);

struct SubgraphSpec {
  std::string source;
  std::size_t k = 1;
  std::size_t depth = 1;
};

struct Subgraph {
  std::vector<std::string> entities;  // discovery order, source first
  SimpleGraph graph;
};

/// Breadth-first from the source: each entity above the depth cap adds its k most
/// related neighbours that were not chosen yet. Edges then join every chosen entity
/// to its k most related entities within the chosen set. Throws UnknownEntity.
Subgraph extract_subgraph(const KnowledgeGraph& kg, const SubgraphSpec& spec);

/// The relation-probing prompt. Throws EmptyEntities.
std::string render_prompt(const std::vector<std::string>& entities, std::size_t k);

struct ParsedEdgelist {
  std::set<std::pair<std::string, std::string>> edges;  // first < second
  std::vector<std::string> unparsed_lines;

  SimpleGraph graph() const;
};

/// Best-effort edgelist reader. A line yields an edge when, after stripping list
/// markers, brackets and quotes, it splits on one of `<->`, `->`, `→`, `–`, `-` or `,`
/// into exactly two vocabulary entities (case-insensitive). Self-pairs are dropped;
/// other nonblank lines are kept in unparsed_lines.
ParsedEdgelist parse_edgelist(std::string_view response, const std::vector<std::string>& vocabulary);

/// One `a - b` line per edge, the form parse_edgelist reads back exactly.
std::string format_edgelist(const std::set<SimpleGraph::Edge>& edges);

/// |E_truth Δ E_eval| / |E_truth|. Throws UndefinedScore when truth has no edges.
double normalized_l1(const SimpleGraph& truth, const SimpleGraph& eval);

struct EvalResult {
  std::string source;
  std::size_t k = 0;
  std::size_t depth = 0;
  std::string model;
  double score = 0;
  std::set<SimpleGraph::Edge> truth_edges;
  std::set<SimpleGraph::Edge> eval_edges;
  std::set<SimpleGraph::Edge> missing;
  std::set<SimpleGraph::Edge> spurious;
  std::vector<std::string> unparsed_lines;
};

EvalResult evaluate_response(const Subgraph& truth, const SubgraphSpec& spec, const std::string& model,
                             std::string_view response);

/// JSON with fields source, k, d, model, score, truth_edges, eval_edges, missing,
/// spurious, unparsed_lines. Edges are written "a|b".
std::string serialize_eval(const EvalResult& r);
std::string eval_csv_header();  // source,k,d,model,score,missing,spurious
std::string eval_csv_row(const EvalResult& r);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// `<dir>/<sha256(prompt)>.txt`.
std::string response_path(const std::string& dir, std::string_view prompt);
/// Throws IoError when no response is stored for the prompt.
std::string read_replayed_response(const std::string& dir, std::string_view prompt);

struct EndpointConfig {
  std::string base_url = "https://api.openai.com/v1";
  std::string model = "gpt-4";
  double temperature = 0.0;
  double timeout_s = 60.0;
  std::string api_key_env = "OPENAI_API_KEY";
};

/// Reads keys base_url, model, temperature, timeout_s, api_key_env. Throws ParseError.
EndpointConfig parse_endpoint_config(std::string_view json_text);

/// One-turn chat completion; returns the first choice's message text.
/// Throws AuthError (missing credential, 401, 403), HttpError (other non-2xx or a
/// malformed body) and NetworkError (connection failure or timeout).
std::string chat_completion(const EndpointConfig& cfg, std::string_view prompt);

/// Runs `send` over the prompts with at most `in_flight` calls at a time. Results are
/// keyed by sha256(prompt). The first exception is rethrown after all workers finish.
std::map<std::string, std::string> dispatch_prompts(const std::vector<std::string>& prompts,
                                                    const std::function<std::string(const std::string&)>& send,
                                                    std::size_t in_flight = 2);

}  // namespace hgr
