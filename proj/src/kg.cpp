#include "hgr/kg.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iterator>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "hgr/error.hpp"
#include "text_util.hpp"

namespace hgr {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Knowledge graph

void KnowledgeGraph::add_edge(const std::string& a, const std::string& b, double weight) {
  if (!(weight > 0.0) || !std::isfinite(weight))
    throw Error(ErrorKind::InvalidWeight, "relatedness weight must be positive, got " + format_double(weight));
  if (a == b) return;
  auto& ab = adjacency_[a][b];
  ab = std::max(ab, weight);
  auto& ba = adjacency_[b][a];
  ba = std::max(ba, weight);
}

std::size_t KnowledgeGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& [v, nb] : adjacency_) twice += nb.size();
  return twice / 2;
}

std::vector<std::tuple<std::string, std::string, double>> KnowledgeGraph::edges() const {
  std::vector<std::tuple<std::string, std::string, double>> out;
  for (const auto& [a, nb] : adjacency_)
    for (auto it = nb.upper_bound(a); it != nb.end(); ++it) out.emplace_back(a, it->first, it->second);
  return out;
}

double KnowledgeGraph::weight(const std::string& a, const std::string& b) const {
  auto it = adjacency_.find(a);
  if (it == adjacency_.end()) return 0.0;
  auto jt = it->second.find(b);
  return jt == it->second.end() ? 0.0 : jt->second;
}

std::vector<std::pair<std::string, double>> KnowledgeGraph::ranked_neighbors(const std::string& entity) const {
  std::vector<std::pair<std::string, double>> out;
  auto it = adjacency_.find(entity);
  if (it == adjacency_.end()) return out;
  out.assign(it->second.begin(), it->second.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
  return out;
}

KnowledgeGraph parse_edge_list(std::string_view text) {
  KnowledgeGraph kg;
  std::size_t line_no = 0;
  for (auto line : detail::split_on(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (detail::trim(line).empty() || line.front() == '#') continue;
    const auto fields = detail::split_on(line, '\t');
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() != 3) fail("expected start<TAB>end<TAB>weight");
    const std::string a = detail::to_lower(detail::trim(fields[0]));
    const std::string b = detail::to_lower(detail::trim(fields[1]));
    if (a.empty() || b.empty()) fail("empty entity");
    double w = 0;
    if (!detail::parse_double(detail::trim(fields[2]), w)) fail("weight is not a number");
    if (!(w > 0.0) || !std::isfinite(w))
      throw Error(ErrorKind::InvalidWeight, "line " + std::to_string(line_no) + ": weight must be positive");
    kg.add_edge(a, b, w);
  }
  return kg;
}

KnowledgeGraph ingest_edge_list(const std::string& path) { return parse_edge_list(detail::read_file(path)); }

// ---------------------------------------------------------------------------
// Extraction and prompting

Subgraph extract_subgraph(const KnowledgeGraph& kg, const SubgraphSpec& spec) {
  const std::string source = detail::to_lower(detail::trim(spec.source));
  if (!kg.contains(source)) throw Error(ErrorKind::UnknownEntity, "entity '" + source + "' is not in the graph");

  Subgraph out;
  std::set<std::string> chosen{source};
  out.entities.push_back(source);
  std::vector<std::pair<std::string, std::size_t>> queue{{source, 0}};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto [u, depth] = queue[head];
    if (depth >= spec.depth) continue;
    std::size_t taken = 0;
    for (const auto& [v, w] : kg.ranked_neighbors(u)) {
      if (taken == spec.k) break;
      if (chosen.count(v)) continue;
      chosen.insert(v);
      out.entities.push_back(v);
      queue.emplace_back(v, depth + 1);
      ++taken;
    }
  }

  for (const auto& v : out.entities) out.graph.add_vertex(v);
  for (const auto& u : out.entities) {
    std::size_t taken = 0;
    for (const auto& [v, w] : kg.ranked_neighbors(u)) {
      if (taken == spec.k) break;
      if (!chosen.count(v)) continue;
      out.graph.add_edge(u, v);
      ++taken;
    }
  }
  return out;
}

std::string render_prompt(const std::vector<std::string>& entities, std::size_t k) {
  if (entities.empty()) throw Error(ErrorKind::EmptyEntities, "prompt needs at least one entity");
  return "Consider the following concepts: " + detail::join(entities, ", ") +
         ". Suppose that these concepts are nodes of an undirected graph. For each concept, consider " +
         std::to_string(k) +
         " most related concepts. According to the relations between these concepts, which edges should be "
         "included? Please answer with an edgelist.";
}

// ---------------------------------------------------------------------------
// Response parsing

namespace {

void erase_all(std::string& s, std::string_view needle) {
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos)) s.erase(pos, needle.size());
}

std::string strip_markup(std::string_view raw) {
  std::string s(detail::trim(raw));
  // List markers: "-", "*", "+", "•", "1.", "1)".
  while (true) {
    std::size_t cut = 0;
    if (s.rfind("•", 0) == 0) {
      cut = std::string_view("•").size();
    } else if (!s.empty() && (s[0] == '-' || s[0] == '*' || s[0] == '+') && s.size() > 1 && s[1] == ' ') {
      cut = 1;
    } else {
      std::size_t d = 0;
      while (d < s.size() && std::isdigit(static_cast<unsigned char>(s[d]))) ++d;
      if (d > 0 && d < s.size() && (s[d] == '.' || s[d] == ')') && (d + 1 == s.size() || s[d + 1] == ' '))
        cut = d + 1;
    }
    if (cut == 0) break;
    s = std::string(detail::trim(std::string_view(s).substr(cut)));
  }
  for (std::string_view q : {"(", ")", "[", "]", "{", "}", "\"", "'", "`", "“", "”", "‘", "’"})
    erase_all(s, q);
  s = std::string(detail::trim(s));
  while (!s.empty() && (s.back() == '.' || s.back() == ';')) s.pop_back();
  return detail::to_lower(detail::trim(s));
}

const std::vector<std::string_view> kSeparators{"<->", "->", "→", "–", "-", ","};

}  // namespace

SimpleGraph ParsedEdgelist::graph() const {
  SimpleGraph g;
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  return g;
}

ParsedEdgelist parse_edgelist(std::string_view response, const std::vector<std::string>& vocabulary) {
  std::set<std::string> vocab;
  for (const auto& v : vocabulary) vocab.insert(detail::to_lower(detail::trim(v)));

  ParsedEdgelist out;
  for (auto raw : detail::split_on(response, '\n')) {
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (detail::trim(raw).empty()) continue;
    const std::string line = strip_markup(raw);
    std::set<std::pair<std::string, std::string>> found;
    for (auto sep : kSeparators) {
      for (auto pos = line.find(sep); pos != std::string::npos; pos = line.find(sep, pos + 1)) {
        std::string a(detail::trim(std::string_view(line).substr(0, pos)));
        std::string b(detail::trim(std::string_view(line).substr(pos + sep.size())));
        if (vocab.count(a) && vocab.count(b)) found.emplace(std::min(a, b), std::max(a, b));
      }
    }
    if (found.size() != 1) {
      out.unparsed_lines.emplace_back(detail::trim(raw));
      continue;
    }
    const auto& pair = *found.begin();
    if (pair.first != pair.second) out.edges.insert(pair);
  }
  return out;
}

std::string format_edgelist(const std::set<SimpleGraph::Edge>& edges) {
  std::string out;
  for (const auto& [a, b] : edges) out += a + " - " + b + "\n";
  return out;
}

double normalized_l1(const SimpleGraph& truth, const SimpleGraph& eval) {
  if (truth.edges().empty()) throw Error(ErrorKind::UndefinedScore, "truth graph has no edges");
  std::size_t diff = 0;
  for (const auto& e : truth.edges()) diff += eval.edges().count(e) ? 0 : 1;
  for (const auto& e : eval.edges()) diff += truth.edges().count(e) ? 0 : 1;
  return static_cast<double>(diff) / static_cast<double>(truth.edges().size());
}

EvalResult evaluate_response(const Subgraph& truth, const SubgraphSpec& spec, const std::string& model,
                             std::string_view response) {
  EvalResult r;
  r.source = detail::to_lower(detail::trim(spec.source));
  r.k = spec.k;
  r.depth = spec.depth;
  r.model = model;
  auto parsed = parse_edgelist(response, truth.entities);
  const SimpleGraph eval = parsed.graph();
  r.score = normalized_l1(truth.graph, eval);
  r.truth_edges = truth.graph.edges();
  r.eval_edges = eval.edges();
  std::set_difference(r.truth_edges.begin(), r.truth_edges.end(), r.eval_edges.begin(), r.eval_edges.end(),
                      std::inserter(r.missing, r.missing.end()));
  std::set_difference(r.eval_edges.begin(), r.eval_edges.end(), r.truth_edges.begin(), r.truth_edges.end(),
                      std::inserter(r.spurious, r.spurious.end()));
  r.unparsed_lines = std::move(parsed.unparsed_lines);
  return r;
}

std::string serialize_eval(const EvalResult& r) {
  using nlohmann::ordered_json;
  auto edges = [](const std::set<SimpleGraph::Edge>& s) {
    ordered_json a = ordered_json::array();
    for (const auto& [x, y] : s) a.push_back(x + "|" + y);
    return a;
  };
  ordered_json doc;
  doc["source"] = r.source;
  doc["k"] = r.k;
  doc["d"] = r.depth;
  doc["model"] = r.model;
  doc["score"] = r.score;
  doc["truth_edges"] = edges(r.truth_edges);
  doc["eval_edges"] = edges(r.eval_edges);
  doc["missing"] = edges(r.missing);
  doc["spurious"] = edges(r.spurious);
  doc["unparsed_lines"] = r.unparsed_lines;
  return doc.dump(2) + "\n";
}

std::string eval_csv_header() { return "source,k,d,model,score,missing,spurious"; }

std::string eval_csv_row(const EvalResult& r) {
  return detail::join({r.source, std::to_string(r.k), std::to_string(r.depth), r.model, format_double(r.score),
                       std::to_string(r.missing.size()), std::to_string(r.spurious.size())},
                      ",");
}

// ---------------------------------------------------------------------------
// Replay and live calls

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::InvalidArgument, "sha256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string response_path(const std::string& dir, std::string_view prompt) {
  return (std::filesystem::path(dir) / (sha256_hex(prompt) + ".txt")).string();
}

std::string read_replayed_response(const std::string& dir, std::string_view prompt) {
  return detail::read_file(response_path(dir, prompt));
}

EndpointConfig parse_endpoint_config(std::string_view json_text) {
  EndpointConfig cfg;
  try {
    const json doc = json::parse(json_text);
    cfg.base_url = doc.value("base_url", cfg.base_url);
    cfg.model = doc.value("model", cfg.model);
    cfg.temperature = doc.value("temperature", cfg.temperature);
    cfg.timeout_s = doc.value("timeout_s", cfg.timeout_s);
    cfg.api_key_env = doc.value("api_key_env", cfg.api_key_env);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("endpoint config: ") + e.what());
  }
  return cfg;
}

std::string chat_completion(const EndpointConfig& cfg, std::string_view prompt) {
  const char* key = std::getenv(cfg.api_key_env.c_str());
  if (!key || !*key) throw Error(ErrorKind::AuthError, "environment variable " + cfg.api_key_env + " is not set");

  const auto scheme_end = cfg.base_url.find("://");
  if (scheme_end == std::string::npos)
    throw Error(ErrorKind::InvalidArgument, "base_url needs a scheme: " + cfg.base_url);
  const auto path_start = cfg.base_url.find('/', scheme_end + 3);
  const std::string origin = cfg.base_url.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "" : cfg.base_url.substr(path_start);
  while (!path.empty() && path.back() == '/') path.pop_back();
  path += "/chat/completions";

  httplib::Client client(origin);
  const auto seconds = static_cast<time_t>(cfg.timeout_s);
  const auto micros = static_cast<time_t>((cfg.timeout_s - static_cast<double>(seconds)) * 1e6);
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);
  client.set_bearer_token_auth(key);

  json body;
  body["model"] = cfg.model;
  body["temperature"] = cfg.temperature;
  body["messages"] = json::array({json{{"role", "user"}, {"content", std::string(prompt)}}});

  auto res = client.Post(path, body.dump(), "application/json");
  if (!res) throw Error(ErrorKind::NetworkError, "request to " + origin + " failed: " + httplib::to_string(res.error()));
  const std::string excerpt = res->body.substr(0, 200);
  if (res->status == 401 || res->status == 403)
    throw Error(ErrorKind::AuthError, "HTTP " + std::to_string(res->status) + ": " + excerpt);
  if (res->status < 200 || res->status >= 300)
    throw Error(ErrorKind::HttpError, "HTTP " + std::to_string(res->status) + ": " + excerpt);
  try {
    const json doc = json::parse(res->body);
    return doc.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::HttpError, std::string("malformed completion body: ") + e.what() + ": " + excerpt);
  }
}

std::map<std::string, std::string> dispatch_prompts(const std::vector<std::string>& prompts,
                                                    const std::function<std::string(const std::string&)>& send,
                                                    std::size_t in_flight) {
  std::vector<std::string> results(prompts.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < prompts.size(); i = next++) {
      try {
        results[i] = send(prompts[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(in_flight, 1, std::max<std::size_t>(prompts.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < prompts.size(); ++i) out[sha256_hex(prompts[i])] = std::move(results[i]);
  return out;
}

}  // namespace hgr
