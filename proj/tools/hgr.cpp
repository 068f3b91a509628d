// hgr: command-line front end for hypergraph recovery, alignment and evaluation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "hgr/alignment.hpp"
#include "hgr/bounds.hpp"
#include "hgr/error.hpp"
#include "hgr/generators.hpp"
#include "hgr/kg.hpp"
#include "hgr/oracle.hpp"
#include "hgr/recovery.hpp"
#include "hgr/sampling.hpp"
#include "hgr/sweep.hpp"

namespace {

using namespace hgr;
using nlohmann::ordered_json;

struct Globals {
  std::uint64_t seed = 0;
  std::string output;
  std::string log_level = "warn";
  std::string config;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Globals& g, const std::string& content) {
  if (g.output.empty() || g.output == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(g.output, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + g.output);
  out << content;
  if (!out) throw Error(ErrorKind::IoError, "write to " + g.output + " failed");
  spdlog::info("wrote {}", g.output);
}

std::string json_text(const ordered_json& doc) { return doc.dump(2) + "\n"; }

std::vector<std::string> split_csv_arg(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

constexpr const char* kFormats = R"(Formats:
  .hg   "#hg v1" header, optional "#normalized" line, then "edge <node>... <weight>" per hyperedge.
  .ds   one sample per line: the hyperedge's node tokens separated by spaces.
  .mm   optional "#mm <N> <K>" header, then "<full tokens><TAB><visible tokens> _" per record
        ("_" marks each masked slot).
  oracle JSON  {"kind":"tabular","counts":{"<visible+tokens>|<masked>":{"<a+b>":n}}}
               or {"kind":"exact","mask":"uniform1","hypergraph":"<.hg text>"}.
  anchors      "node <v1> <v2>" and "edge <a+b> <c+d>" lines.
  alignment    "<v1> <v2>" lines followed by "#cost <value>"; relabeling files use the same pairs.
  sweep CSV    structure,n,m,kappa_target,kappa_realized,L,c_pi,C_pi,N,K,seed,d_plugin,d_oracle,
               sketch_missing,sketch_spurious,meta_connected,status,runtime_ms
  KG TSV       "start<TAB>end<TAB>weight" per line.
  responses    <dir>/<sha256(prompt)>.txt holding the raw model answer.
Exit codes: 0 success, 1 domain error (kind on stderr), 2 usage error.)";

// ---------------------------------------------------------------------------

struct KgArgs {
  std::string kg;
  std::string source;
  std::size_t k = 3;
  std::size_t depth = 1;
  std::string entities;

  void add(CLI::App* cmd, bool need_kg) {
    auto* o = cmd->add_option("--kg", kg, "knowledge graph TSV");
    if (need_kg) o->required();
    cmd->add_option("--source", source, "source entity");
    cmd->add_option("--k", k, "number of most related entities")->capture_default_str();
    cmd->add_option("--d", depth, "depth cap (the source has depth 0)")->capture_default_str();
  }

  SubgraphSpec spec() const { return {source, k, depth}; }

  Subgraph extract() const {
    if (source.empty()) throw Error(ErrorKind::InvalidArgument, "--source is required with --kg");
    return extract_subgraph(ingest_edge_list(kg), spec());
  }

  std::vector<std::string> vocabulary() const {
    if (!entities.empty()) return split_csv_arg(entities);
    if (kg.empty()) throw Error(ErrorKind::InvalidArgument, "give --kg/--source or --entities");
    return extract().entities;
  }
};

ordered_json edges_json(const std::set<SimpleGraph::Edge>& edges) {
  ordered_json a = ordered_json::array();
  for (const auto& [x, y] : edges) a.push_back(x + "|" + y);
  return a;
}

int run(int argc, char** argv) {
  CLI::App app{"Weighted hypergraph recovery from samples and masked-modeling oracles"};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(kFormats);
  Globals g;
  app.add_option("--seed", g.seed, "64-bit seed for every random stream")->capture_default_str();
  app.add_option("-o,--output", g.output, "output path (stdout when absent)");
  app.add_option("--log-level", g.log_level, "trace, debug, info, warn, error, off")->capture_default_str();
  app.add_option("--config", g.config, "config document (sweep, kg-chat)");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a weighted hypergraph (.hg)");
  std::string structure = "star";
  std::size_t n = 6;
  double p = 0.2, w_min = 1.0, w_max = 1.0;
  gen->add_option("--structure", structure, "star, x, chain, wcgnm, frucht")->capture_default_str();
  gen->add_option("--n", n, "node count")->capture_default_str();
  gen->add_option("--p", p, "edge density (wcgnm)")->capture_default_str();
  gen->add_option("--w-min", w_min, "low weight")->capture_default_str();
  gen->add_option("--w-max", w_max, "high weight")->capture_default_str();
  gen->callback([&] {
    const auto s = parse_structure(structure);
    emit(g, encode(generate({s, s == Structure::Frucht ? 12 : n, p, w_min, w_max, g.seed})));
  });

  // sample
  auto* sample = app.add_subcommand("sample", "draw N i.i.d. hyperedges (.ds)");
  std::string hg_path;
  std::size_t count = 1000, k_inner = 1;
  std::string mask = "uniform1";
  sample->add_option("--hg", hg_path, "normalized hypergraph")->required();
  sample->add_option("--n", count, "number of samples N")->capture_default_str();
  sample->callback([&] { emit(g, encode_dataset(sample_dataset(read_hypergraph(hg_path), count, g.seed))); });

  // mm-sample
  auto* mm_sample = app.add_subcommand("mm-sample", "draw N hyperedges with K masked variants each (.mm)");
  mm_sample->add_option("--hg", hg_path, "normalized hypergraph")->required();
  mm_sample->add_option("--n", count, "outer draws N")->capture_default_str();
  mm_sample->add_option("--k", k_inner, "masked variants per draw K")->capture_default_str();
  mm_sample->add_option("--mask", mask, "masking strategy")->capture_default_str();
  mm_sample->callback([&] {
    const auto strategy = masking_strategy(mask);
    emit(g, encode_mm_dataset(sample_mm_dataset(read_hypergraph(hg_path), count, k_inner, *strategy, g.seed)));
  });

  // train
  auto* train = app.add_subcommand("train", "fit an MM oracle (tabular from .mm, or exact from .hg)");
  std::string mm_path;
  bool exact = false;
  train->add_option("--mm", mm_path, "masked-modeling dataset");
  train->add_flag("--exact", exact, "population posterior of --hg instead of counts");
  train->add_option("--hg", hg_path, "hypergraph for --exact");
  train->add_option("--mask", mask, "masking strategy for --exact")->capture_default_str();
  train->callback([&] {
    if (exact) {
      if (hg_path.empty()) throw CLI::ValidationError("--exact needs --hg");
      emit(g, serialize_oracle(ExactOracle(normalize(read_hypergraph(hg_path)), masking_strategy(mask))));
      return;
    }
    if (mm_path.empty()) throw CLI::ValidationError("train needs --mm or --exact --hg");
    emit(g, serialize_oracle(train_tabular(decode_mm_dataset(slurp(mm_path)))));
  });

  // recover
  auto* recover = app.add_subcommand("recover", "recover a hypergraph from a dataset or an oracle");
  std::string dataset_path, oracle_path, candidates = "pairs", aggregation = "smallest";
  recover->add_option("--dataset", dataset_path, "plug-in recovery from a .ds file");
  recover->add_option("--oracle", oracle_path, "oracle JSON");
  recover->add_option("--candidates", candidates, "'pairs' or a file with one '<a+b>' per line")
      ->capture_default_str();
  recover->add_option("--mask", mask, "masking strategy")->capture_default_str();
  recover->add_option("--aggregation", aggregation, "smallest or geomean")->capture_default_str();
  recover->callback([&] {
    if (dataset_path.empty() == oracle_path.empty())
      throw CLI::ValidationError("give exactly one of --dataset and --oracle");
    if (!dataset_path.empty()) {
      emit(g, encode(recover_from_dataset(decode_dataset(slurp(dataset_path)))));
      return;
    }
    const auto oracle = deserialize_oracle(slurp(oracle_path));
    CandidateSet cands;
    if (candidates == "pairs") {
      cands = CandidateSet::all_pairs_from(*oracle);
    } else {
      std::vector<Hyperedge> list;
      std::istringstream in(slurp(candidates));
      for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') list.push_back(Hyperedge::from_key(line));
      cands = CandidateSet::explicit_list(std::move(list));
    }
    RecoveryOptions opts;
    if (aggregation == "geomean") opts.aggregation = RatioAggregation::GeometricMean;
    else if (aggregation != "smallest") throw CLI::ValidationError("--aggregation must be smallest or geomean");
    const auto result = recover_from_oracle(*oracle, cands, *masking_strategy(mask), opts);
    if (!result.meta_connected)
      spdlog::warn("meta-graph has {} components; each was normalized jointly from its own seed",
                   result.components);
    emit(g, encode(result.hypergraph));
  });

  // report
  auto* report = app.add_subcommand("report", "compare a recovered hypergraph with the truth (JSON)");
  std::string truth_path, rec_path, relabel_path;
  report->add_option("--truth", truth_path, "ground truth .hg")->required();
  report->add_option("--rec", rec_path, "recovered .hg")->required();
  report->add_option("--relabel", relabel_path, "relabeling applied to the recovered graph first");
  report->callback([&] {
    std::optional<NodeRelabeling> phi;
    if (!relabel_path.empty()) phi = parse_relabeling(slurp(relabel_path));
    emit(g, serialize_report(recovery_report(read_hypergraph(rec_path), read_hypergraph(truth_path), phi)));
  });

  // align
  auto* align = app.add_subcommand("align", "align the nodes of two hypergraphs");
  std::string h1_path, h2_path, method = "wl-ir", anchors_path;
  std::size_t max_nodes = 8;
  align->add_option("--h1", h1_path, "first hypergraph")->required();
  align->add_option("--h2", h2_path, "second hypergraph")->required();
  align->add_option("--method", method, "exact, ids (edge anchors as the correspondence), wl-ir")
      ->capture_default_str();
  align->add_option("--anchors", anchors_path, "anchor file");
  align->add_option("--max-nodes", max_nodes, "node cap for exact search")->capture_default_str();
  align->callback([&] {
    const auto h1 = read_hypergraph(h1_path), h2 = read_hypergraph(h2_path);
    AnchorSet anchors;
    if (!anchors_path.empty()) anchors = parse_anchors(slurp(anchors_path));
    if (method == "exact") {
      if (max_nodes > 10) spdlog::warn("exact search over {}! bijections may be slow", max_nodes);
      emit(g, encode_alignment(align_exact(h1, h2, max_nodes)));
    } else if (method == "ids") {
      emit(g, encode_alignment(align_by_hyperedge_ids(h1, h2, anchors.edge_pairs)));
    } else if (method == "wl-ir") {
      const auto result = align_wl_anchored(h1, h2, anchors);
      spdlog::info("root branches {}, backtracks {}", result.stats.root_branches, result.stats.backtracks);
      if (!result.alignment) throw Error(ErrorKind::NoIsomorphism, "search exhausted without an isomorphism");
      emit(g, encode_alignment(*result.alignment));
    } else {
      throw CLI::ValidationError("--method must be exact, ids or wl-ir");
    }
  });

  // fuse
  auto* fuse = app.add_subcommand("fuse", "relabel D1 by phi and append D2 (.ds)");
  std::string d1_path, d2_path, phi_path;
  fuse->add_option("--d1", d1_path, "first dataset")->required();
  fuse->add_option("--d2", d2_path, "second dataset")->required();
  fuse->add_option("--phi", phi_path, "relabeling V1 -> V2")->required();
  fuse->callback([&] {
    emit(g, encode_dataset(fuse_datasets(decode_dataset(slurp(d1_path)), decode_dataset(slurp(d2_path)),
                                         parse_relabeling(slurp(phi_path)))));
  });

  // bounds
  auto* bounds = app.add_subcommand("bounds", "evaluate the closed-form bounds (JSON)");
  std::string kind = "mm";
  BoundsInput bi;
  std::size_t n_samples = 0;
  bounds->add_option("--kind", kind, "lower (m, N), mm (all inputs) or rr (m, kappa)")->capture_default_str();
  bounds->add_option("--m", bi.m, "edge count m")->capture_default_str();
  bounds->add_option("--N", n_samples, "sample count N (lower)");
  bounds->add_option("--kappa", bi.kappa, "range ratio")->capture_default_str();
  bounds->add_option("--L", bi.L, "MM path length bound")->capture_default_str();
  bounds->add_option("--c-pi", bi.c_pi, "smallest masking probability")->capture_default_str();
  bounds->add_option("--C-pi", bi.C_pi, "largest masking support")->capture_default_str();
  bounds->add_option("--eps", bi.epsilon, "accuracy")->capture_default_str();
  bounds->add_option("--delta", bi.delta, "failure probability")->capture_default_str();
  bounds->callback([&] {
    ordered_json doc;
    if (kind == "lower") {
      doc["m"] = bi.m;
      doc["N"] = n_samples;
      doc["lower_bound_risk"] = lower_bound_risk(static_cast<std::size_t>(bi.m), n_samples);
    } else if (kind == "mm") {
      const auto b = mm_sample_bounds(bi);
      doc["K_min"] = b.k_min;
      doc["N_min"] = b.n_min;
      doc["k_coefficient"] = b.k_coefficient;
      doc["k_log"] = b.k_log;
      doc["n_first"] = b.n_first;
      doc["n_second"] = b.n_second;
    } else if (kind == "rr") {
      const auto [lo, hi] = lemma_rr_bounds(bi.m, bi.kappa);
      doc["min_lower"] = lo;
      doc["max_upper"] = hi;
    } else {
      throw CLI::ValidationError("--kind must be lower, mm or rr");
    }
    emit(g, json_text(doc));
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a recovery sweep from --config (CSV)");
  std::size_t jobs = 1;
  sweep->add_option("--jobs", jobs, "parallel cells")->capture_default_str();
  sweep->footer(R"(Config (JSON):
  {"instances": [{"structure": "star", "n": 6, "w_min": 1, "w_max": 10}],
   "N": [1000, 10000], "K": [1], "seeds": 5, "mask": "uniform1",
   "seed": 0, "oracle": true, "record_runtime": false, "output": "sweep.csv"}
--seed, when given, replaces the config's seed. -o overrides "output".)");
  sweep->callback([&] {
    if (g.config.empty()) throw CLI::ValidationError("sweep needs --config");
    auto cfg = parse_sweep_config(slurp(g.config));
    if (app.count("--seed") > 0) cfg.base_seed = g.seed;
    if (g.output.empty()) g.output = cfg.output;
    spdlog::info("sweep config hash {:016x}", cfg.hash());
    emit(g, encode_sweep_csv(run_sweep(cfg, jobs)));
  });

  // fit
  auto* fit = app.add_subcommand("fit", "log-log least squares of mean y against x (JSON)");
  std::string csv_path, x_field = "N", y_field = "d_plugin";
  fit->add_option("--csv", csv_path, "sweep CSV")->required();
  fit->add_option("--x", x_field, "x column")->capture_default_str();
  fit->add_option("--y", y_field, "y column")->capture_default_str();
  fit->callback([&] {
    const auto result = fit_scaling(parse_csv(slurp(csv_path)), x_field, y_field);
    ordered_json doc;
    doc["x"] = x_field;
    doc["y"] = y_field;
    doc["slope"] = result.slope;
    doc["intercept"] = result.intercept;
    doc["cells"] = ordered_json::array();
    for (const auto& c : result.cells)
      doc["cells"].push_back({{"x", c.x}, {"mean", c.mean}, {"median", c.median}, {"count", c.count}});
    emit(g, json_text(doc));
  });

  // kg-ingest
  auto* kg_ingest = app.add_subcommand("kg-ingest", "normalize a KG TSV (lowercase, dedup by max weight)");
  KgArgs kga;
  std::string tsv_path;
  kg_ingest->add_option("--tsv", tsv_path, "raw TSV")->required();
  kg_ingest->callback([&] {
    const auto kg = ingest_edge_list(tsv_path);
    std::string out;
    for (const auto& [a, b, w] : kg.edges()) out += a + "\t" + b + "\t" + format_double(w) + "\n";
    spdlog::info("{} entities, {} edges", kg.entity_count(), kg.edge_count());
    emit(g, out);
  });

  // kg-extract
  auto* kg_extract = app.add_subcommand("kg-extract", "top-k depth-d subgraph around a source (JSON)");
  kga.add(kg_extract, true);
  kg_extract->callback([&] {
    const auto sub = kga.extract();
    ordered_json doc;
    doc["source"] = sub.entities.front();
    doc["k"] = kga.k;
    doc["d"] = kga.depth;
    doc["entities"] = sub.entities;
    doc["edges"] = edges_json(sub.graph.edges());
    emit(g, json_text(doc));
  });

  // kg-prompt
  auto* kg_prompt = app.add_subcommand("kg-prompt", "render the relation prompt (text)");
  kga.add(kg_prompt, false);
  kg_prompt->add_option("--entities", kga.entities, "comma-separated entities instead of --kg");
  kg_prompt->callback([&] { emit(g, render_prompt(kga.vocabulary(), kga.k) + "\n"); });

  // kg-parse
  auto* kg_parse = app.add_subcommand("kg-parse", "parse an edgelist answer (JSON)");
  std::string response_path_arg;
  kga.add(kg_parse, false);
  kg_parse->add_option("--entities", kga.entities, "comma-separated vocabulary instead of --kg");
  kg_parse->add_option("--response", response_path_arg, "answer text")->required();
  kg_parse->callback([&] {
    const auto parsed = parse_edgelist(slurp(response_path_arg), kga.vocabulary());
    ordered_json doc;
    doc["edges"] = edges_json(parsed.edges);
    doc["unparsed_lines"] = parsed.unparsed_lines;
    emit(g, json_text(doc));
  });

  // kg-eval
  auto* kg_eval = app.add_subcommand("kg-eval", "score a replayed answer against the KG subgraph (JSON)");
  std::string responses_dir, model = "replay", csv_out;
  kga.add(kg_eval, true);
  kg_eval->add_option("--responses-dir", responses_dir, "directory of <sha256(prompt)>.txt answers")->required();
  kg_eval->add_option("--model", model, "model name recorded in the report")->capture_default_str();
  kg_eval->add_option("--csv", csv_out, "append a CSV row (header written when the file is new)");
  kg_eval->callback([&] {
    const auto sub = kga.extract();
    const auto prompt = render_prompt(sub.entities, kga.k);
    const auto result = evaluate_response(sub, kga.spec(), model, read_replayed_response(responses_dir, prompt));
    if (!csv_out.empty()) {
      const bool fresh = !std::filesystem::exists(csv_out);
      std::ofstream out(csv_out, std::ios::app | std::ios::binary);
      if (!out) throw Error(ErrorKind::IoError, "cannot write " + csv_out);
      if (fresh) out << eval_csv_header() << "\n";
      out << eval_csv_row(result) << "\n";
    }
    emit(g, serialize_eval(result));
  });

  // kg-chat
  auto* kg_chat = app.add_subcommand("kg-chat", "query a chat-completion endpoint and store the answers");
  std::vector<std::string> sources;
  std::size_t in_flight = 2;
  kg_chat->add_option("--kg", kga.kg, "knowledge graph TSV")->required();
  kg_chat->add_option("--source", sources, "source entities (repeatable)")->required();
  kg_chat->add_option("--k", kga.k, "number of most related entities")->capture_default_str();
  kg_chat->add_option("--d", kga.depth, "depth cap")->capture_default_str();
  kg_chat->add_option("--responses-dir", responses_dir, "where answers are stored")->required();
  kg_chat->add_option("--in-flight", in_flight, "concurrent requests")->capture_default_str();
  kg_chat->footer(R"(Endpoint config (--config, JSON): {"base_url": "https://api.openai.com/v1",
  "model": "gpt-4", "temperature": 0, "timeout_s": 60, "api_key_env": "OPENAI_API_KEY"})");
  kg_chat->callback([&] {
    const EndpointConfig endpoint = g.config.empty() ? EndpointConfig{} : parse_endpoint_config(slurp(g.config));
    const auto kg = ingest_edge_list(kga.kg);
    std::vector<std::string> prompts;
    for (const auto& s : sources) {
      kga.source = s;
      prompts.push_back(render_prompt(extract_subgraph(kg, kga.spec()).entities, kga.k));
    }
    const auto answers =
        dispatch_prompts(prompts, [&](const std::string& pr) { return chat_completion(endpoint, pr); }, in_flight);
    std::filesystem::create_directories(responses_dir);
    std::string listing;
    for (const auto& pr : prompts) {
      const auto path = response_path(responses_dir, pr);
      std::ofstream out(path, std::ios::binary);
      if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
      out << answers.at(sha256_hex(pr));
      listing += path + "\n";
    }
    emit(g, listing);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return 0;
}

void configure_logging(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("hgr");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string_view(argv[i]) == "--log-level") spdlog::set_level(spdlog::level::from_str(argv[i + 1]));
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging(argc, argv);
  try {
    return run(argc, argv);
  } catch (const hgr::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "Error: " << e.what() << "\n";
    return 1;
  }
}
