#include "hgr/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>

#include <json.hpp>

#include "hgr/error.hpp"
#include "hgr/oracle.hpp"
#include "hgr/recovery.hpp"
#include "hgr/rng.hpp"
#include "hgr/sampling.hpp"
#include "text_util.hpp"

namespace hgr {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config

void SweepConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::InvalidArgument, what);
  };
  require(!instances.empty(), "sweep needs at least one instance");
  require(!n_grid.empty(), "sweep needs a nonempty N grid");
  require(!k_grid.empty(), "sweep needs a nonempty K grid");
  require(seeds >= 1, "sweep needs at least one seed");
  for (auto n : n_grid) require(n >= 1, "N values must be positive");
  for (auto k : k_grid) require(k >= 1, "K values must be positive");
  for (const auto& inst : instances) {
    require(inst.w_min > 0 && inst.w_max > 0, "instance weights must be positive");
    require(inst.n >= 2, "instances need at least two nodes");
  }
  masking_strategy(mask);
}

std::string SweepConfig::canonical() const {
  json doc;
  json list = json::array();
  for (const auto& inst : instances) {
    json j;
    j["structure"] = std::string(to_string(inst.structure));
    j["n"] = inst.n;
    if (inst.structure == Structure::Wcgnm) j["p"] = inst.p;
    j["w_min"] = inst.w_min;
    j["w_max"] = inst.w_max;
    list.push_back(std::move(j));
  }
  doc["instances"] = std::move(list);
  doc["N"] = n_grid;
  doc["K"] = k_grid;
  doc["seeds"] = seeds;
  doc["mask"] = mask;
  doc["seed"] = base_seed;
  doc["oracle"] = run_oracle;
  return doc.dump();  // nlohmann::json objects keep keys sorted
}

std::uint64_t SweepConfig::hash() const { return fnv1a64(canonical()); }

SweepConfig parse_sweep_config(std::string_view json_text) {
  SweepConfig cfg;
  try {
    const json doc = json::parse(json_text);
    for (const auto& j : doc.at("instances")) {
      SweepInstance inst;
      inst.structure = parse_structure(j.at("structure").get<std::string>());
      inst.n = j.at("n").get<std::size_t>();
      inst.p = j.value("p", 0.2);
      inst.w_min = j.value("w_min", 1.0);
      inst.w_max = j.value("w_max", 1.0);
      cfg.instances.push_back(inst);
    }
    cfg.n_grid = doc.at("N").get<std::vector<std::size_t>>();
    if (doc.contains("K")) cfg.k_grid = doc.at("K").get<std::vector<std::size_t>>();
    cfg.seeds = doc.value("seeds", std::size_t{1});
    cfg.mask = doc.value("mask", std::string("uniform1"));
    cfg.base_seed = doc.value("seed", std::uint64_t{0});
    cfg.run_oracle = doc.value("oracle", true);
    cfg.record_runtime = doc.value("record_runtime", false);
    cfg.output = doc.value("output", std::string());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("sweep config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------
// Running

namespace {

struct Cell {
  std::size_t instance;
  std::size_t n;
  std::size_t k;
};

SweepRow run_row(const SweepConfig& cfg, std::uint64_t hash, const Cell& cell, std::size_t cell_index,
                 std::size_t seed_index, const MaskingStrategy& strategy) {
  const auto started = std::chrono::steady_clock::now();
  const SweepInstance& inst = cfg.instances[cell.instance];
  SweepRow row;
  row.structure = std::string(to_string(inst.structure));
  row.n = inst.n;
  row.kappa_target = inst.w_max / inst.w_min;
  row.N = cell.n;
  row.K = cell.k;
  row.seed = seed_index;

  try {
    GeneratorSpec spec{inst.structure, inst.n, inst.p, inst.w_min, inst.w_max,
                       derive_stream(hash, "sweep-instance", (std::uint64_t{cell.instance} << 32) | seed_index)};
    const WeightedHypergraph truth = generate(spec);
    row.m = truth.edge_count();
    row.kappa_realized = truth.range_ratio();
    const auto bound = mm_path_length_bound(build_meta_graph(truth, strategy));
    if (bound.connected) row.L = bound.L;
    const auto constants = strategy_constants(truth, strategy);
    row.c_pi = constants.c_pi;
    row.C_pi = constants.C_pi;

    const MMDataset data =
        sample_mm_dataset(truth, cell.n, cell.k, strategy,
                          derive_stream(hash, "sweep-cell", (std::uint64_t{cell_index} << 32) | seed_index));
    row.d_plugin = dissimilarity(recover_from_dataset(data.outer_samples()), truth);

    if (cfg.run_oracle) {
      const TabularOracle oracle = train_tabular(data);
      const auto recovered = recover_from_oracle(oracle, CandidateSet::all_pairs_from(oracle), strategy);
      const auto report = recovery_report(recovered.hypergraph, truth, std::nullopt, recovered.meta_connected);
      row.d_oracle = report.weighted_error;
      row.sketch_missing = report.sketch_missing.size();
      row.sketch_spurious = report.sketch_spurious.size();
      row.meta_connected = report.meta_connected;
    }
  } catch (const Error& e) {
    row.status = std::string(to_string(e.kind()));
  }
  if (cfg.record_runtime)
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg, std::size_t jobs) {
  cfg.validate();
  const auto strategy = masking_strategy(cfg.mask);
  const std::uint64_t hash = cfg.hash();

  std::vector<Cell> cells;
  for (std::size_t i = 0; i < cfg.instances.size(); ++i)
    for (auto n : cfg.n_grid)
      for (auto k : cfg.k_grid) cells.push_back({i, n, k});

  const std::size_t total = cells.size() * cfg.seeds;
  std::vector<SweepRow> rows(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < total; t = next++) {
      const std::size_t cell = t / cfg.seeds, seed = t % cfg.seeds;
      rows[t] = run_row(cfg, hash, cells[cell], cell, seed, *strategy);
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(total, 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < jobs; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

std::string sweep_csv_header() {
  return "structure,n,m,kappa_target,kappa_realized,L,c_pi,C_pi,N,K,seed,d_plugin,d_oracle,"
         "sketch_missing,sketch_spurious,meta_connected,status,runtime_ms";
}

std::string encode_sweep_csv(const std::vector<SweepRow>& rows) {
  auto opt_num = [](const auto& v) { return v ? std::to_string(*v) : std::string(); };
  auto opt_double = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  std::string out = sweep_csv_header() + "\n";
  for (const auto& r : rows) {
    const std::vector<std::string> fields{
        r.structure,
        std::to_string(r.n),
        std::to_string(r.m),
        format_double(r.kappa_target),
        format_double(r.kappa_realized),
        opt_num(r.L),
        format_double(r.c_pi),
        std::to_string(r.C_pi),
        std::to_string(r.N),
        std::to_string(r.K),
        std::to_string(r.seed),
        opt_double(r.d_plugin),
        opt_double(r.d_oracle),
        opt_num(r.sketch_missing),
        opt_num(r.sketch_spurious),
        r.meta_connected ? (*r.meta_connected ? "true" : "false") : "",
        r.status,
        format_double(r.runtime_ms),
    };
    out += detail::join(fields, ",") + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV and fitting

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw Error(ErrorKind::InvalidArgument, "no column named '" + std::string(name) + "'");
}

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  bool first = true;
  std::size_t line_no = 0;
  for (auto line : detail::split_on(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<std::string> fields;
    for (auto f : detail::split_on(line, ',')) fields.emplace_back(f);
    if (first) {
      t.header = std::move(fields);
      first = false;
      continue;
    }
    if (fields.size() != t.header.size())
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                             std::to_string(t.header.size()) + " fields");
    t.rows.push_back(std::move(fields));
  }
  if (first) throw Error(ErrorKind::ParseError, "CSV has no header");
  return t;
}

std::vector<CellStat> summarize(const CsvTable& table, std::string_view x_field, std::string_view y_field) {
  const std::size_t xi = table.column(x_field), yi = table.column(y_field);
  std::map<double, std::vector<double>> groups;
  for (const auto& row : table.rows) {
    if (row[yi].empty()) continue;
    double x = 0, y = 0;
    if (!detail::parse_double(row[xi], x) || !detail::parse_double(row[yi], y))
      throw Error(ErrorKind::ParseError, "non-numeric value in '" + std::string(x_field) + "' or '" +
                                             std::string(y_field) + "'");
    groups[x].push_back(y);
  }
  std::vector<CellStat> out;
  for (auto& [x, ys] : groups) {
    CellStat s;
    s.x = x;
    s.count = ys.size();
    double sum = 0;
    for (double y : ys) sum += y;
    s.mean = sum / static_cast<double>(ys.size());
    std::sort(ys.begin(), ys.end());
    const std::size_t h = ys.size() / 2;
    s.median = ys.size() % 2 ? ys[h] : 0.5 * (ys[h - 1] + ys[h]);
    out.push_back(s);
  }
  return out;
}

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& xy) {
  std::map<double, std::pair<double, std::size_t>> groups;
  for (const auto& [x, y] : xy) {
    if (!(x > 0) || !(y > 0))
      throw Error(ErrorKind::InvalidForLogFit, "log-log fit needs positive values, got (" + format_double(x) +
                                                   ", " + format_double(y) + ")");
    auto& g = groups[x];
    g.first += y;
    ++g.second;
  }
  if (groups.size() < 3)
    throw Error(ErrorKind::InvalidArgument, "log-log fit needs at least 3 distinct x values");

  ScalingFit fit;
  double sx = 0, sy = 0;
  std::vector<std::pair<double, double>> pts;
  for (const auto& [x, g] : groups) {
    const double mean = g.first / static_cast<double>(g.second);
    fit.cells.push_back({x, mean, mean, g.second});
    pts.emplace_back(std::log(x), std::log(mean));
    sx += pts.back().first;
    sy += pts.back().second;
  }
  const double k = static_cast<double>(pts.size());
  const double mx = sx / k, my = sy / k;
  double sxx = 0, sxy = 0;
  for (const auto& [lx, ly] : pts) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

ScalingFit fit_scaling(const CsvTable& table, std::string_view x_field, std::string_view y_field) {
  const std::size_t xi = table.column(x_field), yi = table.column(y_field);
  std::vector<std::pair<double, double>> xy;
  for (const auto& row : table.rows) {
    if (row[yi].empty()) continue;
    double x = 0, y = 0;
    if (!detail::parse_double(row[xi], x) || !detail::parse_double(row[yi], y))
      throw Error(ErrorKind::ParseError, "non-numeric value in '" + std::string(x_field) + "' or '" +
                                             std::string(y_field) + "'");
    xy.emplace_back(x, y);
  }
  auto fit = fit_scaling(xy);
  // Medians come from the full per-x groups.
  const auto stats = summarize(table, x_field, y_field);
  for (std::size_t i = 0; i < fit.cells.size() && i < stats.size(); ++i) fit.cells[i].median = stats[i].median;
  return fit;
}

}  // namespace hgr
