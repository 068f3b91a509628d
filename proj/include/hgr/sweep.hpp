#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hgr/generators.hpp"

namespace hgr {

struct SweepInstance {
  Structure structure = Structure::Star;
  std::size_t n = 6;
  double p = 0.2;
  double w_min = 1;
  double w_max = 1;
};

/// JSON document:
///   {
///     "instances": [{"structure": "star", "n": 6, "p": 0.2, "w_min": 1, "w_max": 10}],
///     "N": [1000, 10000],
///     "K": [1],
///     "seeds": 5,
///     "mask": "uniform1",
///     "seed": 0,                 // optional base seed
///     "oracle": true,            // optional; false skips the MM path
///     "record_runtime": false,   // optional; false writes 0 so CSVs stay byte-stable
///     "output": "sweep.csv"      // optional
///   }
/// "p" is read for wcgnm only and "w_min"/"w_max" default to 1.
struct SweepConfig {
  std::vector<SweepInstance> instances;
  std::vector<std::size_t> n_grid;
  std::vector<std::size_t> k_grid{1};
  std::size_t seeds = 1;
  std::string mask = "uniform1";
  std::uint64_t base_seed = 0;
  bool run_oracle = true;
  bool record_runtime = false;
  std::string output;

  /// Throws InvalidArgument on empty grids, zero seeds or zero N/K values.
  void validate() const;
  /// Canonical JSON (sorted keys, no output path).
  std::string canonical() const;
  /// FNV-1a of canonical().
  std::uint64_t hash() const;
};

/// Throws ParseError for malformed documents.
SweepConfig parse_sweep_config(std::string_view json_text);

struct SweepRow {
  std::string structure;
  std::size_t n = 0;
  std::size_t m = 0;
  double kappa_target = 0;
  double kappa_realized = 0;
  std::optional<std::size_t> L;  // empty when the meta-graph is disconnected
  double c_pi = 0;
  std::size_t C_pi = 0;
  std::size_t N = 0;
  std::size_t K = 0;
  std::size_t seed = 0;  // seed index within the cell
  std::optional<double> d_plugin;
  std::optional<double> d_oracle;
  std::optional<std::size_t> sketch_missing;
  std::optional<std::size_t> sketch_spurious;
  std::optional<bool> meta_connected;
  std::string status = "ok";  // "ok" or the error kind that stopped the row
  double runtime_ms = 0;
};

/// Cells are (instance, N, K) in that nesting order; each cell yields one row per seed.
/// Instance weights come from stream (hash, "sweep-instance", instance·2³² + seed) and the
/// MM data from (hash, "sweep-cell", cell·2³² + seed). Rows come back in cell order
/// whatever `jobs` is.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg, std::size_t jobs = 1);

std::string sweep_csv_header();
std::string encode_sweep_csv(const std::vector<SweepRow>& rows);

/// Minimal CSV table: comma-separated, no quoting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Throws InvalidArgument for unknown columns.
  std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);

struct CellStat {
  double x = 0;
  double mean = 0;
  double median = 0;
  std::size_t count = 0;
};

/// Groups rows by x, skipping rows whose y cell is empty. Ascending x.
std::vector<CellStat> summarize(const CsvTable& table, std::string_view x_field, std::string_view y_field);

struct ScalingFit {
  double slope = 0;
  double intercept = 0;
  std::vector<CellStat> cells;
};

/// Ordinary least squares of log(mean y) on log(x) over distinct x.
/// Throws InvalidForLogFit for nonpositive values and InvalidArgument below 3 distinct x.
ScalingFit fit_scaling(const CsvTable& table, std::string_view x_field, std::string_view y_field);
ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& xy);

}  // namespace hgr
