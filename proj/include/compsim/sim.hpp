#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "compsim/comp_controller.hpp"
#include "compsim/geometry.hpp"
#include "compsim/metrics.hpp"
#include "compsim/model_selection.hpp"

namespace compsim {

inline constexpr const char* kVersion = "compsim 1.0.0";

enum class RunMode { Baseline, Dynamic, Both };

std::string to_string(RunMode mode);

// Hyperparameter search space, configurable per run. Kernel names:
// linear, gaussian, poly2, poly3, poly4.
struct GridSpec {
  std::vector<std::string> kernels = {"linear", "gaussian", "poly2", "poly3",
                                      "poly4"};
  std::vector<double> c_values = {0.1, 1.0, 10.0, 100.0};
  std::vector<double> scales = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<bool> normalize = {false, true};

  std::vector<GridPoint> build() const;  // throws on unknown kernel name
};

struct RunConfig {
  ScenarioLabel scenario = ScenarioLabel::A;
  RunMode mode = RunMode::Both;
  std::uint64_t seed = 0;
  int n_ttis = 60;
  int t_comp = 3;
  double epsilon = 0.12;
  double sinr_min_db = 3.0;
  double r_train = 0.7;
  int cv_k = 5;
  BaselineAggregation baseline_aggregation = BaselineAggregation::Median;
  // CQI applied at TTI t was measured at t - cqi_delay_ttis (0 or 1).
  int cqi_delay_ttis = 1;
  // When set, the cooperating cell's PF pass includes visiting CoMP
  // streams, so stream 2 consumes that cell's PRBs. When clear, stream 2
  // mirrors the serving allocation without charging the cooperating cell.
  bool stream2_charged = true;
  GridSpec grid;
  std::string output_dir = "out";

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct TtiTrace {
  int tti = 0;
  bool comp_enabled = false;
  DecisionSource source = DecisionSource::BaselineRule;
  std::optional<double> err;
};

// Stream-1 effective SNR and the CQI it maps to, one row per UE per TTI.
struct SnrCqiSample {
  int tti = 0;
  int ue_id = -1;
  double snr_db = 0.0;
  int cqi = 1;
};

struct ModeResult {
  std::string mode_name;  // "baseline" or "dynamic"
  KpiSummary kpis;
  std::vector<PerUeStats> per_ue;
  std::vector<CompDecision> decisions;
  std::vector<TtiTrace> trace;
  std::vector<SnrCqiSample> snr_cqi;
};

struct RunResult {
  RunConfig config;
  Scenario scenario;
  std::vector<UserEquipment> ues;
  std::optional<ModeResult> baseline;
  std::optional<ModeResult> dynamic;
  double wall_clock_ms = 0.0;  // volatile: excluded from determinism checks
};

// Executes the configured TTI loop. With mode = both, the baseline and
// dynamic passes share geometry, shadowing, and fading draws; only the
// CoMP state and its consequences differ.
RunResult run(const RunConfig& config);

// Writes manifest.json plus per-mode kpis/per_ue/trace/plotdata files under
// config.output_dir (mode subdirectories when both modes ran).
void write_outputs(const RunResult& result);

// Usage or validation failure from the command line. exit_code 0 carries
// help text.
struct CliError : std::runtime_error {
  CliError(const std::string& message, int code)
      : std::runtime_error(message), exit_code(code) {}
  int exit_code;
};

// Parses flags (and an optional --config file, flags taking precedence)
// into a validated RunConfig. Throws CliError on unknown flags, bad values,
// or --help.
RunConfig parse_cli(const std::vector<std::string>& args);

}  // namespace compsim
