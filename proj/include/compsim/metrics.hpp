#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "compsim/geometry.hpp"

namespace compsim {

// Linear interpolation between order statistics at rank p * (n - 1).
// p in [0, 1]; throws on an empty input.
double percentile(std::vector<double> values, double p);

struct PerUeStats {
  int ue_id = -1;
  bool pico_served = false;
  double throughput_mbps = 0.0;
  double mean_cqi = 0.0;       // over all reports
  double mean_rsrp_dbm = 0.0;  // serving link, static per run
  double mean_bler = 0.0;      // over transmitted blocks; 0 if none
  std::int64_t n_blocks = 0;   // transmitted blocks, for pooled BLER
};

// Empty groups carry nullopt, never zero.
struct GroupKpis {
  int population = 0;
  std::optional<double> peak_mbps;     // 95th percentile
  std::optional<double> average_mbps;  // mean
  std::optional<double> edge_mbps;     // 5th percentile
  std::optional<double> mean_bler;     // pooled over transmitted blocks
  std::optional<double> mean_cqi;
  std::optional<int> mean_cqi_rounded;
  std::optional<double> mean_rsrp_dbm;
};

struct KpiSummary {
  ScenarioLabel scenario = ScenarioLabel::A;
  std::string mode;  // "baseline" or "dynamic"
  GroupKpis macro;
  GroupKpis pico;
  GroupKpis overall;
};

KpiSummary aggregate(ScenarioLabel scenario, const std::string& mode,
                     const std::vector<PerUeStats>& per_ue);

struct KpiDelta {
  std::string group;   // "macro", "pico", "overall"
  std::string metric;  // "peak_mbps", "average_mbps", ...
  std::optional<double> baseline;
  std::optional<double> dynamic;
  std::optional<double> delta;  // dynamic - baseline
  bool lower_is_better = false;
  bool improved = false;
};

// Side-by-side deltas per (group, metric). Throws on scenario mismatch.
std::vector<KpiDelta> compare_runs(const KpiSummary& baseline,
                                   const KpiSummary& dynamic);

}  // namespace compsim
