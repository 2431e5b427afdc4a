#include "compsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace compsim {

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("percentile: empty input");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("percentile: p range");
  std::sort(values.begin(), values.end());
  const double rank = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = static_cast<std::size_t>(std::ceil(rank));
  const double frac = rank - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

namespace {

GroupKpis group_kpis(const std::vector<PerUeStats>& members) {
  GroupKpis g;
  g.population = static_cast<int>(members.size());
  if (members.empty()) return g;

  std::vector<double> throughputs;
  double sum_tput = 0.0, sum_cqi = 0.0, sum_rsrp = 0.0;
  double bler_weighted = 0.0;
  std::int64_t blocks = 0;
  for (const auto& ue : members) {
    throughputs.push_back(ue.throughput_mbps);
    sum_tput += ue.throughput_mbps;
    sum_cqi += ue.mean_cqi;
    sum_rsrp += ue.mean_rsrp_dbm;
    bler_weighted += ue.mean_bler * static_cast<double>(ue.n_blocks);
    blocks += ue.n_blocks;
  }
  const auto n = static_cast<double>(members.size());
  g.peak_mbps = percentile(throughputs, 0.95);
  g.average_mbps = sum_tput / n;
  g.edge_mbps = percentile(throughputs, 0.05);
  g.mean_cqi = sum_cqi / n;
  g.mean_cqi_rounded = static_cast<int>(std::lround(*g.mean_cqi));
  g.mean_rsrp_dbm = sum_rsrp / n;
  if (blocks > 0) g.mean_bler = bler_weighted / static_cast<double>(blocks);
  return g;
}

}  // namespace

KpiSummary aggregate(ScenarioLabel scenario, const std::string& mode,
                     const std::vector<PerUeStats>& per_ue) {
  KpiSummary summary;
  summary.scenario = scenario;
  summary.mode = mode;

  std::vector<PerUeStats> macro, pico;
  for (const auto& ue : per_ue) {
    (ue.pico_served ? pico : macro).push_back(ue);
  }
  summary.macro = group_kpis(macro);
  summary.pico = group_kpis(pico);
  summary.overall = group_kpis(per_ue);
  return summary;
}

namespace {

struct MetricRef {
  const char* name;
  std::optional<double> GroupKpis::* field;
  bool lower_is_better;
};

constexpr MetricRef kMetrics[] = {
    {"peak_mbps", &GroupKpis::peak_mbps, false},
    {"average_mbps", &GroupKpis::average_mbps, false},
    {"edge_mbps", &GroupKpis::edge_mbps, false},
    {"mean_bler", &GroupKpis::mean_bler, true},
    {"mean_cqi", &GroupKpis::mean_cqi, false},
    {"mean_rsrp_dbm", &GroupKpis::mean_rsrp_dbm, false},
};

}  // namespace

std::vector<KpiDelta> compare_runs(const KpiSummary& baseline,
                                   const KpiSummary& dynamic) {
  if (baseline.scenario != dynamic.scenario) {
    throw std::invalid_argument("compare_runs: scenario mismatch");
  }

  const std::pair<const char*, const GroupKpis KpiSummary::*> groups[] = {
      {"macro", &KpiSummary::macro},
      {"pico", &KpiSummary::pico},
      {"overall", &KpiSummary::overall},
  };

  std::vector<KpiDelta> table;
  for (const auto& [group_name, group_field] : groups) {
    const GroupKpis& b = baseline.*group_field;
    const GroupKpis& d = dynamic.*group_field;
    for (const auto& metric : kMetrics) {
      KpiDelta row;
      row.group = group_name;
      row.metric = metric.name;
      row.baseline = b.*metric.field;
      row.dynamic = d.*metric.field;
      row.lower_is_better = metric.lower_is_better;
      if (row.baseline && row.dynamic) {
        row.delta = *row.dynamic - *row.baseline;
        row.improved = metric.lower_is_better ? *row.delta < 0.0
                                              : *row.delta > 0.0;
      }
      table.push_back(row);
    }
  }
  return table;
}

}  // namespace compsim
