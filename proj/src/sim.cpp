#include "compsim/sim.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <utility>

#include "compsim/link_adaptation.hpp"
#include "compsim/propagation.hpp"
#include "compsim/rng.hpp"
#include "compsim/scheduler.hpp"

namespace compsim {

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Baseline:
      return "baseline";
    case RunMode::Dynamic:
      return "dynamic";
    case RunMode::Both:
      return "both";
  }
  return "unknown";
}

std::vector<GridPoint> GridSpec::build() const {
  if (kernels.empty() || c_values.empty() || scales.empty() ||
      normalize.empty()) {
    throw std::invalid_argument("grid: every dimension needs at least one value");
  }
  std::vector<KernelSpec> specs;
  for (const auto& name : kernels) {
    KernelSpec spec;
    if (name == "linear") {
      spec.kind = KernelSpec::Kind::Linear;
    } else if (name == "gaussian") {
      spec.kind = KernelSpec::Kind::Gaussian;
    } else if (name == "poly2" || name == "poly3" || name == "poly4") {
      spec.kind = KernelSpec::Kind::Polynomial;
      spec.degree = name.back() - '0';
    } else {
      throw std::invalid_argument("grid: unknown kernel name '" + name + "'");
    }
    specs.push_back(spec);
  }

  std::vector<GridPoint> grid;
  for (const auto& spec : specs) {
    for (const double scale : scales) {
      if (scale <= 0.0) throw std::invalid_argument("grid: scale must be > 0");
      for (const double c : c_values) {
        if (c <= 0.0) throw std::invalid_argument("grid: C must be > 0");
        for (const bool norm : normalize) {
          GridPoint p;
          p.kernel = spec;
          p.kernel.scale = scale;
          p.c = c;
          p.normalize = norm;
          grid.push_back(p);
        }
      }
    }
  }
  return grid;
}

void RunConfig::validate() const {
  if (n_ttis < 1) throw std::invalid_argument("n_ttis: must be >= 1");
  if (t_comp < 1) throw std::invalid_argument("t_comp: must be >= 1");
  if (epsilon <= 0.0 || epsilon >= 1.0) {
    throw std::invalid_argument("epsilon: must lie in (0, 1)");
  }
  if (!std::isfinite(sinr_min_db)) {
    throw std::invalid_argument("sinr_min: must be finite");
  }
  if (r_train <= 0.0 || r_train >= 1.0) {
    throw std::invalid_argument("r_train: must lie in (0, 1)");
  }
  if (cv_k < 2) throw std::invalid_argument("cv_k: must be >= 2");
  if (cqi_delay_ttis != 0 && cqi_delay_ttis != 1) {
    throw std::invalid_argument("cqi_delay: must be 0 or 1");
  }
  if (output_dir.empty()) throw std::invalid_argument("out: must be nonempty");
  try {
    (void)grid.build();
  } catch (const std::invalid_argument&) {
    throw;
  }
}

namespace {

ModeResult run_mode(const RunConfig& cfg, bool dynamic_mode,
                    const Scenario& scenario,
                    const std::vector<UserEquipment>& ues,
                    const LinkTable& links,
                    const std::vector<GridPoint>& grid) {
  const int q = static_cast<int>(ues.size());
  const int n_streams = 2;

  // per-UE static link endpoints; the cooperating point is fixed because
  // RSRP carries no fading
  std::vector<int> serving(q), second(q);
  std::vector<double> serving_rsrp(q);
  for (int u = 0; u < q; ++u) {
    serving[u] = ues[static_cast<std::size_t>(u)].serving_cell;
    second[u] = links.strongest_other_cell(u, serving[u]);
    serving_rsrp[u] = links.at(serving[u], u).rsrp_dbm;
  }

  // identical fading seeds in both modes keep the A/B comparison pure
  std::vector<std::array<FadingProcess, 2>> fading;
  fading.reserve(static_cast<std::size_t>(q));
  for (int u = 0; u < q; ++u) {
    fading.push_back(
        {FadingProcess(substream_seed(cfg.seed, "fading",
                                      static_cast<std::uint64_t>(u), 0)),
         FadingProcess(substream_seed(cfg.seed, "fading",
                                      static_cast<std::uint64_t>(u), 1))});
  }

  ThroughputLedger ledger(q);
  std::vector<std::array<double, 2>> snr_eff(q);
  std::vector<std::array<int, 2>> cqi_meas(q), cqi_used(q), cqi_prev(q);

  std::vector<UeReport> window_reports;
  bool comp_enabled = false;
  std::vector<CompDecision> decisions;

  ModeResult result;
  result.mode_name = dynamic_mode ? "dynamic" : "baseline";
  result.trace.reserve(static_cast<std::size_t>(cfg.n_ttis));
  result.snr_cqi.reserve(static_cast<std::size_t>(cfg.n_ttis) * q);

  std::vector<double> kpi_sum_cqi(q, 0.0);
  std::vector<double> kpi_bler_sum(q, 0.0);
  std::vector<std::int64_t> kpi_blocks(q, 0);

  for (int t = 0; t < cfg.n_ttis; ++t) {
    for (int u = 0; u < q; ++u) {
      for (int s = 0; s < n_streams; ++s) {
        const double offset = fading[static_cast<std::size_t>(u)]
                                  [static_cast<std::size_t>(s)].step();
        const int cell = s == 0 ? serving[u] : second[u];
        snr_eff[u][static_cast<std::size_t>(s)] =
            links.at(cell, u).wideband_snr_db + offset;
        cqi_meas[u][static_cast<std::size_t>(s)] =
            snr_to_cqi(snr_eff[u][static_cast<std::size_t>(s)]);
      }
    }

    if (t % cfg.t_comp == 0) {
      const int window_index = t / cfg.t_comp;
      std::vector<double> snrs(static_cast<std::size_t>(q));
      for (int u = 0; u < q; ++u) snrs[static_cast<std::size_t>(u)] = snr_eff[u][0];
      const bool baseline_enabled =
          baseline_rule(snrs, cfg.sinr_min_db, cfg.baseline_aggregation);

      CompDecision decision;
      if (!dynamic_mode || window_reports.empty()) {
        // baseline mode, or the bootstrap window before any labels exist
        decision.window_index = window_index;
        decision.enabled = baseline_enabled;
        decision.source = DecisionSource::BaselineRule;
      } else {
        DecideContext ctx;
        ctx.epsilon = cfg.epsilon;
        ctx.r_train = cfg.r_train;
        ctx.cv_k = cfg.cv_k;
        ctx.split_seed = substream_seed(
            cfg.seed, "split", static_cast<std::uint64_t>(window_index));
        ctx.cv_seed = substream_seed(
            cfg.seed, "cv", static_cast<std::uint64_t>(window_index));
        ctx.grid = &grid;
        ctx.baseline_enabled = baseline_enabled;
        decision = decide(collect_window(window_reports), window_index, ctx);
      }
      comp_enabled = decision.enabled;
      decisions.push_back(decision);
      window_reports.clear();
    }

    for (int u = 0; u < q; ++u) {
      for (int s = 0; s < n_streams; ++s) {
        cqi_used[u][static_cast<std::size_t>(s)] =
            (cfg.cqi_delay_ttis == 0 || t == 0)
                ? cqi_meas[u][static_cast<std::size_t>(s)]
                : cqi_prev[u][static_cast<std::size_t>(s)];
      }
    }

    if (t == 0) {
      for (int u = 0; u < q; ++u) {
        ledger.seed_average(u, delivered_bits(kNumPrbs, cqi_used[u][0], 0.0));
      }
    }

    for (const auto& cell : scenario.cells) {
      std::vector<PfCandidate> candidates;
      for (int u = 0; u < q; ++u) {
        if (serving[u] == cell.id) {
          candidates.push_back(
              {u, 0, delivered_bits(kNumPrbs, cqi_used[u][0], 0.0)});
        }
        if (comp_enabled && cfg.stream2_charged && second[u] == cell.id) {
          candidates.push_back(
              {u, 1, delivered_bits(kNumPrbs, cqi_used[u][1], 0.0)});
        }
      }
      const Allocation alloc = pf_schedule(t, cell.id, candidates, ledger);
      for (const auto& [key, n_prbs] : prb_counts(alloc)) {
        const auto [u, s] = key;
        const double block_bler =
            bler(snr_eff[u][static_cast<std::size_t>(s)],
                 cqi_used[u][static_cast<std::size_t>(s)]);
        ledger.add_delivered(
            u, delivered_bits(n_prbs, cqi_used[u][static_cast<std::size_t>(s)],
                              block_bler));
        kpi_bler_sum[static_cast<std::size_t>(u)] += block_bler;
        ++kpi_blocks[static_cast<std::size_t>(u)];
      }

      // uncharged variant: stream 2 mirrors the serving allocation without
      // consuming this cell's PRBs
      if (comp_enabled && !cfg.stream2_charged) {
        for (const auto& [key, n_prbs] : prb_counts(alloc)) {
          const auto [u, s] = key;
          if (s != 0 || second[u] < 0) continue;
          const double bler2 = bler(snr_eff[u][1], cqi_used[u][1]);
          ledger.add_delivered(u,
                               delivered_bits(n_prbs, cqi_used[u][1], bler2));
          kpi_bler_sum[static_cast<std::size_t>(u)] += bler2;
          ++kpi_blocks[static_cast<std::size_t>(u)];
        }
      }
    }
    ledger.commit_tti();

    const auto& last = decisions.back();
    for (int u = 0; u < q; ++u) {
      double bler_obs = bler(snr_eff[u][0], cqi_used[u][0]);
      if (comp_enabled) {
        bler_obs = 0.5 * (bler_obs + bler(snr_eff[u][1], cqi_used[u][1]));
      }
      UeReport report;
      report.tti = t;
      report.ue_id = u;
      report.cqi = cqi_meas[u][0];
      report.rsrp_dbm = serving_rsrp[static_cast<std::size_t>(u)];
      report.bler_observed = bler_obs;
      report.label = bler_obs <= 0.1 ? 1 : 0;
      window_reports.push_back(report);

      kpi_sum_cqi[static_cast<std::size_t>(u)] += cqi_meas[u][0];
      result.snr_cqi.push_back({t, u, snr_eff[u][0], cqi_meas[u][0]});
    }
    result.trace.push_back({t, comp_enabled, last.source, last.err});

    cqi_prev = cqi_meas;
  }

  result.per_ue.reserve(static_cast<std::size_t>(q));
  for (int u = 0; u < q; ++u) {
    PerUeStats stats;
    stats.ue_id = u;
    stats.pico_served =
        scenario.cells[static_cast<std::size_t>(serving[u])].kind ==
        CellKind::Pico;
    stats.throughput_mbps =
        ledger.cumulative_bits(u) / (static_cast<double>(cfg.n_ttis) * 1000.0);
    stats.mean_cqi =
        kpi_sum_cqi[static_cast<std::size_t>(u)] / cfg.n_ttis;
    stats.mean_rsrp_dbm = serving_rsrp[static_cast<std::size_t>(u)];
    const auto blocks = kpi_blocks[static_cast<std::size_t>(u)];
    stats.mean_bler =
        blocks > 0 ? kpi_bler_sum[static_cast<std::size_t>(u)] / blocks : 0.0;
    stats.n_blocks = blocks;
    result.per_ue.push_back(stats);
  }
  result.decisions = std::move(decisions);
  result.kpis = aggregate(scenario.label, result.mode_name, result.per_ue);
  return result;
}

}  // namespace

RunResult run(const RunConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();

  RunResult result;
  result.config = config;
  result.scenario = build_scenario(config.scenario, config.seed);
  result.ues = drop_ues(result.scenario, result.scenario.n_ues, config.seed);
  const LinkTable links(result.scenario, result.ues, config.seed);
  const std::vector<GridPoint> grid = config.grid.build();

  if (config.mode != RunMode::Dynamic) {
    result.baseline =
        run_mode(config, false, result.scenario, result.ues, links, grid);
  }
  if (config.mode != RunMode::Baseline) {
    result.dynamic =
        run_mode(config, true, result.scenario, result.ues, links, grid);
  }
  result.wall_clock_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - started)
          .count();
  return result;
}

}  // namespace compsim
