#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "compsim/link_adaptation.hpp"
#include "compsim/metrics.hpp"
#include "compsim/sim.hpp"

namespace compsim {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string f2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string opt_g17(const std::optional<double>& v) {
  return v ? g17(*v) : std::string();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

json group_json(const GroupKpis& g) {
  json j;
  j["population"] = g.population;
  const auto put = [&j](const char* key, const std::optional<double>& v) {
    if (v) {
      j[key] = *v;
    } else {
      j[key] = nullptr;
    }
  };
  put("peak_mbps", g.peak_mbps);
  put("average_mbps", g.average_mbps);
  put("edge_mbps", g.edge_mbps);
  put("mean_bler", g.mean_bler);
  put("mean_cqi", g.mean_cqi);
  put("mean_rsrp_dbm", g.mean_rsrp_dbm);
  if (g.mean_cqi_rounded) {
    j["mean_cqi_rounded"] = *g.mean_cqi_rounded;
  } else {
    j["mean_cqi_rounded"] = nullptr;
  }
  return j;
}

json kpis_json(const KpiSummary& s) {
  json j;
  j["scenario"] = to_string(s.scenario);
  j["mode"] = s.mode;
  j["macro"] = group_json(s.macro);
  j["pico"] = group_json(s.pico);
  j["overall"] = group_json(s.overall);
  return j;
}

std::string group_csv_row(const std::string& name, const GroupKpis& g) {
  std::string row = name + "," + std::to_string(g.population) + ",";
  row += opt_g17(g.peak_mbps) + ",";
  row += opt_g17(g.average_mbps) + ",";
  row += opt_g17(g.edge_mbps) + ",";
  row += g.mean_bler ? f2(*g.mean_bler * 100.0) : std::string();
  row += ",";
  row += opt_g17(g.mean_cqi) + ",";
  row += g.mean_cqi_rounded ? std::to_string(*g.mean_cqi_rounded)
                            : std::string();
  row += ",";
  row += opt_g17(g.mean_rsrp_dbm);
  return row;
}

void write_kpis_csv(const KpiSummary& s, const fs::path& path) {
  std::string csv =
      "group,population,peak_mbps,average_mbps,edge_mbps,bler_pct,mean_cqi,"
      "mean_cqi_rounded,mean_rsrp_dbm\n";
  csv += group_csv_row("macro", s.macro) + "\n";
  csv += group_csv_row("pico", s.pico) + "\n";
  csv += group_csv_row("overall", s.overall) + "\n";
  write_file(path, csv);
}

void write_mode_files(const ModeResult& m, const fs::path& dir) {
  fs::create_directories(dir);

  write_file(dir / "kpis.json", kpis_json(m.kpis).dump(2) + "\n");
  write_kpis_csv(m.kpis, dir / "kpis.csv");

  std::string per_ue =
      "ue_id,group,throughput_mbps,mean_cqi,mean_rsrp_dbm,mean_bler\n";
  for (const auto& ue : m.per_ue) {
    per_ue += std::to_string(ue.ue_id) + ",";
    per_ue += ue.pico_served ? "pico," : "macro,";
    per_ue += g17(ue.throughput_mbps) + ",";
    per_ue += g17(ue.mean_cqi) + ",";
    per_ue += g17(ue.mean_rsrp_dbm) + ",";
    per_ue += g17(ue.mean_bler) + "\n";
  }
  write_file(dir / "per_ue.csv", per_ue);

  std::string trace = "tti,state,source,err\n";
  for (const auto& row : m.trace) {
    trace += std::to_string(row.tti) + ",";
    trace += row.comp_enabled ? "1," : "0,";
    trace += to_string(row.source) + ",";
    trace += row.err ? g17(*row.err) : std::string();
    trace += "\n";
  }
  write_file(dir / "comp_trace.csv", trace);

  std::string snr_cqi = "tti,ue_id,snr_db,cqi\n";
  for (const auto& s : m.snr_cqi) {
    snr_cqi += std::to_string(s.tti) + "," + std::to_string(s.ue_id) + "," +
               g17(s.snr_db) + "," + std::to_string(s.cqi) + "\n";
  }
  write_file(dir / "plotdata_snr_cqi.csv", snr_cqi);

  std::string state = "tti,state\n";
  for (const auto& row : m.trace) {
    state += std::to_string(row.tti) + ",";
    state += row.comp_enabled ? "1\n" : "0\n";
  }
  write_file(dir / "plotdata_comp_state.csv", state);
}

json window_json(const CompDecision& d) {
  json j;
  j["window"] = d.window_index;
  j["enabled"] = d.enabled;
  j["source"] = to_string(d.source);
  j["err"] = d.err ? json(*d.err) : json(nullptr);
  if (d.selection) {
    json sel;
    sel["kernel"] = d.selection->kernel.name();
    sel["scale"] = d.selection->kernel.scale;
    if (d.selection->kernel.kind == KernelSpec::Kind::Polynomial) {
      sel["degree"] = d.selection->kernel.degree;
    }
    sel["c"] = d.selection->c;
    sel["normalize"] = d.selection->normalize;
    j["selection"] = sel;
    j["n_train"] = d.n_train;
    j["n_test"] = d.n_test;
  }
  if (d.train_report) {
    json t;
    t["iterations"] = d.train_report->iterations;
    t["dual_objective"] = d.train_report->dual_objective;
    t["max_kkt_violation"] = d.train_report->max_kkt_violation;
    t["sum_lambda_y"] = d.train_report->sum_lambda_y;
    t["n_support"] = d.train_report->n_support;
    t["n_free"] = d.train_report->n_free;
    j["train"] = t;
  }
  return j;
}

json manifest_json(const RunResult& result) {
  const RunConfig& cfg = result.config;
  json j;
  j["version"] = kVersion;
  j["wall_clock_ms"] = result.wall_clock_ms;

  json c;
  c["scenario"] = to_string(cfg.scenario);
  c["mode"] = to_string(cfg.mode);
  c["seed"] = cfg.seed;
  c["ttis"] = cfg.n_ttis;
  c["t_comp"] = cfg.t_comp;
  c["epsilon"] = cfg.epsilon;
  c["sinr_min_db"] = cfg.sinr_min_db;
  c["r_train"] = cfg.r_train;
  c["cv_k"] = cfg.cv_k;
  c["baseline_aggregation"] = to_string(cfg.baseline_aggregation);
  c["cqi_delay_ttis"] = cfg.cqi_delay_ttis;
  c["stream2_charged"] = cfg.stream2_charged;
  c["out"] = cfg.output_dir;
  c["grid"] = {{"kernels", cfg.grid.kernels},
               {"c_values", cfg.grid.c_values},
               {"scales", cfg.grid.scales},
               {"normalize", cfg.grid.normalize}};
  j["config"] = c;

  const CqiTable& table = CqiTable::standard();
  json cqi;
  for (int i = 0; i < 15; ++i) {
    cqi["entry_threshold_db"].push_back(table.entry_threshold_db(i));
    cqi["efficiency_bits_per_symbol"].push_back(table.efficiency_bits_sym(i));
  }
  j["cqi_table"] = cqi;

  json grid = json::array();
  for (const auto& p : cfg.grid.build()) {
    json gp;
    gp["kernel"] = p.kernel.name();
    gp["scale"] = p.kernel.scale;
    gp["c"] = p.c;
    gp["normalize"] = p.normalize;
    grid.push_back(gp);
  }
  j["hyperparameter_grid"] = grid;

  json scn;
  scn["label"] = to_string(result.scenario.label);
  scn["n_cells"] = result.scenario.cells.size();
  scn["n_macro_sectors"] = result.scenario.n_macro_sectors();
  scn["n_picos"] = result.scenario.n_picos();
  scn["inter_site_distance_m"] = result.scenario.inter_site_distance_m;
  scn["cooperating_set"] = result.scenario.cooperating_set;
  json cells = json::array();
  for (const auto& cell : result.scenario.cells) {
    json cj;
    cj["id"] = cell.id;
    cj["kind"] = cell.kind == CellKind::Pico ? "pico" : "macro_sector";
    cj["x_m"] = cell.site_position.x();
    cj["y_m"] = cell.site_position.y();
    cj["height_m"] = cell.antenna_height_m;
    cj["tx_power_dbm"] = cell.tx_power_dbm;
    cj["azimuth_deg"] = cell.azimuth_deg;
    cj["tilt_deg"] = cell.electrical_tilt_deg;
    cells.push_back(cj);
  }
  scn["cells"] = cells;
  j["scenario"] = scn;

  json ues = json::array();
  for (const auto& ue : result.ues) {
    json uj;
    uj["id"] = ue.id;
    uj["x_m"] = ue.position.x();
    uj["y_m"] = ue.position.y();
    uj["serving_cell"] = ue.serving_cell;
    ues.push_back(uj);
  }
  j["ues"] = ues;

  json windows;
  if (result.baseline) {
    json rows = json::array();
    for (const auto& d : result.baseline->decisions) rows.push_back(window_json(d));
    windows["baseline"] = rows;
  }
  if (result.dynamic) {
    json rows = json::array();
    for (const auto& d : result.dynamic->decisions) rows.push_back(window_json(d));
    windows["dynamic"] = rows;
  }
  j["windows"] = windows;
  return j;
}

}  // namespace

void write_outputs(const RunResult& result) {
  const fs::path root = result.config.output_dir;
  fs::create_directories(root);

  if (result.baseline && result.dynamic) {
    write_mode_files(*result.baseline, root / "baseline");
    write_mode_files(*result.dynamic, root / "dynamic");

    const auto comparison =
        compare_runs(result.baseline->kpis, result.dynamic->kpis);
    json top;
    top["baseline"] = kpis_json(result.baseline->kpis);
    top["dynamic"] = kpis_json(result.dynamic->kpis);
    json rows = json::array();
    for (const auto& d : comparison) {
      json r;
      r["group"] = d.group;
      r["metric"] = d.metric;
      r["baseline"] = d.baseline ? json(*d.baseline) : json(nullptr);
      r["dynamic"] = d.dynamic ? json(*d.dynamic) : json(nullptr);
      r["delta"] = d.delta ? json(*d.delta) : json(nullptr);
      r["improved"] = d.improved;
      rows.push_back(r);
    }
    top["comparison"] = rows;
    write_file(root / "kpis.json", top.dump(2) + "\n");

    std::string csv = "group,metric,baseline,dynamic,delta,improved\n";
    for (const auto& d : comparison) {
      csv += d.group + "," + d.metric + ",";
      csv += opt_g17(d.baseline) + ",";
      csv += opt_g17(d.dynamic) + ",";
      csv += opt_g17(d.delta) + ",";
      csv += d.delta ? (d.improved ? "1" : "0") : "";
      csv += "\n";
    }
    write_file(root / "kpis.csv", csv);
  } else {
    const ModeResult& m = result.baseline ? *result.baseline : *result.dynamic;
    write_mode_files(m, root);
  }

  write_file(root / "manifest.json", manifest_json(result).dump(2) + "\n");
}

RunConfig parse_cli(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"deterministic downlink CoMP system simulator"};
  app.name("compsim");
  app.set_config("--config", "",
                 "flat key=value file mirroring the long flag names");

  std::string scenario = "A", mode = "both", aggregation = "median";
  std::vector<std::string> normalize_strs;

  app.add_option("--scenario", scenario, "network layout, A or B")
      ->check(CLI::IsMember({"A", "B"}));
  app.add_option("--mode", mode, "baseline, dynamic, or both")
      ->check(CLI::IsMember({"baseline", "dynamic", "both"}));
  app.add_option("--seed", cfg.seed, "root seed for all substreams");
  app.add_option("--ttis", cfg.n_ttis, "simulated TTIs");
  app.add_option("--t-comp", cfg.t_comp, "decision window length in TTIs");
  app.add_option("--epsilon", cfg.epsilon,
                 "misclassification error threshold in (0, 1)");
  app.add_option("--sinr-min", cfg.sinr_min_db,
                 "baseline trigger threshold in dB");
  app.add_option("--r-train", cfg.r_train, "training data ratio in (0, 1)");
  app.add_option("--cv-k", cfg.cv_k, "cross-validation folds");
  app.add_option("--baseline-agg", aggregation,
                 "baseline SNR aggregation: median, mean, fraction_above")
      ->check(CLI::IsMember({"median", "mean", "fraction_above"}));
  app.add_option("--cqi-delay", cfg.cqi_delay_ttis,
                 "TTIs between CQI measurement and application (0 or 1)");
  app.add_option("--stream2-charged", cfg.stream2_charged,
                 "whether the cooperating stream consumes that cell's PRBs");
  app.add_option("--grid-kernels", cfg.grid.kernels,
                 "kernel subset: linear, gaussian, poly2, poly3, poly4")
      ->delimiter(',');
  app.add_option("--grid-c", cfg.grid.c_values, "box constraint values")
      ->delimiter(',');
  app.add_option("--grid-scales", cfg.grid.scales, "kernel scale values")
      ->delimiter(',');
  app.add_option("--grid-normalize", normalize_strs,
                 "feature standardization choices (true/false list)")
      ->delimiter(',');
  app.add_option("--out", cfg.output_dir, "output directory");

  try {
    std::vector<const char*> argv;
    argv.push_back("compsim");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw CliError(app.help(), 0);
  } catch (const CLI::CallForAllHelp&) {
    throw CliError(app.help(), 0);
  } catch (const CLI::ParseError& e) {
    const int code = e.get_exit_code();
    throw CliError(std::string(e.what()) +
                       "\nRun with --help for the full flag list.",
                   code == 0 ? 1 : code);
  }

  cfg.scenario = scenario == "A" ? ScenarioLabel::A : ScenarioLabel::B;
  cfg.mode = mode == "baseline"
                 ? RunMode::Baseline
                 : (mode == "dynamic" ? RunMode::Dynamic : RunMode::Both);
  cfg.baseline_aggregation =
      aggregation == "median"
          ? BaselineAggregation::Median
          : (aggregation == "mean" ? BaselineAggregation::Mean
                                   : BaselineAggregation::FractionAbove);
  if (!normalize_strs.empty()) {
    cfg.grid.normalize.clear();
    for (const auto& s : normalize_strs) {
      if (s == "true" || s == "1" || s == "on") {
        cfg.grid.normalize.push_back(true);
      } else if (s == "false" || s == "0" || s == "off") {
        cfg.grid.normalize.push_back(false);
      } else {
        throw CliError("--grid-normalize: expected true/false, got '" + s + "'",
                       1);
      }
    }
  }

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw CliError(std::string("invalid configuration: ") + e.what(), 2);
  }
  return cfg;
}

}  // namespace compsim
