#include <cmath>
#include <vector>

#include "doctest.h"

#include "compsim/comp_controller.hpp"
#include "compsim/rng.hpp"

using namespace compsim;

namespace {

// A window whose labels split cleanly on the CQI feature.
std::vector<UeReport> separable_window(int n_ues, int ttis) {
  std::vector<UeReport> reports;
  Rng rng(61);
  for (int t = 0; t < ttis; ++t) {
    for (int u = 0; u < n_ues; ++u) {
      UeReport r;
      r.tti = t;
      r.ue_id = u;
      const bool good = u % 2 == 0;
      r.cqi = good ? 12 + static_cast<int>(rng.uniform_index(4))
                   : 2 + static_cast<int>(rng.uniform_index(4));
      r.rsrp_dbm = rng.uniform(-110.0, -70.0);
      r.bler_observed = good ? 0.02 : 0.4;
      r.label = r.bler_observed <= 0.1 ? 1 : 0;
      reports.push_back(r);
    }
  }
  return reports;
}

// Labels decoupled from both features: no classifier clears a low error bar.
std::vector<UeReport> noise_window(int n_ues, int ttis) {
  std::vector<UeReport> reports;
  Rng rng(63);
  for (int t = 0; t < ttis; ++t) {
    for (int u = 0; u < n_ues; ++u) {
      UeReport r;
      r.tti = t;
      r.ue_id = u;
      r.cqi = 8;
      r.rsrp_dbm = -90.0;
      r.label = rng.uniform() < 0.5 ? 0 : 1;
      r.bler_observed = r.label == 1 ? 0.05 : 0.5;
      reports.push_back(r);
    }
  }
  return reports;
}

DecideContext fast_context() {
  DecideContext ctx;
  static const std::vector<GridPoint> grid = {
      {{KernelSpec::Kind::Linear, 1.0}, 1.0, false},
      {{KernelSpec::Kind::Gaussian, 1.0}, 10.0, false},
  };
  ctx.grid = &grid;
  ctx.split_seed = 101;
  ctx.cv_seed = 102;
  return ctx;
}

}  // namespace

TEST_CASE("collect_window stacks reports row per observation") {
  const auto reports = separable_window(60, 3);
  const Dataset d = collect_window(reports);
  REQUIRE(d.x.rows() == 180);
  REQUIRE(d.x.cols() == 2);
  for (int i = 0; i < 180; ++i) {
    const UeReport& r = reports[static_cast<std::size_t>(i)];
    CHECK(d.x(i, 0) == static_cast<double>(r.cqi));
    CHECK(d.x(i, 1) == r.rsrp_dbm);
    CHECK(d.y(i) == r.label);
  }
  CHECK_THROWS_AS(collect_window({}), std::invalid_argument);
}

TEST_CASE("collect_window handles a single report") {
  UeReport r;
  r.cqi = 9;
  r.rsrp_dbm = -80.0;
  r.label = 1;
  const Dataset d = collect_window({r});
  CHECK(d.x.rows() == 1);
  CHECK(d.x(0, 0) == 9.0);
  CHECK(d.x(0, 1) == -80.0);
}

TEST_CASE("baseline rule aggregates snr against the threshold") {
  // median of {2, 2, 4} is 2: below a 3 dB threshold
  CHECK(!baseline_rule({2.0, 2.0, 4.0}, 3.0, BaselineAggregation::Median));
  CHECK(baseline_rule({2.0, 4.0, 4.0}, 3.0, BaselineAggregation::Median));
  // even count: mean of the middle order statistics
  CHECK(baseline_rule({2.0, 2.0, 4.0, 4.0}, 3.0,
                      BaselineAggregation::Median));
  CHECK(!baseline_rule({2.0, 2.0, 2.0, 4.0}, 3.0,
                       BaselineAggregation::Median));

  CHECK(!baseline_rule({2.0, 2.0, 4.0}, 3.0, BaselineAggregation::Mean));
  CHECK(baseline_rule({2.0, 3.0, 4.0}, 3.0, BaselineAggregation::Mean));

  // at least half the reports above the threshold
  CHECK(baseline_rule({2.0, 4.0, 4.0}, 3.0,
                      BaselineAggregation::FractionAbove));
  CHECK(baseline_rule({2.0, 2.0, 4.0, 4.0}, 3.0,
                      BaselineAggregation::FractionAbove));
  CHECK(!baseline_rule({2.0, 2.0, 2.0, 4.0}, 3.0,
                       BaselineAggregation::FractionAbove));

  CHECK(baseline_rule({10.0, 11.0, 12.0}, 3.0));
  CHECK(!baseline_rule({0.0, 0.0, 0.0}, 3.0));
  CHECK_THROWS_AS(baseline_rule({}, 3.0), std::invalid_argument);
}

TEST_CASE("aggregation names") {
  CHECK(to_string(BaselineAggregation::Median) == "median");
  CHECK(to_string(BaselineAggregation::Mean) == "mean");
  CHECK(to_string(BaselineAggregation::FractionAbove) == "fraction_above");
}

TEST_CASE("decision source names") {
  CHECK(to_string(DecisionSource::MlOverride) == "ml_override");
  CHECK(to_string(DecisionSource::BaselineRule) == "baseline_rule");
  CHECK(to_string(DecisionSource::DegenerateFallback) ==
        "degenerate_fallback");
}

TEST_CASE("low test error forces comp on regardless of the baseline") {
  DecideContext ctx = fast_context();
  ctx.baseline_enabled = false;
  const Dataset window = collect_window(separable_window(20, 3));
  const CompDecision d = decide(window, 4, ctx);
  CHECK(d.window_index == 4);
  CHECK(d.source == DecisionSource::MlOverride);
  CHECK(d.enabled);
  REQUIRE(d.err.has_value());
  CHECK(*d.err <= ctx.epsilon);
  CHECK(d.selection.has_value());
  CHECK(d.train_report.has_value());
  CHECK(d.n_train > 0);
  CHECK(d.n_test > 0);
  CHECK(d.n_train + d.n_test == window.size());
}

TEST_CASE("high test error defers to the baseline decision") {
  DecideContext ctx = fast_context();
  const Dataset window = collect_window(noise_window(20, 3));

  ctx.baseline_enabled = true;
  CompDecision d = decide(window, 0, ctx);
  CHECK(d.source == DecisionSource::BaselineRule);
  CHECK(d.enabled);
  REQUIRE(d.err.has_value());
  CHECK(*d.err > ctx.epsilon);

  ctx.baseline_enabled = false;
  d = decide(window, 0, ctx);
  CHECK(d.source == DecisionSource::BaselineRule);
  CHECK(!d.enabled);
}

TEST_CASE("single-class window falls back to the baseline decision") {
  DecideContext ctx = fast_context();
  auto reports = separable_window(20, 3);
  for (auto& r : reports) r.label = 1;
  const Dataset window = collect_window(reports);

  ctx.baseline_enabled = true;
  CompDecision d = decide(window, 7, ctx);
  CHECK(d.source == DecisionSource::DegenerateFallback);
  CHECK(d.enabled);
  CHECK(!d.err.has_value());
  CHECK(!d.selection.has_value());

  ctx.baseline_enabled = false;
  d = decide(window, 7, ctx);
  CHECK(d.source == DecisionSource::DegenerateFallback);
  CHECK(!d.enabled);
}

TEST_CASE("tiny window falls back rather than crashing") {
  DecideContext ctx = fast_context();
  UeReport a, b;
  a.label = 0;
  b.label = 1;
  const Dataset window = collect_window({a, b});
  const CompDecision d = decide(window, 0, ctx);
  CHECK(d.source == DecisionSource::DegenerateFallback);
}

TEST_CASE("decide validates epsilon") {
  DecideContext ctx = fast_context();
  ctx.epsilon = 1.5;
  const Dataset window = collect_window(separable_window(10, 3));
  CHECK_THROWS_AS(decide(window, 0, ctx), std::invalid_argument);
  ctx.epsilon = -0.1;
  CHECK_THROWS_AS(decide(window, 0, ctx), std::invalid_argument);
}

TEST_CASE("decide replays deterministically for fixed seeds") {
  DecideContext ctx = fast_context();
  const Dataset window = collect_window(separable_window(20, 3));
  const CompDecision a = decide(window, 2, ctx);
  const CompDecision b = decide(window, 2, ctx);
  CHECK(a.enabled == b.enabled);
  CHECK(a.source == b.source);
  CHECK(a.err == b.err);
}

TEST_CASE("active stream cells pick serving then strongest other") {
  const Scenario sc = build_scenario(ScenarioLabel::A, 1);
  const auto ues = drop_ues(sc, 10, 1);
  const LinkTable links(sc, ues, 1);
  for (const auto& ue : ues) {
    const auto off = active_stream_cells(links, ue.id, false);
    REQUIRE(off.size() == 1);
    CHECK(off[0] == ue.serving_cell);

    const auto on = active_stream_cells(links, ue.id, true);
    REQUIRE(on.size() == 2);
    CHECK(on[0] == ue.serving_cell);
    CHECK(on[1] != ue.serving_cell);
    for (const Cell& cell : sc.cells) {
      if (cell.id == on[0] || cell.id == on[1]) continue;
      CHECK(links.at(on[1], ue.id).rsrp_dbm >= links.at(cell.id, ue.id).rsrp_dbm);
    }
  }
}
