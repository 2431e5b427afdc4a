#include "compsim/comp_controller.hpp"

#include <algorithm>
#include <stdexcept>

namespace compsim {

std::string to_string(DecisionSource source) {
  switch (source) {
    case DecisionSource::MlOverride:
      return "ml_override";
    case DecisionSource::BaselineRule:
      return "baseline_rule";
    case DecisionSource::DegenerateFallback:
      return "degenerate_fallback";
  }
  return "unknown";
}

std::string to_string(BaselineAggregation aggregation) {
  switch (aggregation) {
    case BaselineAggregation::Median:
      return "median";
    case BaselineAggregation::Mean:
      return "mean";
    case BaselineAggregation::FractionAbove:
      return "fraction_above";
  }
  return "unknown";
}

Dataset collect_window(const std::vector<UeReport>& reports) {
  if (reports.empty()) {
    throw std::invalid_argument("collect_window: empty report stream");
  }
  Dataset data;
  const auto n = static_cast<Eigen::Index>(reports.size());
  data.x.resize(n, 2);
  data.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = reports[static_cast<std::size_t>(i)];
    data.x(i, 0) = static_cast<double>(r.cqi);
    data.x(i, 1) = r.rsrp_dbm;
    data.y(i) = r.label;
  }
  return data;
}

bool baseline_rule(const std::vector<double>& ue_snrs_db, double sinr_min_db,
                   BaselineAggregation aggregation) {
  if (ue_snrs_db.empty()) {
    throw std::invalid_argument("baseline_rule: empty SNR list");
  }
  switch (aggregation) {
    case BaselineAggregation::Median: {
      std::vector<double> sorted = ue_snrs_db;
      std::sort(sorted.begin(), sorted.end());
      const std::size_t n = sorted.size();
      const double median = n % 2 == 1
                                ? sorted[n / 2]
                                : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
      return median >= sinr_min_db;
    }
    case BaselineAggregation::Mean: {
      double sum = 0.0;
      for (const double v : ue_snrs_db) sum += v;
      return sum / static_cast<double>(ue_snrs_db.size()) >= sinr_min_db;
    }
    case BaselineAggregation::FractionAbove: {
      std::size_t above = 0;
      for (const double v : ue_snrs_db) above += v >= sinr_min_db ? 1 : 0;
      return 2 * above >= ue_snrs_db.size();
    }
  }
  return false;
}

CompDecision decide(const Dataset& window_data, int window_index,
                    const DecideContext& ctx) {
  if (ctx.epsilon <= 0.0 || ctx.epsilon >= 1.0) {
    throw std::invalid_argument("decide: epsilon must lie in (0, 1)");
  }

  CompDecision decision;
  decision.window_index = window_index;
  try {
    const SplitResult split =
        split_train_test(window_data, ctx.r_train, ctx.split_seed);
    static const std::vector<GridPoint> full_grid = default_grid();
    const std::vector<GridPoint>& grid = ctx.grid ? *ctx.grid : full_grid;
    const GridSearchResult search =
        grid_search_cv(split.train, grid, ctx.cv_k, ctx.cv_seed);

    TrainOptions options;
    options.c = search.best.c;
    options.normalize = search.best.normalize;
    TrainReport train_report;
    const SvmModel model = SvmModel::train(split.train, search.best.kernel,
                                           options, &train_report);
    const double err = model.misclassification_error(split.test);

    decision.err = err;
    decision.selection = search.best;
    decision.train_report = train_report;
    decision.n_train = static_cast<int>(split.train.size());
    decision.n_test = static_cast<int>(split.test.size());
    if (err <= ctx.epsilon) {
      decision.enabled = true;
      decision.source = DecisionSource::MlOverride;
    } else {
      decision.enabled = ctx.baseline_enabled;
      decision.source = DecisionSource::BaselineRule;
    }
  } catch (const DegenerateWindowError&) {
    decision.enabled = ctx.baseline_enabled;
    decision.source = DecisionSource::DegenerateFallback;
  } catch (const SolverError&) {
    decision.enabled = ctx.baseline_enabled;
    decision.source = DecisionSource::DegenerateFallback;
  }
  return decision;
}

std::vector<int> active_stream_cells(const LinkTable& links, int ue_id,
                                     bool comp_enabled) {
  const int serving = links.strongest_cell(ue_id);
  if (!comp_enabled) return {serving};
  const int second = links.strongest_other_cell(ue_id, serving);
  if (second < 0) return {serving};
  return {serving, second};
}

}  // namespace compsim
