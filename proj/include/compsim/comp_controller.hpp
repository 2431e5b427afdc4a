#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "compsim/model_selection.hpp"
#include "compsim/propagation.hpp"
#include "compsim/svm.hpp"

namespace compsim {

// One UE's per-TTI observation; the training row for the ML gate.
struct UeReport {
  int tti = 0;
  int ue_id = -1;
  int cqi = 1;               // wideband CQI on the serving link
  double rsrp_dbm = 0.0;     // serving-cell RSRP
  double bler_observed = 0.0;
  int label = 0;             // 1 iff bler_observed <= 0.1
};

enum class DecisionSource { MlOverride, BaselineRule, DegenerateFallback };

std::string to_string(DecisionSource source);

// Cluster-wide on/off for one decision window, with provenance.
struct CompDecision {
  int window_index = 0;
  bool enabled = false;
  DecisionSource source = DecisionSource::BaselineRule;
  std::optional<double> err;  // test misclassification error, ML path only

  // diagnostics for the run manifest
  std::optional<GridPoint> selection;
  std::optional<TrainReport> train_report;
  int n_train = 0;
  int n_test = 0;
};

// Builds the training matrix from one window of reports: one row per report,
// feature columns ordered (CQI, RSRP). Throws std::invalid_argument when
// empty.
Dataset collect_window(const std::vector<UeReport>& reports);

enum class BaselineAggregation { Median, Mean, FractionAbove };

std::string to_string(BaselineAggregation aggregation);

// Static trigger: aggregate of the reported wideband SNRs against the
// operator threshold. Median by default; FractionAbove enables when at
// least half the UEs clear the threshold. Throws on an empty list.
bool baseline_rule(const std::vector<double>& ue_snrs_db,
                   double sinr_min_db = 3.0,
                   BaselineAggregation aggregation =
                       BaselineAggregation::Median);

struct DecideContext {
  double epsilon = 0.12;
  double r_train = 0.7;
  int cv_k = 5;
  std::uint64_t split_seed = 0;
  std::uint64_t cv_seed = 0;
  const std::vector<GridPoint>* grid = nullptr;  // null -> default_grid()
  bool baseline_enabled = false;  // fallback output at this boundary
};

// The ML gate for one window: split, cross-validated grid search, train,
// test. Err <= epsilon forces CoMP on (ml_override); Err > epsilon defers
// to the baseline decision; any degeneracy (single-class window, tiny
// split) falls back to the baseline decision with degenerate_fallback.
CompDecision decide(const Dataset& window_data, int window_index,
                    const DecideContext& ctx);

// Cells transmitting to a UE this TTI: the serving cell always; with CoMP
// on, also the strongest non-serving cell of the cooperating set.
std::vector<int> active_stream_cells(const LinkTable& links, int ue_id,
                                     bool comp_enabled);

}  // namespace compsim
