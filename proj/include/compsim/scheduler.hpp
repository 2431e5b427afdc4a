#pragma once

#include <map>
#include <utility>
#include <vector>

namespace compsim {

// 168 REs per PRB per TTI minus control and reference overhead.
inline constexpr int kDataRePerPrb = 120;

struct PrbAssignment {
  int ue_id = -1;
  int stream = 0;  // 0 = serving-cell stream, 1 = cooperating-cell stream
};

// One cell's PRB map for one TTI. Empty when the cell has no candidates.
struct Allocation {
  int tti = 0;
  int cell_id = -1;
  std::vector<PrbAssignment> prbs;  // size kNumPrbs or 0
};

struct PfCandidate {
  int ue_id = -1;
  int stream = 0;
  double inst_rate_bits = 0.0;  // full-band rate if given every PRB
};

// Per-UE cumulative bits and the exponentially averaged rate driving the
// proportional-fair metric.
class ThroughputLedger {
 public:
  explicit ThroughputLedger(int n_ues, int window_ttis = 20);

  // First-contact initialization: r_avg starts at the UE's first full-band
  // instantaneous rate. No-op once seeded.
  void seed_average(int ue_id, double inst_rate_bits);
  bool seeded(int ue_id) const;
  double average_rate(int ue_id) const;

  void add_delivered(int ue_id, double bits);

  // Folds this TTI's delivered bits into every seeded UE's average:
  // r_avg <- (1 - 1/W) r_avg + (1/W) r_tti. Call exactly once per TTI.
  void commit_tti();

  double cumulative_bits(int ue_id) const;
  double tti_bits(int ue_id) const;
  int n_ues() const { return static_cast<int>(cumulative_.size()); }

 private:
  double window_;
  std::vector<double> cumulative_;
  std::vector<double> tti_bits_;
  std::vector<double> average_;
  std::vector<bool> seeded_;
};

// Assigns each PRB to the candidate maximizing inst_rate / r_avg(ue).
// Ties go to the lowest ue_id, then the lowest stream. Candidates must all
// be seeded in the ledger.
Allocation pf_schedule(int tti, int cell_id,
                       const std::vector<PfCandidate>& candidates,
                       const ThroughputLedger& ledger);

// Bits carried by n_prbs PRBs in one TTI at the given CQI, scaled by the
// block success probability.
double delivered_bits(int n_prbs, int cqi, double bler);

// PRB counts per (ue_id, stream) pair.
std::map<std::pair<int, int>, int> prb_counts(const Allocation& alloc);

}  // namespace compsim
