#include "compsim/scheduler.hpp"

#include <stdexcept>

#include "compsim/link_adaptation.hpp"
#include "compsim/propagation.hpp"

namespace compsim {

ThroughputLedger::ThroughputLedger(int n_ues, int window_ttis)
    : window_(window_ttis),
      cumulative_(n_ues, 0.0),
      tti_bits_(n_ues, 0.0),
      average_(n_ues, 0.0),
      seeded_(n_ues, false) {
  if (n_ues < 1) throw std::invalid_argument("ThroughputLedger: n_ues");
  if (window_ttis < 1) throw std::invalid_argument("ThroughputLedger: window");
}

void ThroughputLedger::seed_average(int ue_id, double inst_rate_bits) {
  const auto i = static_cast<std::size_t>(ue_id);
  if (seeded_[i]) return;
  average_[i] = inst_rate_bits;
  seeded_[i] = true;
}

bool ThroughputLedger::seeded(int ue_id) const {
  return seeded_[static_cast<std::size_t>(ue_id)];
}

double ThroughputLedger::average_rate(int ue_id) const {
  return average_[static_cast<std::size_t>(ue_id)];
}

void ThroughputLedger::add_delivered(int ue_id, double bits) {
  const auto i = static_cast<std::size_t>(ue_id);
  cumulative_[i] += bits;
  tti_bits_[i] += bits;
}

void ThroughputLedger::commit_tti() {
  for (std::size_t i = 0; i < average_.size(); ++i) {
    if (!seeded_[i]) continue;
    average_[i] += (tti_bits_[i] - average_[i]) / window_;
    tti_bits_[i] = 0.0;
  }
}

double ThroughputLedger::cumulative_bits(int ue_id) const {
  return cumulative_[static_cast<std::size_t>(ue_id)];
}

double ThroughputLedger::tti_bits(int ue_id) const {
  return tti_bits_[static_cast<std::size_t>(ue_id)];
}

Allocation pf_schedule(int tti, int cell_id,
                       const std::vector<PfCandidate>& candidates,
                       const ThroughputLedger& ledger) {
  Allocation alloc;
  alloc.tti = tti;
  alloc.cell_id = cell_id;
  if (candidates.empty()) return alloc;

  alloc.prbs.resize(kNumPrbs);
  for (int prb = 0; prb < kNumPrbs; ++prb) {
    const PfCandidate* best = nullptr;
    double best_metric = 0.0;
    for (const auto& cand : candidates) {
      const double avg = ledger.average_rate(cand.ue_id);
      const double metric = cand.inst_rate_bits / avg;
      const bool wins =
          best == nullptr || metric > best_metric ||
          (metric == best_metric &&
           (cand.ue_id < best->ue_id ||
            (cand.ue_id == best->ue_id && cand.stream < best->stream)));
      if (wins) {
        best = &cand;
        best_metric = metric;
      }
    }
    alloc.prbs[static_cast<std::size_t>(prb)] = {best->ue_id, best->stream};
  }
  return alloc;
}

double delivered_bits(int n_prbs, int cqi, double bler) {
  return n_prbs * static_cast<double>(kDataRePerPrb) * cqi_to_efficiency(cqi) *
         (1.0 - bler);
}

std::map<std::pair<int, int>, int> prb_counts(const Allocation& alloc) {
  std::map<std::pair<int, int>, int> counts;
  for (const auto& a : alloc.prbs) {
    ++counts[{a.ue_id, a.stream}];
  }
  return counts;
}

}  // namespace compsim
