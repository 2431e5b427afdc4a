#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "compsim/geometry.hpp"

namespace compsim {

// LTE numerology for the 10 MHz carrier.
inline constexpr int kNumPrbs = 50;
inline constexpr int kSubcarriersPerPrb = 12;
inline constexpr double kCenterFreqMhz = 2100.0;
inline constexpr double kBandwidthHz = 1.0e7;
inline constexpr double kNoiseDensityDbmHz = -174.0;

// 10*log10(12 * 50): spread between per-RE power and total wideband power.
double wideband_power_offset_db();

// Thermal noise over the full carrier plus the receiver noise figure.
double noise_floor_dbm(double noise_figure_db);

// COST 231-Hata, urban large-city variant with the +3 dB metropolitan term.
// Distances below 1 m are clamped to 1 m.
double cost231_path_loss_db(double distance_m, double freq_mhz, double h_base_m,
                            double h_ue_m);

struct LinkState {
  int cell_id = -1;
  int ue_id = -1;
  double path_loss_db = 0.0;
  double antenna_gain_db = 0.0;  // cell-side directional gain
  double shadow_db = 0.0;        // lognormal sample, drawn once per link
  double rsrp_dbm = 0.0;
  double wideband_snr_db = 0.0;
};

// One static lognormal shadow sample per (cell, UE) link, sigma in dB.
// Derived from a named substream so every consumer sees the same value.
double shadow_sample_db(std::uint64_t run_seed, int cell_id, int ue_id,
                        double sigma_db = 8.0);

// Deterministic link budget given an explicit shadow sample.
LinkState compute_link(const Cell& cell, const UserEquipment& ue,
                       double shadow_db);

// Convenience form deriving the shadow from the run seed substream.
LinkState compute_link_seeded(const Cell& cell, const UserEquipment& ue,
                              std::uint64_t run_seed);

// Full (cell, UE) link table for a dropped scenario.
class LinkTable {
 public:
  LinkTable() = default;
  LinkTable(const Scenario& scenario, const std::vector<UserEquipment>& ues,
            std::uint64_t run_seed);

  const LinkState& at(int cell_id, int ue_id) const {
    return links_[static_cast<std::size_t>(cell_id) * n_ues_ +
                  static_cast<std::size_t>(ue_id)];
  }
  int n_cells() const { return n_cells_; }
  int n_ues() const { return n_ues_; }

  // Strongest cell by RSRP, ties to the lowest cell id.
  int strongest_cell(int ue_id) const;
  // Strongest cell excluding the given one (the CoMP stream-2 point).
  int strongest_other_cell(int ue_id, int excluded_cell) const;

 private:
  std::vector<LinkState> links_;
  int n_cells_ = 0;
  int n_ues_ = 0;
};

}  // namespace compsim
