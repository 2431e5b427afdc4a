#include "compsim/propagation.hpp"

#include <cmath>
#include <stdexcept>

#include "compsim/antenna.hpp"
#include "compsim/rng.hpp"

namespace compsim {

double wideband_power_offset_db() {
  return 10.0 * std::log10(static_cast<double>(kSubcarriersPerPrb * kNumPrbs));
}

double noise_floor_dbm(double noise_figure_db) {
  return kNoiseDensityDbmHz + 10.0 * std::log10(kBandwidthHz) +
         noise_figure_db;
}

double cost231_path_loss_db(double distance_m, double freq_mhz,
                            double h_base_m, double h_ue_m) {
  if (freq_mhz <= 0.0 || h_base_m <= 0.0 || h_ue_m <= 0.0) {
    throw std::invalid_argument(
        "cost231_path_loss_db: frequency and heights must be positive");
  }
  const double d_km = std::max(distance_m, 1.0) / 1000.0;
  const double lg = std::log10(11.75 * h_ue_m);
  const double mobile_correction = 3.2 * lg * lg - 4.97;  // large city
  return 46.3 + 33.9 * std::log10(freq_mhz) - 13.82 * std::log10(h_base_m) -
         mobile_correction +
         (44.9 - 6.55 * std::log10(h_base_m)) * std::log10(d_km) + 3.0;
}

double shadow_sample_db(std::uint64_t run_seed, int cell_id, int ue_id,
                        double sigma_db) {
  Rng rng(substream_seed(run_seed, "shadow",
                         static_cast<std::uint64_t>(cell_id),
                         static_cast<std::uint64_t>(ue_id)));
  return rng.normal(0.0, sigma_db);
}

LinkState compute_link(const Cell& cell, const UserEquipment& ue,
                       double shadow_db) {
  LinkState link;
  link.cell_id = cell.id;
  link.ue_id = ue.id;
  link.shadow_db = shadow_db;

  const Eigen::Vector2d d = ue.position - cell.site_position;
  const double distance_m = d.norm();
  const double bearing_deg = std::atan2(d.y(), d.x()) * 180.0 / M_PI;
  const double elevation_deg =
      std::atan2(cell.antenna_height_m - ue.height_m,
                 std::max(distance_m, 1.0)) *
      180.0 / M_PI;

  link.antenna_gain_db =
      antenna_gain_db(cell.antenna, wrap_angle_deg(bearing_deg - cell.azimuth_deg),
                      elevation_deg, cell.electrical_tilt_deg);
  link.path_loss_db = cost231_path_loss_db(distance_m, kCenterFreqMhz,
                                           cell.antenna_height_m, ue.height_m);

  const double tx_power_per_re_dbm =
      cell.tx_power_dbm - wideband_power_offset_db();
  link.rsrp_dbm = tx_power_per_re_dbm + link.antenna_gain_db +
                  ue.antenna_gain_dbi - link.path_loss_db - link.shadow_db;
  link.wideband_snr_db = (link.rsrp_dbm + wideband_power_offset_db()) -
                         noise_floor_dbm(ue.noise_figure_db);
  return link;
}

LinkState compute_link_seeded(const Cell& cell, const UserEquipment& ue,
                              std::uint64_t run_seed) {
  return compute_link(cell, ue, shadow_sample_db(run_seed, cell.id, ue.id));
}

LinkTable::LinkTable(const Scenario& scenario,
                     const std::vector<UserEquipment>& ues,
                     std::uint64_t run_seed)
    : n_cells_(static_cast<int>(scenario.cells.size())),
      n_ues_(static_cast<int>(ues.size())) {
  links_.reserve(static_cast<std::size_t>(n_cells_) * n_ues_);
  for (const auto& cell : scenario.cells) {
    for (const auto& ue : ues) {
      links_.push_back(compute_link_seeded(cell, ue, run_seed));
    }
  }
}

int LinkTable::strongest_cell(int ue_id) const {
  int best = -1;
  double best_rsrp = 0.0;
  for (int c = 0; c < n_cells_; ++c) {
    const double rsrp = at(c, ue_id).rsrp_dbm;
    if (best < 0 || rsrp > best_rsrp) {
      best = c;
      best_rsrp = rsrp;
    }
  }
  return best;
}

int LinkTable::strongest_other_cell(int ue_id, int excluded_cell) const {
  int best = -1;
  double best_rsrp = 0.0;
  for (int c = 0; c < n_cells_; ++c) {
    if (c == excluded_cell) continue;
    const double rsrp = at(c, ue_id).rsrp_dbm;
    if (best < 0 || rsrp > best_rsrp) {
      best = c;
      best_rsrp = rsrp;
    }
  }
  return best;
}

}  // namespace compsim
