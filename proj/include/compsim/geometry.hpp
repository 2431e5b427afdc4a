#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "compsim/antenna.hpp"

namespace compsim {

enum class CellKind { MacroSector, Pico };

struct Cell {
  int id = 0;
  CellKind kind = CellKind::MacroSector;
  Eigen::Vector2d site_position{0.0, 0.0};
  double antenna_height_m = 25.0;
  double tx_power_dbm = 46.0;
  double azimuth_deg = 0.0;          // macro sectors only
  double electrical_tilt_deg = 4.0;  // macro sectors only
  AntennaSpec antenna;
};

struct UserEquipment {
  int id = 0;
  Eigen::Vector2d position{0.0, 0.0};
  double height_m = 1.5;
  double noise_figure_db = 7.0;
  double antenna_gain_dbi = -1.0;
  int serving_cell = -1;
  int n_rx_antennas = 2;
};

enum class ScenarioLabel { A, B };

inline const char* to_string(ScenarioLabel s) {
  return s == ScenarioLabel::A ? "A" : "B";
}

struct Scenario {
  ScenarioLabel label = ScenarioLabel::A;
  std::vector<Cell> cells;
  std::vector<int> cooperating_set;  // all cells: one CoMP cluster
  std::vector<Eigen::Vector2d> macro_sites;
  double inter_site_distance_m = 100.0;
  int n_ues = 60;
  double service_margin_m = 10.0;

  // center-to-edge distance of one macro hexagon
  double hex_apothem() const { return inter_site_distance_m / 2.0; }

  bool in_macro_coverage(const Eigen::Vector2d& p) const;
  bool in_service_area(const Eigen::Vector2d& p) const;

  int n_picos() const;
  int n_macro_sectors() const;
};

// Point-in-hexagon for a flat-edge-toward-neighbor hexagon of the given
// apothem (vertices at 30 + 60k degrees).
bool point_in_hexagon(const Eigen::Vector2d& p, const Eigen::Vector2d& center,
                      double apothem);

// Builds the cell layout for the requested scenario. Macro sectors come in
// triples per site (azimuths 0/120/240); picos are dropped uniformly inside
// the macro coverage, at least 20 m from any macro site and 40 m apart.
Scenario build_scenario(ScenarioLabel label, std::uint64_t rng_seed);

// Drops q UEs uniformly over the service area and attaches each to the cell
// with maximum RSRP (ties to the lowest cell id). RSRP uses the same per-link
// shadow samples the link table later reproduces, so attachment and link
// state agree.
std::vector<UserEquipment> drop_ues(const Scenario& scenario, int q,
                                    std::uint64_t rng_seed);

}  // namespace compsim
