#include "compsim/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "compsim/propagation.hpp"
#include "compsim/rng.hpp"

namespace compsim {

namespace {

constexpr double kPicoMinSiteDistM = 20.0;
constexpr double kPicoMinPicoDistM = 40.0;
constexpr int kMaxPlacementAttempts = 200000;

double hex_circumradius(double apothem) {
  return apothem / std::cos(M_PI / 6.0);
}

struct Box {
  double min_x, max_x, min_y, max_y;
};

Box bounding_box(const std::vector<Eigen::Vector2d>& sites, double reach) {
  Box b{sites[0].x(), sites[0].x(), sites[0].y(), sites[0].y()};
  for (const auto& s : sites) {
    b.min_x = std::min(b.min_x, s.x());
    b.max_x = std::max(b.max_x, s.x());
    b.min_y = std::min(b.min_y, s.y());
    b.max_y = std::max(b.max_y, s.y());
  }
  b.min_x -= reach;
  b.max_x += reach;
  b.min_y -= reach;
  b.max_y += reach;
  return b;
}

}  // namespace

bool point_in_hexagon(const Eigen::Vector2d& p, const Eigen::Vector2d& center,
                      double apothem) {
  const double dx = p.x() - center.x();
  const double dy = p.y() - center.y();
  // edge normals at 0/60/120 degrees; symmetric pairs handled by |.|
  for (int k = 0; k < 3; ++k) {
    const double theta = k * M_PI / 3.0;
    if (std::abs(dx * std::cos(theta) + dy * std::sin(theta)) > apothem) {
      return false;
    }
  }
  return true;
}

bool Scenario::in_macro_coverage(const Eigen::Vector2d& p) const {
  for (const auto& site : macro_sites) {
    if (point_in_hexagon(p, site, hex_apothem())) return true;
  }
  return false;
}

bool Scenario::in_service_area(const Eigen::Vector2d& p) const {
  for (const auto& site : macro_sites) {
    if (point_in_hexagon(p, site, hex_apothem() + service_margin_m)) {
      return true;
    }
  }
  return false;
}

int Scenario::n_picos() const {
  int n = 0;
  for (const auto& c : cells) n += c.kind == CellKind::Pico ? 1 : 0;
  return n;
}

int Scenario::n_macro_sectors() const {
  return static_cast<int>(cells.size()) - n_picos();
}

Scenario build_scenario(ScenarioLabel label, std::uint64_t rng_seed) {
  Scenario scn;
  scn.label = label;

  scn.macro_sites.push_back({0.0, 0.0});
  if (label == ScenarioLabel::B) {
    // one tier of neighbors, flat hexagon edges facing each other
    for (int k = 0; k < 6; ++k) {
      const double theta = k * M_PI / 3.0;
      scn.macro_sites.push_back(
          {scn.inter_site_distance_m * std::cos(theta),
           scn.inter_site_distance_m * std::sin(theta)});
    }
  }

  int next_id = 0;
  for (const auto& site : scn.macro_sites) {
    for (int s = 0; s < 3; ++s) {
      Cell c;
      c.id = next_id++;
      c.kind = CellKind::MacroSector;
      c.site_position = site;
      c.antenna_height_m = 25.0;
      c.tx_power_dbm = 46.0;
      c.azimuth_deg = 120.0 * s;
      c.electrical_tilt_deg = 4.0;
      c.antenna = AntennaSpec::macro_sector();
      scn.cells.push_back(c);
    }
  }

  const int n_picos = label == ScenarioLabel::A ? 3 : 11;
  Rng rng(substream_seed(rng_seed, "pico_placement"));
  const Box box =
      bounding_box(scn.macro_sites, hex_circumradius(scn.hex_apothem()));
  std::vector<Eigen::Vector2d> pico_positions;
  int attempts = 0;
  while (static_cast<int>(pico_positions.size()) < n_picos) {
    if (++attempts > kMaxPlacementAttempts) {
      throw std::runtime_error("pico placement failed to converge");
    }
    const Eigen::Vector2d p{rng.uniform(box.min_x, box.max_x),
                            rng.uniform(box.min_y, box.max_y)};
    if (!scn.in_macro_coverage(p)) continue;
    bool ok = true;
    for (const auto& site : scn.macro_sites) {
      if ((p - site).norm() < kPicoMinSiteDistM) ok = false;
    }
    for (const auto& q : pico_positions) {
      if ((p - q).norm() < kPicoMinPicoDistM) ok = false;
    }
    if (!ok) continue;
    pico_positions.push_back(p);
  }

  for (const auto& p : pico_positions) {
    Cell c;
    c.id = next_id++;
    c.kind = CellKind::Pico;
    c.site_position = p;
    c.antenna_height_m = 10.0;
    c.tx_power_dbm = 37.0;
    c.azimuth_deg = 0.0;
    c.electrical_tilt_deg = 0.0;
    c.antenna = AntennaSpec::pico_omni();
    scn.cells.push_back(c);
  }

  for (const auto& c : scn.cells) scn.cooperating_set.push_back(c.id);
  return scn;
}

std::vector<UserEquipment> drop_ues(const Scenario& scenario, int q,
                                    std::uint64_t rng_seed) {
  if (q < 1) throw std::invalid_argument("drop_ues: q must be >= 1");

  Rng rng(substream_seed(rng_seed, "ue_drop"));
  const Box box = bounding_box(
      scenario.macro_sites,
      hex_circumradius(scenario.hex_apothem() + scenario.service_margin_m));

  std::vector<UserEquipment> ues;
  ues.reserve(static_cast<std::size_t>(q));
  while (static_cast<int>(ues.size()) < q) {
    const Eigen::Vector2d p{rng.uniform(box.min_x, box.max_x),
                            rng.uniform(box.min_y, box.max_y)};
    if (!scenario.in_service_area(p)) continue;
    UserEquipment ue;
    ue.id = static_cast<int>(ues.size());
    ue.position = p;
    ues.push_back(ue);
  }

  for (auto& ue : ues) {
    int best_cell = -1;
    double best_rsrp = 0.0;
    for (const auto& cell : scenario.cells) {
      const LinkState link = compute_link_seeded(cell, ue, rng_seed);
      if (best_cell < 0 || link.rsrp_dbm > best_rsrp) {
        best_cell = cell.id;
        best_rsrp = link.rsrp_dbm;
      }
    }
    ue.serving_cell = best_cell;
  }
  return ues;
}

}  // namespace compsim
