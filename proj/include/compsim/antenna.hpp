#pragma once

#include <algorithm>
#include <cmath>

namespace compsim {

// Parametric sector pattern standing in for the macro panel antenna, plus the
// omni pattern used by pico cells.
struct AntennaSpec {
  enum class Kind { Parametric3Sector, Omni };

  Kind kind = Kind::Omni;
  double max_gain_dbi = 0.0;
  double h_beamwidth_deg = 65.0;
  double v_beamwidth_deg = 6.2;
  double front_back_db = 30.0;
  double sla_db = 20.0;  // vertical side-lobe level of the physical panel

  static AntennaSpec macro_sector() {
    return {Kind::Parametric3Sector, 18.0, 65.0, 6.2, 30.0, 20.0};
  }
  static AntennaSpec pico_omni() {
    return {Kind::Omni, 5.0, 0.0, 0.0, 0.0, 0.0};
  }
};

// Normalize an angle to (-180, 180].
inline double wrap_angle_deg(double a) {
  a = std::fmod(a, 360.0);
  if (a > 180.0) a -= 360.0;
  if (a <= -180.0) a += 360.0;
  return a;
}

// Directional gain. `elevation_deg` is the downward angle from the horizon to
// the UE; the electrical tilt shifts the vertical pattern peak.
inline double antenna_gain_db(const AntennaSpec& spec, double azimuth_offset_deg,
                              double elevation_deg, double tilt_deg = 0.0) {
  if (spec.kind == AntennaSpec::Kind::Omni) return spec.max_gain_dbi;
  const double az = wrap_angle_deg(azimuth_offset_deg) / spec.h_beamwidth_deg;
  const double el = wrap_angle_deg(elevation_deg - tilt_deg) / spec.v_beamwidth_deg;
  const double attenuation = 12.0 * az * az + 12.0 * el * el;
  return spec.max_gain_dbi - std::min(attenuation, spec.front_back_db);
}

}  // namespace compsim
