#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "compsim/rng.hpp"

namespace compsim {

// Wideband CQI ladder: entry SNR threshold and spectral efficiency per index.
struct CqiTable {
  Eigen::VectorXd entry_threshold_db;   // 15 values, strictly increasing
  Eigen::VectorXd efficiency_bits_sym;  // 15 values, strictly increasing

  static const CqiTable& standard();
};

// cqi = clamp(floor(0.522 * snr + 4.07), 1, 15)
int snr_to_cqi(double snr_db);

// SNR at which the reported CQI first becomes `cqi`.
double cqi_entry_threshold_db(int cqi);

// Spectral efficiency in bits/symbol for cqi in [1, 15]; throws otherwise.
double cqi_to_efficiency(int cqi);

// Logistic BLER waterfall calibrated so BLER ~= 0.1 at the CQI entry
// threshold: midpoint at threshold - 1.1 dB, slope 2 per dB.
double bler(double snr_effective_db, int cqi);

// AR(1) log-domain fast fading offset, one process per UE per stream.
class FadingProcess {
 public:
  FadingProcess(std::uint64_t seed, double ar_coefficient = 0.9,
                double innovation_sigma_db = 3.0)
      : rng_(seed), rho_(ar_coefficient), sigma_(innovation_sigma_db) {
    // stationary start: offset ~ N(0, sigma^2)
    offset_db_ = rng_.normal(0.0, sigma_);
  }

  // Advance one TTI and return the new offset in dB.
  double step() {
    const double innovation = rng_.normal(0.0, sigma_);
    offset_db_ = rho_ * offset_db_ + std::sqrt(1.0 - rho_ * rho_) * innovation;
    return offset_db_;
  }

  double offset_db() const { return offset_db_; }
  double ar_coefficient() const { return rho_; }
  double innovation_sigma_db() const { return sigma_; }

 private:
  Rng rng_;
  double rho_;
  double sigma_;
  double offset_db_ = 0.0;
};

}  // namespace compsim
