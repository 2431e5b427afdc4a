#include "compsim/link_adaptation.hpp"

#include <cmath>
#include <stdexcept>

namespace compsim {

namespace {

constexpr double kCqiSlope = 0.522;      // CQI per dB
constexpr double kCqiIntercept = 4.07;
constexpr double kBlerSlopeDb = 2.0;     // logistic steepness per dB
constexpr double kBlerBackoffDb = 1.1;   // midpoint below the CQI threshold

// standard 4-bit CQI efficiency ladder, bits per symbol
constexpr double kEfficiency[15] = {0.1523, 0.2344, 0.3770, 0.6016, 0.8770,
                                    1.1758, 1.4766, 1.9141, 2.4063, 2.7305,
                                    3.3223, 3.9023, 4.5234, 5.1152, 5.5547};

}  // namespace

const CqiTable& CqiTable::standard() {
  static const CqiTable table = [] {
    CqiTable t;
    t.entry_threshold_db.resize(15);
    t.efficiency_bits_sym.resize(15);
    for (int c = 1; c <= 15; ++c) {
      t.entry_threshold_db(c - 1) = (c - kCqiIntercept) / kCqiSlope;
      t.efficiency_bits_sym(c - 1) = kEfficiency[c - 1];
    }
    return t;
  }();
  return table;
}

int snr_to_cqi(double snr_db) {
  const double raw = std::floor(kCqiSlope * snr_db + kCqiIntercept);
  if (raw < 1.0) return 1;
  if (raw > 15.0) return 15;
  return static_cast<int>(raw);
}

double cqi_entry_threshold_db(int cqi) {
  if (cqi < 1 || cqi > 15) {
    throw std::invalid_argument("cqi_entry_threshold_db: cqi out of [1, 15]");
  }
  return (cqi - kCqiIntercept) / kCqiSlope;
}

double cqi_to_efficiency(int cqi) {
  if (cqi < 1 || cqi > 15) {
    throw std::invalid_argument("cqi_to_efficiency: cqi out of [1, 15]");
  }
  return kEfficiency[cqi - 1];
}

double bler(double snr_effective_db, int cqi) {
  const double midpoint_db = cqi_entry_threshold_db(cqi) - kBlerBackoffDb;
  return 1.0 / (1.0 + std::exp(kBlerSlopeDb * (snr_effective_db - midpoint_db)));
}

}  // namespace compsim
