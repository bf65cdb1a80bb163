#pragma once

#include <cmath>

namespace hetnet {

inline constexpr double kSpeedOfLight = 2.998e8;  // m/s

// Powers cross the configuration boundary in dBm and are converted exactly
// once; everything past that point works in watts.
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

inline double us_to_s(double us) { return us * 1e-6; }

}  // namespace hetnet
