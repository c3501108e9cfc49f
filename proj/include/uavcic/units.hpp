// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace uavcic::units {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

inline double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) / 1000.0; }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w * 1000.0); }

inline double mhz_to_hz(double mhz) { return mhz * 1e6; }

}  // namespace uavcic::units
