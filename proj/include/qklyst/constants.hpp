#pragma once

#include <numbers>

namespace qklyst::constants {

// Physical constants, CODATA 2018, SI units. This is the single source of
// truth for every formula in the library.
inline constexpr double elementary_charge = 1.602176634e-19;  // C (exact)
inline constexpr double electron_mass = 9.1093837015e-31;     // kg
inline constexpr double planck = 6.62607015e-34;              // J s (exact)
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);
inline constexpr double speed_of_light = 299792458.0;         // m/s (exact)
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m

}  // namespace qklyst::constants
