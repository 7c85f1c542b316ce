// units.hpp: Conversion constants. Energies and frequencies are stored as E/h in GHz.

#pragma once

namespace qudit::units {

// CODATA 2018, divided by the Planck constant.
inline constexpr double mu_B = 13.996245;      // GHz / T
inline constexpr double mu_N = 7.6225932e-3;   // GHz / T
inline constexpr double k_B  = 20.836619;      // GHz / K

inline constexpr double MHz = 1e-3;            // in GHz

inline constexpr double pi = 3.14159265358979323846;

inline constexpr double kelvin_to_ghz(double t) noexcept { return t * k_B; }
inline constexpr double degrees(double deg) noexcept { return deg * pi / 180.0; }

} // namespace qudit::units
