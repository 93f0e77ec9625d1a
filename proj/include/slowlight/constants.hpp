#ifndef SLOWLIGHT_CONSTANTS_HPP
#define SLOWLIGHT_CONSTANTS_HPP

namespace slowlight {

// CODATA 2018 values, SI units.
namespace phys {
inline constexpr double c0        = 299792458.0;        // m/s
inline constexpr double k_boltz   = 1.380649e-23;       // J/K
inline constexpr double e_charge  = 1.602176634e-19;    // C
inline constexpr double e_mass    = 9.1093837015e-31;   // kg
inline constexpr double eps0      = 8.8541878128e-12;   // F/m
inline constexpr double amu       = 1.66053906660e-27;  // kg
inline constexpr double pi        = 3.141592653589793238462643383279502884;
inline constexpr double sqrt_pi   = 1.772453850905516027298167483341145183;
}  // namespace phys

}  // namespace slowlight

#endif
