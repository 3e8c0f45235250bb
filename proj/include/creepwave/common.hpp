#ifndef CREEPWAVE_COMMON_HPP
#define CREEPWAVE_COMMON_HPP

#include <complex>
#include <numbers>

namespace creepwave {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Orientation of travel around the obstacle, viewed in the scattering plane.
/// Counterclockwise rays graze the obstacle on the side opposite to clockwise
/// ones; the two families exit parallel for the same scattering angle.
enum class Sense { counterclockwise, clockwise };

inline const char* to_string(Sense s) {
    return s == Sense::counterclockwise ? "ccw" : "cw";
}

} // namespace creepwave

#endif
