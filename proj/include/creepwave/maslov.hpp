#ifndef CREEPWAVE_MASLOV_HPP
#define CREEPWAVE_MASLOV_HPP

#include <vector>

#include "creepwave/common.hpp"

namespace creepwave::maslov {

/// Point on the invariant curve p_theta^2 + c1^2/sin^2(theta) = 1 of the
/// surface-ray Hamiltonian on the sphere, with conserved p_phi = c1.
struct LagrangianPoint {
    double theta;
    double p_theta;
    double c1;
};

/// Residual of the invariant-curve relation; points fed to maslov_index must
/// satisfy |residual| <= 1e-9.
double invariant_residual(const LagrangianPoint& pt);

/// Colatitude of the left singular cycle, theta0 = asin(c1).
double singular_cycle_theta(double c1);

/// The four charts covering the invariant curve: U1 below (p < 0), U3 above
/// (p > 0), and the focal bands U2/U4 around the turning points
/// (theta0, 0) and (pi - theta0, 0).
enum class ChartId { U1, U2, U3, U4 };

/// Half-width in p_theta of the focal charts U2/U4. Any positive value works
/// (the index depends only on transversal crossings); this one keeps the
/// bands comfortably clear of the curve extrema.
inline constexpr double focal_chart_halfwidth = 0.1;

/// Charts containing a point (one or two of them).
std::vector<ChartId> charts_of(const LagrangianPoint& pt);

/// Derivative of the configuration coordinate along the curve,
/// d(theta)/d(p_theta) = c1 p / ((1 - p^2) sqrt(1 - p^2 - c1^2)), on the
/// branch through the left turning point. Signals SingularCycleError when
/// the square root degenerates.
double dtheta_dptheta(double p_theta, double c1);

/// Negative inertial index of a scalar: 1 for negative values, 0 for
/// positive ones. Signals DegenerateError at zero.
int inerdex(double value);

/// Phase shift accumulated by caustic crossings, always a multiple of pi/2;
/// kept as an integer quarter-turn count so composition is exact.
struct PhaseShift {
    int quarter_turns = 0;

    double value() const { return 0.5 * pi * quarter_turns; }
    PhaseShift compose(const PhaseShift& o) const { return {quarter_turns + o.quarter_turns}; }
};

/// Maslov index of a chart-covered path on the invariant curve: each
/// counterclockwise passage through a focal chart contributes -1, each
/// clockwise one +1. Within a chart the index vanishes; it is additive under
/// concatenation and invariant under in-chart perturbations. Endpoints on a
/// singular cycle signal DegenerateError; consecutive points must share a
/// chart or straddle a focal band transversally.
int maslov_index(const std::vector<LagrangianPoint>& path);

/// Phase factor exp(i * (pi/2) * index) attached to a Maslov index.
cplx index_phase_factor(int index);

/// Connection formula across caustic crossings: the phase argument k*theta
/// is shifted by -(pi/2) per crossing for either sense of travel,
///   e^{+ik theta} -> e^{+i(k theta - pi/2 c)} ,
///   e^{-ik theta} -> e^{-i(k theta - pi/2 c)} .
PhaseShift connection_phase(Sense sense, int crossings);

/// Multiplicative factor applied to the traveling wave of the given sense by
/// a phase-argument shift: exp(+i shift) counterclockwise, exp(-i shift)
/// clockwise.
cplx connection_factor(Sense sense, const PhaseShift& shift);

/// Maslov phase shift of the winding-m ray class: -(pi/2) * crossing_number(m).
PhaseShift crossing_to_phase(int m);

/// Leading WKB surface wave |sin theta|^{-1/2} e^{+-ik theta}; fails on the
/// polar caustics theta = n*pi (CausticError).
cplx surface_wave_leading(double theta, double k, Sense sense);

} // namespace creepwave::maslov

#endif
