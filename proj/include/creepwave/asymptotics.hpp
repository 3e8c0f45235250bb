#ifndef CREEPWAVE_ASYMPTOTICS_HPP
#define CREEPWAVE_ASYMPTOTICS_HPP

#include <vector>

#include "creepwave/common.hpp"
#include "creepwave/specfun.hpp"

namespace creepwave::asymptotics {

// ---------------------------------------------------------------------------
// Uniform asymptotics for coalescing saddle points
// ---------------------------------------------------------------------------

/// Two coalescing stationary-phase values mapped onto the cubic normal form
/// F(xi) = -xi^3/3 + rho0*xi with phase offset theta0:
///   theta0 = (phi1 + phi2)/2 ,   (2/3) rho0^{3/2} = (phi1 - phi2)/2 .
struct SaddlePair {
    double phi1 = 0.0;
    double phi2 = 0.0;
    double theta0 = 0.0;
    double rho0 = 0.0;
};

SaddlePair cfu_map(double phi1, double phi2);

/// Uniform evaluation of the coalescing-saddle integral:
///   e^{ik theta0} [ g0 Ai(-k^{2/3} rho0) + i k^{-1/3} h0 Ai'(-k^{2/3} rho0) ].
cplx uniform_airy_eval(const SaddlePair& pair, cplx g0, cplx h0, double k);

/// Leading stationary-phase term for an isolated saddle:
///   A |phi''|^{-1/2} sqrt(2 pi / k) exp{ i k phi + i (pi/4) sgn(phi'') }.
/// Signals CausticError at phi'' = 0 (use uniform_airy_eval there).
cplx stationary_phase_leading(cplx amplitude, double phase, double second_deriv, double k);

// ---------------------------------------------------------------------------
// Creeping modes
// ---------------------------------------------------------------------------

/// Constant in the damping exponent beta_i = damping_constant * |q_i| *
/// k^{1/3} R^{-2/3}; equals sqrt(3) * 2^{-4/3}, the imaginary part produced
/// by the e^{i pi/3} factor of the curvature correction to the phase.
inline constexpr double damping_constant = 0.68736481849930131;

/// Damping exponent of the i-th creeping mode (i >= 1).
double damping_exponent(int i, double k, double R);
double damping_exponent(const specfun::AiryZeroTable& zeros, int i, double k, double R);

/// Levy-Keller diffraction coefficient C_i = calibration * (kR)^{1/3} /
/// Ai'(q_i)^2. The overall constant is not fixed by the asymptotics; the
/// `calibration` knob (default 1) absorbs it.
cplx diffraction_coefficient(int i, double k, double R, double calibration = 1.0);

/// One creeping mode: Airy zero, damping exponent, complex degrees and
/// diffraction coefficient.
struct CreepingMode {
    int index = 1;
    double q = 0.0;     // i-th Airy zero
    double beta = 0.0;  // damping exponent, inverse length
    cplx lambda;        // R (k + i beta)
    cplx mu;            // lambda - 1/2
    cplx coefficient;   // C_i
};

CreepingMode make_creeping_mode(int i, double k, double R, double calibration = 1.0);

// ---------------------------------------------------------------------------
// Mode amplitudes
// ---------------------------------------------------------------------------

/// Contribution of a single grazing ray that has not completed a tour:
///   ccw:  C e^{i lambda theta_s} e^{-i pi/2} / sqrt(sin theta_s)
///   cw:  -C e^{i lambda (2 pi - theta_s)}    / sqrt(sin theta_s)
/// The Maslov factors are exp(-i pi/2 * crossings) with one axis crossing
/// for the counterclockwise ray and two for the clockwise one.
cplx mode_amplitude_no_tour(const CreepingMode& mode, double theta_s, Sense sense);

/// Partial sum over tours n = 0..max_tours of
///   (-1)^n e^{i 2 pi n lambda} [ f^+ + f^- ],
/// the (-1)^n being the two extra axis crossings per tour.
cplx mode_amplitude_tours(const CreepingMode& mode, double theta_s, int max_tours);

/// Geometric tail bound of the tour sum after N terms: e^{-2 pi (N+1) R beta}.
double tour_tail_bound(const CreepingMode& mode, int max_tours);

/// Closed form of the full tour sum (requires Im lambda > 0):
///   -C e^{i pi/4} [ e^{-i(lambda(pi-theta_s) - pi/4)} +
///                   e^{+i(lambda(pi-theta_s) - pi/4)} ]
///   / (2 cos(pi lambda) sqrt(sin theta_s)).
cplx resummed_amplitude(const CreepingMode& mode, double theta_s);

/// Legendre form, finite up to and including theta_s = pi:
///   C e^{i pi/4} (sqrt(pi)/2) sqrt(2 mu + 1) P_mu(-cos theta_s) / sin(pi mu).
cplx legendre_amplitude(const CreepingMode& mode, double theta_s);

// ---------------------------------------------------------------------------
// Totals
// ---------------------------------------------------------------------------

struct AmplitudeBreakdown {
    struct TourTerm {
        int mode;
        int tour;
        Sense sense;
        cplx value;
    };
    std::vector<CreepingMode> modes;
    std::vector<cplx> mode_totals;   // one entry per mode
    std::vector<TourTerm> tour_terms; // populated by the tour-expanded route
    cplx total;
};

/// Backward-region amplitude: sum of the Legendre-form mode amplitudes for
/// modes 1..M, with the per-mode parts recorded.
AmplitudeBreakdown total_amplitude(double k, double R, double theta_s, int modes,
                                   double calibration = 1.0);

/// Same breakdown assembled from the explicit tour expansion (diagnostic
/// route; tour_terms records every (mode, tour, sense) contribution).
AmplitudeBreakdown total_amplitude_tours(double k, double R, double theta_s, int modes,
                                         int max_tours, double calibration = 1.0);

} // namespace creepwave::asymptotics

#endif
