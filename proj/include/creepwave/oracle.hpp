#ifndef CREEPWAVE_ORACLE_HPP
#define CREEPWAVE_ORACLE_HPP

#include <vector>

#include "creepwave/common.hpp"

namespace creepwave::oracle {

/// Exact phase shifts of the sound-soft (Dirichlet) sphere,
/// tan(delta_l) = j_l(kR) / y_l(kR), l = 0..l_max.
struct PhaseShiftTable {
    double k = 0.0;
    double R = 0.0;
    std::vector<double> delta;

    int l_max() const { return static_cast<int>(delta.size()) - 1; }
};

/// Default truncation: ceil(kR + 10 (kR)^{1/3} + 20), covering the
/// transition zone around l ~ kR.
int default_l_max(double k, double R);

/// Build the phase-shift table. Requires l_max >= kR + 10 (kR)^{1/3} + 10.
PhaseShiftTable phase_shifts(double k, double R, int l_max);

/// Scattering amplitude at one angle:
/// f(theta) = (1/k) sum_l (2l+1) e^{i delta_l} sin(delta_l) P_l(cos theta).
cplx amplitude_at(const PhaseShiftTable& table, double theta);

/// Total cross section from the phase shifts,
/// sigma = (4 pi / k^2) sum_l (2l+1) sin^2(delta_l).
double total_cross_section(const PhaseShiftTable& table);

struct ExactAmplitude {
    std::vector<double> theta;
    std::vector<cplx> f;
    double sigma_total = 0.0;
    double tail_bound = 0.0; // magnitude of the last retained partial waves
};

ExactAmplitude exact_amplitude(const PhaseShiftTable& table, const std::vector<double>& thetas);

/// Leading complex angular-momentum pole, lambda_n = kR + e^{i pi/3}
/// (kR/2)^{1/3} |q_n|; its imaginary part reproduces R * beta_n exactly.
cplx regge_pole_asymptotic(int n, double k, double R);

/// Spectral probe of the backward interference between the specular and the
/// half-orbit creeping contributions: detrends |f(k, pi)|^2 over the k grid
/// (cubic fit), extracts the dominant oscillation period in k, and compares
/// it against 2 pi / ((pi + 2) R).
struct InterferenceProbe {
    bool conclusive = false;
    double dk_extracted = 0.0;
    double dk_predicted = 0.0;
    double relative_error = 0.0;
    double peak_power = 0.0;
    double noise_floor = 0.0; // median periodogram power
};

InterferenceProbe backward_interference_probe(const std::vector<double>& k_grid, double R);

} // namespace creepwave::oracle

#endif
