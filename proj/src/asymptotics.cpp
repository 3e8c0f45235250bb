#include "creepwave/asymptotics.hpp"

#include <cmath>

#include "creepwave/errors.hpp"

namespace creepwave::asymptotics {

namespace {

const cplx I(0.0, 1.0);

double sqrt_sin(double theta_s) {
    if (!(theta_s > 0.0) || !(theta_s < pi + 1e-15))
        throw DomainError("mode amplitude: theta_s must lie in (0, pi]");
    const double s = std::sin(theta_s);
    if (s <= 0.0) throw CausticError("mode amplitude: 1/sqrt(sin) diverges at theta_s = 0, pi");
    return std::sqrt(s);
}

} // namespace

SaddlePair cfu_map(double phi1, double phi2) {
    SaddlePair out;
    out.phi1 = phi1;
    out.phi2 = phi2;
    out.theta0 = 0.5 * (phi1 + phi2);
    out.rho0 = std::pow(0.75 * std::abs(phi1 - phi2), 2.0 / 3.0);
    return out;
}

cplx uniform_airy_eval(const SaddlePair& pair, cplx g0, cplx h0, double k) {
    if (!(k > 0.0)) throw DomainError("uniform_airy_eval: k must be positive");
    const double arg = -std::pow(k, 2.0 / 3.0) * pair.rho0;
    const double ai = specfun::airy_ai(arg);
    const double aip = specfun::airy_ai_prime(arg);
    return std::exp(I * (k * pair.theta0)) *
           (g0 * ai + I * std::pow(k, -1.0 / 3.0) * h0 * aip);
}

cplx stationary_phase_leading(cplx amplitude, double phase, double second_deriv, double k) {
    if (!(k > 0.0)) throw DomainError("stationary_phase_leading: k must be positive");
    if (second_deriv == 0.0)
        throw CausticError("stationary_phase_leading: coalescing saddles (phase'' = 0)");
    const double sgn = second_deriv > 0.0 ? 1.0 : -1.0;
    return amplitude / std::sqrt(std::abs(second_deriv)) * std::sqrt(2.0 * pi / k) *
           std::exp(I * (k * phase + 0.25 * pi * sgn));
}

double damping_exponent(const specfun::AiryZeroTable& zeros, int i, double k, double R) {
    if (i < 1) throw DomainError("damping_exponent: mode index must be >= 1");
    if (!(k > 0.0) || !(R > 0.0)) throw DomainError("damping_exponent: k and R must be positive");
    return damping_constant * std::abs(zeros.zero(i)) * std::cbrt(k) / std::pow(R, 2.0 / 3.0);
}

double damping_exponent(int i, double k, double R) {
    if (i <= specfun::shared_airy_zeros().count())
        return damping_exponent(specfun::shared_airy_zeros(), i, k, R);
    return damping_exponent(specfun::airy_zeros(i), i, k, R);
}

cplx diffraction_coefficient(int i, double k, double R, double calibration) {
    if (i < 1) throw DomainError("diffraction_coefficient: mode index must be >= 1");
    if (!(k > 0.0) || !(R > 0.0))
        throw DomainError("diffraction_coefficient: k and R must be positive");
    if (!(calibration > 0.0))
        throw DomainError("diffraction_coefficient: calibration must be positive");
    const double q = i <= specfun::shared_airy_zeros().count()
                         ? specfun::shared_airy_zeros().zero(i)
                         : specfun::airy_zeros(i).zero(i);
    const double aip = specfun::airy_ai_prime(q);
    return cplx(calibration * std::cbrt(k * R) / (aip * aip), 0.0);
}

CreepingMode make_creeping_mode(int i, double k, double R, double calibration) {
    CreepingMode m;
    m.index = i;
    m.q = i <= specfun::shared_airy_zeros().count() ? specfun::shared_airy_zeros().zero(i)
                                                    : specfun::airy_zeros(i).zero(i);
    m.beta = damping_exponent(i, k, R);
    m.lambda = cplx(k * R, R * m.beta);
    m.mu = m.lambda - 0.5;
    m.coefficient = diffraction_coefficient(i, k, R, calibration);
    return m;
}

cplx mode_amplitude_no_tour(const CreepingMode& mode, double theta_s, Sense sense) {
    if (!(theta_s > 0.0) || !(theta_s < pi))
        throw DomainError("mode_amplitude_no_tour: theta_s must lie in (0, pi)");
    const double ss = sqrt_sin(theta_s);
    if (sense == Sense::counterclockwise) {
        // one axis crossing: Maslov factor e^{-i pi/2}
        return mode.coefficient * std::exp(I * (mode.lambda * theta_s)) * std::exp(-I * (pi / 2.0)) / ss;
    }
    // two axis crossings: Maslov factor e^{-i pi} = -1
    return -mode.coefficient * std::exp(I * (mode.lambda * (2.0 * pi - theta_s))) / ss;
}

cplx mode_amplitude_tours(const CreepingMode& mode, double theta_s, int max_tours) {
    if (max_tours < 0) throw DomainError("mode_amplitude_tours: max_tours must be >= 0");
    if (!(mode.lambda.imag() > 0.0))
        throw DomainError("mode_amplitude_tours: requires Im(lambda) > 0");
    const cplx base = mode_amplitude_no_tour(mode, theta_s, Sense::counterclockwise) +
                      mode_amplitude_no_tour(mode, theta_s, Sense::clockwise);
    cplx sum = 0.0;
    for (int n = 0; n <= max_tours; ++n) {
        const double maslov = n % 2 == 0 ? 1.0 : -1.0; // two extra crossings per tour
        sum += maslov * std::exp(I * (2.0 * pi * static_cast<double>(n) * mode.lambda)) * base;
    }
    return sum;
}

double tour_tail_bound(const CreepingMode& mode, int max_tours) {
    return std::exp(-2.0 * pi * (max_tours + 1.0) * mode.lambda.imag());
}

cplx resummed_amplitude(const CreepingMode& mode, double theta_s) {
    if (!(theta_s > 0.0) || !(theta_s < pi))
        throw DomainError("resummed_amplitude: theta_s must lie in (0, pi)");
    if (!(mode.lambda.imag() > 0.0))
        throw DomainError("resummed_amplitude: requires Im(lambda) > 0");
    const cplx denom = 2.0 * std::cos(pi * mode.lambda);
    if (std::abs(denom) < 1e-12)
        throw PoleError("resummed_amplitude: cos(pi lambda) vanishes");
    const cplx arg = mode.lambda * (pi - theta_s) - pi / 4.0;
    const cplx bracket = std::exp(-I * arg) + std::exp(I * arg);
    return -mode.coefficient * std::exp(I * (pi / 4.0)) * bracket / (denom * sqrt_sin(theta_s));
}

cplx legendre_amplitude(const CreepingMode& mode, double theta_s) {
    if (!(theta_s > 0.0) || !(theta_s <= pi))
        throw DomainError("legendre_amplitude: theta_s must lie in (0, pi] "
                          "(logarithmic singularity at 0)");
    const cplx P = specfun::legendre_p_complex(mode.mu, -std::cos(theta_s));
    const cplx sin_pimu = std::sin(pi * mode.mu);
    return mode.coefficient * std::exp(I * (pi / 4.0)) * (std::sqrt(pi) / 2.0) *
           std::sqrt(2.0 * mode.mu + 1.0) * P / sin_pimu;
}

AmplitudeBreakdown total_amplitude(double k, double R, double theta_s, int modes,
                                   double calibration) {
    if (modes < 1) throw DomainError("total_amplitude: need at least one mode");
    AmplitudeBreakdown out;
    out.total = 0.0;
    for (int i = 1; i <= modes; ++i) {
        const CreepingMode m = make_creeping_mode(i, k, R, calibration);
        const cplx f = legendre_amplitude(m, theta_s);
        out.modes.push_back(m);
        out.mode_totals.push_back(f);
        out.total += f;
    }
    return out;
}

AmplitudeBreakdown total_amplitude_tours(double k, double R, double theta_s, int modes,
                                         int max_tours, double calibration) {
    if (modes < 1) throw DomainError("total_amplitude_tours: need at least one mode");
    AmplitudeBreakdown out;
    out.total = 0.0;
    for (int i = 1; i <= modes; ++i) {
        const CreepingMode m = make_creeping_mode(i, k, R, calibration);
        out.modes.push_back(m);
        cplx mode_sum = 0.0;
        for (int n = 0; n <= max_tours; ++n) {
            const double maslov = n % 2 == 0 ? 1.0 : -1.0;
            const cplx tour = maslov * std::exp(I * (2.0 * pi * static_cast<double>(n) * m.lambda));
            for (Sense s : {Sense::counterclockwise, Sense::clockwise}) {
                const cplx v = tour * mode_amplitude_no_tour(m, theta_s, s);
                out.tour_terms.push_back({i, n, s, v});
                mode_sum += v;
            }
        }
        out.mode_totals.push_back(mode_sum);
        out.total += mode_sum;
    }
    return out;
}

} // namespace creepwave::asymptotics
