#ifndef CREEPWAVE_SPECFUN_HPP
#define CREEPWAVE_SPECFUN_HPP

#include <complex>
#include <vector>

#include "creepwave/common.hpp"

namespace creepwave::specfun {

// ---------------------------------------------------------------------------
// Airy functions
// ---------------------------------------------------------------------------

/// Maclaurin/asymptotic crossover on the real axis. Below this the power
/// series is summed in extended precision; beyond it the optimally truncated
/// asymptotic expansions are already accurate to better than 1e-13.
inline constexpr double airy_series_radius = 8.0;

/// Ai(x) for real x. Relative accuracy better than 1e-12 away from zeros
/// of Ai on [-20, 5].
double airy_ai(double x);

/// Ai'(x) for real x.
double airy_ai_prime(double x);

/// Ai(z) for complex z. Power series inside |z| <= airy_series_radius,
/// sector-reduced asymptotics outside. Signals RangeError when the result
/// overflows double range (exponentially large sectors).
cplx airy_ai(cplx z);

/// Ai'(z) for complex z.
cplx airy_ai_prime(cplx z);

/// Table of the first zeros of Ai, all negative, strictly decreasing.
class AiryZeroTable {
public:
    explicit AiryZeroTable(std::vector<double> zeros);

    /// i-th zero, 1-based: zero(1) = -2.33810741...
    double zero(int i) const;
    int count() const { return static_cast<int>(zeros_.size()); }
    const std::vector<double>& zeros() const { return zeros_; }

private:
    std::vector<double> zeros_;
};

/// First `count` negative zeros of Ai, bracketed and Newton-refined to
/// 1e-12 absolute.
AiryZeroTable airy_zeros(int count);

/// First `count` negative zeros of Ai', same bracketing machinery.
std::vector<double> airy_ai_prime_zeros(int count);

/// Process-wide zero table (immutable after first use), for callers that
/// need mode constants without threading a table through every call.
const AiryZeroTable& shared_airy_zeros();

// ---------------------------------------------------------------------------
// Spherical Bessel functions
// ---------------------------------------------------------------------------

struct SphericalBesselPair {
    double j;
    double y;
};

/// j_l(x) and y_l(x) for x > 0. j by downward (Miller) recurrence with
/// closed-form normalization, y by upward recurrence. Signals DomainError
/// at x = 0. Values outside double range saturate to 0 / +-inf.
SphericalBesselPair spherical_bessel(int l, double x);

/// Full tables j_0..j_lmax, y_0..y_lmax in extended precision. This is the
/// workhorse behind spherical_bessel and the partial-wave oracle; the
/// extended type keeps the Wronskian usable far into the evanescent tail
/// where the double-precision values would over/underflow.
struct SphericalBesselTable {
    std::vector<long double> j;
    std::vector<long double> y;
};

SphericalBesselTable spherical_bessel_table(int lmax, double x);

// ---------------------------------------------------------------------------
// Legendre functions
// ---------------------------------------------------------------------------

/// P_l(x) by the three-term recurrence, l >= 0, |x| <= 1.
double legendre_p_int(int l, double x);

/// P_mu(x) for complex degree mu and real argument x in (-1, 1].
///
/// Evaluated through the hypergeometric series 2F1(-mu, mu+1; 1; (1-x)/2)
/// with a term-ratio convergence guard. Large positive Re(mu) is first
/// reduced by the forward degree recurrence from series seeds with
/// Re in [-1/2, 1/2); the raw series loses roughly 0.6*Re(mu) digits to
/// cancellation and stops being usable in hardware precision near degree 20.
/// Signals DomainError for x outside (-1, 1] and AccuracyError when the
/// series fails to converge within the term budget.
cplx legendre_p_complex(cplx mu, double x);

/// Two-exponential large-degree form of sqrt(2*pi*lambda) *
/// P_{lambda-1/2}(-cos theta), valid for |lambda|*(pi - theta) >> 1:
///
///   [ exp(-i(lambda(pi-theta) - pi/4)) + exp(+i(lambda(pi-theta) - pi/4)) ]
///   / sqrt(sin theta)
cplx legendre_backward_asymptotic(cplx lambda, double theta);

} // namespace creepwave::specfun

#endif
