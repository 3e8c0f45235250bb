#include "creepwave/specfun.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

#include "creepwave/errors.hpp"

namespace creepwave::specfun {

namespace {

using ld = long double;
using cld = std::complex<ld>;

constexpr ld ld_pi = 3.14159265358979323846264338327950288L;

// Ai(0) and -Ai'(0): 3^{-2/3}/Gamma(2/3) and 3^{-1/3}/Gamma(1/3).
constexpr ld airy_c1 = 0.355028053887817239260063186004183176L;
constexpr ld airy_c2 = 0.258819403792806798405183560189203963L;

// Coefficients u_n, v_n of the large-argument expansions.
struct AsymCoeffs {
    std::vector<double> u, v;
    AsymCoeffs() {
        ld un = 1.0L;
        for (int n = 0; n <= 40; ++n) {
            u.push_back(static_cast<double>(un));
            v.push_back(static_cast<double>(n == 0 ? 1.0L
                                                   : un * (6.0L * n + 1.0L) / (1.0L - 6.0L * n)));
            un = un * (6.0L * n + 5.0L) * (6.0L * n + 3.0L) * (6.0L * n + 1.0L) /
                 (216.0L * (2.0L * n + 1.0L) * (n + 1.0L));
        }
    }
};

const AsymCoeffs& asym_coeffs() {
    static const AsymCoeffs c;
    return c;
}

// Maclaurin series of Ai and Ai' summed in extended precision. The interior
// terms overshoot the result by ~|z|^{3/2} digits; long double keeps this
// below 1e-13 relative up to |z| = airy_series_radius.
void airy_series(cld z, cld* ai, cld* aip) {
    const cld z3 = z * z * z;
    cld f = 1.0L, g = z;            // F, G partial sums
    cld fp = 0.0L, gp = 1.0L;       // F', G' partial sums (G' leads with 1)
    cld t = 1.0L, s = z;            // running F, G terms
    cld a = 0.5L * z * z, b = 1.0L; // running F', G' terms
    for (int k = 1; k <= 300; ++k) {
        t *= z3 / static_cast<ld>((3 * k - 1) * (3 * k));
        s *= z3 / static_cast<ld>((3 * k) * (3 * k + 1));
        b *= z3 / static_cast<ld>((3 * k - 2) * (3 * k));
        if (k >= 2)
            a *= z3 * static_cast<ld>(k) /
                 (static_cast<ld>(k - 1) * static_cast<ld>((3 * k - 1) * (3 * k)));
        f += t;
        g += s;
        fp += a;
        gp += b;
        const ld mag = std::abs(t) + std::abs(s) + std::abs(a) + std::abs(b);
        if (mag < 1e-24L * (std::abs(f) + std::abs(g)) && k > 4) break;
    }
    if (ai) *ai = airy_c1 * f - airy_c2 * g;
    if (aip) *aip = airy_c1 * fp - airy_c2 * gp;
}

// Principal-sector expansion, |arg z| < 2*pi/3 away from the negative axis.
void airy_asym_principal(cplx z, cplx* ai, cplx* aip) {
    const auto& C = asym_coeffs();
    const cplx zeta = (2.0 / 3.0) * std::pow(z, 1.5);
    if (-zeta.real() > 700.0)
        throw RangeError("airy_ai: result overflows for |z| = " + std::to_string(std::abs(z)));
    cplx su = 0.0, sv = 0.0, pw = 1.0;
    double prev = HUGE_VAL;
    for (std::size_t n = 0; n < C.u.size(); ++n) {
        const cplx tu = C.u[n] * pw;
        if (std::abs(tu) > prev) break; // past optimal truncation
        prev = std::abs(tu);
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        su += sgn * tu;
        sv += sgn * C.v[n] * pw;
        if (prev < 1e-20) break;
        pw /= zeta;
    }
    const cplx zq = std::pow(z, 0.25);
    const cplx e = std::exp(-zeta);
    if (ai) *ai = e / (2.0 * std::sqrt(pi) * zq) * su;
    if (aip) *aip = -e * zq / (2.0 * std::sqrt(pi)) * sv;
}

// Oscillatory expansion on the negative real axis, x = -z > series radius.
// The truncation order is fixed (not chosen adaptively) so the value is a
// smooth function of x: at the crossover 2*zeta just exceeds the order, so
// the omitted tail is near the optimal-truncation floor everywhere.
void airy_asym_negative(double x, double* ai, double* aip) {
    // extended precision throughout: the trig arguments reach ~2/3 |x|^{3/2},
    // and double rounding there is visible to finite-difference probes
    const auto& C = asym_coeffs();
    const ld X = static_cast<ld>(x);
    const ld zeta = (2.0L / 3.0L) * X * std::sqrt(X);
    ld P = 0.0L, Q = 0.0L, Pv = 0.0L, Qv = 0.0L;
    ld pw = 1.0L;
    for (std::size_t n = 0; n <= 30; ++n) {
        const ld t = static_cast<ld>(C.u[n]) * pw;
        const ld sgn = (n / 2 % 2 == 0) ? 1.0L : -1.0L;
        if (n % 2 == 0) {
            P += sgn * t;
            Pv += sgn * static_cast<ld>(C.v[n]) * pw;
        } else {
            Q += sgn * t;
            Qv += sgn * static_cast<ld>(C.v[n]) * pw;
        }
        if (std::abs(t) < 1e-20L) break;
        pw /= zeta;
    }
    const ld xq = std::sqrt(std::sqrt(X));
    const ld c = std::cos(zeta - ld_pi / 4.0L), s = std::sin(zeta - ld_pi / 4.0L);
    const ld sqrt_pi = std::sqrt(ld_pi);
    if (ai) *ai = static_cast<double>((c * P + s * Q) / (sqrt_pi * xq));
    if (aip) *aip = static_cast<double>(xq / sqrt_pi * (s * Pv - c * Qv));
}

void airy_eval_real(double x, double* ai, double* aip) {
    if (!std::isfinite(x)) throw DomainError("airy_ai: non-finite argument");
    if (std::abs(x) <= airy_series_radius) {
        cld a, ap;
        airy_series(cld(x, 0.0L), &a, &ap);
        if (ai) *ai = static_cast<double>(a.real());
        if (aip) *aip = static_cast<double>(ap.real());
    } else if (x > 0.0) {
        cplx a, ap;
        airy_asym_principal(cplx(x, 0.0), &a, &ap);
        if (ai) *ai = a.real();
        if (aip) *aip = ap.real();
    } else {
        airy_asym_negative(-x, ai, aip);
    }
}

void airy_eval_complex(cplx z, cplx* ai, cplx* aip) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("airy_ai: non-finite argument");
    if (std::abs(z) <= airy_series_radius) {
        cld a, ap;
        airy_series(cld(z.real(), z.imag()), &a, &ap);
        if (ai) *ai = cplx(static_cast<double>(a.real()), static_cast<double>(a.imag()));
        if (aip) *aip = cplx(static_cast<double>(ap.real()), static_cast<double>(ap.imag()));
        return;
    }
    if (std::abs(std::arg(z)) <= 2.0 * pi / 3.0) {
        airy_asym_principal(z, ai, aip);
        return;
    }
    // Sector reduction: Ai(z) = -w*Ai(w*z) - w^2*Ai(w^2*z), w = exp(2*pi*i/3);
    // both rotated arguments land in the principal sector.
    const cplx w = std::polar(1.0, 2.0 * pi / 3.0);
    const cplx w2 = std::polar(1.0, -2.0 * pi / 3.0);
    cplx a1, ap1, a2, ap2;
    airy_asym_principal(w * z, &a1, &ap1);
    airy_asym_principal(w2 * z, &a2, &ap2);
    if (ai) *ai = -w * a1 - w2 * a2;
    if (aip) *aip = -w2 * ap1 - w * ap2;
}

// Bracketed Newton iteration for zeros of f (with derivative fp). The
// bracket must stay narrower than the local zero spacing ~ pi/sqrt(|x|).
template <class F, class Fp>
double refine_zero(double seed, F f, Fp fp) {
    const double width = 0.35 * pi / std::sqrt(std::max(1.0, std::abs(seed)));
    double lo = seed - width, hi = seed + width;
    double flo = f(lo), fhi = f(hi);
    for (int grow = 0; grow < 12 && flo * fhi > 0.0; ++grow) {
        lo -= 0.5 * width;
        hi += 0.5 * width;
        flo = f(lo);
        fhi = f(hi);
    }
    if (flo * fhi > 0.0) throw AccuracyError("airy zero bracketing failed");
    for (int i = 0; i < 12; ++i) { // narrow before Newton
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (flo * fm <= 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 60; ++i) {
        const double dx = f(x) / fp(x);
        x -= dx;
        if (x < lo - 1.0 || x > hi + 1.0) throw AccuracyError("airy zero Newton escaped bracket");
        if (std::abs(dx) < 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

} // namespace

double airy_ai(double x) {
    double a;
    airy_eval_real(x, &a, nullptr);
    return a;
}

double airy_ai_prime(double x) {
    double ap;
    airy_eval_real(x, nullptr, &ap);
    return ap;
}

cplx airy_ai(cplx z) {
    if (z.imag() == 0.0) return cplx(airy_ai(z.real()), 0.0);
    cplx a;
    airy_eval_complex(z, &a, nullptr);
    return a;
}

cplx airy_ai_prime(cplx z) {
    if (z.imag() == 0.0) return cplx(airy_ai_prime(z.real()), 0.0);
    cplx ap;
    airy_eval_complex(z, nullptr, &ap);
    return ap;
}

AiryZeroTable::AiryZeroTable(std::vector<double> zeros) : zeros_(std::move(zeros)) {
    for (std::size_t i = 0; i < zeros_.size(); ++i) {
        if (zeros_[i] >= 0.0 || (i > 0 && zeros_[i] >= zeros_[i - 1]))
            throw DomainError("AiryZeroTable: zeros must be negative and strictly decreasing");
    }
}

double AiryZeroTable::zero(int i) const {
    if (i < 1 || i > count()) throw DomainError("AiryZeroTable: index out of range");
    return zeros_[static_cast<std::size_t>(i - 1)];
}

AiryZeroTable airy_zeros(int count) {
    if (count < 1) throw DomainError("airy_zeros: count must be >= 1");
    std::vector<double> zeros;
    zeros.reserve(static_cast<std::size_t>(count));
    for (int i = 1; i <= count; ++i) {
        const double t = 3.0 * pi * (4.0 * i - 1.0) / 8.0;
        const double t2 = 1.0 / (t * t);
        const double seed =
            -std::pow(t, 2.0 / 3.0) *
            (1.0 + t2 * (5.0 / 48.0 + t2 * (-5.0 / 36.0 + t2 * (77125.0 / 82944.0))));
        double z = refine_zero(
            seed, [](double x) { return airy_ai(x); }, [](double x) { return airy_ai_prime(x); });
        if (i > 1 && z >= zeros.back())
            throw AccuracyError("airy_zeros: ordering lost at index " + std::to_string(i));
        zeros.push_back(z);
    }
    return AiryZeroTable(std::move(zeros));
}

std::vector<double> airy_ai_prime_zeros(int count) {
    if (count < 1) throw DomainError("airy_ai_prime_zeros: count must be >= 1");
    std::vector<double> zeros;
    zeros.reserve(static_cast<std::size_t>(count));
    for (int i = 1; i <= count; ++i) {
        const double t = 3.0 * pi * (4.0 * i - 3.0) / 8.0;
        const double t2 = 1.0 / (t * t);
        const double seed =
            -std::pow(t, 2.0 / 3.0) *
            (1.0 + t2 * (-7.0 / 48.0 + t2 * (35.0 / 288.0 + t2 * (-181223.0 / 207360.0))));
        // Ai'' = x * Ai
        double z = refine_zero(
            seed, [](double x) { return airy_ai_prime(x); },
            [](double x) { return x * airy_ai(x); });
        zeros.push_back(z);
    }
    return zeros;
}

const AiryZeroTable& shared_airy_zeros() {
    static const AiryZeroTable table = airy_zeros(128);
    return table;
}

SphericalBesselTable spherical_bessel_table(int lmax, double x) {
    if (lmax < 0) throw DomainError("spherical_bessel: l must be >= 0");
    if (!(x > 0.0)) throw DomainError("spherical_bessel: requires x > 0 (y_l singular at 0)");

    SphericalBesselTable out;
    const std::size_t n = static_cast<std::size_t>(lmax) + 1;
    out.j.assign(n, 0.0L);
    out.y.assign(n, 0.0L);
    const ld X = static_cast<ld>(x);

    // y: upward recurrence, stable; saturate once past long-double range.
    const ld y0 = -std::cos(X) / X;
    const ld y1 = -std::cos(X) / (X * X) - std::sin(X) / X;
    out.y[0] = y0;
    if (lmax >= 1) out.y[1] = y1;
    bool saturated = false;
    for (int l = 1; l < lmax; ++l) {
        if (saturated) {
            out.y[static_cast<std::size_t>(l) + 1] = out.y[static_cast<std::size_t>(l)];
            continue;
        }
        const ld next = (2.0L * l + 1.0L) / X * out.y[static_cast<std::size_t>(l)] -
                        out.y[static_cast<std::size_t>(l) - 1];
        out.y[static_cast<std::size_t>(l) + 1] = next;
        if (std::abs(next) > 1e4900L) {
            out.y[static_cast<std::size_t>(l) + 1] =
                std::copysign(HUGE_VALL, next);
            saturated = true;
        }
    }

    // j: downward Miller recurrence from well above both l and x, rescaled
    // on the fly, then pinned to the closed forms at l = 0, 1.
    const int margin = std::max(20, static_cast<int>(std::ceil(10.0 * std::cbrt(x))));
    const int lstart = lmax + margin;
    const ld rescale_at = 1e2400L, rescale_by = 1e-2400L;
    std::vector<int> shift(n, 0);
    ld fnext = 0.0L, fcur = 1e-2400L;
    int s = 0;
    for (int l = lstart; l >= 0; --l) {
        if (l <= lmax) {
            out.j[static_cast<std::size_t>(l)] = fcur;
            shift[static_cast<std::size_t>(l)] = s;
        }
        const ld fprev = (2.0L * l + 1.0L) / X * fcur - fnext;
        fnext = fcur;
        fcur = fprev;
        if (std::abs(fcur) > rescale_at) {
            fcur *= rescale_by;
            fnext *= rescale_by;
            ++s;
        }
    }

    const ld j0 = std::sin(X) / X;
    const ld j1 = std::sin(X) / (X * X) - std::cos(X) / X;
    std::size_t ref = 0;
    ld jref = j0;
    if (lmax >= 1 && std::abs(j1) > std::abs(j0)) {
        ref = 1;
        jref = j1;
    }
    const ld raw_ref = out.j[ref];
    const int shift_ref = shift[ref];
    for (std::size_t l = 0; l < n; ++l) {
        ld v = out.j[l] / raw_ref * jref;
        for (int d = shift[l] - shift_ref; d < 0 && v != 0.0L; ++d) v *= rescale_by;
        out.j[l] = v;
    }
    // Exact endpoints, so closed-form identities hold to the last digit.
    out.j[0] = j0;
    if (lmax >= 1) out.j[1] = j1;
    return out;
}

SphericalBesselPair spherical_bessel(int l, double x) {
    const SphericalBesselTable t = spherical_bessel_table(l, x);
    return {static_cast<double>(t.j[static_cast<std::size_t>(l)]),
            static_cast<double>(t.y[static_cast<std::size_t>(l)])};
}

double legendre_p_int(int l, double x) {
    if (l < 0) throw DomainError("legendre_p_int: l must be >= 0");
    if (std::abs(x) > 1.0) throw DomainError("legendre_p_int: |x| must be <= 1");
    if (l == 0) return 1.0;
    double pm1 = 1.0, p = x;
    for (int n = 1; n < l; ++n) {
        const double next = ((2.0 * n + 1.0) * x * p - n * pm1) / (n + 1.0);
        pm1 = p;
        p = next;
    }
    return p;
}

namespace {

// 2F1(-nu, nu+1; 1; (1-x)/2) in extended precision. Safe (no net
// cancellation) for |Re nu| <= 1/2 and mild for Re nu below ~12.
cld legendre_series(cld nu, double x) {
    const ld w = (1.0L - static_cast<ld>(x)) / 2.0L;
    if (w == 0.0L) return 1.0L;
    cld term = 1.0L, sum = 1.0L;
    const ld grow_until = 2.0L * std::abs(nu) + 8.0L;
    int quiet = 0;
    const long max_terms = 2000000;
    for (long k = 0; k < max_terms; ++k) {
        const ld kk = static_cast<ld>(k);
        term *= (kk - nu) * (kk + 1.0L + nu) * w / ((kk + 1.0L) * (kk + 1.0L));
        sum += term;
        if (std::abs(term) <= 1e-22L * std::abs(sum) && kk > grow_until) {
            if (++quiet >= 2) return sum;
        } else {
            quiet = 0;
        }
    }
    throw AccuracyError("legendre_p_complex: series did not converge within term budget");
}

} // namespace

cplx legendre_p_complex(cplx mu, double x) {
    if (!(x > -1.0) || x > 1.0)
        throw DomainError("legendre_p_complex: argument must lie in (-1, 1]");
    if (x == 1.0) return 1.0;
    cld nu(mu.real(), mu.imag());
    if (nu.real() < -0.5L) nu = -1.0L - nu; // P_{-nu-1} = P_nu
    const int m = static_cast<int>(std::floor(static_cast<double>(nu.real()) + 0.5));
    if (m <= 8) {
        const cld v = legendre_series(nu, x);
        return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
    }
    // Degree reduction: series seeds near Re = 0, then the forward degree
    // recurrence, which is neutrally stable on the oscillatory cut.
    const cld s = nu - static_cast<ld>(m);
    cld pm1 = legendre_series(s, x);
    cld p = legendre_series(s + 1.0L, x);
    const ld X = static_cast<ld>(x);
    for (int i = 1; i < m; ++i) {
        const cld d = s + static_cast<ld>(i);
        const cld next = ((2.0L * d + 1.0L) * X * p - d * pm1) / (d + 1.0L);
        pm1 = p;
        p = next;
    }
    return {static_cast<double>(p.real()), static_cast<double>(p.imag())};
}

cplx legendre_backward_asymptotic(cplx lambda, double theta) {
    if (!(theta > 0.0) || !(theta < pi))
        throw DomainError("legendre_backward_asymptotic: theta must lie in (0, pi)");
    if (std::abs(lambda) * (pi - theta) <= 1.0)
        throw DomainError("legendre_backward_asymptotic: |lambda|*(pi-theta) must exceed 1");
    const cplx arg = lambda * (pi - theta) - cplx(pi / 4.0, 0.0);
    const cplx i(0.0, 1.0);
    return (std::exp(-i * arg) + std::exp(i * arg)) / std::sqrt(std::sin(theta));
}

} // namespace creepwave::specfun
