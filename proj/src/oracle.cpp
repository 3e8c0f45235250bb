#include "creepwave/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "creepwave/errors.hpp"
#include "creepwave/specfun.hpp"

namespace creepwave::oracle {

int default_l_max(double k, double R) {
    const double x = k * R;
    return static_cast<int>(std::ceil(x + 10.0 * std::cbrt(x) + 20.0));
}

PhaseShiftTable phase_shifts(double k, double R, int l_max) {
    if (!(k > 0.0) || !(R > 0.0)) throw DomainError("phase_shifts: k and R must be positive");
    const double x = k * R;
    if (l_max < x + 10.0 * std::cbrt(x) + 10.0)
        throw DomainError("phase_shifts: l_max too small for the transition zone");
    const specfun::SphericalBesselTable bt = specfun::spherical_bessel_table(l_max, x);
    PhaseShiftTable out;
    out.k = k;
    out.R = R;
    out.delta.resize(static_cast<std::size_t>(l_max) + 1);
    for (int l = 0; l <= l_max; ++l) {
        const long double j = bt.j[static_cast<std::size_t>(l)];
        const long double y = bt.y[static_cast<std::size_t>(l)];
        // tan(delta) = j/y on the principal branch, so delta_0 -> -kR at low
        // frequency; far in the evanescent tail j underflows to an exact 0
        long double d;
        if (j == 0.0L)
            d = 0.0L;
        else if (y == 0.0L)
            d = j > 0.0L ? 0.5L * 3.14159265358979323846264338327950288L
                         : -0.5L * 3.14159265358979323846264338327950288L;
        else
            d = std::atan(j / y);
        out.delta[static_cast<std::size_t>(l)] = static_cast<double>(d);
    }
    return out;
}

cplx amplitude_at(const PhaseShiftTable& table, double theta) {
    const int lmax = table.l_max();
    // P_l(cos theta) by the same three-term recurrence as legendre_p_int,
    // carried along the sum to keep the loop linear in l_max
    const double x = std::cos(theta);
    double pm1 = 1.0, p = x;
    cplx sum = 0.0;
    for (int l = 0; l <= lmax; ++l) {
        double pl;
        if (l == 0)
            pl = 1.0;
        else if (l == 1)
            pl = x;
        else {
            const double next = ((2.0 * l - 1.0) * x * p - (l - 1.0) * pm1) / l;
            pm1 = p;
            p = next;
            pl = next;
        }
        const double d = table.delta[static_cast<std::size_t>(l)];
        sum += (2.0 * l + 1.0) * std::exp(cplx(0.0, d)) * std::sin(d) * pl;
    }
    return sum / table.k;
}

double total_cross_section(const PhaseShiftTable& table) {
    double s = 0.0;
    for (int l = 0; l <= table.l_max(); ++l) {
        const double sd = std::sin(table.delta[static_cast<std::size_t>(l)]);
        s += (2.0 * l + 1.0) * sd * sd;
    }
    return 4.0 * pi / (table.k * table.k) * s;
}

ExactAmplitude exact_amplitude(const PhaseShiftTable& table, const std::vector<double>& thetas) {
    ExactAmplitude out;
    out.theta = thetas;
    out.f.reserve(thetas.size());
    for (double th : thetas) out.f.push_back(amplitude_at(table, th));
    out.sigma_total = total_cross_section(table);
    double tail = 0.0;
    const int lmax = table.l_max();
    for (int l = std::max(0, lmax - 4); l <= lmax; ++l)
        tail = std::max(tail, (2.0 * l + 1.0) *
                                  std::abs(std::sin(table.delta[static_cast<std::size_t>(l)])));
    out.tail_bound = tail / table.k;
    return out;
}

cplx regge_pole_asymptotic(int n, double k, double R) {
    if (n < 1) throw DomainError("regge_pole_asymptotic: mode index must be >= 1");
    if (!(k > 0.0) || !(R > 0.0))
        throw DomainError("regge_pole_asymptotic: k and R must be positive");
    const double q = n <= specfun::shared_airy_zeros().count()
                         ? specfun::shared_airy_zeros().zero(n)
                         : specfun::airy_zeros(n).zero(n);
    return k * R + std::polar(std::cbrt(k * R / 2.0) * std::abs(q), pi / 3.0);
}

InterferenceProbe backward_interference_probe(const std::vector<double>& k_grid, double R) {
    if (k_grid.size() < 512)
        throw DomainError("backward_interference_probe: need a dense k grid (>= 512 points)");
    if (!(R > 0.0)) throw DomainError("backward_interference_probe: R must be positive");
    const std::size_t n = k_grid.size();
    std::vector<double> f2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = k_grid[i];
        const PhaseShiftTable t = phase_shifts(k, R, default_l_max(k, R));
        f2[i] = std::norm(amplitude_at(t, pi));
    }

    // cubic least-squares detrend in k removes the slowly varying specular
    // background without touching the creeping oscillation
    const double k0 = k_grid.front(), k1 = k_grid.back();
    auto scale = [&](double k) { return 2.0 * (k - k0) / (k1 - k0) - 1.0; };
    double M[4][5] = {};
    for (std::size_t i = 0; i < n; ++i) {
        const double t = scale(k_grid[i]);
        double b[4] = {1.0, t, t * t, t * t * t};
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) M[r][c] += b[r] * b[c];
            M[r][4] += b[r] * f2[i];
        }
    }
    for (int col = 0; col < 4; ++col) { // small Gaussian elimination
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
        std::swap(M[piv], M[col]);
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double fctr = M[r][col] / M[col][col];
            for (int c = col; c < 5; ++c) M[r][c] -= fctr * M[col][c];
        }
    }
    double coef[4];
    for (int r = 0; r < 4; ++r) coef[r] = M[r][4] / M[r][r];
    std::vector<double> resid(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = scale(k_grid[i]);
        resid[i] = f2[i] - (coef[0] + t * (coef[1] + t * (coef[2] + t * coef[3])));
    }

    // Hann-windowed periodogram over a fine period scan, peak refined by the
    // surrounding samples
    InterferenceProbe out;
    out.dk_predicted = 2.0 * pi / ((pi + 2.0) * R);
    const double span = k1 - k0;
    const double dk_min = std::max(4.0 * span / static_cast<double>(n), out.dk_predicted / 6.0);
    const double dk_max = span / 1.5;
    const int nfreq = 6000;
    std::vector<double> power(static_cast<std::size_t>(nfreq));
    double peak = 0.0, peak_dk = 0.0;
    for (int m = 0; m < nfreq; ++m) {
        const double dk = dk_min * std::pow(dk_max / dk_min, m / (nfreq - 1.0));
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = 0.5 - 0.5 * std::cos(2.0 * pi * i / (n - 1.0));
            const double ph = 2.0 * pi * k_grid[i] / dk;
            re += w * resid[i] * std::cos(ph);
            im += w * resid[i] * std::sin(ph);
        }
        power[static_cast<std::size_t>(m)] = re * re + im * im;
        if (power[static_cast<std::size_t>(m)] > peak) {
            peak = power[static_cast<std::size_t>(m)];
            peak_dk = dk;
        }
    }
    std::vector<double> sorted = power;
    std::nth_element(sorted.begin(), sorted.begin() + nfreq / 2, sorted.end());
    out.noise_floor = sorted[static_cast<std::size_t>(nfreq / 2)];
    out.peak_power = peak;
    out.dk_extracted = peak_dk;
    out.relative_error = std::abs(peak_dk - out.dk_predicted) / out.dk_predicted;
    out.conclusive = peak > 16.0 * out.noise_floor && out.noise_floor >= 0.0;
    return out;
}

} // namespace creepwave::oracle
