#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "creepwave/errors.hpp"
#include "creepwave/specfun.hpp"
#include "oracles.hpp"

using namespace creepwave;
using namespace creepwave::specfun;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// independent bisection on airy_ai itself, no Newton machinery
double bisect_airy_zero(double lo, double hi) {
    double flo = airy_ai(lo);
    REQUIRE(flo * airy_ai(hi) < 0.0);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = airy_ai(mid);
        if (flo * fm <= 0.0)
            hi = mid;
        else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("airy values at the closed-form anchors") {
    // Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3)
    const double ai0 = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
    const double aip0 = -std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0);
    CHECK(rel_err(airy_ai(0.0), ai0) < 1e-12);
    CHECK(rel_err(airy_ai_prime(0.0), aip0) < 1e-12);
    CHECK(airy_ai(0.0) == doctest::Approx(0.35502805388781724).epsilon(1e-12));
    CHECK(airy_ai_prime(0.0) == doctest::Approx(-0.25881940379280680).epsilon(1e-12));
}

TEST_CASE("airy at 1 against the quadrature oracle and the frozen value") {
    const cplx quad = testoracle::airy_integral(1.0, 1e-14);
    CHECK(std::abs(quad.imag()) < 1e-11);
    CHECK(rel_err(airy_ai(1.0), quad.real()) < 1e-10);
    CHECK(airy_ai(1.0) == doctest::Approx(0.13529241631288141).epsilon(1e-11));
}

TEST_CASE("airy accuracy across the real interval [-20, 5]") {
    // reference values computed in 30-digit arithmetic
    struct Ref {
        double x, ai, aip;
    };
    const Ref refs[] = {
        {-19.5, 0.26780027210258394576, 0.087741088343757135701},
        {-15.2, 0.14936088016760755927, 0.95215778325234894641},
        {-12.0, -0.066555175054373129474, 1.0231104533679707299},
        {-9.7, 0.28023750191629743829, 0.48628629123926820898},
        {-8.5, -0.33029023763020887902, -0.032313348284639135873},
        {-7.6, 0.27825023488019733006, 0.54671881905734806948},
        {-6.3, -0.33734764921613506233, -0.29899160898473956417},
        {-5.0, 0.35076100902411431979, 0.32719281855444313679},
        {-3.3, -0.41718093737455012877, -0.070963617177836128664},
        {-1.7, 0.3886070373963287373, 0.44612455463607505269},
        {-0.4, 0.45422561388866739839, -0.22503140930241503157},
        {0.9, 0.15188680364054436109, -0.17276384346163467386},
        {2.2, 0.025610404421773219548, -0.04049726324445313526},
        {3.6, 0.0021264786826381708363, -0.0041711317444193810804},
        {4.8, 0.00017032552328643494849, -0.00038157072868873844054},
    };
    for (const auto& r : refs) {
        CHECK(rel_err(airy_ai(r.x), r.ai) < 1e-10);
        CHECK(rel_err(airy_ai_prime(r.x), r.aip) < 1e-10);
    }
}

TEST_CASE("airy finite-difference derivative check at x = -1") {
    const double h = 1e-5;
    const double fd = (airy_ai(-1.0 + h) - airy_ai(-1.0 - h)) / (2.0 * h);
    CHECK(std::abs(fd - airy_ai_prime(-1.0)) < 1e-8);
}

TEST_CASE("airy satisfies its own equation: Ai'' = x Ai") {
    const double h = 1e-4;
    for (int i = 0; i < 20; ++i) {
        const double x = -10.0 + 12.0 * i / 19.0;
        const double second =
            (airy_ai(x + h) - 2.0 * airy_ai(x) + airy_ai(x - h)) / (h * h);
        CHECK(std::abs(second - x * airy_ai(x)) < 1e-7);
    }
}

TEST_CASE("airy zeros: bracketing, anchors, monotonicity") {
    const AiryZeroTable tab = airy_zeros(10);
    CHECK(std::abs(tab.zero(1) - -2.33810741045976704) < 1e-12);
    CHECK(std::abs(tab.zero(2) - -4.08794944413097062) < 1e-12);
    CHECK(std::abs(airy_ai(tab.zero(1))) < 1e-12);
    CHECK(std::abs(airy_ai_prime(tab.zero(1))) > 0.1); // zeros of Ai are simple
    for (int i = 1; i < 10; ++i) CHECK(tab.zero(i + 1) < tab.zero(i));
    CHECK(tab.zero(1) < 0.0);

    // independent bisection reproduces the first two zeros to 1e-10
    CHECK(std::abs(bisect_airy_zero(-3.0, -2.0) - tab.zero(1)) < 1e-10);
    CHECK(std::abs(bisect_airy_zero(-4.5, -3.5) - tab.zero(2)) < 1e-10);

    CHECK_THROWS_AS(airy_zeros(0), DomainError);
}

TEST_CASE("airy zero table interleaves with the zeros of the derivative") {
    const int n = 12;
    const AiryZeroTable a = airy_zeros(n);
    const std::vector<double> ap = airy_ai_prime_zeros(n);
    // 0 > a'_1 > a_1 > a'_2 > a_2 > ...
    CHECK(ap[0] > a.zero(1));
    for (int i = 1; i <= n - 1; ++i) {
        CHECK(a.zero(i) > ap[static_cast<std::size_t>(i)]);
        CHECK(ap[static_cast<std::size_t>(i)] > a.zero(i + 1));
    }
}

TEST_CASE("complex airy: series region identity and sector reduction") {
    const cplx w = std::polar(1.0, 2.0 * pi / 3.0);
    for (cplx z : {cplx(1.5, 2.0), cplx(-2.0, 1.0), cplx(0.5, -2.5)}) {
        const cplx id = airy_ai(z) + w * airy_ai(w * z) + w * w * airy_ai(w * w * z);
        CHECK(std::abs(id) < 1e-13);
        const cplx idp = airy_ai_prime(z) + w * w * airy_ai_prime(w * z) + w * airy_ai_prime(w * w * z);
        CHECK(std::abs(idp) < 1e-13);
    }
    // beyond the series radius, checked against 30-digit reference values
    auto close = [](cplx got, cplx want) { return std::abs(got - want) / std::abs(want) < 1e-9; };
    CHECK(close(airy_ai(cplx(9, 5)), cplx(-1.7055502505950904e-8, -7.2196325745239697e-9)));
    CHECK(close(airy_ai(cplx(-9, 0.5)), cplx(-0.058385787509342347, -0.69177428319705952)));
    CHECK(close(airy_ai(cplx(0, 12)), cplx(20659441.479505009, -44627666.757474334)));
    CHECK(close(airy_ai_prime(cplx(-10, -2)), cplx(251.2992264268619, 132.22317188943026)));
}

TEST_CASE("complex airy overflow signals a range error") {
    CHECK_THROWS_AS(airy_ai(cplx(-300.0, 300.0)), RangeError);
}

TEST_CASE("spherical bessel closed forms at l = 0, 1") {
    const auto b0 = spherical_bessel(0, 1.0);
    CHECK(b0.j == doctest::Approx(0.84147098480789651).epsilon(1e-12));
    CHECK(b0.y == doctest::Approx(-0.54030230586813972).epsilon(1e-12));
    const auto b1 = spherical_bessel(1, 1.0);
    CHECK(b1.j == doctest::Approx(0.30116867893975679).epsilon(1e-12));
}

TEST_CASE("spherical bessel wronskian identity") {
    // j_l y_l' - j_l' y_l = 1/x^2, derivatives from the recurrence
    auto wronskian_err = [](int l, double x) {
        const auto t = spherical_bessel_table(l, x);
        const long double X = x;
        const long double jp = t.j[static_cast<std::size_t>(l) - 1] -
                               (l + 1.0L) / X * t.j[static_cast<std::size_t>(l)];
        const long double yp = t.y[static_cast<std::size_t>(l) - 1] -
                               (l + 1.0L) / X * t.y[static_cast<std::size_t>(l)];
        const long double w = t.j[static_cast<std::size_t>(l)] * yp - jp * t.y[static_cast<std::size_t>(l)];
        return std::abs(static_cast<double>(w * X * X - 1.0L));
    };
    CHECK(wronskian_err(10, 7.0) < 1e-10);
    for (double x : {1.0, 10.0, 100.0}) {
        double worst = 0.0;
        const auto t = spherical_bessel_table(200, x);
        for (int l = 1; l <= 200; ++l) {
            const long double X = x;
            const long double jp = t.j[static_cast<std::size_t>(l) - 1] -
                                   (l + 1.0L) / X * t.j[static_cast<std::size_t>(l)];
            const long double yp = t.y[static_cast<std::size_t>(l) - 1] -
                                   (l + 1.0L) / X * t.y[static_cast<std::size_t>(l)];
            const long double w =
                t.j[static_cast<std::size_t>(l)] * yp - jp * t.y[static_cast<std::size_t>(l)];
            worst = std::max(worst, std::abs(static_cast<double>(w * X * X - 1.0L)));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("spherical bessel extremes and errors") {
    CHECK_THROWS_AS(spherical_bessel(0, 0.0), DomainError);
    CHECK_THROWS_AS(spherical_bessel(-1, 1.0), DomainError);
    // high order in the oscillatory regime stays accurate
    const auto t = spherical_bessel_table(5000, 5010.0);
    const long double X = 5010.0L;
    const long double jp = t.j[4999] - 5001.0L / X * t.j[5000];
    const long double yp = t.y[4999] - 5001.0L / X * t.y[5000];
    CHECK(std::abs(static_cast<double>((t.j[5000] * yp - jp * t.y[5000]) * X * X - 1.0L)) < 1e-9);
    // far in the evanescent tail the double value underflows cleanly
    const auto tiny = spherical_bessel(5000, 1.0);
    CHECK(tiny.j == 0.0);
    // spot value frozen from a 30-digit evaluation
    const auto t30 = spherical_bessel_table(50, 30.0);
    CHECK(rel_err(static_cast<double>(t30.j[50]), 2.69016371857353161e-9) < 1e-10);
    CHECK(rel_err(static_cast<double>(t30.y[50]), -152551.572331576905) < 1e-10);
}

TEST_CASE("integer legendre recurrence") {
    CHECK(legendre_p_int(0, -0.73) == 1.0);
    CHECK(legendre_p_int(2, 0.5) == doctest::Approx(-0.125).epsilon(1e-14));
    for (int l : {0, 1, 2, 5, 17, 40, 100}) CHECK(legendre_p_int(l, 1.0) == doctest::Approx(1.0));
    // |P_l| <= 1 on the interval
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> xd(-1.0, 1.0);
    std::uniform_int_distribution<int> ld(0, 60);
    for (int i = 0; i < 200; ++i) CHECK(std::abs(legendre_p_int(ld(rng), xd(rng))) <= 1.0 + 1e-12);
}

TEST_CASE("complex-degree legendre: trivial, integer, and quadrature anchors") {
    CHECK(legendre_p_complex(cplx(0.3, 5.0), 1.0) == cplx(1.0, 0.0));
    CHECK(legendre_p_complex(cplx(2.0, 0.0), 0.5).real() == doctest::Approx(-0.125).epsilon(1e-12));

    for (int l = 0; l <= 50; ++l) {
        for (double x : {-0.97, -0.6, 0.02, 0.4, 0.83, 1.0}) {
            const cplx v = legendre_p_complex(cplx(l, 0.0), x);
            CHECK(std::abs(v - cplx(legendre_p_int(l, x), 0.0)) < 1e-10);
        }
    }

    const cplx nu(0.5, 3.0);
    const double x = 0.2;
    const cplx direct = legendre_p_complex(nu, x);
    const cplx md = testoracle::mehler_dirichlet_legendre(nu, std::acos(x));
    CHECK(std::abs(direct - md) / std::abs(md) < 1e-7);

    CHECK_THROWS_AS(legendre_p_complex(cplx(1.0, 0.0), -1.0), DomainError);
    CHECK_THROWS_AS(legendre_p_complex(cplx(1.0, 0.0), 1.5), DomainError);
}

TEST_CASE("complex-degree legendre signals non-convergence") {
    CHECK_THROWS_AS(legendre_p_complex(cplx(3.2, 1.0), -1.0 + 1e-9), AccuracyError);
}

TEST_CASE("backward asymptotic form of the legendre function") {
    auto exact = [](cplx lambda, double th) {
        return std::sqrt(2.0 * pi * lambda) * legendre_p_complex(lambda - 0.5, -std::cos(th));
    };
    const cplx l50(50.0, 2.0);
    CHECK(std::abs(legendre_backward_asymptotic(l50, pi / 2) - exact(l50, pi / 2)) /
              std::abs(exact(l50, pi / 2)) <
          1e-2);
    // error decreases monotonically along |lambda|
    double prev = 1.0;
    for (double lr : {20.0, 40.0, 80.0}) {
        const cplx lam(lr, 2.0);
        const double err = std::abs(legendre_backward_asymptotic(lam, pi / 2) - exact(lam, pi / 2)) /
                           std::abs(exact(lam, pi / 2));
        CHECK(err < prev);
        prev = err;
    }
    // reflection structure: swapping theta -> pi - theta swaps the roles of
    // the two exponentials and rescales by sqrt(sin)
    const cplx lam(35.0, 1.0);
    const double th = 1.1;
    const cplx I(0.0, 1.0);
    auto bracket = [&](double t) {
        return legendre_backward_asymptotic(lam, t) * std::sqrt(std::sin(t));
    };
    const cplx arg1 = lam * (pi - th) - pi / 4.0;
    const cplx arg2 = lam * th - pi / 4.0;
    CHECK(std::abs(bracket(th) - (std::exp(I * arg1) + std::exp(-I * arg1))) < 1e-12 * std::abs(bracket(th)));
    CHECK(std::abs(bracket(pi - th) - (std::exp(I * arg2) + std::exp(-I * arg2))) <
          1e-12 * std::abs(bracket(pi - th)));
    CHECK_THROWS_AS(legendre_backward_asymptotic(cplx(0.1, 0.0), pi / 2), DomainError);
}
