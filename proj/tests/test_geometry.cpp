#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "creepwave/errors.hpp"
#include "creepwave/geometry.hpp"
#include "oracles.hpp"

using namespace creepwave;
using namespace creepwave::geometry;

namespace {

ObstacleScene unit_scene() {
    ObstacleScene s;
    s.radius = 1.0;
    return s;
}

} // namespace

TEST_CASE("scene validation") {
    ObstacleScene s = unit_scene();
    s.validate();
    s.radius = -1.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = unit_scene();
    s.incidence = Vec3{0.0, 0.0, 2.0};
    CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("boundary geodesics are great circles") {
    const ObstacleScene scene = unit_scene();
    const double R = scene.radius;

    SUBCASE("equatorial circle closes after one period") {
        BoundaryGeodesicState init;
        init.theta = pi / 2.0;
        init.phi = 0.0;
        init.theta_dot = 0.0;
        init.phi_dot = 1.0 / R;
        init.on_boundary = true;
        const auto traj = geodesic_integrate(scene, init, 2.0 * pi * R, R / 1000.0);
        const Vec3 start = position(scene, traj.front().state);
        const Vec3 end = position(scene, traj.back().state);
        CHECK(norm(end - start) < 1e-6 * R);
    }

    SUBCASE("tilted circle follows the analytic solution") {
        const Vec3 P{1.0, 0.0, 0.0};
        const Vec3 T = normalized(Vec3{0.0, 1.0, 0.5});
        const auto init = make_state(scene, R * P, T, true);
        const auto traj = geodesic_integrate(scene, init, 2.0 * pi * R, R / 1000.0);
        double worst = 0.0, speed_worst = 0.0;
        for (const auto& s : traj) {
            const Vec3 analytic = R * std::cos(s.s / R) * P + R * std::sin(s.s / R) * T;
            worst = std::max(worst, norm(position(scene, s.state) - analytic));
            speed_worst = std::max(speed_worst, std::abs(metric_speed(scene, s.state) - 1.0));
        }
        CHECK(worst < 1e-7 * R);
        CHECK(speed_worst < 1e-9);
    }
}

TEST_CASE("exterior geodesics are straight lines") {
    const ObstacleScene scene = unit_scene();
    const Vec3 p0{3.0, 2.0, 0.0};
    const Vec3 dir = normalized(Vec3{0.1, 0.2, 1.0});
    const auto init = make_state(scene, p0, dir, false);
    const double len = 5.0;
    const auto traj = geodesic_integrate(scene, init, len, 1e-2);
    double worst = 0.0;
    for (const auto& s : traj) {
        const Vec3 chord = p0 + s.s * dir;
        worst = std::max(worst, norm(position(scene, s.state) - chord));
    }
    CHECK(worst < 1e-12 * len);
}

TEST_CASE("normal curvature of the sphere boundary") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double R : {1.0, 2.5}) {
        ObstacleScene scene = unit_scene();
        scene.radius = R;
        for (int i = 0; i < 20; ++i) {
            Vec3 p = normalized(Vec3{u(rng), u(rng), 0.4 + 0.5 * std::abs(u(rng))});
            Vec3 t = normalized(cross(p, Vec3{u(rng), u(rng), u(rng)}));
            const auto st = make_state(scene, R * p, t, true);
            CHECK(normal_curvature(scene, st) == doctest::Approx(1.0 / R).epsilon(1e-11));
        }
    }
    // unit sphere: chi = 1
    const auto st =
        make_state(unit_scene(), Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0}, true);
    CHECK(normal_curvature(unit_scene(), st) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("penetrating trajectories are rejected") {
    const ObstacleScene scene = unit_scene();
    const auto init = make_state(scene, Vec3{-3.0, 0.0, 0.9}, Vec3{1.0, 0.0, 0.0}, false);
    CHECK_THROWS_AS(geodesic_integrate(scene, init, 6.0, 1e-2), GeometryError);
}

TEST_CASE("contact classification") {
    const ObstacleScene scene = unit_scene();
    const double min_arc = 1e-2;

    SUBCASE("full great circle is boundary-only") {
        BoundaryGeodesicState init;
        init.theta = pi / 2.0;
        init.phi_dot = 1.0;
        init.on_boundary = true;
        const auto traj = geodesic_integrate(scene, init, 2.0 * pi, 1e-2);
        CHECK(classify_contact(traj, 1.0, min_arc) == ContactClass::boundary_only);
    }

    SUBCASE("arc then tangent departure is a launch") {
        BoundaryGeodesicState init;
        init.theta = pi / 2.0;
        init.phi_dot = 1.0;
        init.on_boundary = true;
        auto traj = geodesic_integrate(scene, init, 0.5, 1e-2);
        const auto& last = traj.back();
        const auto fork =
            bifurcate(scene, position(scene, last.state), velocity(scene, last.state));
        const auto tail = geodesic_integrate(scene, fork.interior, 1.0, 1e-2);
        for (std::size_t i = 1; i < tail.size(); ++i)
            traj.push_back({last.s + tail[i].s, tail[i].state});
        CHECK(classify_contact(traj, 1.0, min_arc) == ContactClass::launch);

        SUBCASE("reversed it is a landing") {
            Trajectory rev;
            const double total = traj.back().s;
            for (auto it = traj.rbegin(); it != traj.rend(); ++it)
                rev.push_back({total - it->s, it->state});
            CHECK(classify_contact(rev, 1.0, min_arc) == ContactClass::landing);
        }
    }

    SUBCASE("grazing straight line is a tangent touch") {
        const auto init = make_state(scene, Vec3{-2.0, 0.0, 1.0}, Vec3{1.0, 0.0, 0.0}, false);
        const auto traj = geodesic_integrate(scene, init, 4.0, 1e-2);
        CHECK(classify_contact(traj, 1.0, min_arc) == ContactClass::tangent_touch);
    }

    SUBCASE("short interior contact interval is ambiguous") {
        Trajectory traj;
        auto interior = [&](double s, double u) {
            BoundaryGeodesicState st;
            st.theta = pi / 2.0;
            st.phi = s;
            st.u = u;
            traj.push_back({s, st});
        };
        for (int i = 0; i <= 10; ++i) interior(0.1 * i, 0.5);
        for (int i = 1; i <= 4; ++i) interior(1.0 + 0.001 * i, 0.0);
        for (int i = 1; i <= 10; ++i) interior(1.004 + 0.1 * i, 0.5);
        CHECK_THROWS_AS(classify_contact(traj, 1.0, min_arc), ClassificationError);
        try {
            classify_contact(traj, 1.0, min_arc);
        } catch (const ClassificationError& e) {
            CHECK(e.s_begin == doctest::Approx(1.001));
            CHECK(e.s_end == doctest::Approx(1.004));
        }
    }
}

TEST_CASE("bifurcation at a boundary point") {
    const ObstacleScene scene = unit_scene();

    SUBCASE("equator point, eastward tangent") {
        const auto fork = bifurcate(scene, Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0});
        CHECK(fork.boundary.on_boundary);
        CHECK(!fork.interior.on_boundary);
        // boundary branch stays on the equator, interior branch on the tangent
        const auto arc = geodesic_integrate(scene, fork.boundary, 0.7, 1e-3);
        for (const auto& s : arc) CHECK(std::abs(s.state.theta - pi / 2.0) < 1e-9);
        const auto line = geodesic_integrate(scene, fork.interior, 0.7, 1e-3);
        const Vec3 end = position(scene, line.back().state);
        CHECK(norm(end - Vec3{1.0, 0.7, 0.0}) < 1e-9);
    }

    SUBCASE("branches agree to second order in arclength") {
        const auto fork = bifurcate(scene, Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0});
        const double s = 1e-3;
        const auto a = geodesic_integrate(scene, fork.boundary, s, s / 20.0);
        const auto b = geodesic_integrate(scene, fork.interior, s, s / 20.0);
        const double gap = norm(position(scene, a.back().state) - position(scene, b.back().state));
        CHECK(gap < 0.6 * s * s);
        CHECK(gap > 0.4 * s * s);
        const double vgap =
            norm(velocity(scene, a.back().state) - velocity(scene, b.back().state));
        CHECK(vgap < 1.5 * s);
        CHECK(vgap > 0.5 * s);
    }

    SUBCASE("inward or skew tangents are rejected") {
        CHECK_THROWS_AS(bifurcate(scene, Vec3{1.0, 0.0, 0.0}, Vec3{-0.2, 1.0, 0.0}),
                        GeometryError);
        CHECK_THROWS_AS(bifurcate(scene, Vec3{1.2, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0}),
                        GeometryError);
    }

    SUBCASE("k bifurcation points double the local branches, k+1 global rays") {
        // each of the k points yields exactly two distinct continuations;
        // globally a branch that sheds cannot reattach to a convex obstacle,
        // so k points generate k+1 distinct maximal rays
        const int k = 3;
        std::vector<Vec3> shed_endpoints;
        BoundaryGeodesicState cursor;
        cursor.theta = pi / 2.0;
        cursor.phi_dot = 1.0;
        cursor.on_boundary = true;
        for (int j = 0; j < k; ++j) {
            const auto leg = geodesic_integrate(scene, cursor, 0.4, 1e-3);
            cursor = leg.back().state;
            const auto fork =
                bifurcate(scene, position(scene, cursor), velocity(scene, cursor));
            const auto shed = geodesic_integrate(scene, fork.interior, 1.0, 1e-2);
            shed_endpoints.push_back(position(scene, shed.back().state));
            cursor = fork.boundary;
        }
        for (std::size_t a = 0; a < shed_endpoints.size(); ++a)
            for (std::size_t b = a + 1; b < shed_endpoints.size(); ++b)
                CHECK(norm(shed_endpoints[a] - shed_endpoints[b]) > 0.1);
    }
}

TEST_CASE("diffracted rays on the sphere") {
    const ObstacleScene scene = unit_scene();

    SUBCASE("entry point and arc angles") {
        const auto plus = sphere_diffracted_ray(scene, pi / 2.0, 0, Sense::counterclockwise);
        REQUIRE(plus.segments.size() == 3);
        const auto& entry = std::get<StraightSegment>(plus.segments[0]);
        CHECK(norm(entry.b - Vec3{-1.0, 0.0, 0.0}) < 1e-12);
        const auto& arc = std::get<BoundaryArc>(plus.segments[1]);
        CHECK(std::abs(arc.ang1 - arc.ang0 - pi / 2.0) < 1e-12);

        const auto minus = sphere_diffracted_ray(scene, pi / 2.0, 0, Sense::clockwise);
        const auto& arcm = std::get<BoundaryArc>(minus.segments[1]);
        CHECK(std::abs(arcm.ang1 - arcm.ang0 - 3.0 * pi / 2.0) < 1e-12);

        const auto toured = sphere_diffracted_ray(scene, pi / 3.0, 2, Sense::counterclockwise);
        const auto& arct = std::get<BoundaryArc>(toured.segments[1]);
        CHECK(std::abs(arct.ang1 - arct.ang0 - (pi / 3.0 + 4.0 * pi)) < 1e-12);

        CHECK_THROWS_AS(sphere_diffracted_ray(scene, 0.0, 0, Sense::counterclockwise), DomainError);
        CHECK_THROWS_AS(sphere_diffracted_ray(scene, pi, 0, Sense::clockwise), DomainError);
    }

    SUBCASE("C1 junctions, arc on the sphere, exit direction") {
        for (Sense s : {Sense::counterclockwise, Sense::clockwise}) {
            for (double th : {0.4, pi / 2.0, 2.7}) {
                for (int tours : {0, 1}) {
                    const auto ray = sphere_diffracted_ray(scene, th, tours, s);
                    const auto& entry = std::get<StraightSegment>(ray.segments[0]);
                    const auto& arc = std::get<BoundaryArc>(ray.segments[1]);
                    const auto& exit = std::get<StraightSegment>(ray.segments[2]);
                    CHECK(norm(entry.b - arc.point(arc.ang0)) < 1e-9);
                    CHECK(norm(normalized(entry.b - entry.a) - arc.tangent(arc.ang0)) < 1e-9);
                    CHECK(norm(exit.a - arc.point(arc.ang1)) < 1e-9);
                    CHECK(norm(normalized(exit.b - exit.a) - arc.tangent(arc.ang1)) < 1e-9);
                    for (double t = 0.0; t <= 1.0; t += 0.125)
                        CHECK(std::abs(norm(arc.point(arc.ang0 + t * (arc.ang1 - arc.ang0))) - 1.0) <
                              1e-9);
                    // exit direction makes angle theta_s with the incidence axis
                    const Vec3 d = normalized(exit.b - exit.a);
                    CHECK(std::abs(std::acos(std::clamp(d.z, -1.0, 1.0)) - th) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("ray path export format") {
    RayPath path;
    path.segments.push_back(StraightSegment{{0.0, 0.0, 0.0}, {1.0, 0.5, -2.0}});
    path.segments.push_back(BoundaryArc{{0.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, 2.0, 0.0, 1.5});
    CHECK(export_raypath(path) == "L 0 0 0 1 0.5 -2\nA 0 0 0 0 1 0 2 0 1.5\n");
}

TEST_CASE("crossing number map") {
    CHECK(crossing_number(1) == 1);
    CHECK(crossing_number(0) == 0);
    CHECK(crossing_number(-2) == 4);
    // bijection from [-1000, 1000] onto [0, 2000]
    std::vector<char> seen(2001, 0);
    for (int m = -1000; m <= 1000; ++m) {
        const int n = crossing_number(m);
        REQUIRE(n >= 0);
        REQUIRE(n <= 2000);
        CHECK(!seen[static_cast<std::size_t>(n)]);
        seen[static_cast<std::size_t>(n)] = 1;
    }
    for (char c : seen) CHECK(c == 1);
}

TEST_CASE("winding numbers in the scattering plane") {
    const double R = 1.0;

    SUBCASE("minimal path has winding zero") {
        PlanarPath p;
        p.elements.push_back(PlanarSegment{0.0, -3.0, 2.0, 0.5});
        CHECK(winding_number(p, R) == 0);
    }

    SUBCASE("one generator loop has winding one") {
        PlanarPath p;
        p.elements.push_back(PlanarArc{0.0, 0.0, 3.0, -pi / 2.0, -pi / 2.0 - 2.0 * pi});
        p.elements.push_back(PlanarSegment{0.0, -3.0, 2.0, 0.5});
        CHECK(winding_number(p, R) == 1);
    }

    SUBCASE("diffracted rays land in the classes matching their sense") {
        const ObstacleScene scene = unit_scene();
        for (int tours : {0, 1, 2}) {
            const auto plus = to_planar(sphere_diffracted_ray(scene, 1.2, tours, Sense::counterclockwise));
            CHECK(winding_number(plus, R) == tours + 1);
            const auto minus = to_planar(sphere_diffracted_ray(scene, 1.2, tours, Sense::clockwise));
            CHECK(winding_number(minus, R) == -(tours + 1));
        }
    }

    SUBCASE("crossing number of the winding class matches the geometric count") {
        std::mt19937_64 rng(20040813);
        for (int i = 0; i < 50; ++i) {
            const auto sample = testoracle::random_class_path(rng, R);
            CHECK(winding_number(sample.path, R) == sample.winding);
            CHECK(crossing_number(sample.winding) ==
                  testoracle::brute_force_planar_crossings(sample.path));
        }
    }

    SUBCASE("paths through the disk and on-axis observation points are rejected") {
        PlanarPath through;
        through.elements.push_back(PlanarSegment{0.0, -3.0, 0.05, 2.5});
        CHECK_THROWS_AS(winding_number(through, R), GeometryError);
        PlanarPath onaxis;
        onaxis.elements.push_back(PlanarArc{0.0, 0.0, 3.0, -pi / 2.0, pi / 2.0});
        CHECK_THROWS_AS(winding_number(onaxis, R), GeometryError);
    }
}

TEST_CASE("conjugate point counts along diffracted rays") {
    const ObstacleScene scene = unit_scene();

    CHECK(conjugate_point_count(sphere_diffracted_ray(scene, pi / 2.0, 0, Sense::counterclockwise),
                                scene) == 1);
    CHECK(conjugate_point_count(sphere_diffracted_ray(scene, pi / 2.0, 0, Sense::clockwise),
                                scene) == 2);

    SUBCASE("each tour adds two crossings; brute force agrees") {
        for (double th : {0.5, 1.5, 2.5}) {
            for (int tours = 0; tours <= 5; ++tours) {
                const auto plus = sphere_diffracted_ray(scene, th, tours, Sense::counterclockwise);
                const auto minus = sphere_diffracted_ray(scene, th, tours, Sense::clockwise);
                CHECK(conjugate_point_count(plus, scene) == 1 + 2 * tours);
                CHECK(conjugate_point_count(minus, scene) == 2 + 2 * tours);
                CHECK(conjugate_point_count(plus, scene) ==
                      testoracle::brute_force_axis_crossings(plus));
                CHECK(conjugate_point_count(minus, scene) ==
                      testoracle::brute_force_axis_crossings(minus));
            }
        }
    }

    SUBCASE("crossing positions live on the axis") {
        const auto ray = sphere_diffracted_ray(scene, 2.5, 1, Sense::clockwise);
        for (const auto& c : axis_crossings(ray, scene)) {
            CHECK(std::abs(c.x) < 1e-12);
            CHECK(std::abs(c.y) < 1e-12);
            CHECK(std::abs(c.z) >= 1.0 - 1e-9);
        }
    }

    SUBCASE("segments lying on the axis are degenerate") {
        auto ray = sphere_diffracted_ray(scene, pi / 2.0, 0, Sense::counterclockwise);
        ray.segments.push_back(StraightSegment{{0.0, 0.0, 1.5}, {0.0, 0.0, 3.0}});
        CHECK_THROWS_AS(conjugate_point_count(ray, scene), DegenerateError);
    }
}

TEST_CASE("ray jacobian and spreading amplitude") {
    CHECK(ray_jacobian(1.0, 0.0, 2.0) == 0.0);
    const double th = 0.7, R = 2.0;
    CHECK(std::abs(ray_jacobian(th, R / std::tan(th), R)) < 1e-12);
    CHECK(ray_jacobian(pi / 2.0, 1.0, 2.0) == doctest::Approx(-1.0));

    SUBCASE("far-field modulus and phase") {
        const double theta0 = 1.0, C = 2.5, tau = 1e8;
        const cplx A = ray_spread_amplitude(theta0, tau, 1.0, C);
        CHECK(std::abs(A) * tau == doctest::Approx(C / std::sqrt(std::sin(theta0))).epsilon(1e-6));
        CHECK(std::arg(A) == doctest::Approx(-pi / 2.0).epsilon(1e-6));
    }

    SUBCASE("caustic signals") {
        CHECK_THROWS_AS(ray_spread_amplitude(1.0, 0.0, 2.0, 1.0), CausticError);
        // at theta0 = pi/2 the only caustic point is tau = 0
        for (double tau : {0.1, 1.0, 10.0})
            CHECK_NOTHROW(ray_spread_amplitude(pi / 2.0, tau, 2.0, 1.0));
    }
}
