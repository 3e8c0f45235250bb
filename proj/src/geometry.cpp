#include "creepwave/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>

#include "creepwave/errors.hpp"

namespace creepwave::geometry {

namespace {

constexpr double on_boundary_tol = 1e-10; // in units of R; below RK4 local error at the
                                          // recommended step, so flag and distance agree

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    if (n == 0.0) throw DomainError("normalized: zero vector");
    return v / n;
}

void ObstacleScene::validate() const {
    if (!(radius > 0.0)) throw DomainError("ObstacleScene: radius must be positive");
    if (std::abs(norm(incidence) - 1.0) > 1e-12)
        throw DomainError("ObstacleScene: incidence direction must be unit length");
    if (!(source_distance > 0.0)) throw DomainError("ObstacleScene: source distance must be positive");
}

Vec3 position(const ObstacleScene& scene, const BoundaryGeodesicState& st) {
    const double r = scene.radius + st.u;
    const double sth = std::sin(st.theta), cth = std::cos(st.theta);
    return {r * sth * std::cos(st.phi), r * sth * std::sin(st.phi), r * cth};
}

Vec3 velocity(const ObstacleScene& scene, const BoundaryGeodesicState& st) {
    const double r = scene.radius + st.u;
    const double sth = std::sin(st.theta), cth = std::cos(st.theta);
    const double sph = std::sin(st.phi), cph = std::cos(st.phi);
    const Vec3 e_theta{cth * cph, cth * sph, -sth};
    const Vec3 e_phi{-sph, cph, 0.0};
    const Vec3 e_r{sth * cph, sth * sph, cth};
    return r * st.theta_dot * e_theta + r * sth * st.phi_dot * e_phi + st.u_dot * e_r;
}

BoundaryGeodesicState make_state(const ObstacleScene& scene, const Vec3& pos, const Vec3& vel,
                                 bool on_boundary) {
    const double r = norm(pos);
    if (r < scene.radius * (1.0 - 1e-12))
        throw GeometryError("make_state: point inside the obstacle");
    BoundaryGeodesicState st;
    st.u = r - scene.radius;
    st.theta = std::acos(std::clamp(pos.z / r, -1.0, 1.0));
    st.phi = std::atan2(pos.y, pos.x);
    double sth = std::sin(st.theta), cth = std::cos(st.theta);
    if (sth < 1e-13) {
        // polar chart completion: orient the meridian plane along the
        // transverse velocity so the state is exactly representable
        const Vec3 er{0.0, 0.0, cth < 0.0 ? -1.0 : 1.0};
        const Vec3 t = vel - dot(vel, er) * er;
        if (norm(t) > 1e-15) st.phi = std::atan2(cth < 0.0 ? -t.y : t.y, cth < 0.0 ? -t.x : t.x);
        sth = std::sin(st.theta);
        cth = std::cos(st.theta);
    }
    const double sph = std::sin(st.phi), cph = std::cos(st.phi);
    const Vec3 e_theta{cth * cph, cth * sph, -sth};
    const Vec3 e_phi{-sph, cph, 0.0};
    const Vec3 e_r{sth * cph, sth * sph, cth};
    st.u_dot = dot(vel, e_r);
    st.theta_dot = dot(vel, e_theta) / r;
    st.phi_dot = sth < 1e-13 ? 0.0 : dot(vel, e_phi) / (r * sth);
    st.on_boundary = on_boundary;
    return st;
}

double metric_speed(const ObstacleScene& scene, const BoundaryGeodesicState& st) {
    const double r = scene.radius + st.u;
    const double sth = std::sin(st.theta);
    return std::sqrt(r * r * (st.theta_dot * st.theta_dot + sth * sth * st.phi_dot * st.phi_dot) +
                     st.u_dot * st.u_dot);
}

double normal_curvature(const ObstacleScene& scene, const BoundaryGeodesicState& st) {
    // chi = -sum_{i,j < n} xdot_i xdot_j Gamma^u_{ij}; in the boundary-adapted
    // metric the only nonzero symbols are Gamma^u_{theta theta} = -(R+u) and
    // Gamma^u_{phi phi} = -(R+u) sin^2(theta).
    const double r = scene.radius + st.u;
    const double sth = std::sin(st.theta);
    const double g_utt = -r;
    const double g_upp = -r * sth * sth;
    return -(st.theta_dot * st.theta_dot * g_utt + st.phi_dot * st.phi_dot * g_upp);
}

namespace {

struct SurfaceState {
    double theta, phi, theta_dot, phi_dot;
};

SurfaceState surface_rhs(const SurfaceState& y) {
    const double sth = std::sin(y.theta), cth = std::cos(y.theta);
    if (std::abs(sth) < 1e-12 && std::abs(y.phi_dot) > 1e-12)
        throw AccuracyError("geodesic_integrate: surface geodesic hit the polar chart singularity");
    const double cot = std::abs(sth) < 1e-12 ? 0.0 : cth / sth;
    return {y.theta_dot, y.phi_dot, sth * cth * y.phi_dot * y.phi_dot,
            -2.0 * cot * y.theta_dot * y.phi_dot};
}

SurfaceState rk4_step(const SurfaceState& y, double h) {
    auto add = [](const SurfaceState& a, const SurfaceState& b, double c) {
        return SurfaceState{a.theta + c * b.theta, a.phi + c * b.phi,
                            a.theta_dot + c * b.theta_dot, a.phi_dot + c * b.phi_dot};
    };
    const SurfaceState k1 = surface_rhs(y);
    const SurfaceState k2 = surface_rhs(add(y, k1, 0.5 * h));
    const SurfaceState k3 = surface_rhs(add(y, k2, 0.5 * h));
    const SurfaceState k4 = surface_rhs(add(y, k3, h));
    SurfaceState out = y;
    out.theta += h / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta);
    out.phi += h / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi);
    out.theta_dot += h / 6.0 * (k1.theta_dot + 2.0 * k2.theta_dot + 2.0 * k3.theta_dot + k4.theta_dot);
    out.phi_dot += h / 6.0 * (k1.phi_dot + 2.0 * k2.phi_dot + 2.0 * k3.phi_dot + k4.phi_dot);
    return out;
}

} // namespace

Trajectory geodesic_integrate(const ObstacleScene& scene, const BoundaryGeodesicState& init,
                              double arclength, double step) {
    scene.validate();
    if (!(step > 0.0)) throw DomainError("geodesic_integrate: step must be positive");
    if (!(arclength >= 0.0)) throw DomainError("geodesic_integrate: arclength must be >= 0");
    const double R = scene.radius;
    if (init.u < -on_boundary_tol * R)
        throw GeometryError("geodesic_integrate: initial state inside the obstacle");
    if (std::abs(metric_speed(scene, init) - 1.0) > 1e-9)
        throw DomainError("geodesic_integrate: initial state must have unit metric speed");
    // a state at u = 0 may carry either flag (that is the bifurcation);
    // a state marked constrained must actually sit on the boundary
    if (init.on_boundary && init.u >= on_boundary_tol * R)
        throw DomainError("geodesic_integrate: on-boundary flag inconsistent with distance");

    Trajectory traj;
    traj.push_back({0.0, init});

    if (init.on_boundary) {
        if (std::abs(init.u_dot) > 1e-9)
            throw DomainError("geodesic_integrate: boundary state must have vanishing normal velocity");
        // Case of a geodesic of the boundary manifold: the normal-curvature
        // term cancels the normal acceleration, u stays identically zero and
        // the remaining system is the surface geodesic equation.
        SurfaceState y{init.theta, init.phi, init.theta_dot, init.phi_dot};
        double s = 0.0;
        while (s < arclength - 1e-15 * arclength) {
            const double h = std::min(step, arclength - s);
            y = rk4_step(y, h);
            s += h;
            BoundaryGeodesicState st;
            st.theta = y.theta;
            st.phi = y.phi;
            st.u = 0.0;
            st.theta_dot = y.theta_dot;
            st.phi_dot = y.phi_dot;
            st.u_dot = 0.0;
            st.on_boundary = true;
            traj.push_back({s, st});
        }
        return traj;
    }

    // Exterior: the ambient space is Euclidean, so each RK4 step of the
    // geodesic system is an exact straight-line advance. Boundary events are
    // located by bisection on the normal-distance derivative within a step.
    Vec3 p = position(scene, init);
    Vec3 v = normalized(velocity(scene, init));
    double s = 0.0;
    while (s < arclength - 1e-15 * std::max(arclength, 1.0)) {
        const double h = std::min(step, arclength - s);
        const double d0 = norm(p), d1 = norm(p + h * v);
        // distance-squared along the step is convex; its derivative
        // g(t) = (p + t v).v changes sign at most once
        const double g0 = dot(p, v), g1 = dot(p + h * v, v);
        double dmin = std::min(d0, d1);
        double tmin = d0 <= d1 ? 0.0 : h;
        if (g0 < 0.0 && g1 > 0.0) {
            double lo = 0.0, hi = h;
            for (int i = 0; i < 60; ++i) {
                const double mid = 0.5 * (lo + hi);
                (dot(p + mid * v, v) < 0.0 ? lo : hi) = mid;
            }
            tmin = 0.5 * (lo + hi);
            dmin = norm(p + tmin * v);
        }
        if (dmin < R * (1.0 - on_boundary_tol))
            throw GeometryError("geodesic_integrate: trajectory penetrates the obstacle at s = " +
                                std::to_string(s + tmin));
        if (tmin > 0.0 && tmin < h && dmin - R < on_boundary_tol * R) {
            // tangential contact inside the step; record it and pass through
            BoundaryGeodesicState touch =
                make_state(scene, p + tmin * v, v, /*on_boundary=*/true);
            touch.u = std::max(touch.u, 0.0);
            traj.push_back({s + tmin, touch});
        }
        p = p + h * v;
        s += h;
        traj.push_back({s, make_state(scene, p, v, norm(p) - R < on_boundary_tol * R)});
    }
    return traj;
}

const char* to_string(ContactClass c) {
    switch (c) {
        case ContactClass::boundary_only: return "boundary-only";
        case ContactClass::launch: return "launch";
        case ContactClass::landing: return "landing";
        case ContactClass::tangent_touch: return "tangent-touch";
    }
    return "?";
}

ContactClass classify_contact(const Trajectory& traj, double R, double min_contact_arc) {
    if (traj.size() < 2) throw DomainError("classify_contact: trajectory too short");
    if (!(min_contact_arc >= 0.0)) throw DomainError("classify_contact: negative contact threshold");
    const double tol = on_boundary_tol * R;

    struct Run {
        std::size_t i0, i1;
    };
    std::vector<Run> runs;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (traj[i].state.u < tol) {
            if (!runs.empty() && runs.back().i1 == i - 1)
                runs.back().i1 = i;
            else
                runs.push_back({i, i});
        }
    }
    if (runs.empty()) throw DomainError("classify_contact: trajectory never contacts the boundary");
    if (runs.size() > 1)
        throw ClassificationError("classify_contact: multiple contact intervals; split the trajectory",
                                  traj[runs[0].i1].s, traj[runs[1].i0].s);

    const Run r = runs[0];
    const double span = traj[r.i1].s - traj[r.i0].s;
    const bool at_start = r.i0 == 0;
    const bool at_end = r.i1 == traj.size() - 1;
    if (at_start && at_end) return ContactClass::boundary_only;
    if (span < min_contact_arc) {
        // a contact of zero measure is a pass-through (or endpoint graze)
        if (span <= 0.0 || r.i1 - r.i0 <= 1) return ContactClass::tangent_touch;
        throw ClassificationError("classify_contact: contact interval shorter than the arc threshold",
                                  traj[r.i0].s, traj[r.i1].s);
    }
    if (at_start) return ContactClass::launch;
    if (at_end) return ContactClass::landing;
    throw ClassificationError("classify_contact: interior contact arc combines landing and launch",
                              traj[r.i0].s, traj[r.i1].s);
}

Bifurcation bifurcate(const ObstacleScene& scene, const Vec3& point, const Vec3& tangent) {
    scene.validate();
    const double R = scene.radius;
    const double r = norm(point);
    if (std::abs(r - R) > 1e-9 * R)
        throw GeometryError("bifurcate: point is not on the boundary sphere");
    const Vec3 n = point / r;
    const Vec3 t = normalized(tangent);
    const double c = dot(t, n);
    if (c < -1e-9) throw GeometryError("bifurcate: tangent points into the obstacle");
    if (std::abs(c) > 1e-9) throw GeometryError("bifurcate: tangent not orthogonal to the normal");
    const Vec3 pos = R * n;
    const Vec3 vel = normalized(t - c * n); // clean Cauchy data shared by both branches
    Bifurcation out;
    out.boundary = make_state(scene, pos, vel, /*on_boundary=*/true);
    out.boundary.u = 0.0;
    out.boundary.u_dot = 0.0;
    out.interior = out.boundary;
    out.interior.on_boundary = false;
    return out;
}

Vec3 BoundaryArc::e1() const {
    const Vec3 a = normalized(axis);
    const Vec3 zxa = cross(Vec3{0.0, 0.0, 1.0}, a);
    if (norm(zxa) < 1e-12) return Vec3{1.0, 0.0, 0.0};
    return normalized(zxa);
}

Vec3 BoundaryArc::e2() const { return cross(normalized(axis), e1()); }

Vec3 BoundaryArc::point(double t) const {
    return center + radius * (std::cos(t) * e1() + std::sin(t) * e2());
}

Vec3 BoundaryArc::tangent(double t) const {
    return -std::sin(t) * e1() + std::cos(t) * e2();
}

RayPath sphere_diffracted_ray(const ObstacleScene& scene, double theta_s, int tours, Sense sense,
                              double lead) {
    scene.validate();
    if (!(theta_s > 0.0) || !(theta_s < pi))
        throw DomainError("sphere_diffracted_ray: theta_s must lie in the open interval (0, pi)");
    if (tours < 0) throw DomainError("sphere_diffracted_ray: tours must be >= 0");
    if (!(lead > 0.0)) throw DomainError("sphere_diffracted_ray: lead must be positive");

    const double R = scene.radius;
    const Vec3 w = normalized(scene.incidence);
    // in-plane transverse direction; deterministic for any incidence axis
    Vec3 ref{1.0, 0.0, 0.0};
    if (std::abs(dot(ref, w)) > 0.9) ref = Vec3{0.0, 1.0, 0.0};
    const Vec3 xp = normalized(ref - dot(ref, w) * w);

    const double theta0 =
        sense == Sense::counterclockwise ? theta_s + 2.0 * pi * tours : 2.0 * pi - theta_s + 2.0 * pi * tours;
    const Vec3 entry_point = (sense == Sense::counterclockwise ? -R * xp : R * xp);
    const Vec3 entry_radial = normalized(entry_point);

    BoundaryArc arc;
    arc.center = Vec3{0.0, 0.0, 0.0};
    arc.axis = normalized(cross(entry_radial, w)); // positive traversal from the entry point
    arc.radius = R;
    const Vec3 e1 = arc.e1(), e2 = arc.e2();
    const double ang_start = std::atan2(dot(entry_radial, e2), dot(entry_radial, e1));
    arc.ang0 = ang_start;
    arc.ang1 = ang_start + theta0;

    const Vec3 depart = arc.point(arc.ang1);
    const Vec3 depart_dir = arc.tangent(arc.ang1);

    // the exit line must always reach past the axial-caustic point at
    // tau = R |cot theta_s|, or the conjugate point there would be cut off
    const double exit_lead =
        std::max(lead, std::abs(std::cos(theta_s)) / std::sin(theta_s) + 1.0);

    RayPath path;
    path.segments.push_back(StraightSegment{entry_point - lead * R * w, entry_point});
    path.segments.push_back(arc);
    path.segments.push_back(StraightSegment{depart, depart + exit_lead * R * depart_dir});
    path.total_length = (lead + exit_lead) * R + R * theta0;
    return path;
}

std::string export_raypath(const RayPath& path) {
    std::string out;
    for (const auto& seg : path.segments) {
        if (std::holds_alternative<StraightSegment>(seg)) {
            const auto& s = std::get<StraightSegment>(seg);
            out += "L " + fmt17(s.a.x) + " " + fmt17(s.a.y) + " " + fmt17(s.a.z) + " " +
                   fmt17(s.b.x) + " " + fmt17(s.b.y) + " " + fmt17(s.b.z) + "\n";
        } else {
            const auto& a = std::get<BoundaryArc>(seg);
            out += "A " + fmt17(a.center.x) + " " + fmt17(a.center.y) + " " + fmt17(a.center.z) +
                   " " + fmt17(a.axis.x) + " " + fmt17(a.axis.y) + " " + fmt17(a.axis.z) + " " +
                   fmt17(a.radius) + " " + fmt17(a.ang0) + " " + fmt17(a.ang1) + "\n";
        }
    }
    return out;
}

int crossing_number(int m) { return m > 0 ? 2 * m - 1 : -2 * m; }

PlanarPath to_planar(const RayPath& path) {
    if (path.segments.empty()) throw DomainError("to_planar: empty path");
    // plane normal: from any arc axis, else from a segment direction and z
    std::optional<Vec3> normal;
    for (const auto& seg : path.segments) {
        if (std::holds_alternative<BoundaryArc>(seg)) {
            normal = normalized(std::get<BoundaryArc>(seg).axis);
            break;
        }
    }
    const Vec3 zhat{0.0, 0.0, 1.0};
    if (!normal) {
        for (const auto& seg : path.segments) {
            const auto& s = std::get<StraightSegment>(seg);
            const Vec3 d = s.b - s.a;
            const Vec3 c = cross(d, zhat);
            if (norm(c) > 1e-9 * norm(d)) {
                normal = normalized(c);
                break;
            }
        }
    }
    if (!normal) throw GeometryError("to_planar: path does not determine a plane");
    if (std::abs(dot(*normal, zhat)) > 1e-9)
        throw GeometryError("to_planar: path plane does not contain the symmetry axis");

    Vec3 exi = normalized(cross(*normal, zhat));
    // orient the transverse coordinate so the path endpoint lands at xi >= 0
    Vec3 endpoint;
    if (std::holds_alternative<StraightSegment>(path.segments.back()))
        endpoint = std::get<StraightSegment>(path.segments.back()).b;
    else {
        const auto& a = std::get<BoundaryArc>(path.segments.back());
        endpoint = a.point(a.ang1);
    }
    if (dot(endpoint, exi) < 0.0) exi = -exi;
    const Vec3 m = cross(exi, zhat); // normal of the (xi, z) frame's positive rotation

    auto project = [&](const Vec3& p) { return std::array<double, 2>{dot(p, exi), dot(p, zhat)}; };
    auto check_in_plane = [&](const Vec3& p) {
        if (std::abs(dot(p, *normal)) > 1e-7 * (1.0 + norm(p)))
            throw GeometryError("to_planar: path is not planar");
    };

    PlanarPath out;
    for (const auto& seg : path.segments) {
        if (std::holds_alternative<StraightSegment>(seg)) {
            const auto& s = std::get<StraightSegment>(seg);
            check_in_plane(s.a);
            check_in_plane(s.b);
            const auto a = project(s.a), b = project(s.b);
            out.elements.push_back(PlanarSegment{a[0], a[1], b[0], b[1]});
        } else {
            const auto& a = std::get<BoundaryArc>(seg);
            check_in_plane(a.center);
            const auto c = project(a.center);
            const auto p0 = project(a.point(a.ang0));
            const double alpha0 = std::atan2(p0[1] - c[1], p0[0] - c[0]);
            const double dir = dot(normalized(a.axis), m) > 0.0 ? 1.0 : -1.0;
            out.elements.push_back(PlanarArc{c[0], c[1], a.radius, alpha0,
                                             alpha0 + dir * (a.ang1 - a.ang0)});
        }
    }
    return out;
}

namespace {

struct PlanarPoint {
    double x, z;
};

PlanarPoint element_point(const PlanarElement& e, double t) { // t in [0,1]
    if (std::holds_alternative<PlanarSegment>(e)) {
        const auto& s = std::get<PlanarSegment>(e);
        return {s.x0 + t * (s.x1 - s.x0), s.z0 + t * (s.z1 - s.z0)};
    }
    const auto& a = std::get<PlanarArc>(e);
    const double ang = a.a0 + t * (a.a1 - a.a0);
    return {a.cx + a.r * std::cos(ang), a.cz + a.r * std::sin(ang)};
}

// accumulated polar-angle sweep of a path around the origin
double angle_sweep(const PlanarPath& path) {
    double sweep = 0.0;
    PlanarPoint prev{};
    bool have_prev = false;
    for (const auto& e : path.elements) {
        int nsub = 64;
        if (std::holds_alternative<PlanarArc>(e)) {
            const auto& a = std::get<PlanarArc>(e);
            nsub = std::max(64, static_cast<int>(std::ceil(std::abs(a.a1 - a.a0) * 40.0)));
        }
        for (int i = have_prev ? 1 : 0; i <= nsub; ++i) {
            const PlanarPoint p = element_point(e, static_cast<double>(i) / nsub);
            if (have_prev) {
                const double crossz = prev.x * p.z - prev.z * p.x;
                const double dotz = prev.x * p.x + prev.z * p.z;
                sweep += std::atan2(crossz, dotz);
            }
            prev = p;
            have_prev = true;
        }
    }
    return sweep;
}

double min_origin_distance(const PlanarPath& path) {
    double dmin = HUGE_VAL;
    for (const auto& e : path.elements) {
        if (std::holds_alternative<PlanarSegment>(e)) {
            const auto& s = std::get<PlanarSegment>(e);
            const double dx = s.x1 - s.x0, dz = s.z1 - s.z0;
            const double len2 = dx * dx + dz * dz;
            double t = len2 > 0.0 ? -(s.x0 * dx + s.z0 * dz) / len2 : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            dmin = std::min(dmin, std::hypot(s.x0 + t * dx, s.z0 + t * dz));
        } else {
            const auto& a = std::get<PlanarArc>(e);
            const double dc = std::hypot(a.cx, a.cz);
            if (dc < 1e-14) {
                dmin = std::min(dmin, a.r);
                continue;
            }
            // nearest point of the full circle toward the origin; accept it
            // if its angle lies in the swept range, else check endpoints
            const double ang = std::atan2(-a.cz, -a.cx);
            const double lo = std::min(a.a0, a.a1), hi = std::max(a.a0, a.a1);
            for (int k = static_cast<int>(std::floor((lo - ang) / (2.0 * pi))) - 1;
                 ang + 2.0 * pi * k <= hi + 1e-12; ++k) {
                if (ang + 2.0 * pi * k >= lo - 1e-12) dmin = std::min(dmin, std::abs(dc - a.r));
            }
            dmin = std::min({dmin, std::hypot(a.cx + a.r * std::cos(a.a0), a.cz + a.r * std::sin(a.a0)),
                             std::hypot(a.cx + a.r * std::cos(a.a1), a.cz + a.r * std::sin(a.a1))});
        }
    }
    return dmin;
}

// shortest path between two exterior points around a disk of radius R
PlanarPath minimal_path(PlanarPoint p, PlanarPoint q, double R) {
    PlanarPath best;
    double best_len = HUGE_VAL;
    // direct segment, if it clears the disk
    {
        PlanarPath cand;
        cand.elements.push_back(PlanarSegment{p.x, p.z, q.x, q.z});
        if (min_origin_distance(cand) >= R * (1.0 - 1e-12)) {
            best = cand;
            best_len = std::hypot(q.x - p.x, q.z - p.z);
        }
    }
    const double dp = std::hypot(p.x, p.z), dq = std::hypot(q.x, q.z);
    if (dp < R || dq < R) throw GeometryError("winding_number: endpoint inside the obstacle disk");
    const double phip = std::atan2(p.z, p.x), phiq = std::atan2(q.z, q.x);
    const double bp = std::acos(std::clamp(R / dp, -1.0, 1.0));
    const double bq = std::acos(std::clamp(R / dq, -1.0, 1.0));
    const double lp = std::sqrt(std::max(dp * dp - R * R, 0.0));
    const double lq = std::sqrt(std::max(dq * dq - R * R, 0.0));
    for (double sp : {1.0, -1.0}) {
        for (double sq : {1.0, -1.0}) {
            const double tp = phip + sp * bp;
            const double tq = phiq + sq * bq;
            for (double wind : {0.0, -2.0 * pi, 2.0 * pi}) {
                double dta = std::remainder(tq - tp, 2.0 * pi) + wind;
                const double len = lp + lq + R * std::abs(dta);
                if (len < best_len) {
                    PlanarPath cand;
                    cand.elements.push_back(
                        PlanarSegment{p.x, p.z, R * std::cos(tp), R * std::sin(tp)});
                    cand.elements.push_back(PlanarArc{0.0, 0.0, R, tp, tp + dta});
                    cand.elements.push_back(
                        PlanarSegment{R * std::cos(tq), R * std::sin(tq), q.x, q.z});
                    // tangency does not guarantee the chords clear the disk
                    // for every sign combination; keep only valid ones
                    if (min_origin_distance(cand) >= R * (1.0 - 1e-9)) {
                        best = cand;
                        best_len = len;
                    }
                }
            }
        }
    }
    if (best.elements.empty()) throw GeometryError("winding_number: no admissible minimal path");
    return best;
}

} // namespace

int winding_number(const PlanarPath& path, double disk_radius, bool counterclockwise_generator) {
    if (path.elements.empty()) throw DomainError("winding_number: empty path");
    if (!(disk_radius > 0.0)) throw DomainError("winding_number: disk radius must be positive");
    if (min_origin_distance(path) < disk_radius * (1.0 - 1e-9))
        throw GeometryError("winding_number: path intersects the obstacle disk");
    const PlanarPoint p = element_point(path.elements.front(), 0.0);
    const PlanarPoint q = element_point(path.elements.back(), 1.0);
    const double qd = std::hypot(q.x, q.z);
    if (std::abs(q.x) <= 1e-9 * (disk_radius + qd))
        throw GeometryError("winding_number: observation point on the symmetry axis is degenerate");

    const double sweep_path = angle_sweep(path);
    const double sweep_min = angle_sweep(minimal_path(p, q, disk_radius));
    // the generator matching the counterclockwise creeping rays sweeps the
    // (xi, z) frame in the negative mathematical direction
    double w = (sweep_min - sweep_path) / (2.0 * pi);
    if (!counterclockwise_generator) w = -w;
    const double rounded = std::round(w);
    if (std::abs(w - rounded) > 0.02)
        throw GeometryError("winding_number: endpoints of path and minimal path disagree");
    return static_cast<int>(rounded);
}

namespace {

struct AxisCrossing {
    double global_t; // element index + local parameter
    PlanarPoint at;
};

void collect_crossings(const PlanarElement& e, double elem_index, double scale,
                       std::vector<AxisCrossing>& out) {
    if (std::holds_alternative<PlanarSegment>(e)) {
        const auto& s = std::get<PlanarSegment>(e);
        const double dx = s.x1 - s.x0;
        if (std::abs(s.x0) < 1e-9 * scale && std::abs(s.x1) < 1e-9 * scale)
            throw DegenerateError("conjugate_point_count: straight segment lies on the axis");
        if (s.x0 == 0.0 || (s.x0 < 0.0) != (s.x1 < 0.0) || s.x1 == 0.0) {
            const double t = std::abs(dx) > 0.0 ? -s.x0 / dx : 0.0;
            if (t >= -1e-12 && t <= 1.0 + 1e-12) {
                if (std::abs(dx) < 1e-9 * scale)
                    throw DegenerateError("conjugate_point_count: tangential axis contact");
                out.push_back({elem_index + std::clamp(t, 0.0, 1.0),
                               element_point(e, std::clamp(t, 0.0, 1.0))});
            }
        }
    } else {
        const auto& a = std::get<PlanarArc>(e);
        // x(t) = cx + r cos(ang); crossings where cos(ang) = -cx/r
        const double c = -a.cx / a.r;
        if (std::abs(c) > 1.0) return;
        const double base = std::acos(std::clamp(c, -1.0, 1.0));
        const double lo = std::min(a.a0, a.a1), hi = std::max(a.a0, a.a1);
        for (double root : {base, -base}) {
            for (int k = static_cast<int>(std::floor((lo - root) / (2.0 * pi))) - 1;; ++k) {
                const double ang = root + 2.0 * pi * k;
                if (ang > hi + 1e-9) break;
                if (ang < lo - 1e-9) continue;
                if (std::abs(std::sin(ang)) * a.r < 1e-9 * scale)
                    throw DegenerateError("conjugate_point_count: arc touches the axis tangentially");
                const double t = (ang - a.a0) / (a.a1 - a.a0);
                if (t >= -1e-12 && t <= 1.0 + 1e-12)
                    out.push_back({elem_index + std::clamp(t, 0.0, 1.0),
                                   {a.cx + a.r * std::cos(ang), a.cz + a.r * std::sin(ang)}});
            }
        }
    }
}

} // namespace

std::vector<Vec3> axis_crossings(const RayPath& path, const ObstacleScene& scene) {
    scene.validate();
    const double scale = scene.radius;
    const PlanarPath planar = to_planar(path);
    std::vector<AxisCrossing> crossings;
    for (std::size_t i = 0; i < planar.elements.size(); ++i)
        collect_crossings(planar.elements[i], static_cast<double>(i), scale, crossings);
    std::sort(crossings.begin(), crossings.end(),
              [](const AxisCrossing& a, const AxisCrossing& b) { return a.global_t < b.global_t; });
    std::vector<Vec3> out;
    for (std::size_t i = 0; i < crossings.size(); ++i) {
        if (i > 0) {
            const auto& prev = crossings[i - 1];
            const double gap = std::hypot(crossings[i].at.x - prev.at.x, crossings[i].at.z - prev.at.z);
            if (gap < 1e-7 * scale) continue; // same junction point seen from both sides
        }
        // crossing points lie on the axis by construction
        out.push_back(Vec3{0.0, 0.0, crossings[i].at.z});
    }
    return out;
}

int conjugate_point_count(const RayPath& path, const ObstacleScene& scene) {
    return static_cast<int>(axis_crossings(path, scene).size());
}

double ray_jacobian(double theta0, double tau, double R) {
    return tau * (R * std::cos(theta0) - tau * std::sin(theta0));
}

cplx ray_spread_amplitude(double theta0, double tau, double R, double C) {
    const double J = ray_jacobian(theta0, tau, R);
    if (J == 0.0 || std::abs(J) < 1e-300)
        throw CausticError("ray_spread_amplitude: amplitude diverges on the caustic (J = 0)");
    if (J > 0.0) return cplx(C / std::sqrt(J), 0.0);
    // branch with sqrt(J) -> +i tau sqrt(sin theta0) toward the far field
    return C / cplx(0.0, std::sqrt(-J));
}

} // namespace creepwave::geometry
