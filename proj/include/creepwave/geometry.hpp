#ifndef CREEPWAVE_GEOMETRY_HPP
#define CREEPWAVE_GEOMETRY_HPP

#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "creepwave/common.hpp"

namespace creepwave::geometry {

// ---------------------------------------------------------------------------
// Small vector algebra
// ---------------------------------------------------------------------------

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);
Vec3 normalized(const Vec3& v);

// ---------------------------------------------------------------------------
// Scene and states
// ---------------------------------------------------------------------------

/// Sphere obstacle of radius R centered at the origin, illuminated by a beam
/// along `incidence` (unit). `source_distance` is kept for generality; the
/// amplitude pipeline only exercises the scattering limit (infinite source).
struct ObstacleScene {
    double radius = 1.0;
    Vec3 incidence{0.0, 0.0, 1.0};
    double source_distance = std::numeric_limits<double>::infinity();

    void validate() const; // radius > 0, |incidence| = 1 within 1e-12
};

/// State in boundary-adapted coordinates (theta, phi, u): spherical angles
/// extended constant along outward normals, u = distance from the boundary.
/// Metric: ds^2 = (R+u)^2 dtheta^2 + (R+u)^2 sin^2(theta) dphi^2 + du^2.
struct BoundaryGeodesicState {
    double theta = 0.0;
    double phi = 0.0;
    double u = 0.0;
    double theta_dot = 0.0;
    double phi_dot = 0.0;
    double u_dot = 0.0;
    bool on_boundary = false;
};

/// A trajectory sample: state plus its arclength stamp along the geodesic.
struct TrajectorySample {
    double s = 0.0;
    BoundaryGeodesicState state;
};

using Trajectory = std::vector<TrajectorySample>;

Vec3 position(const ObstacleScene& scene, const BoundaryGeodesicState& st);
Vec3 velocity(const ObstacleScene& scene, const BoundaryGeodesicState& st);
BoundaryGeodesicState make_state(const ObstacleScene& scene, const Vec3& pos, const Vec3& vel,
                                 bool on_boundary);

/// Metric speed |v|_g of a state; geodesics are run at unit speed.
double metric_speed(const ObstacleScene& scene, const BoundaryGeodesicState& st);

/// Normal curvature chi of the boundary in the direction of the (boundary)
/// state's velocity, computed from the Christoffel symbols of the
/// boundary-adapted metric. Equals 1/R on the sphere at unit speed.
double normal_curvature(const ObstacleScene& scene, const BoundaryGeodesicState& st);

// ---------------------------------------------------------------------------
// Geodesic integration and contact analysis
// ---------------------------------------------------------------------------

/// Integrate the geodesic system for `arclength` at fixed step `step`.
///
/// On-boundary states evolve by RK4 of the surface geodesic equations (the
/// normal curvature term cancels the normal acceleration there, so u stays
/// exactly 0). Off-boundary states evolve as straight lines in the ambient
/// space, with bisection on the boundary-distance along each step to place a
/// sample at any tangential contact. A step that would penetrate the
/// obstacle signals GeometryError.
Trajectory geodesic_integrate(const ObstacleScene& scene, const BoundaryGeodesicState& init,
                              double arclength, double step);

enum class ContactClass { boundary_only, launch, landing, tangent_touch };

const char* to_string(ContactClass c);

/// Assign a trajectory to one of the four canonical contact cases.
/// `min_contact_arc` is the shortest boundary run accepted as a genuine
/// contact interval; shorter interior runs (more than a point, less than an
/// arc) signal ClassificationError with the offending arclength interval.
ContactClass classify_contact(const Trajectory& traj, double R, double min_contact_arc);

/// Split a grazing ray at a boundary point: both continuations share
/// position and velocity (Cauchy data); one is constrained to the boundary,
/// the other is free in the exterior. Signals GeometryError if the point is
/// off the sphere or the tangent has an inward normal component.
struct Bifurcation {
    BoundaryGeodesicState boundary;
    BoundaryGeodesicState interior;
};

Bifurcation bifurcate(const ObstacleScene& scene, const Vec3& point, const Vec3& tangent);

// ---------------------------------------------------------------------------
// Diffracted rays on the sphere
// ---------------------------------------------------------------------------

struct StraightSegment {
    Vec3 a, b;
};

/// Great-circle arc: point(t) = center + r*(cos(t)*e1 + sin(t)*e2) for
/// t in [ang0, ang1], where e1 = normalized(z_hat x axis) (x_hat if the axis
/// is along z) and e2 = axis x e1. The angles may span several turns.
struct BoundaryArc {
    Vec3 center;
    Vec3 axis;
    double radius = 1.0;
    double ang0 = 0.0;
    double ang1 = 0.0;

    Vec3 e1() const;
    Vec3 e2() const;
    Vec3 point(double t) const;
    Vec3 tangent(double t) const; // unit, in the direction of increasing t
};

using RaySegment = std::variant<StraightSegment, BoundaryArc>;

struct RayPath {
    std::vector<RaySegment> segments;
    double total_length = 0.0;
};

/// Diffracted ray for scattering angle theta_s: grazing entry line parallel
/// to the incidence axis, a boundary arc of angle theta_s + 2*pi*tours
/// (counterclockwise) or 2*pi - theta_s + 2*pi*tours (clockwise), and the
/// exit line in the direction theta_s. `lead` sets the finite length of the
/// entry/exit lines in units of R (geometry only; amplitudes never depend on
/// it); the exit line is extended past the axial-caustic point regardless,
/// so conjugate points are never cut off.
RayPath sphere_diffracted_ray(const ObstacleScene& scene, double theta_s, int tours, Sense sense,
                              double lead = 3.0);

/// Line-oriented export: `L x1 y1 z1 x2 y2 z2` per straight segment,
/// `A cx cy cz ax ay az R ang0 ang1` per arc, 17 significant digits.
std::string export_raypath(const RayPath& path);

// ---------------------------------------------------------------------------
// Homotopy bookkeeping in the scattering plane
// ---------------------------------------------------------------------------

/// Number of axis crossings of the class-m geodesic: 2m-1 for m > 0, -2m
/// for m <= 0. A bijection from the winding numbers onto the naturals.
int crossing_number(int m);

struct PlanarSegment {
    double x0, z0, x1, z1;
};

/// Circular arc around (cx, cz), radius r, from angle a0 to a1 (may span
/// several turns; standard orientation, angle measured from +x toward +z).
struct PlanarArc {
    double cx, cz, r, a0, a1;
};

using PlanarElement = std::variant<PlanarSegment, PlanarArc>;

struct PlanarPath {
    std::vector<PlanarElement> elements;
};

/// Project a ray path into the scattering plane it lies in (the plane
/// through the symmetry axis and the exit direction). Signals GeometryError
/// if the path is not planar or its plane misses the axis.
PlanarPath to_planar(const RayPath& path);

/// Winding number of a path with endpoints held fixed, relative to the
/// minimal path between the same endpoints and the loop generator that
/// turns in the sense of the counterclockwise creeping rays. The path must
/// stay outside the open obstacle disk; observation points on the symmetry
/// axis are rejected as degenerate.
int winding_number(const PlanarPath& path, double disk_radius,
                   bool counterclockwise_generator = true);

/// Transversal crossings of the symmetry axis along a diffracted ray; both
/// the shadow and the illuminated portions of the axis act as caustics for
/// orbiting rays. Equals the Morse index of the ray. Signals DegenerateError
/// if a straight segment lies on the axis.
int conjugate_point_count(const RayPath& path, const ObstacleScene& scene);

/// The crossing points themselves (deduplicated, in path order);
/// conjugate_point_count is their number.
std::vector<Vec3> axis_crossings(const RayPath& path, const ObstacleScene& scene);

// ---------------------------------------------------------------------------
// Ray-tube spreading for rays leaving the sphere
// ---------------------------------------------------------------------------

/// Jacobian of the (theta0, phi0, tau) ray coordinates:
/// J = tau * (R cos(theta0) - tau sin(theta0)).
double ray_jacobian(double theta0, double tau, double R);

/// Transport amplitude A = C / sqrt(J), branch fixed so that
/// sqrt(J) -> i * r * sqrt(sin theta0) in the far field. Signals
/// CausticError at J = 0.
cplx ray_spread_amplitude(double theta0, double tau, double R, double C);

} // namespace creepwave::geometry

#endif
