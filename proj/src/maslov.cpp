#include "creepwave/maslov.hpp"

#include <algorithm>
#include <cmath>

#include "creepwave/errors.hpp"
#include "creepwave/geometry.hpp"

namespace creepwave::maslov {

namespace {

void validate_point(const LagrangianPoint& pt) {
    if (!(pt.c1 > 0.0) || !(pt.c1 < 1.0))
        throw DomainError("LagrangianPoint: c1 must lie in (0, 1)");
    if (!(pt.theta > 0.0) || !(pt.theta < pi))
        throw DomainError("LagrangianPoint: theta must lie in (0, pi)");
    if (std::abs(invariant_residual(pt)) > 1e-9)
        throw DomainError("LagrangianPoint: point is off the invariant curve");
}

bool in_focal_band(const LagrangianPoint& pt) {
    return std::abs(pt.p_theta) < focal_chart_halfwidth;
}

// U2 holds the left turning point (theta < pi/2), U4 the right one.
ChartId focal_chart(const LagrangianPoint& pt) {
    return pt.theta < pi / 2.0 ? ChartId::U2 : ChartId::U4;
}

} // namespace

double invariant_residual(const LagrangianPoint& pt) {
    const double s = std::sin(pt.theta);
    return pt.p_theta * pt.p_theta + pt.c1 * pt.c1 / (s * s) - 1.0;
}

double singular_cycle_theta(double c1) {
    if (!(c1 > 0.0) || !(c1 < 1.0)) throw DomainError("singular_cycle_theta: c1 must lie in (0, 1)");
    return std::asin(c1);
}

std::vector<ChartId> charts_of(const LagrangianPoint& pt) {
    validate_point(pt);
    std::vector<ChartId> out;
    if (pt.p_theta < 0.0) out.push_back(ChartId::U1);
    if (pt.p_theta > 0.0) out.push_back(ChartId::U3);
    if (in_focal_band(pt)) out.push_back(focal_chart(pt));
    return out;
}

double dtheta_dptheta(double p_theta, double c1) {
    if (!(c1 > 0.0) || !(c1 < 1.0)) throw DomainError("dtheta_dptheta: c1 must lie in (0, 1)");
    const double under = 1.0 - (p_theta * p_theta + c1 * c1);
    if (under <= 0.0)
        throw SingularCycleError("dtheta_dptheta: point on or beyond the singular cycle");
    return c1 * p_theta / ((1.0 - p_theta * p_theta) * std::sqrt(under));
}

int inerdex(double value) {
    if (value == 0.0) throw DegenerateError("inerdex: zero scalar is degenerate");
    return value < 0.0 ? 1 : 0;
}

int maslov_index(const std::vector<LagrangianPoint>& path) {
    if (path.size() < 2) throw DomainError("maslov_index: path needs at least two points");
    for (const auto& pt : path) {
        validate_point(pt);
        if (pt.p_theta == 0.0)
            throw DegenerateError("maslov_index: sample point on a singular cycle");
    }

    int index = 0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        const LagrangianPoint& a = path[i - 1];
        const LagrangianPoint& b = path[i];
        const bool sign_change = (a.p_theta < 0.0) != (b.p_theta < 0.0);
        if (!sign_change) continue; // same half, shared chart, no focal passage
        if (!in_focal_band(a) || !in_focal_band(b))
            throw DomainError("maslov_index: consecutive points straddle p=0 outside a focal chart");
        if (focal_chart(a) != focal_chart(b))
            throw DomainError("maslov_index: consecutive points lie in different focal charts");
        // Counterclockwise passages (p: + -> - through U2, p: - -> + through
        // U4) contribute -1 each; clockwise ones the opposite. The sign is
        // pinned by the regression anchors, not re-derived here.
        const bool upward = b.p_theta > a.p_theta;
        const bool ccw = (focal_chart(a) == ChartId::U4) == upward;
        index += ccw ? -1 : +1;
    }
    return index;
}

cplx index_phase_factor(int index) {
    return std::exp(cplx(0.0, 0.5 * pi * static_cast<double>(index)));
}

PhaseShift connection_phase(Sense /*sense*/, int crossings) {
    if (crossings < 0) throw DomainError("connection_phase: crossings must be >= 0");
    return {-crossings};
}

cplx connection_factor(Sense sense, const PhaseShift& shift) {
    const double s = sense == Sense::counterclockwise ? shift.value() : -shift.value();
    return std::exp(cplx(0.0, s));
}

PhaseShift crossing_to_phase(int m) { return {-geometry::crossing_number(m)}; }

cplx surface_wave_leading(double theta, double k, Sense sense) {
    if (!(k > 0.0)) throw DomainError("surface_wave_leading: k must be positive");
    const double s = std::sin(theta);
    if (std::abs(s) < 1e-12)
        throw CausticError("surface_wave_leading: approximation fails on the polar caustic");
    const double sgn = sense == Sense::counterclockwise ? 1.0 : -1.0;
    return std::exp(cplx(0.0, sgn * k * theta)) / std::sqrt(std::abs(s));
}

} // namespace creepwave::maslov
