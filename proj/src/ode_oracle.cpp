#include "limcf/ode_oracle.hpp"

#include "limcf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace limcf {

namespace {

void require_finite(std::span<const double> y, double s) {
    for (double v : y) {
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "ODE state overflowed near s = " << s;
            throw SingularRHS(msg.str());
        }
    }
}

} // namespace

std::vector<double> rk4_integrate(const OdeProblem& p, const OdeObserver& observe) {
    if (!(p.h > 0)) throw InvalidParameter("rk4_integrate: step must be positive");
    if (p.y0.size() != p.dim || !p.rhs) throw InvalidParameter("rk4_integrate: malformed problem");
    const double lo = std::min(p.s0, p.s1), hi = std::max(p.s0, p.s1);
    for (double pole : p.poles) {
        if (pole >= lo && pole <= hi) {
            std::ostringstream msg;
            msg << "declared pole at s = " << pole << " lies on [" << lo << ", " << hi << "]";
            throw SingularRHS(msg.str());
        }
    }

    std::vector<double> y = p.y0;
    if (observe) observe(p.s0, y);
    const double span = p.s1 - p.s0;
    if (span == 0) return y;
    const auto n = static_cast<long>(std::ceil(std::abs(span) / p.h - 1e-9));
    const double h = span / static_cast<double>(n);
    const std::size_t d = p.dim;
    std::vector<double> k1(d), k2(d), k3(d), k4(d), tmp(d);
    for (long i = 0; i < n; ++i) {
        const double s = p.s0 + static_cast<double>(i) * h;
        p.rhs(s, y, k1);
        for (std::size_t m = 0; m < d; ++m) tmp[m] = y[m] + 0.5 * h * k1[m];
        p.rhs(s + 0.5 * h, tmp, k2);
        for (std::size_t m = 0; m < d; ++m) tmp[m] = y[m] + 0.5 * h * k2[m];
        p.rhs(s + 0.5 * h, tmp, k3);
        for (std::size_t m = 0; m < d; ++m) tmp[m] = y[m] + h * k3[m];
        p.rhs(s + h, tmp, k4);
        for (std::size_t m = 0; m < d; ++m)
            y[m] += h / 6.0 * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
        const double s_next = (i + 1 == n) ? p.s1 : s + h;
        require_finite(y, s_next);
        if (observe) observe(s_next, y);
    }
    return y;
}

double noncyl_u_oracle(const LVec3& V, double s0, double s1, double h, const OdeObserver& observe) {
    const double w = V.x2 - V.x3;
    if (w == 0) throw InvalidParameter("noncyl_u_oracle: needs v2 != v3");
    OdeProblem p;
    p.dim = 1;
    p.rhs = [w](double, std::span<const double> y, std::span<double> dy) {
        dy[0] = 8.0 * y[0] * y[0] / w;
    };
    p.poles = {0.0};
    // the initial value itself is singular at s0 = 0, so check before building it
    if (s0 == 0) throw SingularRHS("noncyl_u_oracle: s0 = 0 is a pole");
    p.s0 = s0;
    p.s1 = s1;
    p.y0 = {-w / (8.0 * s0)};
    p.h = h;
    return rk4_integrate(p, observe)[0];
}

PlanarState cyl_spacelike_system(double v2, double v3, Sign delta, PlanarState start, double s0,
                                 double s1, double h, const OdeObserver& observe) {
    const double d = value(delta);
    OdeProblem p;
    p.dim = 2;
    p.rhs = [v2, v3, d](double s, std::span<const double> y, std::span<double> dy) {
        const double den = v2 * y[1] - v3 * y[0];
        const double scale = std::max(1.0, (std::abs(v2) + std::abs(v3)) *
                                               (std::abs(y[0]) + std::abs(y[1])));
        if (std::abs(den) < 1e-8 * scale) {
            std::ostringstream msg;
            msg << "v2 y' - v3 x' vanishes at s = " << s;
            throw SingularRHS(msg.str());
        }
        dy[0] = -2.0 * d * y[1] / den;
        dy[1] = -2.0 * d * y[0] / den;
    };
    p.s0 = s0;
    p.s1 = s1;
    p.y0 = {start.dx, start.dy};
    p.h = h;
    const auto y = rk4_integrate(p, observe);
    return {y[0], y[1]};
}

PlanarState planar_derivative(const FamilySpec& fam, double s) {
    const LVec3 g1 = curve_eval(fam, s).d1;
    if (std::holds_alternative<CylTimelikeFamily>(fam)) return {g1.x1, g1.x2};
    if (std::holds_alternative<NonCylFamily>(fam))
        throw InvalidParameter("planar_derivative: family is not cylindrical");
    return {g1.x2, g1.x3};
}

namespace {

void require_component(const FamilySpec& fam, double s0, double s1) {
    const ParamDomain dom = family_domain(fam);
    if (!dom.contains_rect(std::min(s0, s1), std::max(s0, s1), 0, 0)) {
        std::ostringstream msg;
        msg << family_name(fam) << ": [" << std::min(s0, s1) << ", " << std::max(s0, s1)
            << "] leaves the domain";
        throw DomainError(msg.str());
    }
}

} // namespace

PlanarState cyl_spacelike_oracle(const CylEqualFamily& fam, double s0, double s1, double h,
                                 const OdeObserver& observe) {
    // s = 0 is a pole of the closed form; the system itself is regular there, so a
    // path through 0 is a domain problem rather than a singular rhs
    const FamilySpec f = fam;
    require_component(f, s0, s1);
    return cyl_spacelike_system(fam.v2(), fam.v3(), fam.delta(), planar_derivative(f, s0), s0, s1,
                                h, observe);
}

PlanarState cyl_spacelike_oracle(const CylGeneralFamily& fam, double s0, double s1, double h,
                                 const OdeObserver& observe) {
    const FamilySpec f = fam;
    require_component(f, s0, s1);
    return cyl_spacelike_system(fam.v2(), fam.v3(), fam.delta(), planar_derivative(f, s0), s0, s1,
                                h, observe);
}

PlanarState cyl_timelike_oracle(const CylTimelikeFamily& fam, double s0, double s1, double h,
                                const OdeObserver& observe) {
    const FamilySpec f = fam;
    require_component(f, s0, s1);
    const double v1 = fam.v1(), v2 = fam.v2();
    OdeProblem p;
    p.dim = 2;
    p.rhs = [v1, v2](double s, std::span<const double> y, std::span<double> dy) {
        const double den = v1 * y[1] - v2 * y[0];
        const double scale = std::max(1.0, (std::abs(v1) + std::abs(v2)) *
                                               (std::abs(y[0]) + std::abs(y[1])));
        if (std::abs(den) < 1e-8 * scale) {
            std::ostringstream msg;
            msg << "v1 y' - v2 x' vanishes at s = " << s;
            throw SingularRHS(msg.str());
        }
        dy[0] = -2.0 * y[1] / den;
        dy[1] = 2.0 * y[0] / den;
    };
    const PlanarState st = planar_derivative(f, s0);
    p.s0 = s0;
    p.s1 = s1;
    p.y0 = {st.dx, st.dy};
    p.h = h;
    const auto y = rk4_integrate(p, observe);
    return {y[0], y[1]};
}

double quadrature_position_check(const FamilySpec& fam, double s0, double s1, double step) {
    if (!(step > 0)) throw InvalidParameter("quadrature_position_check: step must be positive");
    require_component(fam, s0, s1);
    const auto n = static_cast<long>(std::ceil(std::abs(s1 - s0) / step - 1e-9));
    if (n == 0) return 0;
    const double h = (s1 - s0) / static_cast<double>(n);
    const LVec3 base = curve_eval(fam, s0).p;
    LVec3 acc{};
    LVec3 prev = curve_eval(fam, s0).d1;
    double worst = 0;
    for (long i = 1; i <= n; ++i) {
        const double s = (i == n) ? s1 : s0 + static_cast<double>(i) * h;
        const CurveJet c = curve_eval(fam, s);
        acc += (0.5 * h) * (prev + c.d1);
        prev = c.d1;
        worst = std::max(worst, euclid_norm(acc - (c.p - base)));
    }
    return worst;
}

} // namespace limcf
