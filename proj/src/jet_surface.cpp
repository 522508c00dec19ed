#include "limcf/jet_surface.hpp"

#include "limcf/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace limcf {

bool is_finite(const SurfaceJet2& j) {
    return is_finite(j.X) && is_finite(j.Xs) && is_finite(j.Xt) && is_finite(j.Xss) &&
           is_finite(j.Xst) && is_finite(j.Xtt);
}

SurfaceJet2 translated(SurfaceJet2 j, const LVec3& d) {
    j.X += d;
    return j;
}

FirstForm first_form(const SurfaceJet2& j) {
    return {lorentz_inner(j.Xs, j.Xs), lorentz_inner(j.Xs, j.Xt), lorentz_inner(j.Xt, j.Xt)};
}

double degeneracy_tolerance(const FirstForm& I) {
    return 1e-9 * std::max({1.0, std::abs(I.E * I.G), I.F * I.F});
}

int nondegeneracy(const SurfaceJet2& j, double tol) {
    const double D = first_form(j).det();
    if (D < -tol) return 1;
    if (D > tol) return -1;
    std::ostringstream msg;
    msg << "degenerate first fundamental form: EG - F^2 = " << D;
    throw DegenerateSurface(msg.str());
}

int nondegeneracy(const SurfaceJet2& j) {
    return nondegeneracy(j, degeneracy_tolerance(first_form(j)));
}

double area_element(const SurfaceJet2& j) {
    return lorentz_norm(lorentz_cross(j.Xs, j.Xt));
}

LVec3 unit_normal(const SurfaceJet2& j, Sign sign) {
    nondegeneracy(j);
    const LVec3 c = lorentz_cross(j.Xs, j.Xt);
    return (value(sign) / lorentz_norm(c)) * c;
}

SecondForm second_form(const SurfaceJet2& j) {
    nondegeneracy(j);
    const double A = area_element(j);
    return {mixed_product(j.Xs, j.Xt, j.Xss) / A,
            mixed_product(j.Xs, j.Xt, j.Xst) / A,
            mixed_product(j.Xs, j.Xt, j.Xtt) / A};
}

double mean_curvature(const SurfaceJet2& j) {
    const int eps = nondegeneracy(j);
    const FirstForm I = first_form(j);
    const SecondForm II = second_form(j);
    return 0.5 * eps * (II.e * I.G - 2.0 * II.f * I.F + I.E * II.g) / I.det();
}

double mean_curvature_mixed(const SurfaceJet2& j) {
    nondegeneracy(j);
    const FirstForm I = first_form(j);
    const double mss = mixed_product(j.Xs, j.Xt, j.Xss);
    const double mst = mixed_product(j.Xs, j.Xt, j.Xst);
    const double mtt = mixed_product(j.Xs, j.Xt, j.Xtt);
    const double aD = std::abs(I.det());
    return -(I.G * mss - 2.0 * I.F * mst + I.E * mtt) / (2.0 * aD * std::sqrt(aD));
}

FundamentalData fundamental_data(const SurfaceJet2& j) {
    const FirstForm I = first_form(j);
    FundamentalData d;
    d.eps = nondegeneracy(j);
    const SecondForm II = second_form(j);
    d.E = I.E;
    d.F = I.F;
    d.G = I.G;
    d.e = II.e;
    d.f = II.f;
    d.g = II.g;
    d.area_el = area_element(j);
    d.H = 0.5 * d.eps * (II.e * I.G - 2.0 * II.f * I.F + I.E * II.g) / I.det();
    return d;
}

double mean_curvature_tolerance(const SecondForm& II) {
    return 1e-9 * (1.0 + std::abs(II.e) + std::abs(II.f) + std::abs(II.g));
}

bool ParamDomain::contains(double s, double t) const {
    return contains_rect(s, s, t, t);
}

bool ParamDomain::contains_rect(double s0, double s1, double t0, double t1) const {
    if (!(s0 <= s1 && t0 <= t1)) return false;
    if (!(s0 > s_lo && s1 < s_hi && t0 > t_lo && t1 < t_hi)) return false;
    for (const Interval& x : s_excluded)
        if (s0 <= x.hi && x.lo <= s1) return false;
    return true;
}

Interval ParamDomain::s_component(double s) const {
    Interval c{s_lo, s_hi};
    for (const Interval& x : s_excluded) {
        if (x.hi < s) c.lo = std::max(c.lo, x.hi);
        if (x.lo > s) c.hi = std::min(c.hi, x.lo);
    }
    return c;
}

SurfaceJet2 ParamSurface::eval(double s, double t) const {
    if (!domain.contains(s, t)) {
        std::ostringstream msg;
        msg << name << ": (" << s << ", " << t << ") outside the parameter domain";
        throw DomainError(msg.str());
    }
    return jet(s, t);
}

LVec3 ParamSurface::point(double s, double t) const {
    return eval(s, t).X;
}

double default_fd_step(double s, double t) {
    return 1e-5 * std::max({1.0, std::abs(s), std::abs(t)});
}

namespace {

LVec3 narrow(const LVec3L& v) {
    return {static_cast<double>(v.x1), static_cast<double>(v.x2), static_cast<double>(v.x3)};
}

} // namespace

SurfaceJet2 fd_jet(const PositionFn& pos, double s, double t, double h, const ParamDomain* domain) {
    if (!(h > 0)) throw InvalidParameter("fd_jet: step must be positive");
    if (domain && !domain->contains_rect(s - h, s + h, t - h, t + h)) {
        std::ostringstream msg;
        msg << "fd_jet: stencil around (" << s << ", " << t << ") leaves the domain";
        throw DomainError(msg.str());
    }
    using L = long double;
    const L S = s, T = t, hh = h;
    // f[a+1][b+1] = X(s + a h, t + b h)
    std::array<std::array<LVec3L, 3>, 3> f;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            f[a + 1][b + 1] = pos(S + a * hh, T + b * hh);

    SurfaceJet2 j;
    j.X = narrow(f[1][1]);
    j.Xs = narrow((f[2][1] - f[0][1]) / (2 * hh));
    j.Xt = narrow((f[1][2] - f[1][0]) / (2 * hh));
    j.Xss = narrow((f[2][1] - L(2) * f[1][1] + f[0][1]) / (hh * hh));
    j.Xtt = narrow((f[1][2] - L(2) * f[1][1] + f[1][0]) / (hh * hh));
    j.Xst = narrow((f[2][2] - f[2][0] - f[0][2] + f[0][0]) / (4 * hh * hh));
    return j;
}

SurfaceJet2 fd_jet(const ParamSurface& surf, double s, double t, std::optional<double> h) {
    return fd_jet(surf.position, s, t, h.value_or(default_fd_step(s, t)), &surf.domain);
}

ParamSurface make_plane() {
    ParamSurface p;
    p.name = "plane";
    p.jet = [](double s, double t) {
        return SurfaceJet2{{s, t, 0}, {1, 0, 0}, {0, 1, 0}, {}, {}, {}};
    };
    p.position = [](long double s, long double t) { return LVec3L{s, t, 0}; };
    return p;
}

ParamSurface make_timelike_cylinder() {
    ParamSurface p;
    p.name = "timelike-cylinder";
    p.jet = [](double s, double t) {
        const double c = std::cos(s), n = std::sin(s);
        return SurfaceJet2{{c, n, t}, {-n, c, 0}, {0, 0, 1}, {-c, -n, 0}, {}, {}};
    };
    p.position = [](long double s, long double t) {
        return LVec3L{std::cos(s), std::sin(s), t};
    };
    return p;
}

ParamSurface make_hyperboloid() {
    ParamSurface p;
    p.name = "hyperboloid";
    p.jet = [](double s, double t) {
        const double sh = std::sinh(s), ch = std::cosh(s), c = std::cos(t), n = std::sin(t);
        SurfaceJet2 j;
        j.X = {sh * c, sh * n, ch};
        j.Xs = {ch * c, ch * n, sh};
        j.Xt = {-sh * n, sh * c, 0};
        j.Xss = {sh * c, sh * n, ch};
        j.Xst = {-ch * n, ch * c, 0};
        j.Xtt = {-sh * c, -sh * n, 0};
        return j;
    };
    p.position = [](long double s, long double t) {
        return LVec3L{std::sinh(s) * std::cos(t), std::sinh(s) * std::sin(t), std::cosh(s)};
    };
    p.domain.s_lo = 0;
    return p;
}

} // namespace limcf
