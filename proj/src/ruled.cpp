#include "limcf/ruled.hpp"

#include "limcf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace limcf {

namespace {

void require_s(const RuledSpec& spec, double s) {
    if (!spec.domain.contains(s, 0.0)) {
        std::ostringstream msg;
        msg << spec.name << ": s = " << s << " outside the domain";
        throw DomainError(msg.str());
    }
}

LVec3L widen(const LVec3& v) {
    return {v.x1, v.x2, v.x3};
}

} // namespace

SurfaceJet2 ruled_jet(const RuledSpec& spec, double s, double t) {
    require_s(spec, s);
    const CurveJet g = spec.gamma(s);
    const CurveJet b = spec.beta(s);
    SurfaceJet2 j;
    j.X = g.p + t * b.p;
    j.Xs = g.d1 + t * b.d1;
    j.Xt = b.p;
    j.Xss = g.d2 + t * b.d2;
    j.Xst = b.d1;
    j.Xtt = {};
    return j;
}

ParamSurface ruled_surface(const RuledSpec& spec) {
    ParamSurface p;
    p.name = spec.name;
    p.jet = [spec](double s, double t) { return ruled_jet(spec, s, t); };
    if (spec.gamma_position && spec.beta_position) {
        p.position = [g = spec.gamma_position, b = spec.beta_position](long double s, long double t) {
            return g(s) + t * b(s);
        };
    } else {
        p.position = [spec](long double s, long double t) {
            const auto ds = static_cast<double>(s);
            return widen(spec.gamma(ds).p) + t * widen(spec.beta(ds).p);
        };
    }
    p.domain = spec.domain;
    p.domain.t_lo = -std::numeric_limits<double>::infinity();
    p.domain.t_hi = std::numeric_limits<double>::infinity();
    return p;
}

PrincResidual soliton_residual_princ(const SurfaceJet2& j, const LVec3& V) {
    nondegeneracy(j);
    const FirstForm I = first_form(j);
    const double D = I.det();
    const double mV = mixed_product(j.Xs, j.Xt, V);
    const double mss = mixed_product(j.Xs, j.Xt, j.Xss);
    const double mst = mixed_product(j.Xs, j.Xt, j.Xst);
    const double mtt = mixed_product(j.Xs, j.Xt, j.Xtt);
    PrincResidual r;
    r.raw = mV * (I.G * mss - 2.0 * I.F * mst + I.E * mtt) - 2.0 * D * D;
    r.normalized = r.raw / (1.0 + D * D);
    return r;
}

PrincResidual soliton_residual_princ_either(const SurfaceJet2& j, const LVec3& V) {
    const PrincResidual a = soliton_residual_princ(j, V);
    const PrincResidual b = soliton_residual_princ(j, -V);
    return std::abs(a.normalized) <= std::abs(b.normalized) ? a : b;
}

double soliton_residual_normal(const SurfaceJet2& j, const LVec3& V) {
    const FundamentalData d = fundamental_data(j);
    if (std::abs(d.H) <= mean_curvature_tolerance({d.e, d.f, d.g})) {
        std::ostringstream msg;
        msg << "mean curvature vanishes (H = " << d.H << ")";
        throw MeanCurvatureZero(msg.str());
    }
    const double q = lorentz_inner(unit_normal(j, Sign::Positive), V) * d.H;
    return std::min(std::abs(q + 1.0), std::abs(-q + 1.0));
}

double PolyCoeffs::eval(double t) const {
    double acc = 0;
    for (auto it = A.rbegin(); it != A.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double PolyCoeffs::max_abs() const {
    double m = 0;
    for (double a : A) m = std::max(m, std::abs(a));
    return m;
}

PolyCoeffs noncyl_poly_coeffs(const RuledSpec& spec, const LVec3& V, Sign delta, double s) {
    require_s(spec, s);
    const CurveJet g = spec.gamma(s);
    const CurveJet b = spec.beta(s);
    const LVec3 &g1 = g.d1, &g2 = g.d2, &B = b.p, &b1 = b.d1, &b2 = b.d2;
    const double d = value(delta);

    const double nb = euclid_norm(B);
    auto check = [&](double v, double ref, const char* what) {
        if (std::abs(v) > 1e-8 * std::max(1.0, ref)) {
            std::ostringstream msg;
            msg << "noncyl_poly_coeffs at s = " << s << ": " << what << " (off by " << v << ")";
            throw AssumptionViolated(msg.str());
        }
    };
    check(lorentz_inner(B, B) - d, nb * nb, "<beta,beta> != delta");
    check(lorentz_inner(B, g1), nb * euclid_norm(g1), "<beta,gamma'> != 0");
    check(lorentz_inner(B, b1), nb * euclid_norm(b1), "<beta,beta'> != 0");

    const double gg = lorentz_inner(g1, g1);
    const double gb1 = lorentz_inner(g1, b1);
    const double b1b1 = lorentz_inner(b1, b1);
    const double gBV = mixed_product(g1, B, V);
    const double b1BV = mixed_product(b1, B, V);
    const double gBg2 = mixed_product(g1, B, g2);
    const double b1Bg2 = mixed_product(b1, B, g2);
    const double gBb2 = mixed_product(g1, B, b2);
    const double b1Bb2 = mixed_product(b1, B, b2);

    // each coefficient as a list of signed terms, so the cancellation scale is available
    const std::array<std::array<double, 5>, 5> terms = {{
        {2 * gg * gg, -d * gBV * gBg2, 0, 0, 0},
        {8 * gg * gb1, -d * gBV * b1Bg2, -d * gBV * gBb2, -d * b1BV * gBg2, 0},
        {4 * b1b1 * gg, 8 * gb1 * gb1, -d * gBV * b1Bb2, -d * b1BV * b1Bg2, -d * b1BV * gBb2},
        {8 * gb1 * b1b1, -d * b1BV * b1Bb2, 0, 0, 0},
        {2 * b1b1 * b1b1, 0, 0, 0, 0},
    }};

    PolyCoeffs c;
    for (std::size_t i = 0; i < 5; ++i) {
        double sum = 0, mag = 0;
        for (double x : terms[i]) {
            sum += x;
            mag += std::abs(x);
        }
        c.A[i] = sum;
        c.scale = std::max(c.scale, mag);
    }
    return c;
}

LightlikePoly lightlike_beta_poly(const RuledSpec& spec, const LVec3& V, double s) {
    require_s(spec, s);
    const CurveJet g = spec.gamma(s);
    const CurveJet b = spec.beta(s);
    const double nb = euclid_norm(b.p);
    const double bb = lorentz_inner(b.p, b.p);
    if (std::abs(bb) > 1e-8 * std::max(1.0, nb * nb)) {
        std::ostringstream msg;
        msg << "lightlike_beta_poly at s = " << s << ": <beta,beta> = " << bb << " is not null";
        throw AssumptionViolated(msg.str());
    }
    const double gBb1 = mixed_product(g.d1, b.p, b.d1);
    const double t0 = mixed_product(g.d1, b.p, V) * gBb1;
    const double F = lorentz_inner(g.d1, b.p);
    const double t1 = F * F * F;
    LightlikePoly r;
    r.p0 = t0 + t1;
    r.p1 = mixed_product(b.d1, b.p, V) * gBb1;
    r.scale = std::max(1.0, std::abs(t0) + std::abs(t1) + std::abs(r.p1));
    return r;
}

} // namespace limcf
