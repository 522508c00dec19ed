#pragma once

#include "limcf/jet_surface.hpp"
#include "limcf/mink.hpp"

#include <array>
#include <functional>
#include <string>

namespace limcf {

// Value and first two derivatives of a curve (or vector field) at s.
struct CurveJet {
    LVec3 p, d1, d2;
};

using CurveFn = std::function<CurveJet(double)>;
using CurvePositionFn = std::function<LVec3L(long double)>;

// X(s,t) = gamma(s) + t beta(s)
struct RuledSpec {
    std::string name;
    CurveFn gamma;
    CurveFn beta;
    // Optional extended-precision values of gamma and beta, used by fd checks.
    CurvePositionFn gamma_position;
    CurvePositionFn beta_position;
    // Only the s-part is meaningful; t is unrestricted.
    ParamDomain domain;
};

// DomainError if s is outside the curves' domain.
SurfaceJet2 ruled_jet(const RuledSpec& spec, double s, double t);

ParamSurface ruled_surface(const RuledSpec& spec);

struct PrincResidual {
    double raw = 0;         // R
    double normalized = 0;  // R / (1 + (EG - F^2)^2)
};

// R = (Xs,Xt,V) [G (Xs,Xt,Xss) - 2F (Xs,Xt,Xst) + E (Xs,Xt,Xtt)] - 2 (EG - F^2)^2.
// The E term vanishes for ruled jets. No normal is involved.
PrincResidual soliton_residual_princ(const SurfaceJet2& j, const LVec3& V);

// Residual for whichever of V, -V fits better (min |R| / (1 + D^2)).
PrincResidual soliton_residual_princ_either(const SurfaceJet2& j, const LVec3& V);

// min over +-V of |<N,V> H + 1|, N and H for the "+" orientation.
// MeanCurvatureZero if |H| is below the curvature tolerance.
double soliton_residual_normal(const SurfaceJet2& j, const LVec3& V);

struct PolyCoeffs {
    std::array<double, 5> A{};
    // largest sum of absolute values of the terms making up one coefficient (>= 1)
    double scale = 1;

    double eval(double t) const;
    double max_abs() const;
};

// Coefficients A0..A4 of the quartic in t obtained from the residual along an
// orthogonal ruled parametrization with <beta,beta> = delta; sum A_i t^i = -R(s,t).
// The t^3 coefficient carries 8 <g',b'><b',b'> (the full expansion of 2 E(t)^2).
// AssumptionViolated unless <beta,beta> = delta, <beta,gamma'> = 0 and
// <beta,beta'> = 0 hold at s within 1e-8.
PolyCoeffs noncyl_poly_coeffs(const RuledSpec& spec, const LVec3& V, Sign delta, double s);

struct LightlikePoly {
    double p0 = 0, p1 = 0;
    double scale = 1;
};

// p0 = (g',b,V)(g',b,b') + <g',b>^3, p1 = (b',b,V)(g',b,b') for a lightlike ruling.
// AssumptionViolated unless <beta,beta> = 0 within 1e-8.
LightlikePoly lightlike_beta_poly(const RuledSpec& spec, const LVec3& V, double s);

} // namespace limcf
