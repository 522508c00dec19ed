#pragma once

#include "limcf/mink.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace limcf {

// Position and all partials up to order two at one parameter point.
struct SurfaceJet2 {
    LVec3 X, Xs, Xt, Xss, Xst, Xtt;
};

bool is_finite(const SurfaceJet2& j);

// Same jet with the position moved by d (derivatives untouched).
SurfaceJet2 translated(SurfaceJet2 j, const LVec3& d);

struct FirstForm {
    double E = 0, F = 0, G = 0;
    double det() const { return E * G - F * F; }
};

struct SecondForm {
    double e = 0, f = 0, g = 0;
};

struct FundamentalData {
    double E = 0, F = 0, G = 0;
    double e = 0, f = 0, g = 0;
    int eps = 0;          // +1 timelike surface, -1 spacelike
    double area_el = 0;   // |Xs x Xt|
    double H = 0;         // for the "+" normal
};

FirstForm first_form(const SurfaceJet2& j);

// 1e-9 * max(1, |E G|, F^2)
double degeneracy_tolerance(const FirstForm& I);

// +1 if EG - F^2 < -tol, -1 if EG - F^2 > tol, DegenerateSurface otherwise
int nondegeneracy(const SurfaceJet2& j, double tol);
int nondegeneracy(const SurfaceJet2& j);

double area_element(const SurfaceJet2& j);

LVec3 unit_normal(const SurfaceJet2& j, Sign sign = Sign::Positive);

// e,f,g for the "+" normal, via mixed products with X_ss, X_st, X_tt
SecondForm second_form(const SurfaceJet2& j);

// H = (eps/2)(eG - 2fF + Eg)/(EG - F^2)
double mean_curvature(const SurfaceJet2& j);

// H = -(G (Xs,Xt,Xss) - 2F (Xs,Xt,Xst) + E (Xs,Xt,Xtt)) / (2 |EG - F^2|^{3/2})
double mean_curvature_mixed(const SurfaceJet2& j);

FundamentalData fundamental_data(const SurfaceJet2& j);

// 1e-9 * (1 + |e| + |f| + |g|)
double mean_curvature_tolerance(const SecondForm& II);

// Closed parameter interval.
struct Interval {
    double lo = 0, hi = 0;
};

// Open rectangle (bounds may be infinite) minus closed excluded s-intervals.
struct ParamDomain {
    double s_lo = -std::numeric_limits<double>::infinity();
    double s_hi = std::numeric_limits<double>::infinity();
    double t_lo = -std::numeric_limits<double>::infinity();
    double t_hi = std::numeric_limits<double>::infinity();
    std::vector<Interval> s_excluded;

    bool contains(double s, double t) const;
    // whole closed rectangle [s0,s1] x [t0,t1]
    bool contains_rect(double s0, double s1, double t0, double t1) const;
    // maximal open s-interval of the domain around s (s must be inside)
    Interval s_component(double s) const;
};

using JetFn = std::function<SurfaceJet2(double, double)>;
using PositionFn = std::function<LVec3L(long double, long double)>;

// A parametrized surface: closed-form jets, an extended-precision position
// evaluator for difference checks, and its parameter domain.
struct ParamSurface {
    std::string name;
    JetFn jet;
    PositionFn position;
    ParamDomain domain;

    // DomainError outside the domain
    SurfaceJet2 eval(double s, double t) const;
    LVec3 point(double s, double t) const;
};

double default_fd_step(double s, double t);

// Central differences on the 9-point stencil, evaluated in long double.
// DomainError if a stencil point leaves the domain (when one is given).
SurfaceJet2 fd_jet(const PositionFn& pos, double s, double t, double h,
                   const ParamDomain* domain = nullptr);
SurfaceJet2 fd_jet(const ParamSurface& surf, double s, double t,
                   std::optional<double> h = std::nullopt);

// X = (s, t, 0)
ParamSurface make_plane();
// X = (cos s, sin s, t)
ParamSurface make_timelike_cylinder();
// X = (sinh s cos t, sinh s sin t, cosh s), s > 0
ParamSurface make_hyperboloid();

} // namespace limcf
