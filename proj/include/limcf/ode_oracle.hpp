#pragma once

#include "limcf/families.hpp"
#include "limcf/mink.hpp"

#include <functional>
#include <span>
#include <vector>

namespace limcf {

// dy/ds = rhs(s, y). The rhs may throw SingularRHS itself.
using OdeRhs = std::function<void(double s, std::span<const double> y, std::span<double> dy)>;
using OdeObserver = std::function<void(double s, std::span<const double> y)>;

struct OdeProblem {
    std::size_t dim = 0;
    OdeRhs rhs;
    double s0 = 0;
    std::vector<double> y0;
    double s1 = 0;
    double h = 1e-3;
    // s-values where the rhs is known to blow up; integrating across or onto one is refused
    std::vector<double> poles;
};

// Classical fixed-step RK4 from s0 to s1 (either direction). The step is
// shortened so an integer number of steps lands on s1 exactly.
// SingularRHS on a declared pole in [s0, s1] or a non-finite state.
std::vector<double> rk4_integrate(const OdeProblem& p, const OdeObserver& observe = {});

// Planar derivative state (x', y').
struct PlanarState {
    double dx = 0, dy = 0;
};

// u' = 8u^2/(v2 - v3) with u(s0) = (v3 - v2)/(8 s0); returns u(s1).
double noncyl_u_oracle(const LVec3& V, double s0, double s1, double h,
                       const OdeObserver& observe = {});

// x'' = -2 delta y'/(v2 y' - v3 x'), y'' = -2 delta x'/(v2 y' - v3 x'), started from the
// closed form at s0. SingularRHS when |v2 y' - v3 x'| < 1e-8 * scale.
PlanarState cyl_spacelike_oracle(const CylEqualFamily& fam, double s0, double s1, double h,
                                 const OdeObserver& observe = {});
PlanarState cyl_spacelike_oracle(const CylGeneralFamily& fam, double s0, double s1, double h,
                                 const OdeObserver& observe = {});

// x'' = -2 y'/(v1 y' - v2 x'), y'' = 2 x'/(v1 y' - v2 x'). DomainError outside |s| < radius.
PlanarState cyl_timelike_oracle(const CylTimelikeFamily& fam, double s0, double s1, double h,
                                const OdeObserver& observe = {});

// Underlying spacelike-ruling system for explicit initial data.
PlanarState cyl_spacelike_system(double v2, double v3, Sign delta, PlanarState start, double s0,
                                 double s1, double h, const OdeObserver& observe = {});

// Closed-form (x', y') of a cylindrical family (the two nonzero slots of gamma').
PlanarState planar_derivative(const FamilySpec& fam, double s);

// Max Euclidean gap between the trapezoid integral of gamma' on [s0, s1] (step
// <= `step`) and gamma(s) - gamma(s0), over all nodes.
double quadrature_position_check(const FamilySpec& fam, double s0, double s1, double step);

} // namespace limcf
