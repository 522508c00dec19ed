#pragma once

#include "limcf/errors.hpp"
#include "limcf/jet_surface.hpp"
#include "limcf/mink.hpp"
#include "limcf/ruled.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <variant>

namespace limcf {

// gamma(s) = (x, y, z) with logarithmic terms, beta(s) = (1, s, s). Needs v2 != v3.
class NonCylFamily {
public:
    explicit NonCylFamily(const LVec3& V, double c1 = 0, double c2 = 0, double c3 = 0);

    const LVec3& V() const { return V_; }
    double c1() const { return c1_; }
    double c2() const { return c2_; }
    double c3() const { return c3_; }

    template <std::floating_point T>
    BasicVec3<T> position(T s) const {
        const T v1 = V_.x1, v2 = V_.x2, v3 = V_.x3, w = v2 - v3;
        const T l = std::log(std::abs(s));
        const T q = T(3) / 64 * w * s * s + v1 / 16 * s;
        return {w / 8 * s + T(c1_), q + (v3 - 3 * v2) / 32 * l + T(c2_),
                q + (v2 - 3 * v3) / 32 * l + T(c3_)};
    }

private:
    LVec3 V_;
    double c1_, c2_, c3_;
};

// gamma(s) = (0, x, y), ruling (1,0,0), V = (v1, v2, sigma v2).
class CylEqualFamily {
public:
    CylEqualFamily(double v2, Sign sigma, Sign delta, double c1 = 0, double c2 = 0);

    double v2() const { return v2_; }
    double v3() const { return value(sigma_) * v2_; }
    Sign sigma() const { return sigma_; }
    Sign delta() const { return delta_; }
    double c1() const { return c1_; }
    double c2() const { return c2_; }

    template <std::floating_point T>
    BasicVec3<T> position(T s) const {
        const T v2 = v2_, d = value(delta_), sg = value(sigma_);
        const T q = d * s * s / (2 * v2), l = v2 / 4 * std::log(std::abs(s));
        return {T(0), -q - l + T(c1_), sg * (q - l) + T(c2_)};
    }

private:
    double v2_;
    Sign sigma_, delta_;
    double c1_, c2_;
};

// gamma(s) = (0, x, y), ruling (1,0,0), V = (v1, v2, v3) with v2^2 != v3^2.
// Domain: s^2 + delta (v3^2 - v2^2)/4 > 0.
class CylGeneralFamily {
public:
    CylGeneralFamily(double v2, double v3, Sign delta, Sign branch, double c1 = 0, double c2 = 0);

    double v2() const { return v2_; }
    double v3() const { return v3_; }
    Sign delta() const { return delta_; }
    Sign branch() const { return branch_; }
    double c1() const { return c1_; }
    double c2() const { return c2_; }
    // v3^2 - v2^2
    double a() const { return v3_ * v3_ - v2_ * v2_; }
    // delta (v3^2 - v2^2) / 4
    double k() const { return value(delta_) * a() / 4; }
    // coefficient of the square-root term of y' (paired with |v3| for x')
    double mu() const;

    template <std::floating_point T>
    BasicVec3<T> position(T s) const {
        const T a = this->a(), k = this->k(), d = value(delta_), b = value(branch_);
        const T r = std::sqrt(s * s + k);
        const T P = s * r + k * std::log(std::abs(s + r));
        return {T(0), d * T(v2_) / a * s * s + b * std::abs(T(v3_)) / a * P + T(c1_),
                d * T(v3_) / a * s * s + b * T(mu()) / a * P + T(c2_)};
    }

private:
    double v2_, v3_;
    Sign delta_, branch_;
    double c1_, c2_;
};

// gamma(s) = (x, y, 0) unit speed, ruling (0,0,1), V = (v1, v2, v3) with (v1,v2) != 0.
// Domain: |s| < sqrt(v1^2 + v2^2)/2.
class CylTimelikeFamily {
public:
    CylTimelikeFamily(double v1, double v2, Sign branch, double c1 = 0, double c2 = 0);

    double v1() const { return v1_; }
    double v2() const { return v2_; }
    Sign branch() const { return branch_; }
    double c1() const { return c1_; }
    double c2() const { return c2_; }
    double n2() const { return v1_ * v1_ + v2_ * v2_; }
    // half-width of the domain
    double radius() const { return std::sqrt(n2()) / 2; }
    // coefficient of the square-root term of y' (paired with |v2| for x')
    double kappa() const;

    template <std::floating_point T>
    BasicVec3<T> position(T s) const {
        const T n2 = this->n2(), n = std::sqrt(n2), R = n / 2, b = value(branch_);
        const T r = std::sqrt(R * R - s * s), ac = std::acos(2 * s / n);
        const T av2 = std::abs(T(v2_)), ka = kappa();
        return {-T(v1_) * s * s / n2 - b * av2 / 4 * ac + b * av2 * s * r / n2 + T(c1_),
                -T(v2_) * s * s / n2 + b * ka / 4 * ac - b * ka * s * r / n2 + T(c2_), T(0)};
    }

private:
    double v1_, v2_;
    Sign branch_;
    double c1_, c2_;
};

using FamilySpec = std::variant<NonCylFamily, CylEqualFamily, CylGeneralFamily, CylTimelikeFamily>;

// Curve jets (gamma, gamma', gamma''); DomainError outside the family domain.
CurveJet noncyl_eval(const NonCylFamily& fam, double s);
CurveJet cyl_equal_eval(const CylEqualFamily& fam, double s);
CurveJet cyl_general_eval(const CylGeneralFamily& fam, double s);
CurveJet cyl_timelike_eval(const CylTimelikeFamily& fam, double s);
CurveJet curve_eval(const FamilySpec& fam, double s);

// s-domain of the family (t unrestricted).
ParamDomain family_domain(const FamilySpec& fam);

RuledSpec to_ruled(const FamilySpec& fam);
ParamSurface family_surface(const FamilySpec& fam);

// Translation velocity; `free_component` fills the slot the family leaves
// undetermined (v1 for spacelike rulings, v3 for the timelike ruling).
LVec3 family_velocity(const FamilySpec& fam, double free_component = 0);

// <beta,beta> of the ruling: +1 or -1.
Sign ruling_delta(const FamilySpec& fam);

std::string family_name(const FamilySpec& fam);

// true iff gamma' != 0 at `samples` points spread over the domain.
bool conical_check(const FamilySpec& fam, int samples);

} // namespace limcf
