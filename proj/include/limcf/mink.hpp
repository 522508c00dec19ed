#pragma once

#include <cmath>
#include <concepts>
#include <string_view>

namespace limcf {

// Vector of R^3 with the Lorentzian metric of signature (+,+,-).
// The third coordinate is the timelike axis.
template <std::floating_point T>
struct BasicVec3 {
    T x1{};
    T x2{};
    T x3{};

    constexpr BasicVec3& operator+=(const BasicVec3& o) {
        x1 += o.x1; x2 += o.x2; x3 += o.x3;
        return *this;
    }
    constexpr BasicVec3& operator-=(const BasicVec3& o) {
        x1 -= o.x1; x2 -= o.x2; x3 -= o.x3;
        return *this;
    }
    constexpr BasicVec3& operator*=(T a) {
        x1 *= a; x2 *= a; x3 *= a;
        return *this;
    }

    friend constexpr BasicVec3 operator+(BasicVec3 a, const BasicVec3& b) { return a += b; }
    friend constexpr BasicVec3 operator-(BasicVec3 a, const BasicVec3& b) { return a -= b; }
    friend constexpr BasicVec3 operator-(const BasicVec3& a) { return {-a.x1, -a.x2, -a.x3}; }
    friend constexpr BasicVec3 operator*(T a, BasicVec3 v) { return v *= a; }
    friend constexpr BasicVec3 operator*(BasicVec3 v, T a) { return v *= a; }
    friend constexpr BasicVec3 operator/(BasicVec3 v, T a) { return v *= (T(1) / a); }
    friend constexpr bool operator==(const BasicVec3&, const BasicVec3&) = default;
};

using LVec3 = BasicVec3<double>;
using LVec3L = BasicVec3<long double>;

enum class CausalClass { Spacelike, Timelike, Lightlike };

std::string_view to_string(CausalClass c);

// Sign of a branch, orientation or causal character.
enum class Sign : int { Negative = -1, Positive = 1 };

constexpr double value(Sign s) { return static_cast<double>(static_cast<int>(s)); }
constexpr Sign flip(Sign s) { return s == Sign::Positive ? Sign::Negative : Sign::Positive; }

template <std::floating_point T>
constexpr T lorentz_inner(const BasicVec3<T>& u, const BasicVec3<T>& v) {
    return u.x1 * v.x1 + u.x2 * v.x2 - u.x3 * v.x3;
}

template <std::floating_point T>
constexpr T euclid_dot(const BasicVec3<T>& u, const BasicVec3<T>& v) {
    return u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3;
}

template <std::floating_point T>
T euclid_norm(const BasicVec3<T>& v) {
    return std::sqrt(euclid_dot(v, v));
}

// <w, x> = det(x, u, v) for every x.
template <std::floating_point T>
constexpr BasicVec3<T> lorentz_cross(const BasicVec3<T>& u, const BasicVec3<T>& v) {
    return {u.x2 * v.x3 - u.x3 * v.x2,
            u.x3 * v.x1 - u.x1 * v.x3,
            -(u.x1 * v.x2 - u.x2 * v.x1)};
}

// (u,v,w) = <u x v, w> = det(u, v, w)
template <std::floating_point T>
constexpr T mixed_product(const BasicVec3<T>& u, const BasicVec3<T>& v, const BasicVec3<T>& w) {
    return u.x1 * (v.x2 * w.x3 - v.x3 * w.x2)
         - u.x2 * (v.x1 * w.x3 - v.x3 * w.x1)
         + u.x3 * (v.x1 * w.x2 - v.x2 * w.x1);
}

double lorentz_norm(const LVec3& v);

bool is_finite(const LVec3& v);

// 1e-10 * max(1, |v|^2) with the Euclidean norm
double default_causal_tolerance(const LVec3& v);

CausalClass causal_class(const LVec3& v, double tol);
CausalClass causal_class(const LVec3& v);

} // namespace limcf
