#pragma once

#include "limcf/mink.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace limcf::test {

// Determinant by explicit permutation sum (rows a, b, c). Kept independent of
// the library's mixed_product on purpose.
inline double det3(const LVec3& a, const LVec3& b, const LVec3& c) {
    const std::array<std::array<double, 3>, 3> m{{{a.x1, a.x2, a.x3}, {b.x1, b.x2, b.x3}, {c.x1, c.x2, c.x3}}};
    constexpr int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    constexpr int sign[6] = {1, 1, 1, -1, -1, -1};
    double d = 0;
    for (int k = 0; k < 6; ++k) d += sign[k] * m[0][perm[k][0]] * m[1][perm[k][1]] * m[2][perm[k][2]];
    return d;
}

inline double ip(const LVec3& u, const LVec3& v) { return u.x1 * v.x1 + u.x2 * v.x2 - u.x3 * v.x3; }

inline double inf_norm(const LVec3& v) {
    return std::max({std::abs(v.x1), std::abs(v.x2), std::abs(v.x3)});
}

inline double max_abs(double a, double b) { return std::max(std::abs(a), std::abs(b)); }

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    LVec3 vec(double r = 1) { return {uniform(-r, r), uniform(-r, r), uniform(-r, r)}; }
    // rho (cos a, sin a, 1), rho in [0.2, 2]
    LVec3 lightlike() {
        const double a = uniform(0, 2 * std::numbers::pi), rho = uniform(0.2, 2) * (uniform(0, 1) < 0.5 ? -1 : 1);
        return {rho * std::cos(a), rho * std::sin(a), rho};
    }
    // |x3| at least 5% above the spatial radius
    LVec3 timelike() {
        const double x1 = uniform(-1, 1), x2 = uniform(-1, 1);
        const double r = std::hypot(x1, x2), k = uniform(1.05, 3);
        const double x3 = (uniform(0, 1) < 0.5 ? -1 : 1) * std::max(r * k, 0.05);
        return {x1, x2, x3};
    }
    // <b,b> = delta
    LVec3 unit(int delta) {
        const double phi = uniform(-1.2, 1.2), th = uniform(0, 2 * std::numbers::pi);
        if (delta > 0) return {std::cosh(phi) * std::cos(th), std::cosh(phi) * std::sin(th), std::sinh(phi)};
        return {std::sinh(phi) * std::cos(th), std::sinh(phi) * std::sin(th), std::cosh(phi)};
    }

private:
    std::mt19937_64 gen_;
};

// Sampled orthogonality/dependence clauses for pairs of causal vectors.
struct ClauseStats {
    int samples = 0;
    int failures = 0;
};

// Lightlike u, v orthogonal within 1e-12 scale must have a null cross product
// (within 1e-10 scale). Half the pairs are exact multiples, half differ by a
// tiny rotation.
inline ClauseStats lightlike_orthogonal_dependent(Rng& rng, int n) {
    ClauseStats st;
    for (int k = 0; k < n; ++k) {
        const LVec3 u = rng.lightlike();
        LVec3 v;
        if (k % 2 == 0) {
            v = rng.uniform(0.2, 2) * u;
        } else {
            const double e = rng.uniform(-1e-7, 1e-7), lam = rng.uniform(0.2, 2);
            v = lam * LVec3{u.x1 * std::cos(e) - u.x2 * std::sin(e), u.x1 * std::sin(e) + u.x2 * std::cos(e), u.x3};
        }
        const double scale = std::max(1.0, euclid_norm(u) * euclid_norm(v));
        if (std::abs(lorentz_inner(u, v)) > 1e-12 * scale) continue;
        ++st.samples;
        if (lorentz_norm(lorentz_cross(u, v)) > 1e-10 * scale) ++st.failures;
    }
    return st;
}

// Independent lightlike pairs are never orthogonal.
inline ClauseStats lightlike_independent_not_orthogonal(Rng& rng, int n) {
    ClauseStats st;
    for (int k = 0; k < n; ++k) {
        const double a = rng.uniform(0, 2 * std::numbers::pi);
        const double b = a + rng.uniform(0.05, 2 * std::numbers::pi - 0.05);
        const double r1 = rng.uniform(0.2, 2), r2 = rng.uniform(-2, -0.2) * (k % 2 ? -1 : 1);
        const LVec3 u{r1 * std::cos(a), r1 * std::sin(a), r1}, v{r2 * std::cos(b), r2 * std::sin(b), r2};
        const double scale = std::max(1.0, euclid_norm(u) * euclid_norm(v));
        ++st.samples;
        if (std::abs(lorentz_inner(u, v)) <= 1e-10 * scale) ++st.failures;
    }
    return st;
}

inline ClauseStats timelike_pairs_not_orthogonal(Rng& rng, int n) {
    ClauseStats st;
    for (int k = 0; k < n; ++k) {
        const LVec3 u = rng.timelike(), v = rng.timelike();
        const double scale = std::max(1.0, euclid_norm(u) * euclid_norm(v));
        ++st.samples;
        if (std::abs(lorentz_inner(u, v)) <= 1e-10 * scale) ++st.failures;
    }
    return st;
}

inline ClauseStats timelike_lightlike_not_orthogonal(Rng& rng, int n) {
    ClauseStats st;
    for (int k = 0; k < n; ++k) {
        const LVec3 u = rng.timelike(), v = rng.lightlike();
        const double scale = std::max(1.0, euclid_norm(u) * euclid_norm(v));
        ++st.samples;
        if (std::abs(lorentz_inner(u, v)) <= 1e-10 * scale) ++st.failures;
    }
    return st;
}

}  // namespace limcf::test
