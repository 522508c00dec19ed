#include "limcf/errors.hpp"
#include "limcf/families.hpp"
#include "limcf/ode_oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace limcf;

namespace {

constexpr Sign P = Sign::Positive, M = Sign::Negative;

OdeProblem scalar(OdeRhs rhs, double s0, double u0, double s1, double h) {
    OdeProblem p;
    p.dim = 1;
    p.rhs = std::move(rhs);
    p.s0 = s0;
    p.y0 = {u0};
    p.s1 = s1;
    p.h = h;
    return p;
}

double exp_error(double h) {
    auto p = scalar([](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0]; }, 0, 1, 1, h);
    return std::abs(rk4_integrate(p)[0] - std::numbers::e);
}

// max |oracle - closed form| over every RK4 node
template <class Fam>
double path_discrepancy(const Fam& fam, double s0, double s1, double h) {
    double worst = 0;
    auto obs = [&](double s, std::span<const double> y) {
        const auto c = planar_derivative(fam, s);
        worst = std::max({worst, std::abs(y[0] - c.dx), std::abs(y[1] - c.dy)});
    };
    if constexpr (std::is_same_v<Fam, CylTimelikeFamily>) {
        cyl_timelike_oracle(fam, s0, s1, h, obs);
    } else {
        cyl_spacelike_oracle(fam, s0, s1, h, obs);
    }
    return worst;
}

}  // namespace

TEST(Rk4, ScalarExamples) {
    auto riccati = scalar([](double, std::span<const double> y, std::span<double> dy) { dy[0] = -y[0] * y[0]; },
                          1, 1, 2, 1e-3);
    EXPECT_NEAR(rk4_integrate(riccati)[0], 0.5, 1e-9);
    auto flat = scalar([](double, std::span<const double>, std::span<double> dy) { dy[0] = 0; }, 0, 3.25, 7, 1e-2);
    EXPECT_EQ(rk4_integrate(flat)[0], 3.25);
    EXPECT_NEAR(exp_error(1e-3), 0, 1e-9);
}

TEST(Rk4, BackwardAndExactLanding) {
    // u = 1/s integrated from 2 down to 1
    auto p = scalar([](double, std::span<const double> y, std::span<double> dy) { dy[0] = -y[0] * y[0]; }, 2, 0.5,
                    1, 0.03);
    double last = 0;
    rk4_integrate(p, [&](double s, std::span<const double>) { last = s; });
    EXPECT_EQ(last, 1.0);
    EXPECT_NEAR(rk4_integrate(p)[0], 1.0, 1e-6);
}

TEST(Rk4, OrderRatio) {
    const double r = exp_error(0.1) / exp_error(0.05);
    EXPECT_GE(r, 12);
    EXPECT_LE(r, 20);
}

TEST(Rk4, SingularPaths) {
    auto p = scalar([](double s, std::span<const double>, std::span<double> dy) { dy[0] = 1 / s; }, -1, 0, 1, 1e-2);
    p.poles = {0.0};
    EXPECT_THROW(rk4_integrate(p), SingularRHS);
    auto blow = scalar([](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0] * y[0]; }, 0, 1,
                       2, 1e-2);
    EXPECT_THROW(rk4_integrate(blow), SingularRHS);
}

TEST(OdeOracle, NonCylU) {
    EXPECT_NEAR(noncyl_u_oracle({2, 9, 1}, 1, 2, 1e-3), -0.5, 1e-8);
    EXPECT_EQ(noncyl_u_oracle({0, 1, 0}, 1, 1, 1e-3), -0.125);
    EXPECT_THROW(noncyl_u_oracle({2, 9, 1}, -1, 2, 1e-3), SingularRHS);
    EXPECT_THROW(noncyl_u_oracle({2, 9, 1}, 0, 1, 1e-3), SingularRHS);
    // the state is y' - z' of the family
    const NonCylFamily fam({2, 9, 1});
    for (double s1 : {1.5, 2.0, 3.0}) {
        const auto c = noncyl_eval(fam, s1);
        EXPECT_NEAR(noncyl_u_oracle(fam.V(), 1, s1, 1e-3), c.d1.x2 - c.d1.x3, 1e-8);
    }
    EXPECT_NEAR(noncyl_u_oracle(fam.V(), -1, -2, 1e-3), 0.5, 1e-8);
}

TEST(OdeOracle, CylEqualExample) {
    const CylEqualFamily fam(1, P, P);
    const auto r = cyl_spacelike_oracle(fam, 1, 2, 1e-3);
    EXPECT_NEAR(r.dx, -2.125, 1e-7);
    EXPECT_NEAR(r.dy, 1.875, 1e-7);
    const auto same = cyl_spacelike_oracle(fam, 1.5, 1.5, 1e-3);
    const auto c = planar_derivative(fam, 1.5);
    EXPECT_EQ(same.dx, c.dx);
    EXPECT_EQ(same.dy, c.dy);
    EXPECT_THROW(cyl_spacelike_oracle(fam, -1, 1, 1e-3), DomainError);
}

TEST(OdeOracle, SingularStart) {
    // v2 y' - v3 x' = 1*2 - 2*1 = 0
    EXPECT_THROW(cyl_spacelike_system(1, 2, P, {1, 2}, 0, 1, 1e-3), SingularRHS);
}

TEST(OdeOracle, CylTimelikeExample) {
    const CylTimelikeFamily fam(8, 6, P);
    const auto r = cyl_timelike_oracle(fam, 0, 1, 1e-3);
    EXPECT_NEAR(r.dx, -0.16 + 0.24 * std::sqrt(6.0), 1e-7);
    EXPECT_NEAR(r.dy, -0.12 - 0.32 * std::sqrt(6.0), 1e-7);
    const auto z = cyl_timelike_oracle(fam, 0, 0, 1e-3);
    const auto c = planar_derivative(fam, 0);
    EXPECT_EQ(z.dx, c.dx);
    EXPECT_EQ(z.dy, c.dy);
    EXPECT_NEAR(z.dx, 0.6, 1e-15);
    EXPECT_NEAR(z.dy, -0.8, 1e-15);
    EXPECT_THROW(cyl_timelike_oracle(fam, 0, 5, 1e-3), DomainError);
}

TEST(OdeOracle, AgreementAlongSubintervals) {
    for (auto [v2, v3] : {std::pair{1.0, 2.0}, {2.0, 1.0}, {-1.0, 3.0}, {0.5, 0.0}})
        for (Sign d : {P, M})
            for (Sign b : {P, M}) {
                const CylGeneralFamily fam(v2, v3, d, b);
                const auto dom = family_domain(fam);
                for (double s0 : {-2.5, -1.0, 0.2, 1.3}) {
                    const double s1 = s0 + 1.2;
                    if (!dom.contains_rect(s0 - 0.1, s1 + 0.1, 0, 0)) continue;
                    EXPECT_LE(path_discrepancy(fam, s0, s1, 1e-3), 1e-6) << v2 << "," << v3 << " s0=" << s0;
                }
            }
    for (double v2 : {1.0, -2.0})
        for (Sign sg : {P, M})
            for (Sign d : {P, M}) {
                const CylEqualFamily fam(v2, sg, d);
                EXPECT_LE(path_discrepancy(fam, 1, 2, 1e-3), 1e-6);
                EXPECT_LE(path_discrepancy(fam, -2.5, -0.5, 1e-3), 1e-6);
            }
    for (auto [v1, v2] : {std::pair{8.0, 6.0}, {8.0, -3.0}, {8.0, -7.0}, {-2.0, 5.0}})
        for (Sign b : {P, M}) {
            const CylTimelikeFamily fam(v1, v2, b);
            EXPECT_LE(path_discrepancy(fam, 0, 1, 1e-3), 1e-6);
            EXPECT_LE(path_discrepancy(fam, -2, 0, 1e-3), 1e-6);
        }
}

TEST(OdeOracle, OracleOrderRatio) {
    const CylTimelikeFamily t(8, -3, P);
    const double rt = path_discrepancy(t, 0, 1, 0.1) / path_discrepancy(t, 0, 1, 0.05);
    EXPECT_GE(rt, 12);
    EXPECT_LE(rt, 20);
    const CylGeneralFamily g(1, 2, P, P);
    const double rg = path_discrepancy(g, 0, 1, 0.1) / path_discrepancy(g, 0, 1, 0.05);
    EXPECT_GE(rg, 12);
    EXPECT_LE(rg, 20);
    const double ru = std::abs(noncyl_u_oracle({2, 9, 1}, 1, 2, 0.1) + 0.5) /
                      std::abs(noncyl_u_oracle({2, 9, 1}, 1, 2, 0.05) + 0.5);
    EXPECT_GE(ru, 12);
    EXPECT_LE(ru, 20);
    // the equal-component system is integrated to roundoff at any step
    EXPECT_LE(path_discrepancy(CylEqualFamily(1, P, P), 1, 2, 0.2), 1e-14);
}

TEST(OdeOracle, ConservedQuantities) {
    double worst = 0;
    const CylGeneralFamily g(1, 2, P, M);
    cyl_spacelike_oracle(g, -1, 1, 1e-3, [&](double, std::span<const double> y) {
        worst = std::max(worst, std::abs(y[0] * y[0] - y[1] * y[1] - 1));
    });
    EXPECT_LE(worst, 1e-8);
    worst = 0;
    const CylEqualFamily e(2, M, M);
    cyl_spacelike_oracle(e, 0.5, 2.5, 1e-3, [&](double, std::span<const double> y) {
        worst = std::max(worst, std::abs(y[0] * y[0] - y[1] * y[1] + 1));
    });
    EXPECT_LE(worst, 1e-8);
    worst = 0;
    const CylTimelikeFamily t(8, -7, M);
    cyl_timelike_oracle(t, -3, 3, 1e-3, [&](double, std::span<const double> y) {
        worst = std::max(worst, std::abs(y[0] * y[0] + y[1] * y[1] - 1));
    });
    EXPECT_LE(worst, 1e-8);
}

TEST(OdeOracle, PositionQuadrature) {
    EXPECT_LE(quadrature_position_check(CylGeneralFamily(1, 2, P, P), 0, 1, 1e-4), 1e-6);
    EXPECT_LE(quadrature_position_check(CylGeneralFamily(2, 1, P, M), 1, 2, 1e-4), 1e-6);
    EXPECT_LE(quadrature_position_check(CylTimelikeFamily(8, 6, P), -4, 4, 1e-4), 1e-6);
    EXPECT_LE(quadrature_position_check(NonCylFamily({2, 9, 1}), 1, 2, 1e-4), 1e-6);
    EXPECT_THROW(quadrature_position_check(NonCylFamily({2, 9, 1}), -1, 1, 1e-4), DomainError);
}
