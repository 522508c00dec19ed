#include "limcf/errors.hpp"
#include "limcf/families.hpp"
#include "limcf/flow_sim.hpp"
#include "limcf/ruled.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace limcf;
using limcf::test::inf_norm;

namespace {

constexpr Sign P = Sign::Positive;

struct FlowCase {
    FamilySpec fam;
    GridAxis s, t;
};

// the windows the command-line tool uses by default
std::vector<FlowCase> cylinder_cases() {
    return {
        {CylEqualFamily(1, P, P), {0.5, 2, 11}, {-2, 2, 7}},
        {CylGeneralFamily(1, 2, P, P), {-1, 1, 11}, {-2, 2, 7}},
        {CylTimelikeFamily(8, 6, P), {-2.5, 2.5, 11}, {-10, 10, 7}},
        {CylTimelikeFamily(8, -3, P), {-2.5, 2.5, 11}, {-10, 10, 7}},
        {CylTimelikeFamily(8, -7, P), {-2.5, 2.5, 11}, {-10, 10, 7}},
    };
}

}  // namespace

TEST(Flow, SamplePatchExample) {
    const auto surf = family_surface(NonCylFamily({2, 9, 1}));
    const auto p = sample_patch(surf, {0.5, 2, 4}, {-1, 1, 4});
    EXPECT_EQ(p.vertices.size(), 16u);
    EXPECT_EQ(p.s[1], 1.0);
    EXPECT_EQ(p.t[0], -1.0);
    // gamma(1) - beta(1)
    const LVec3 v = p.at(1, 0);
    EXPECT_NEAR(v.x1, 0, 1e-15);
    EXPECT_NEAR(v.x2, -0.5, 1e-15);
    EXPECT_NEAR(v.x3, -0.5, 1e-15);
    const auto q = sample_patch(surf, {0.5, 2, 4}, {-1, 1, 3});
    EXPECT_NEAR(q.at(1, 1).x1, 1, 1e-15);
    EXPECT_NEAR(q.at(1, 1).x2, 0.5, 1e-15);
    EXPECT_NEAR(q.at(1, 1).x3, 0.5, 1e-15);
    EXPECT_TRUE(q.finite());
}

TEST(Flow, SamplePatchRejections) {
    const auto surf = family_surface(NonCylFamily({2, 9, 1}));
    EXPECT_THROW(sample_patch(surf, {0.5, 2, 1}, {-1, 1, 4}), InvalidParameter);
    EXPECT_THROW(sample_patch(surf, {0.5, 2, 4}, {-1, 1, 1}), InvalidParameter);
    EXPECT_THROW(sample_patch(surf, {2, 0.5, 4}, {-1, 1, 4}), InvalidParameter);
    EXPECT_THROW(sample_patch(surf, {-1, 1, 4}, {-1, 1, 4}), DomainError);
    const auto cyl = family_surface(CylTimelikeFamily(8, 6, P));
    EXPECT_THROW(sample_patch(cyl, {-5, 4, 8}, {0, 1, 4}), DomainError);
}

TEST(Flow, GridAxis) {
    const GridAxis a{-1, 1, 5};
    EXPECT_EQ(a.value(0), -1.0);
    EXPECT_EQ(a.value(4), 1.0);
    EXPECT_EQ(a.value(2), 0.0);
    EXPECT_EQ(a.step(), 0.5);
}

TEST(Flow, PlaneHasNoCurvature) {
    const auto plane = make_plane();
    const auto p = sample_patch(plane, {-1, 1, 5}, {-1, 1, 5});
    const auto jets = source_jets(p);
    try {
        imcf_step(p, jets, {1e-3, 1, 1e-6});
        FAIL() << "expected MeanCurvatureZero";
    } catch (const MeanCurvatureZero& e) {
        EXPECT_EQ(e.vertex(), 0u);
    }
}

TEST(Flow, CylinderStepIsRadial) {
    const auto cyl = make_timelike_cylinder();
    const auto p = sample_patch(cyl, {0, 1, 5}, {0, 1, 5});
    const auto jets = source_jets(p);
    const double dt = 1e-3;
    const auto q = imcf_step(p, jets, {dt, 1, 1e-6});
    for (std::size_t k = 0; k < p.vertices.size(); ++k) {
        const LVec3 want = p.vertices[k] + 2 * dt * unit_normal(jets[k]);
        EXPECT_LE(inf_norm(q.vertices[k] - want), 1e-15);
    }
}

TEST(Flow, SolitonStepNormalPart) {
    for (const auto& c : cylinder_cases()) {
        const auto surf = family_surface(c.fam);
        const auto p = sample_patch(surf, c.s, c.t);
        const auto jets = source_jets(p);
        const LVec3 V = family_velocity(c.fam);
        const double dt = 1e-3;
        const auto q = imcf_step(p, jets, {dt, 1, 1e-6});
        for (std::size_t k = 0; k < p.vertices.size(); ++k) {
            const LVec3 N = unit_normal(jets[k]);
            const LVec3 d = q.vertices[k] - p.vertices[k];
            const LVec3 W = soliton_flow_velocity(jets[k], V);
            EXPECT_NEAR(lorentz_inner(d, N), dt * lorentz_inner(W, N), 1e-9 * dt * (1 + inf_norm(V)))
                << family_name(c.fam) << " vertex " << k;
        }
    }
}

TEST(Flow, FlowVelocitySign) {
    const auto je = ruled_jet(to_ruled(CylEqualFamily(1, P, P)), 1, 0);
    EXPECT_EQ(soliton_flow_velocity(je, {0, 1, 1}), (LVec3{0, -1, -1}));
    const auto jt = ruled_jet(to_ruled(CylTimelikeFamily(8, 6, P)), 0.5, 1);
    EXPECT_EQ(soliton_flow_velocity(jt, {8, 6, 0}), (LVec3{8, 6, 0}));
}

TEST(Flow, NormalSpeedIdentityAtStart) {
    for (const auto& c : cylinder_cases()) {
        const auto p = sample_patch(family_surface(c.fam), c.s, c.t);
        const LVec3 V = family_velocity(c.fam);
        for (const auto& j : source_jets(p)) EXPECT_LE(soliton_residual_normal(j, V), 1e-8);
    }
}

TEST(Flow, NonCylMissesNormalSpeedIdentity) {
    const NonCylFamily fam({2, 9, 1});
    const auto p = sample_patch(family_surface(fam), {1, 2, 7}, {0.2, 0.8, 7});
    double worst = 0;
    for (const auto& j : source_jets(p)) worst = std::max(worst, soliton_residual_normal(j, fam.V()));
    EXPECT_GT(worst, 1e-2);
}

TEST(Flow, GridJetsOnExactPatch) {
    const auto surf = family_surface(CylTimelikeFamily(8, -3, P));
    const auto p = sample_patch(surf, {-2.5, 2.5, 21}, {-1, 1, 9});
    const auto exact = source_jets(p);
    for (int i = 3; i < 18; ++i)
        for (int j = 3; j < 6; ++j) {
            const auto a = exact[p.index(i, j)], b = grid_fd_jet(p, i, j);
            EXPECT_LE(inf_norm(a.Xs - b.Xs), 1e-6);
            EXPECT_LE(inf_norm(a.Xss - b.Xss), 1e-5);
            EXPECT_LE(inf_norm(a.Xst - b.Xst), 1e-10);
            EXPECT_LE(inf_norm(b.Xtt), 1e-10);
            EXPECT_EQ(b.X, a.X);
        }
    EXPECT_THROW(grid_fd_jet(p, 2, 4), InvalidParameter);
    EXPECT_THROW(grid_fd_jet(p, 5, 6), InvalidParameter);
}

TEST(Flow, ZeroTimeZeroDeviation) {
    for (const auto& c : cylinder_cases()) {
        const auto surf = family_surface(c.fam);
        const auto p = sample_patch(surf, c.s, c.t);
        EXPECT_LE(translation_deviation(p, surf, family_velocity(c.fam), 0), 1e-12);
    }
    const auto surf = family_surface(NonCylFamily({2, 9, 1}));
    EXPECT_LE(translation_deviation(sample_patch(surf, {1, 2, 9}, {0.2, 0.8, 9}), surf, {2, 9, 1}, 0), 1e-12);
}

TEST(Flow, DeviationMeasuresDistance) {
    const auto plane = make_plane();
    auto p = sample_patch(plane, {-1, 1, 9}, {-1, 1, 9});
    const LVec3 V{0.2, -0.1, 0.7};
    for (auto& v : p.vertices) v += 0.5 * V;
    EXPECT_LE(translation_deviation(p, plane, V, 0.5), 1e-12);
    p.vertices[p.index(4, 4)].x3 += 1e-3;
    EXPECT_NEAR(translation_deviation(p, plane, V, 0.5), 1e-3, 1e-12);
    // outer layers are not counted
    p.vertices[p.index(0, 4)].x3 += 1;
    EXPECT_NEAR(translation_deviation(p, plane, V, 0.5), 1e-3, 1e-12);
    p.vertices[p.index(5, 5)].x1 = std::numeric_limits<double>::quiet_NaN();
    EXPECT_EQ(translation_deviation(p, plane, V, 0.5), std::numeric_limits<double>::infinity());
}

TEST(Flow, NearestPoint) {
    const auto plane = make_plane();
    const auto np = nearest_on_surface(plane, {0.3, 0.4, 2}, {0, 0, 0}, 0, 0, {-1, 1}, {-1, 1});
    EXPECT_NEAR(np.s, 0.3, 1e-12);
    EXPECT_NEAR(np.t, 0.4, 1e-12);
    EXPECT_NEAR(np.distance, 2, 1e-12);
    const auto cyl = make_timelike_cylinder();
    const auto nc = nearest_on_surface(cyl, {2, 0, 0.5}, {0, 0, 0.25}, 0.3, 0, {-1, 1}, {-1, 1});
    EXPECT_NEAR(nc.s, 0, 1e-10);
    EXPECT_NEAR(nc.t, 0.25, 1e-10);
    EXPECT_NEAR(nc.distance, 1, 1e-10);
}

TEST(Flow, FlowPatchPreconditions) {
    const auto cyl = make_timelike_cylinder();
    const auto p = sample_patch(cyl, {0, 1, 6}, {0, 1, 7});
    EXPECT_THROW(flow_patch(p, {0, 0, 0}, {1e-3, 10, 1e-6}), InvalidParameter);
    const std::vector<double> dts{2e-3, 3e-3};
    EXPECT_THROW(convergence_study(cyl, {0, 1, 7}, {0, 1, 7}, {1, 0, 0}, 0.1, dts), InvalidParameter);
}

TEST(Flow, CylEqualConvergesLinearly) {
    const CylEqualFamily fam(1, P, P);
    const auto surf = family_surface(fam);
    const LVec3 W = soliton_flow_velocity(surf.eval(1, 0), family_velocity(fam));
    const std::vector<double> dts{2e-3, 1e-3, 5e-4};
    const auto rows = convergence_study(surf, {0.5, 2, 11}, {-2, 2, 7}, W, 0.1, dts);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].ratio, 0.0);
    for (int k = 1; k < 3; ++k) {
        EXPECT_GE(rows[k].ratio, 1.7);
        EXPECT_LE(rows[k].ratio, 2.3);
    }
    EXPECT_LT(rows[2].deviation, 1e-4);
}

TEST(Flow, TimelikeCylinderIsNotATranslator) {
    const auto cyl = make_timelike_cylinder();
    const std::vector<double> dts{2e-3, 1e-3, 5e-4};
    const auto rows = convergence_study(cyl, {-1, 1, 11}, {-2, 2, 7}, {1, 0, 0}, 0.1, dts);
    for (const auto& r : rows) EXPECT_GT(r.deviation, 0.05);
    EXPECT_LT(rows[2].ratio, 1.1);
}
