#pragma once

#include "limcf/jet_surface.hpp"
#include "limcf/mink.hpp"

#include <memory>
#include <span>
#include <vector>

namespace limcf {

// n equally spaced values from lo to hi inclusive.
struct GridAxis {
    double lo = 0, hi = 0;
    int n = 0;

    double value(int i) const;
    double step() const;
};

// Vertices of a sampled patch, row-major in s: index = i * nt + j.
struct MeshPatch {
    int ns = 0, nt = 0;
    std::vector<double> s, t;
    std::vector<LVec3> vertices;
    std::shared_ptr<const ParamSurface> source;

    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * nt + j; }
    const LVec3& at(int i, int j) const { return vertices[index(i, j)]; }
    bool finite() const;
};

struct FlowConfig {
    double dt = 1e-3;
    int steps = 1;
    double H_floor = 1e-6;

    double total_time() const { return dt * steps; }
};

// Exact positions on a uniform grid. Both axes need n >= 2 and lo < hi.
// DomainError if the closed rectangle is not inside the surface domain.
MeshPatch sample_patch(const ParamSurface& surface, const GridAxis& s, const GridAxis& t);

// Closed-form jets at every grid point of the patch.
std::vector<SurfaceJet2> source_jets(const MeshPatch& patch);

// Sixth-order central differences of the current vertex positions at (i, j);
// needs three neighbours on every side.
SurfaceJet2 grid_fd_jet(const MeshPatch& patch, int i, int j);

// Moves every vertex by -dt N / H ("+" normal). MeanCurvatureZero (with the
// flat vertex index) if |H| < H_floor somewhere.
MeshPatch imcf_step(const MeshPatch& patch, std::span<const SurfaceJet2> jets,
                    const FlowConfig& cfg);

// Translation velocity of the flow for a translator with velocity V: the sign of
// V is chosen so that <N,V> H = -1 fits best at the jet, then scaled by eps
// (the normal part of eps V is then -N/H).
LVec3 soliton_flow_velocity(const SurfaceJet2& j, const LVec3& V);

struct NearestPoint {
    double s = 0, t = 0;
    double distance = 0;
};

// Local minimiser of |X(s,t) + offset - q| (Euclidean) by damped Newton from
// (s, t), kept inside [s_box] x [t_box].
NearestPoint nearest_on_surface(const ParamSurface& surface, const LVec3& q, const LVec3& offset,
                                double s, double t, Interval s_box, Interval t_box);

// Runs cfg.steps explicit steps. Interior vertices use grid_fd_jet; the three
// outer layers follow the reference surface translated by tau * flow_velocity
// (jets taken at their nearest point on it). Needs ns, nt >= 7.
// Returns early with non-finite vertices if the evolution blows up.
MeshPatch flow_patch(const MeshPatch& initial, const LVec3& flow_velocity, const FlowConfig& cfg);

// Max Euclidean distance from the patch vertices (three outer layers excluded
// when the patch is at least 7 wide) to { X0(s,t) + T V }. +inf for a
// non-finite patch.
double translation_deviation(const MeshPatch& flowed, const ParamSurface& original, const LVec3& V,
                             double T);

struct ConvergenceRow {
    double dt = 0;
    double deviation = 0;
    double ratio = 0;  // deviation(previous dt) / deviation(dt); 0 for the first row
};

// Flows the patch to time T for each dt (T/dt must be an integer) and reports
// the deviation from pure translation by flow_velocity.
std::vector<ConvergenceRow> convergence_study(const ParamSurface& surface, const GridAxis& s,
                                              const GridAxis& t, const LVec3& flow_velocity,
                                              double T, std::span<const double> dts,
                                              double H_floor = 1e-6);

} // namespace limcf
