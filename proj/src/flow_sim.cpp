#include "limcf/flow_sim.hpp"

#include "limcf/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace limcf {

double GridAxis::value(int i) const {
    if (i == n - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

double GridAxis::step() const {
    return (hi - lo) / static_cast<double>(n - 1);
}

bool MeshPatch::finite() const {
    return std::all_of(vertices.begin(), vertices.end(), [](const LVec3& v) { return is_finite(v); });
}

MeshPatch sample_patch(const ParamSurface& surface, const GridAxis& s, const GridAxis& t) {
    if (s.n < 2 || t.n < 2)
        throw InvalidParameter("sample_patch: both grid axes need at least 2 points");
    if (!(s.lo < s.hi) || !(t.lo < t.hi))
        throw InvalidParameter("sample_patch: grid axes must be increasing");
    if (!surface.domain.contains_rect(s.lo, s.hi, t.lo, t.hi)) {
        std::ostringstream msg;
        msg << surface.name << ": grid [" << s.lo << ", " << s.hi << "] x [" << t.lo << ", "
            << t.hi << "] leaves the parameter domain";
        throw DomainError(msg.str());
    }
    MeshPatch p;
    p.ns = s.n;
    p.nt = t.n;
    p.source = std::make_shared<const ParamSurface>(surface);
    for (int i = 0; i < s.n; ++i) p.s.push_back(s.value(i));
    for (int j = 0; j < t.n; ++j) p.t.push_back(t.value(j));
    p.vertices.reserve(static_cast<std::size_t>(s.n) * t.n);
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < t.n; ++j) p.vertices.push_back(surface.point(p.s[i], p.t[j]));
    return p;
}

std::vector<SurfaceJet2> source_jets(const MeshPatch& patch) {
    std::vector<SurfaceJet2> jets;
    jets.reserve(patch.vertices.size());
    for (int i = 0; i < patch.ns; ++i)
        for (int j = 0; j < patch.nt; ++j) jets.push_back(patch.source->eval(patch.s[i], patch.t[j]));
    return jets;
}

namespace {

// outer layers driven by the reference surface; also the stencil half-width
constexpr int kRing = 3;
// 6th-order first-derivative weights for offsets -3..3, over 60 h
constexpr std::array<double, 7> kD1{-1, 9, -45, 0, 45, -9, 1};
// 6th-order second-derivative weights for offsets -3..3, over 180 h^2
constexpr std::array<double, 7> kD2{2, -27, 270, -490, 270, -27, 2};

} // namespace

SurfaceJet2 grid_fd_jet(const MeshPatch& patch, int i, int j) {
    if (i < kRing || j < kRing || i >= patch.ns - kRing || j >= patch.nt - kRing)
        throw InvalidParameter("grid_fd_jet: needs three neighbours on every side");
    const double hs = (patch.s.back() - patch.s.front()) / (patch.ns - 1);
    const double ht = (patch.t.back() - patch.t.front()) / (patch.nt - 1);
    SurfaceJet2 jet;
    jet.X = patch.at(i, j);
    for (int a = -kRing; a <= kRing; ++a) {
        const LVec3& ps = patch.at(i + a, j);
        const LVec3& pt = patch.at(i, j + a);
        jet.Xs += kD1[a + kRing] * ps;
        jet.Xss += kD2[a + kRing] * ps;
        jet.Xt += kD1[a + kRing] * pt;
        jet.Xtt += kD2[a + kRing] * pt;
        for (int b = -kRing; b <= kRing; ++b)
            jet.Xst += (kD1[a + kRing] * kD1[b + kRing]) * patch.at(i + a, j + b);
    }
    jet.Xs = jet.Xs / (60 * hs);
    jet.Xt = jet.Xt / (60 * ht);
    jet.Xss = jet.Xss / (180 * hs * hs);
    jet.Xtt = jet.Xtt / (180 * ht * ht);
    jet.Xst = jet.Xst / (3600 * hs * ht);
    return jet;
}

MeshPatch imcf_step(const MeshPatch& patch, std::span<const SurfaceJet2> jets, const FlowConfig& cfg) {
    if (jets.size() != patch.vertices.size())
        throw InvalidParameter("imcf_step: one jet per vertex required");
    if (!(cfg.dt > 0) || !(cfg.H_floor > 0))
        throw InvalidParameter("imcf_step: dt and H_floor must be positive");
    MeshPatch next = patch;
    for (std::size_t k = 0; k < jets.size(); ++k) {
        const double H = mean_curvature(jets[k]);
        if (!(std::abs(H) >= cfg.H_floor)) {
            std::ostringstream msg;
            msg << "|H| = " << std::abs(H) << " below the floor at vertex " << k;
            throw MeanCurvatureZero(msg.str(), k);
        }
        next.vertices[k] -= (cfg.dt / H) * unit_normal(jets[k], Sign::Positive);
    }
    return next;
}

LVec3 soliton_flow_velocity(const SurfaceJet2& j, const LVec3& V) {
    const FundamentalData d = fundamental_data(j);
    const double q = lorentz_inner(unit_normal(j, Sign::Positive), V) * d.H;
    const LVec3 W = std::abs(q + 1) <= std::abs(-q + 1) ? V : -V;
    return static_cast<double>(d.eps) * W;
}

NearestPoint nearest_on_surface(const ParamSurface& surface, const LVec3& q, const LVec3& offset,
                                double s, double t, Interval s_box, Interval t_box) {
    auto clamp_in = [](double x, Interval b) { return std::clamp(x, b.lo, b.hi); };
    s = clamp_in(s, s_box);
    t = clamp_in(t, t_box);
    SurfaceJet2 j = surface.eval(s, t);
    LVec3 d = j.X + offset - q;
    double f = euclid_dot(d, d);
    for (int it = 0; it < 60; ++it) {
        const double gs = euclid_dot(j.Xs, d), gt = euclid_dot(j.Xt, d);
        double a = euclid_dot(j.Xs, j.Xs) + euclid_dot(j.Xss, d);
        double b = euclid_dot(j.Xs, j.Xt) + euclid_dot(j.Xst, d);
        double c = euclid_dot(j.Xt, j.Xt) + euclid_dot(j.Xtt, d);
        if (!(a > 0 && a * c - b * b > 0)) {
            // fall back to Gauss-Newton away from a convex neighbourhood
            a = euclid_dot(j.Xs, j.Xs);
            b = euclid_dot(j.Xs, j.Xt);
            c = euclid_dot(j.Xt, j.Xt);
        }
        const double det = a * c - b * b;
        if (!(det > 0)) break;
        double ds = -(c * gs - b * gt) / det;
        double dt = -(a * gt - b * gs) / det;
        bool moved = false;
        for (int half = 0; half < 40; ++half) {
            const double s2 = clamp_in(s + ds, s_box), t2 = clamp_in(t + dt, t_box);
            const SurfaceJet2 j2 = surface.eval(s2, t2);
            const LVec3 d2 = j2.X + offset - q;
            const double f2 = euclid_dot(d2, d2);
            if (f2 <= f) {
                moved = (s2 != s || t2 != t);
                s = s2;
                t = t2;
                j = j2;
                d = d2;
                f = f2;
                break;
            }
            ds *= 0.5;
            dt *= 0.5;
        }
        const double scale = std::max({1.0, std::abs(s), std::abs(t)});
        if (!moved || (std::abs(ds) + std::abs(dt)) < 1e-15 * scale) break;
    }
    return {s, t, std::sqrt(f)};
}

namespace {

// parameter box of the domain component holding the patch, with a small inset
Interval s_search_box(const ParamSurface& surf, double lo, double hi, double pad) {
    const Interval comp = surf.domain.s_component(0.5 * (lo + hi));
    const double inset = 1e-7 * std::max(1.0, hi - lo);
    return {std::max(lo - pad, comp.lo + inset), std::min(hi + pad, comp.hi - inset)};
}

Interval t_search_box(const ParamSurface& surf, double lo, double hi, double pad) {
    const double inset = 1e-7 * std::max(1.0, hi - lo);
    return {std::max(lo - pad, surf.domain.t_lo + inset), std::min(hi + pad, surf.domain.t_hi - inset)};
}

bool on_ring(const MeshPatch& p, int i, int j) {
    return i < kRing || j < kRing || i >= p.ns - kRing || j >= p.nt - kRing;
}

} // namespace

MeshPatch flow_patch(const MeshPatch& initial, const LVec3& flow_velocity, const FlowConfig& cfg) {
    if (initial.ns < 2 * kRing + 1 || initial.nt < 2 * kRing + 1)
        throw InvalidParameter("flow_patch: both grid axes need at least 7 points");
    if (cfg.steps < 1) throw InvalidParameter("flow_patch: steps must be >= 1");
    const ParamSurface& ref = *initial.source;
    const double span_s = initial.s.back() - initial.s.front();
    const double span_t = initial.t.back() - initial.t.front();
    const Interval sbox = s_search_box(ref, initial.s.front(), initial.s.back(), span_s);
    const Interval tbox = t_search_box(ref, initial.t.front(), initial.t.back(), span_t);

    // parameters of the ring vertices on the moving reference, warm starts for projection
    std::vector<std::array<double, 2>> foot(initial.vertices.size());
    for (int i = 0; i < initial.ns; ++i)
        for (int j = 0; j < initial.nt; ++j) foot[initial.index(i, j)] = {initial.s[i], initial.t[j]};

    MeshPatch cur = imcf_step(initial, source_jets(initial), cfg);
    std::vector<SurfaceJet2> jets(cur.vertices.size());
    for (int step = 1; step < cfg.steps; ++step) {
        if (!cur.finite()) return cur;
        const LVec3 offset = (cfg.dt * step) * flow_velocity;
        for (int i = 0; i < cur.ns; ++i) {
            for (int j = 0; j < cur.nt; ++j) {
                const std::size_t k = cur.index(i, j);
                if (!on_ring(cur, i, j)) {
                    jets[k] = grid_fd_jet(cur, i, j);
                    continue;
                }
                const NearestPoint np =
                    nearest_on_surface(ref, cur.vertices[k], offset, foot[k][0], foot[k][1], sbox, tbox);
                foot[k] = {np.s, np.t};
                jets[k] = translated(ref.eval(np.s, np.t), offset);
            }
        }
        cur = imcf_step(cur, jets, cfg);
    }
    return cur;
}

double translation_deviation(const MeshPatch& flowed, const ParamSurface& original, const LVec3& V,
                             double T) {
    if (!flowed.finite()) return std::numeric_limits<double>::infinity();
    const double s_lo = flowed.s.front(), s_hi = flowed.s.back();
    const double t_lo = flowed.t.front(), t_hi = flowed.t.back();
    const Interval sbox = s_search_box(original, s_lo, s_hi, s_hi - s_lo);
    const Interval tbox = t_search_box(original, t_lo, t_hi, t_hi - t_lo);
    const LVec3 offset = T * V;

    // refined sample of the translated reference over the search box
    const int rs = 12 * (flowed.ns - 1) + 1, rt = 12 * (flowed.nt - 1) + 1;
    const GridAxis as{sbox.lo, sbox.hi, rs}, at{tbox.lo, tbox.hi, rt};
    std::vector<LVec3> sample(static_cast<std::size_t>(rs) * rt);
    for (int a = 0; a < rs; ++a)
        for (int b = 0; b < rt; ++b)
            sample[static_cast<std::size_t>(a) * rt + b] = original.point(as.value(a), at.value(b)) + offset;

    const int ms = flowed.ns > 2 * kRing ? kRing : 0, mt = flowed.nt > 2 * kRing ? kRing : 0;
    double worst = 0;
    for (int i = ms; i < flowed.ns - ms; ++i) {
        for (int j = mt; j < flowed.nt - mt; ++j) {
            const LVec3& q = flowed.at(i, j);
            std::size_t best = 0;
            double bd = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < sample.size(); ++k) {
                const LVec3 d = sample[k] - q;
                const double dd = euclid_dot(d, d);
                if (dd < bd) {
                    bd = dd;
                    best = k;
                }
            }
            const double s0 = as.value(static_cast<int>(best / rt));
            const double t0 = at.value(static_cast<int>(best % rt));
            double dist = nearest_on_surface(original, q, offset, s0, t0, sbox, tbox).distance;
            dist = std::min(dist, nearest_on_surface(original, q, offset, flowed.s[i], flowed.t[j],
                                                     sbox, tbox).distance);
            worst = std::max(worst, dist);
        }
    }
    return worst;
}

std::vector<ConvergenceRow> convergence_study(const ParamSurface& surface, const GridAxis& s,
                                              const GridAxis& t, const LVec3& flow_velocity,
                                              double T, std::span<const double> dts, double H_floor) {
    const MeshPatch initial = sample_patch(surface, s, t);
    std::vector<ConvergenceRow> rows;
    for (double dt : dts) {
        if (!(dt > 0)) throw InvalidParameter("convergence_study: dt must be positive");
        const double n = T / dt;
        const double steps = std::round(n);
        if (steps < 1 || std::abs(n - steps) > 1e-9 * std::max(1.0, n))
            throw InvalidParameter("convergence_study: T must be an integer multiple of dt");
        FlowConfig cfg{dt, static_cast<int>(steps), H_floor};
        const MeshPatch out = flow_patch(initial, flow_velocity, cfg);
        ConvergenceRow row{dt, translation_deviation(out, surface, flow_velocity, cfg.total_time()), 0};
        if (!rows.empty()) row.ratio = rows.back().deviation / row.deviation;
        rows.push_back(row);
    }
    return rows;
}

} // namespace limcf
