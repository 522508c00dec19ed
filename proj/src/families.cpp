#include "limcf/families.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace limcf {

namespace {

[[noreturn]] void bad_param(const std::string& what) {
    throw InvalidParameter(what);
}

void require_finite(std::initializer_list<double> xs, const char* who) {
    for (double x : xs)
        if (!std::isfinite(x)) bad_param(std::string(who) + ": non-finite parameter");
}

[[noreturn]] void out_of_domain(const std::string& who, double s) {
    std::ostringstream msg;
    msg << who << ": s = " << s << " outside the family domain";
    throw DomainError(msg.str());
}

double sgn(double x) {
    return x < 0 ? -1.0 : 1.0;
}

// endpoint exclusion margin on radicands
double margin(double scale) {
    return 1e-9 * std::max(1.0, std::abs(scale));
}

} // namespace

NonCylFamily::NonCylFamily(const LVec3& V, double c1, double c2, double c3)
    : V_(V), c1_(c1), c2_(c2), c3_(c3) {
    require_finite({V.x1, V.x2, V.x3, c1, c2, c3}, "noncyl");
    if (V.x2 == V.x3) bad_param("noncyl: velocity needs v2 != v3");
}

CylEqualFamily::CylEqualFamily(double v2, Sign sigma, Sign delta, double c1, double c2)
    : v2_(v2), sigma_(sigma), delta_(delta), c1_(c1), c2_(c2) {
    require_finite({v2, c1, c2}, "cyl-equal");
    if (v2 == 0) bad_param("cyl-equal: v2 must be nonzero");
}

CylGeneralFamily::CylGeneralFamily(double v2, double v3, Sign delta, Sign branch, double c1,
                                   double c2)
    : v2_(v2), v3_(v3), delta_(delta), branch_(branch), c1_(c1), c2_(c2) {
    require_finite({v2, v3, c1, c2}, "cyl-general");
    if (v2 * v2 == v3 * v3) bad_param("cyl-general: needs v2^2 != v3^2");
}

double CylGeneralFamily::mu() const {
    return v3_ != 0 ? v2_ * sgn(v3_) : std::abs(v2_);
}

CylTimelikeFamily::CylTimelikeFamily(double v1, double v2, Sign branch, double c1, double c2)
    : v1_(v1), v2_(v2), branch_(branch), c1_(c1), c2_(c2) {
    require_finite({v1, v2, c1, c2}, "cyl-time");
    if (v1 == 0 && v2 == 0) bad_param("cyl-time: (v1, v2) must be nonzero");
}

double CylTimelikeFamily::kappa() const {
    return v2_ != 0 ? v1_ * sgn(v2_) : std::abs(v1_);
}

CurveJet noncyl_eval(const NonCylFamily& fam, double s) {
    if (s == 0 || !std::isfinite(s)) out_of_domain("noncyl", s);
    const LVec3& V = fam.V();
    const double v1 = V.x1, v2 = V.x2, v3 = V.x3, w = v2 - v3;
    const double py = (v3 - 3 * v2) / 32, pz = (v2 - 3 * v3) / 32;
    const double lin = 3.0 / 32 * w * s + v1 / 16;
    CurveJet c;
    c.p = fam.position(s);
    c.d1 = {w / 8, lin + py / s, lin + pz / s};
    c.d2 = {0, 3.0 / 32 * w - py / (s * s), 3.0 / 32 * w - pz / (s * s)};
    return c;
}

CurveJet cyl_equal_eval(const CylEqualFamily& fam, double s) {
    if (s == 0 || !std::isfinite(s)) out_of_domain("cyl-equal", s);
    const double v2 = fam.v2(), d = value(fam.delta()), sg = value(fam.sigma());
    CurveJet c;
    c.p = fam.position(s);
    c.d1 = {0, -d * s / v2 - v2 / (4 * s), sg * (d * s / v2 - v2 / (4 * s))};
    c.d2 = {0, -d / v2 + v2 / (4 * s * s), sg * (d / v2 + v2 / (4 * s * s))};
    return c;
}

CurveJet cyl_general_eval(const CylGeneralFamily& fam, double s) {
    const double k = fam.k();
    const double q = s * s + k;
    if (!std::isfinite(s) || !(q > margin(k))) out_of_domain("cyl-general", s);
    const double a = fam.a(), v2 = fam.v2(), v3 = fam.v3();
    const double d = value(fam.delta()), b = value(fam.branch());
    const double r = std::sqrt(q);
    const double x1 = 2 * d * v2 * s / a + b * 2 * std::abs(v3) / a * r;
    const double x2 = 2 * d * v2 / a + b * 2 * std::abs(v3) / a * s / r;
    double y1, y2;
    if (v3 != 0) {
        // from v3 y' - v2 x' = 2 delta s
        y1 = (2 * d * s + v2 * x1) / v3;
        y2 = (2 * d + v2 * x2) / v3;
    } else {
        y1 = 2 * d * v3 * s / a + b * 2 * fam.mu() / a * r;
        y2 = 2 * d * v3 / a + b * 2 * fam.mu() / a * s / r;
    }
    CurveJet c;
    c.p = fam.position(s);
    c.d1 = {0, x1, y1};
    c.d2 = {0, x2, y2};
    return c;
}

CurveJet cyl_timelike_eval(const CylTimelikeFamily& fam, double s) {
    const double n2 = fam.n2(), R = fam.radius();
    const double q = R * R - s * s;
    if (!std::isfinite(s) || !(q > margin(R * R))) out_of_domain("cyl-time", s);
    const double v1 = fam.v1(), v2 = fam.v2(), b = value(fam.branch());
    const double r = std::sqrt(q);
    const double x1 = -2 * v1 * s / n2 + b * 2 * std::abs(v2) / n2 * r;
    const double x2 = -2 * v1 / n2 - b * 2 * std::abs(v2) / n2 * s / r;
    double y1, y2;
    if (v2 != 0) {
        // from v2 y' + v1 x' = -2 s
        y1 = (-2 * s - v1 * x1) / v2;
        y2 = (-2 - v1 * x2) / v2;
    } else {
        y1 = -2 * v2 * s / n2 - b * 2 * fam.kappa() / n2 * r;
        y2 = -2 * v2 / n2 + b * 2 * fam.kappa() / n2 * s / r;
    }
    CurveJet c;
    c.p = fam.position(s);
    c.d1 = {x1, y1, 0};
    c.d2 = {x2, y2, 0};
    return c;
}

CurveJet curve_eval(const FamilySpec& fam, double s) {
    return std::visit(
        [s](const auto& f) -> CurveJet {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, NonCylFamily>) return noncyl_eval(f, s);
            else if constexpr (std::is_same_v<F, CylEqualFamily>) return cyl_equal_eval(f, s);
            else if constexpr (std::is_same_v<F, CylGeneralFamily>) return cyl_general_eval(f, s);
            else return cyl_timelike_eval(f, s);
        },
        fam);
}

ParamDomain family_domain(const FamilySpec& fam) {
    ParamDomain d;
    std::visit(
        [&d](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, NonCylFamily> || std::is_same_v<F, CylEqualFamily>) {
                d.s_excluded.push_back({0, 0});
            } else if constexpr (std::is_same_v<F, CylGeneralFamily>) {
                const double k = f.k();
                if (k <= 0) {
                    const double m = std::sqrt(-k + margin(k));
                    d.s_excluded.push_back({-m, m});
                }
            } else {
                const double R = f.radius();
                const double m = std::sqrt(R * R - margin(R * R));
                d.s_lo = -m;
                d.s_hi = m;
            }
        },
        fam);
    return d;
}

RuledSpec to_ruled(const FamilySpec& fam) {
    RuledSpec r;
    r.name = family_name(fam);
    r.domain = family_domain(fam);
    r.gamma = [fam](double s) { return curve_eval(fam, s); };
    r.gamma_position = [fam](long double s) {
        return std::visit([s](const auto& f) { return f.position(s); }, fam);
    };
    if (std::holds_alternative<NonCylFamily>(fam)) {
        r.beta = [](double s) { return CurveJet{{1, s, s}, {0, 1, 1}, {0, 0, 0}}; };
        r.beta_position = [](long double s) { return LVec3L{1, s, s}; };
    } else {
        const LVec3 w = std::holds_alternative<CylTimelikeFamily>(fam) ? LVec3{0, 0, 1}
                                                                       : LVec3{1, 0, 0};
        r.beta = [w](double) { return CurveJet{w, {}, {}}; };
        r.beta_position = [w](long double) { return LVec3L{w.x1, w.x2, w.x3}; };
    }
    return r;
}

ParamSurface family_surface(const FamilySpec& fam) {
    return ruled_surface(to_ruled(fam));
}

LVec3 family_velocity(const FamilySpec& fam, double free_component) {
    return std::visit(
        [free_component](const auto& f) -> LVec3 {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, NonCylFamily>) return f.V();
            else if constexpr (std::is_same_v<F, CylTimelikeFamily>)
                return {f.v1(), f.v2(), free_component};
            else return {free_component, f.v2(), f.v3()};
        },
        fam);
}

Sign ruling_delta(const FamilySpec& fam) {
    return std::holds_alternative<CylTimelikeFamily>(fam) ? Sign::Negative : Sign::Positive;
}

std::string family_name(const FamilySpec& fam) {
    static const char* names[] = {"noncyl", "cyl-equal", "cyl-general", "cyl-time"};
    return names[fam.index()];
}

bool conical_check(const FamilySpec& fam, int samples) {
    if (samples < 2) throw InvalidParameter("conical_check: needs at least 2 samples");
    const ParamDomain dom = family_domain(fam);
    const double lo = std::max(dom.s_lo, -10.0), hi = std::min(dom.s_hi, 10.0);
    for (int i = 0; i < samples; ++i) {
        // interior points only, open endpoints stay excluded
        const double s = lo + (hi - lo) * (i + 0.5) / samples;
        if (!dom.contains(s, 0)) continue;
        const LVec3 g1 = curve_eval(fam, s).d1;
        if (euclid_norm(g1) == 0) return false;
    }
    return true;
}

} // namespace limcf
