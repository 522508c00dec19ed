#include "limcf/mink.hpp"

#include <algorithm>

namespace limcf {

std::string_view to_string(CausalClass c) {
    switch (c) {
    case CausalClass::Spacelike: return "spacelike";
    case CausalClass::Timelike: return "timelike";
    case CausalClass::Lightlike: return "lightlike";
    }
    return "unknown";
}

double lorentz_norm(const LVec3& v) {
    return std::sqrt(std::abs(lorentz_inner(v, v)));
}

bool is_finite(const LVec3& v) {
    return std::isfinite(v.x1) && std::isfinite(v.x2) && std::isfinite(v.x3);
}

double default_causal_tolerance(const LVec3& v) {
    return 1e-10 * std::max(1.0, euclid_dot(v, v));
}

CausalClass causal_class(const LVec3& v, double tol) {
    if (v == LVec3{}) return CausalClass::Spacelike;
    const double q = lorentz_inner(v, v);
    if (q > tol) return CausalClass::Spacelike;
    if (q < -tol) return CausalClass::Timelike;
    return CausalClass::Lightlike;
}

CausalClass causal_class(const LVec3& v) {
    return causal_class(v, default_causal_tolerance(v));
}

} // namespace limcf
