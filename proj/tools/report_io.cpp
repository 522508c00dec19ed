#include "report_io.hpp"

#include "limcf/errors.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace limcf::cli {

std::string format_real(double x) {
    if (x == 0) return "0";  // also folds -0
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    const double a = std::abs(x);
    const auto fmt = (a >= 1e6 || a < 1e-4) ? std::chars_format::scientific : std::chars_format::fixed;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, fmt);
    return std::string(buf, res.ptr);
}

namespace {

double parse_real(const std::string& s) {
    double v = 0;
    const char* b = s.data();
    const char* e = b + s.size();
    while (b < e && *b == ' ') ++b;
    if (b < e && *b == '+') ++b;
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc{} || res.ptr != e)
        throw InvalidParameter("not a number: '" + s + "'");
    return v;
}

} // namespace

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
    return out;
}

GridAxis parse_axis(const std::string& text) {
    const auto p1 = text.find(':');
    const auto p2 = p1 == std::string::npos ? p1 : text.find(':', p1 + 1);
    if (p2 == std::string::npos)
        throw InvalidParameter("grid axis must look like lo:hi:n, got '" + text + "'");
    GridAxis g;
    g.lo = parse_real(text.substr(0, p1));
    g.hi = parse_real(text.substr(p1 + 1, p2 - p1 - 1));
    const double n = parse_real(text.substr(p2 + 1));
    if (n != std::floor(n) || n < 1 || n > 1e7)
        throw InvalidParameter("grid axis count must be a positive integer: '" + text + "'");
    g.n = static_cast<int>(n);
    if (!(g.lo < g.hi)) throw InvalidParameter("grid axis needs lo < hi: '" + text + "'");
    return g;
}

GridAxis shrink_to_domain(GridAxis axis, const ParamDomain& domain) {
    const double eps = 1e-9 * (axis.hi - axis.lo);
    auto singular = [&](double x) {
        if (x == domain.s_lo || x == domain.s_hi) return true;
        for (const Interval& e : domain.s_excluded)
            if (x == e.lo || x == e.hi) return true;
        return false;
    };
    if (singular(axis.lo)) axis.lo += eps;
    if (singular(axis.hi)) axis.hi -= eps;
    return axis;
}

void write_obj(std::ostream& out, const MeshPatch& patch) {
    for (const LVec3& v : patch.vertices)
        out << "v " << format_real(v.x1) << ' ' << format_real(v.x2) << ' ' << format_real(v.x3) << '\n';
    for (int i = 0; i + 1 < patch.ns; ++i) {
        for (int j = 0; j + 1 < patch.nt; ++j) {
            const std::size_t a = patch.index(i, j) + 1, b = patch.index(i + 1, j) + 1;
            out << "f " << a << ' ' << b << ' ' << b + 1 << ' ' << a + 1 << '\n';
        }
    }
}

void write_residual_csv(std::ostream& out, const ResidualReport& report) {
    out << "s,t,x,y,z,E,F,G,H,residual_raw,residual_norm\n";
    for (const ResidualRow& r : report.rows) {
        out << format_real(r.s) << ',' << format_real(r.t) << ',' << format_real(r.X.x1) << ','
            << format_real(r.X.x2) << ',' << format_real(r.X.x3) << ',' << format_real(r.E) << ','
            << format_real(r.F) << ',' << format_real(r.G) << ',' << format_real(r.H) << ','
            << format_real(r.raw) << ',' << format_real(r.norm) << '\n';
    }
}

} // namespace limcf::cli
