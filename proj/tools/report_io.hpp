#pragma once

#include "limcf/flow_sim.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace limcf::cli {

// Shortest decimal that round-trips; scientific for |x| >= 1e6 or 0 < |x| < 1e-4.
std::string format_real(double x);

// "lo:hi:n"
GridAxis parse_axis(const std::string& text);

// Moves an endpoint that sits on an excluded singular point (or an open
// domain bound) inward by 1e-9 * span. Other endpoints are left alone.
GridAxis shrink_to_domain(GridAxis axis, const ParamDomain& domain);

std::vector<double> parse_list(const std::string& text);

void write_obj(std::ostream& out, const MeshPatch& patch);

struct ResidualRow {
    double s, t;
    LVec3 X;
    double E, F, G, H;
    double raw, norm;
};

struct ResidualReport {
    std::vector<ResidualRow> rows;
    double max_abs_norm = 0;
    double mean_abs_norm = 0;
    std::size_t count = 0;
};

void write_residual_csv(std::ostream& out, const ResidualReport& report);

} // namespace limcf::cli
