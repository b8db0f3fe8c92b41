#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "screwtool/params.hpp"

namespace screwtool {

struct SpringCatalogEntry {
    double xi = 0.0;                 // N·mm/deg
    double max_outer_diameter = 0.0;  // mm
    std::string label;
};

/// Fixed operating point for the spring-balance objective. The default
/// spring_multiplier of 2 counts the two joint springs of the linkage half
/// engaged with the active ratchet; it reproduces the prototype's balanced
/// coefficient, where the verbatim single-spring expression lands at roughly
/// twice that value.
struct TorqueModel {
    double f_grpr = 125.0;      // N
    double d_fgr = 45.0;        // mm
    int spring_multiplier = 2;  // springs in the output load path
};

/// Integral of |T_sqz(a, xi) * T_stch(a, xi)| over the stroke
/// [alpha_min, alpha_init], composite trapezoid with `step_deg` spacing
/// (units: N^2 mm^2 deg). Larger values mean both half-cycles stay strong.
double spring_objective(double xi, const TorqueModel& model, const ToolParams& p,
                        double step_deg = 0.1);

struct XiSearchRange {
    double lo;
    double hi;
};

/// Default search range [0.5, xi_stall]: above xi_stall the squeeze output
/// goes negative at the closed state (the gripper can no longer wind the
/// springs), and the |.| objective grows without bound, so the search is
/// restricted to the physically useful regime.
XiSearchRange default_xi_search_range(const TorqueModel& model, const ToolParams& p);

struct XiOptimum {
    double xi_star = 0.0;        // N·mm/deg
    double objective = 0.0;      // N^2 mm^2 deg
    double bracket_lo = 0.0;     // coarse-grid bracket handed to golden section
    double bracket_hi = 0.0;
    bool at_boundary = false;    // argmax pinned to a search-range endpoint
    bool stall_regime = false;   // squeeze output non-positive somewhere at xi_star
    std::string note;
};

/// Maximizes spring_objective over the range: coarse grid at `coarse_step`,
/// then golden-section refinement of the bracketing interval down to `tol`.
/// Deterministic for fixed inputs.
XiOptimum optimize_xi(const TorqueModel& model, const ToolParams& p,
                      const XiSearchRange& range, double tol = 0.01,
                      double coarse_step = 0.5);
XiOptimum optimize_xi(const TorqueModel& model, const ToolParams& p);

/// Catalog entry with outer diameter <= max_diameter whose xi is nearest
/// xi_star; ties break toward the smaller xi (a weaker spring costs squeeze
/// margin, the lesser penalty). Throws std::runtime_error when nothing fits.
SpringCatalogEntry select_from_catalog(double xi_star,
                                       std::span<const SpringCatalogEntry> catalog,
                                       double max_diameter);

/// Catalog file: the usual key = value grammar with repeated [spring] blocks
/// (keys: xi, max_outer_diameter, label).
std::vector<SpringCatalogEntry> load_spring_catalog(const std::filesystem::path& path);
std::vector<SpringCatalogEntry> parse_spring_catalog(const std::string& text);

/// A small illustrative catalog including the fabricated tool's 6.00 entry.
std::vector<SpringCatalogEntry> builtin_spring_catalog();

}  // namespace screwtool
