#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "screwtool/hull3.hpp"
#include "screwtool/params.hpp"

namespace screwtool {

struct SoftFingerModel {
    double mu;      // friction coefficient
    double e_soft;  // eccentricity (moment/force coupling radius), mm
};

/// A planar contact on the held pad. Wrenches live in (f_x, f_y, tau) with
/// tau about the frame origin. `friction` empty means frictionless (a single
/// generator along the normal). `bilateral` models a pin connection that can
/// both push and pull along the normal.
struct WrenchContact {
    Eigen::Vector2d p;  // mm
    Eigen::Vector2d n;  // unit normal, direction of force on the body
    std::optional<SoftFingerModel> friction;
    double force_limit = 1.0;  // N
    bool bilateral = false;
};

/// Extreme wrenches a contact can exert. Frictionless contacts give one
/// generator (two if bilateral). A soft finger gives n_edges samples of the
/// tangential-force / normal-moment ellipse boundary at full normal force:
/// f_t = mu F cos(phi), tau_n = e mu F sin(phi). Torques are p x f + tau_n,
/// divided by tau_scale so the wrench components are commensurate.
std::vector<Eigen::Vector3d> contact_wrench_generators(const WrenchContact& c,
                                                       int n_edges,
                                                       double tau_scale = 1.0);

struct WrenchSet {
    std::vector<Eigen::Vector3d> wrenches;  // Minkowski-sum vertex candidates
    Hull3 hull;
    double tau_scale = 1.0;
};

/// Grasp wrench set of a contact arrangement: the Minkowski sum of each
/// contact's admissible set (zero force included per contact), followed by a
/// convex hull in (f_x, f_y, tau).
WrenchSet grasp_wrench_set(std::span<const WrenchContact> contacts, int n_edges,
                           double tau_scale = 1.0);

/// Structural stability index: minimum origin-to-facet distance of the hull
/// when the origin is strictly interior, 0 otherwise (including degenerate
/// hulls of rank < 3).
double stability_index(const WrenchSet& ws);

/// The six-contact arrangement of one holding pad at linkage angle alpha,
/// expressed in the tool frame (origin at the ratchet center, x toward the
/// pad, y along it):
///   c1, c2  gripper finger patch, bracketed at the pad outer-surface corners
///           (+-l_tool/2); soft-finger friction (mu, e_soft)
///   c3, c4  upper/lower supporting-wheel cam contacts, frictionless, force
///           along the cam surface's inward normal
///   c5, c6  the pad hinge pin, two orthogonal bilateral frictionless
///           constraints
/// All force limits are `force_limit` (the index is homogeneous in it).
std::vector<WrenchContact> pad_contact_layout(double alpha, double r_sprt,
                                              double w_hldr, const ToolParams& p,
                                              double force_limit = 1.0);

struct StabilityCell {
    double alpha;   // deg
    double r_sprt;  // mm
    double q;
    bool feasible;
};

struct StabilityGrid {
    std::vector<StabilityCell> cells;
    std::vector<std::string> notes;
};

/// Q over an (alpha, r_sprt) grid with the pad contact layout. Infeasible
/// geometry cells (r_sprt >= r_drv, alpha out of range) are marked rather
/// than evaluated. Torques are normalized by l_tool/2 before hull
/// construction. Appends a note reporting the empirical Q-vs-r_sprt
/// direction, which is not fixed by the design records.
StabilityGrid sweep_stability(const ToolParams& p, std::span<const double> r_sprt_values,
                              std::span<const double> alpha_values, double w_hldr,
                              int n_edges = 8);

/// CSV with header `alpha_deg,r_sprt_mm,Q`.
void write_stability_csv(std::ostream& os, const StabilityGrid& grid);

/// JSON dump of a contact layout (positions, normals, friction, limits).
std::string contact_layout_json(std::span<const WrenchContact> contacts);

}  // namespace screwtool
