#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <vector>

#include "screwtool/params.hpp"

namespace screwtool {

/// One sample of the curved inner-surface (cam) profile of a holding pad, in
/// the pad frame anchored at the hinge: x toward the ratchet center, y along
/// the pad.
struct CamPoint {
    double alpha;   // deg
    double x_whl;   // supporting-wheel center
    double y_whl;
    double x_sprt;  // pad surface contact point
    double y_sprt;
};

struct CamProfile {
    std::vector<CamPoint> points;
};

/// Supporting-wheel center at linkage angle alpha:
/// ((r_drv - r_sprt) sin a, (r_drv + r_sprt) cos a). Throws
/// std::domain_error for alpha outside [0, 90] or r_sprt >= r_drv.
Eigen::Vector2d wheel_center(double alpha, const ToolParams& p);

/// Unit normal of the wheel-center curve pointing into the pad (the
/// y-reducing branch of the two normals). The cam surface is obtained by
/// offsetting the wheel-center curve by r_whl along this direction.
Eigen::Vector2d profile_inward_normal(double alpha, const ToolParams& p);

/// Offset angle theta such that the inward normal is (cos theta, -sin theta),
/// matching the parametric form x_sprt = x_whl + r_whl cos(theta),
/// y_sprt = y_whl - r_whl sin(theta). Degrees.
double profile_normal_angle(double alpha, const ToolParams& p);

/// Cam-surface point at alpha: wheel center offset by r_whl along the inward
/// normal.
Eigen::Vector2d profile_point(double alpha, const ToolParams& p);

/// Profile sampled uniformly in alpha over [alpha_min, alpha_init].
/// n_samples >= 2; endpoints included.
CamProfile synthesize_cam_profile(const ToolParams& p, int n_samples);

/// CSV with header `alpha_deg,x_whl_mm,y_whl_mm,x_sprt_mm,y_sprt_mm`.
void write_profile_csv(std::ostream& os, const CamProfile& profile);

/// One `x y` pair per line (pad-frame surface points), for plotting or CAM
/// import.
void write_profile_polyline(std::ostream& os, const CamProfile& profile);

}  // namespace screwtool
