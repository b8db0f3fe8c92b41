#include "screwtool/cam_profile.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "screwtool/kinematics.hpp"
#include "screwtool/report.hpp"

namespace screwtool {

namespace {

void check_geometry(double alpha, const ToolParams& p) {
    if (p.r_sprt >= p.r_drv)
        throw std::domain_error("r_sprt >= r_drv: wheel-center curve degenerates");
    if (!(alpha >= 0.0 && alpha <= 90.0))
        throw std::domain_error("alpha out of range [0, 90] deg");
}

}  // namespace

Eigen::Vector2d wheel_center(double alpha, const ToolParams& p) {
    check_geometry(alpha, p);
    double a = deg_to_rad(alpha);
    return {(p.r_drv - p.r_sprt) * std::sin(a), (p.r_drv + p.r_sprt) * std::cos(a)};
}

Eigen::Vector2d profile_inward_normal(double alpha, const ToolParams& p) {
    check_geometry(alpha, p);
    double a = deg_to_rad(alpha);
    double A = p.r_drv - p.r_sprt;
    double B = p.r_drv + p.r_sprt;
    // Normal of the ellipse-like wheel-center curve is along
    // (B sin a, A cos a); the pad lies on the y-decreasing side, so the
    // inward branch is the negative one. At a -> 0 this limits to (0, -1)
    // where the slope expression -1/f' alone would be two-valued.
    Eigen::Vector2d n(-B * std::sin(a), -A * std::cos(a));
    return n.normalized();
}

double profile_normal_angle(double alpha, const ToolParams& p) {
    Eigen::Vector2d n = profile_inward_normal(alpha, p);
    // theta with offset direction (cos theta, -sin theta)
    return rad_to_deg(std::atan2(-n.y(), n.x()));
}

Eigen::Vector2d profile_point(double alpha, const ToolParams& p) {
    return wheel_center(alpha, p) + p.r_whl * profile_inward_normal(alpha, p);
}

CamProfile synthesize_cam_profile(const ToolParams& p, int n_samples) {
    if (n_samples < 2) throw std::invalid_argument("n_samples must be >= 2");
    double a_lo = alpha_min(p);
    double a_hi = alpha_init(p);
    CamProfile profile;
    profile.points.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        double alpha = a_lo + (a_hi - a_lo) * i / (n_samples - 1);
        Eigen::Vector2d w = wheel_center(alpha, p);
        Eigen::Vector2d s = profile_point(alpha, p);
        profile.points.push_back({alpha, w.x(), w.y(), s.x(), s.y()});
    }
    return profile;
}

void write_profile_csv(std::ostream& os, const CamProfile& profile) {
    os << "alpha_deg,x_whl_mm,y_whl_mm,x_sprt_mm,y_sprt_mm\n";
    for (const auto& pt : profile.points)
        os << csv_num(pt.alpha) << ',' << csv_num(pt.x_whl) << ',' << csv_num(pt.y_whl)
           << ',' << csv_num(pt.x_sprt) << ',' << csv_num(pt.y_sprt) << '\n';
}

void write_profile_polyline(std::ostream& os, const CamProfile& profile) {
    for (const auto& pt : profile.points)
        os << csv_num(pt.x_sprt) << ' ' << csv_num(pt.y_sprt) << '\n';
}

}  // namespace screwtool
