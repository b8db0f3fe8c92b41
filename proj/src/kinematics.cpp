#include "screwtool/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "screwtool/report.hpp"

namespace screwtool {

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Squeezing: return "squeeze";
        case Phase::Stretching: return "stretch";
        case Phase::Free: return "free";
    }
    return "?";
}

double width_to_alpha(double w_tool, const ToolParams& p) {
    double lo = 2.0 * p.w_hldr;
    double hi = 4.0 * p.r_drv + 2.0 * p.w_hldr;
    if (!(w_tool >= lo && w_tool <= hi))
        throw std::domain_error("w_tool out of range [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "] mm");
    double s = (w_tool - lo) / (4.0 * p.r_drv);
    return rad_to_deg(std::asin(std::clamp(s, 0.0, 1.0)));
}

double alpha_to_width(double alpha, const ToolParams& p) {
    if (!(alpha >= 0.0 && alpha <= 90.0))
        throw std::domain_error("alpha out of range [0, 90] deg");
    return 4.0 * p.r_drv * std::sin(deg_to_rad(alpha)) + 2.0 * p.w_hldr;
}

double alpha_init(const ToolParams& p) { return width_to_alpha(p.w_tool_max, p); }
double alpha_min(const ToolParams& p) { return width_to_alpha(p.w_tool_min, p); }

double max_rotational_travel(const ToolParams& p, TravelConvention conv) {
    double off = conv == TravelConvention::WheelOffset ? 2.0 * p.r_whl : 2.0 * p.w_hldr;
    double s_max = (p.w_tool_max - off) / (4.0 * p.r_drv);
    double s_min = (p.w_tool_min - off) / (4.0 * p.r_drv);
    if (!(s_max >= -1.0 && s_max <= 1.0 && s_min >= -1.0 && s_min <= 1.0))
        throw std::domain_error("travel extreme outside the arcsine domain");
    return rad_to_deg(std::asin(s_max) - std::asin(s_min));
}

double min_pad_height(const ToolParams& p, PadHeightState state) {
    double a = state == PadHeightState::Closed ? alpha_min(p) : alpha_init(p);
    return 2.0 * (p.r_drv + p.r_sprt) * std::cos(deg_to_rad(a));
}

namespace {

struct Stroke {
    double a_init, a_min, sin_init, sin_min;
};

Stroke stroke_of(const ToolParams& p) {
    Stroke s;
    s.a_init = alpha_init(p);
    s.a_min = alpha_min(p);
    s.sin_init = std::sin(deg_to_rad(s.a_init));
    s.sin_min = std::sin(deg_to_rad(s.a_min));
    return s;
}

}  // namespace

AngleSample output_angle_squeeze(double t, double v_sqz, const ToolParams& p) {
    if (t < 0.0) throw std::invalid_argument("t must be >= 0");
    if (!(v_sqz > 0.0)) throw std::invalid_argument("v_sqz must be > 0");
    Stroke s = stroke_of(p);
    double arg = s.sin_init - v_sqz * t / (4.0 * p.r_drv);
    if (arg < s.sin_min)  // gripper commanded past the mechanical stop
        return {s.a_init - s.a_min, Phase::Squeezing, true};
    return {s.a_init - rad_to_deg(std::asin(arg)), Phase::Squeezing, false};
}

AngleSample output_angle_stretch(double t, double v_stch, double alpha_start,
                                 const ToolParams& p) {
    if (t < 0.0) throw std::invalid_argument("t must be >= 0");
    if (!(v_stch > 0.0)) throw std::invalid_argument("v_stch must be > 0");
    Stroke s = stroke_of(p);
    double sin_start = std::sin(deg_to_rad(alpha_start));
    double arg = sin_start + v_stch * t / (4.0 * p.r_drv);
    if (arg > s.sin_init)  // stretched back to the open-state stoppers
        return {s.a_init - alpha_start, Phase::Stretching, true};
    return {rad_to_deg(std::asin(arg)) - alpha_start, Phase::Stretching, false};
}

CycleSample output_angle_cycle(double t, double v_sqz, double v_stch, const ToolParams& p) {
    if (t < 0.0) throw std::invalid_argument("t must be >= 0");
    if (!(v_sqz > 0.0 && v_stch > 0.0))
        throw std::invalid_argument("finger speeds must be > 0");
    Stroke s = stroke_of(p);
    double stroke_mm = p.w_tool_max - p.w_tool_min;
    double t_m = stroke_mm / v_sqz;
    double t_cycle = t_m + stroke_mm / v_stch;
    double half = s.a_init - s.a_min;

    double n_full = std::floor(t / t_cycle);
    double tau = t - n_full * t_cycle;
    if (tau < 0.0) tau = 0.0;  // guards rounding at exact cycle boundaries
    double base = n_full * 2.0 * half;
    if (tau <= t_m) {
        AngleSample a = output_angle_squeeze(tau, v_sqz, p);
        return {t, base + a.delta_out, Phase::Squeezing};
    }
    AngleSample a = output_angle_stretch(tau - t_m, v_stch, s.a_min, p);
    return {t, base + half + a.delta_out, Phase::Stretching};
}

CycleTrajectory sample_cycle_trajectory(double duration, double dt, double v_sqz,
                                        double v_stch, const ToolParams& p) {
    if (!(duration >= 0.0 && dt > 0.0))
        throw std::invalid_argument("need duration >= 0 and dt > 0");
    CycleTrajectory traj;
    traj.t_m = (p.w_tool_max - p.w_tool_min) / v_sqz;
    int n = static_cast<int>(std::floor(duration / dt));
    traj.samples.reserve(n + 1);
    for (int i = 0; i <= n; ++i)
        traj.samples.push_back(output_angle_cycle(i * dt, v_sqz, v_stch, p));
    return traj;
}

double time_to_rotate(double delta_target, double v_sqz, double v_stch,
                      const ToolParams& p) {
    if (!(delta_target >= 0.0)) throw std::invalid_argument("target must be >= 0");
    Stroke s = stroke_of(p);
    double stroke_mm = p.w_tool_max - p.w_tool_min;
    double t_m = stroke_mm / v_sqz;
    double t_cycle = t_m + stroke_mm / v_stch;
    double half = s.a_init - s.a_min;

    double n_full = std::floor(delta_target / (2.0 * half));
    double rem = delta_target - n_full * 2.0 * half;
    if (rem < 0.0) rem = 0.0;
    double t = n_full * t_cycle;
    if (rem <= half) {
        t += (s.sin_init - std::sin(deg_to_rad(s.a_init - rem))) * 4.0 * p.r_drv / v_sqz;
    } else {
        t += t_m;
        double rem2 = rem - half;
        t += (std::sin(deg_to_rad(s.a_min + rem2)) - s.sin_min) * 4.0 * p.r_drv / v_stch;
    }
    return t;
}

void write_trajectory_csv(std::ostream& os, const CycleTrajectory& traj) {
    os << "t_s,delta_out_deg,phase\n";
    for (const auto& s : traj.samples)
        os << csv_num(s.t) << ',' << csv_num(s.delta_out) << ',' << phase_name(s.phase)
           << '\n';
}

}  // namespace screwtool
