#pragma once

#include <iosfwd>
#include <vector>

#include "screwtool/params.hpp"

namespace screwtool {

constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

enum class Phase { Squeezing, Stretching, Free };

const char* phase_name(Phase p);

/// Instantaneous linkage configuration. alpha is the angle between a driving
/// arm and the holding pad; the width relation w = 4 r_drv sin(alpha) + 2 w_hldr
/// ties the two fields together.
struct ToolState {
    double alpha;   // deg
    double w_tool;  // mm
    Phase phase = Phase::Free;
};

/// Inverse width relation: alpha = asin((w - 2 w_hldr) / (4 r_drv)), in degrees.
/// Throws std::domain_error outside [2 w_hldr, 4 r_drv + 2 w_hldr].
double width_to_alpha(double w_tool, const ToolParams& p);

/// Forward width relation. Throws std::domain_error outside [0, 90] deg.
double alpha_to_width(double alpha, const ToolParams& p);

/// alpha at the free (open) state, from w_tool_max.
double alpha_init(const ToolParams& p);
/// alpha at the fully squeezed (closed) state, from w_tool_min.
double alpha_min(const ToolParams& p);

/// Width offset used when converting the travel extremes to angles. The two
/// published relations disagree: the travel formula subtracts 2 r_whl while
/// the width relation subtracts 2 w_hldr. Both are implemented; reports
/// surface the difference.
enum class TravelConvention { WheelOffset, HolderOffset };

/// Maximum rotational travel of the output end per half-cycle, degrees.
double max_rotational_travel(const ToolParams& p,
                             TravelConvention conv = TravelConvention::WheelOffset);

/// Linkage state at which the supporting-wheel separation is evaluated for
/// the pad-height bound. The separation 2 (r_drv + r_sprt) cos(alpha) is
/// largest at the closed state (smallest alpha), which is the binding case.
enum class PadHeightState { Closed, Open };

/// Lower bound on the holding-pad height, mm.
double min_pad_height(const ToolParams& p, PadHeightState state = PadHeightState::Closed);

struct AngleSample {
    double delta_out;  // deg, accumulated output rotation
    Phase phase;
    bool saturated;  // gripper commanded past the mechanical stop
};

/// Output angle after squeezing for time t at finger speed v_sqz, starting
/// from the open state. Clamps at the squeeze extreme and flags saturation.
AngleSample output_angle_squeeze(double t, double v_sqz, const ToolParams& p);

/// Output angle after stretching for time t at finger speed v_stch, starting
/// from angle alpha_start (deg). Clamps at the open state.
AngleSample output_angle_stretch(double t, double v_stch, double alpha_start,
                                 const ToolParams& p);

struct CycleSample {
    double t;          // s
    double delta_out;  // deg
    Phase phase;
};

/// Accumulated output angle for repeated full-stroke squeeze/stretch cycles.
/// The squeeze/stretch switch happens at t_m = stroke / v_sqz within each
/// cycle; the stretch branch is re-based at the squeeze extreme so delta_out
/// is continuous and non-decreasing. Direction switches are instantaneous
/// (no backlash modeled).
CycleSample output_angle_cycle(double t, double v_sqz, double v_stch, const ToolParams& p);

struct CycleTrajectory {
    std::vector<CycleSample> samples;
    double t_m;  // squeeze/stretch switch instant of the first cycle, s
};

CycleTrajectory sample_cycle_trajectory(double duration, double dt, double v_sqz,
                                        double v_stch, const ToolParams& p);

/// Time for the ideal cycle model to accumulate delta_target degrees of
/// output rotation (closed form, inverting the cycle branches).
double time_to_rotate(double delta_target, double v_sqz, double v_stch,
                      const ToolParams& p);

/// CSV with header `t_s,delta_out_deg,phase`.
void write_trajectory_csv(std::ostream& os, const CycleTrajectory& traj);

}  // namespace screwtool
