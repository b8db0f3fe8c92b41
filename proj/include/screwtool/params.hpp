#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace screwtool {

/// Geometric and elastic constants of the screwing tool. Lengths are in mm,
/// angles in degrees, forces in N, torques in N·mm. Defaults are the
/// fabricated prototype's values plus documented artifact defaults for the
/// quantities the design records leave open (mu, e_soft, g_tool, t_rtct).
struct ToolParams {
    double w_tool_max = 83.0;  // maximum width between holding pads
    double w_tool_min = 40.0;  // minimum width between holding pads
    double w_hldr = 6.5;       // holding surface to hinge center
    double w_pad = 2.0;        // holding-pad thickness
    double r_drv = 20.0;       // driving-arm length
    double r_sprt = 10.0;      // supporting-arm length
    double r_whl = 1.5;        // supporting-wheel radius
    double l_tool = 54.0;      // holding-pad height
    double xi = 6.00;          // torsional spring coefficient, N·mm/deg
    double gamma = 0.0;        // pre-set spring deformation, deg
    double d_rtct = 32.0;      // ratchet diameter
    double t_rtct = 0.0;       // reversing-pawl resisting torque, N·mm
    double mu = 0.5;           // finger/pad friction coefficient (artifact default)
    double e_soft = 5.0;       // soft-finger eccentricity, mm (artifact default)
    double g_tool = 2.0;       // tool weight, N (artifact default)
};

/// Parallel-gripper constants. The default grabbing force matches a
/// Robotiq Hand-E class gripper; the finger-pad dimensions are artifact
/// defaults (not fixed by the design records).
struct GripperParams {
    double f_grpr_max = 125.0;  // maximum grabbing force, N
    double v_sqz = 20.0;        // finger speed while squeezing, mm/s
    double v_stch = 20.0;       // finger speed while stretching, mm/s
    double w_fgr = 20.0;        // finger-pad width, mm
    double l_fgr = 34.0;        // finger-pad height, mm
    double beta = 57.0;         // holding angle, deg
};

struct ValidationIssue {
    std::string field;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

ValidationReport validate(const ToolParams& p);
ValidationReport validate(const GripperParams& g);

struct ParamSet {
    ToolParams tool;
    GripperParams gripper;
    std::vector<std::string> warnings;  // e.g. unknown keys
};

/// Loads tool + gripper parameters from a `key = value` config file.
/// Missing keys keep their defaults. Throws ConfigError on parse problems
/// and std::invalid_argument when the resulting parameters fail validation.
ParamSet load_params(const std::filesystem::path& path);
ParamSet parse_params(const std::string& text);

/// Same parsing without the validation gate (for report-style checking).
ParamSet parse_params_lenient(const std::string& text);

void save_params(const std::filesystem::path& path, const ToolParams& tool,
                 const GripperParams& gripper);
std::string params_to_string(const ToolParams& tool, const GripperParams& gripper);

}  // namespace screwtool
