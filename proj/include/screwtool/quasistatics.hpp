#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "screwtool/kinematics.hpp"
#include "screwtool/params.hpp"

namespace screwtool {

/// Sign convention for the torsion-spring torque. `Deformation` measures the
/// squeeze deformation magnitude, xi * (gamma + alpha_init - alpha), so the
/// torque is non-negative while squeezing. `AsPrinted` keeps the published
/// sign, xi * (gamma + alpha - alpha_init), which is negative during squeeze.
enum class SpringSign { Deformation, AsPrinted };

/// Torque of one torsion spring at linkage angle alpha (deg), N·mm.
double spring_torque(double alpha, const ToolParams& p,
                     SpringSign sign = SpringSign::Deformation);

/// Pressure the gripper must hold against: (4 T_sprg + T_rtct) / (4 r_drv cos a).
/// Throws std::domain_error at alpha >= 90 deg (cos a -> 0).
double grip_pressure(double alpha, const ToolParams& p);

struct HoldCondition {
    double d_com;        // CoM-to-contact distance, mm
    double d_com_limit;  // largest distance still held, mm
    bool holds;          // d_com <= d_com_limit
};

/// Soft-finger stable-hold condition. The limit is
/// sqrt(4 mu^2 P^2 e^2 / G_tool - e^2); a negative radicand means the grip
/// cannot hold at any offset and the limit is reported as 0.
HoldCondition hold_condition(double d_com, double p_grpr, const ToolParams& p);

/// Effective finger lever arm d_fgr. `AsPrinted` follows the published form
/// (w_fgr + l_fgr) sin(beta), which is monotone in beta. `Projected` treats
/// the width term as a projection, w_fgr cos(beta) + l_fgr sin(beta), which
/// peaks at an interior beta and matches the measured torque-vs-beta shape.
enum class FingerSpanMode { AsPrinted, Projected };

double d_finger(double w_fgr, double l_fgr, double beta,
                FingerSpanMode mode = FingerSpanMode::AsPrinted);
double d_finger(const GripperParams& g, FingerSpanMode mode = FingerSpanMode::AsPrinted);

struct TorqueResult {
    double torque;  // N·mm; negative means the gripper cannot overcome the springs
    bool stalled;   // torque <= 0
};

/// Maximum output torque while squeezing:
/// (F_grpr - k T_sprg / (r_drv cos a)) * d_fgr. `spring_multiplier` k is the
/// number of joint springs assumed to act in the output load path (1 follows
/// the published expression verbatim; 2 counts both joints of the engaged
/// linkage; 4 counts every spring in the tool).
TorqueResult torque_squeeze(double alpha, double f_grpr, double d_fgr,
                            const ToolParams& p, int spring_multiplier = 1);

/// Maximum output torque while stretching: k T_sprg / (r_drv cos a) * d_fgr.
double torque_stretch(double alpha, double d_fgr, const ToolParams& p,
                      int spring_multiplier = 1);

struct TorqueCurveSample {
    double alpha;   // deg
    double torque;  // N·mm
};

struct TorqueCurve {
    std::vector<TorqueCurveSample> samples;
    Phase phase;
};

/// CSV with header `alpha_deg,T_sqz_Nmm,T_stch_Nmm` over an alpha grid.
void write_torque_csv(std::ostream& os, std::span<const double> alphas,
                      std::span<const double> t_sqz, std::span<const double> t_stch);

/// One cell of the fastenable-screw table: a metric size and property class
/// with its required tightening torque (values as standardized, N·m).
struct ScrewTorqueEntry {
    const char* size;
    const char* property_class;
    double tightening_torque_Nm;
};

/// The embedded standard tightening-torque table (M3..M6, classes 4.8..12.9).
std::span<const ScrewTorqueEntry> screw_torque_table();

enum class RatchetMode { DoubleRatchet, SingleRatchet };

/// Screw/class cells the tool can fasten. Double-ratchet output is limited by
/// the weaker half-cycle, min(T_sqz, T_stch); a single-ratchet tool only
/// drives while squeezing and is gated by T_sqz alone. Gates are in N·mm.
std::vector<ScrewTorqueEntry> fastenable_screws(double t_sqz_max, double t_stch_max,
                                                RatchetMode mode);

/// Largest fastenable screw size, reported with the strongest property class
/// that still fits the gate. Empty when nothing is fastenable.
std::optional<ScrewTorqueEntry> max_fastenable(std::span<const ScrewTorqueEntry> cells);

}  // namespace screwtool
