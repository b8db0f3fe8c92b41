#include "screwtool/quasistatics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "screwtool/report.hpp"

namespace screwtool {

double spring_torque(double alpha, const ToolParams& p, SpringSign sign) {
    double deformation = alpha_init(p) - alpha;
    if (sign == SpringSign::AsPrinted) deformation = -deformation;
    return p.xi * (p.gamma + deformation);
}

namespace {

double drv_lever(double alpha, const ToolParams& p) {
    if (alpha >= 90.0) throw std::domain_error("alpha = 90 deg: cos(alpha) singular");
    return p.r_drv * std::cos(deg_to_rad(alpha));
}

}  // namespace

double grip_pressure(double alpha, const ToolParams& p) {
    double t_sprg = spring_torque(alpha, p);
    return (4.0 * t_sprg + p.t_rtct) / (4.0 * drv_lever(alpha, p));
}

HoldCondition hold_condition(double d_com, double p_grpr, const ToolParams& p) {
    if (p_grpr < 0.0) throw std::invalid_argument("grip pressure must be >= 0");
    double e2 = p.e_soft * p.e_soft;
    double radicand = 4.0 * p.mu * p.mu * p_grpr * p_grpr * e2 / p.g_tool - e2;
    double limit = radicand > 0.0 ? std::sqrt(radicand) : 0.0;
    return {d_com, limit, d_com <= limit};
}

double d_finger(double w_fgr, double l_fgr, double beta, FingerSpanMode mode) {
    double sb = std::sin(deg_to_rad(beta));
    if (mode == FingerSpanMode::AsPrinted) return (w_fgr + l_fgr) * sb;
    return w_fgr * std::cos(deg_to_rad(beta)) + l_fgr * sb;
}

double d_finger(const GripperParams& g, FingerSpanMode mode) {
    return d_finger(g.w_fgr, g.l_fgr, g.beta, mode);
}

TorqueResult torque_squeeze(double alpha, double f_grpr, double d_fgr,
                            const ToolParams& p, int spring_multiplier) {
    if (f_grpr < 0.0) throw std::invalid_argument("f_grpr must be >= 0");
    double resist = spring_multiplier * spring_torque(alpha, p) / drv_lever(alpha, p);
    double torque = (f_grpr - resist) * d_fgr;
    return {torque, torque <= 0.0};
}

double torque_stretch(double alpha, double d_fgr, const ToolParams& p,
                      int spring_multiplier) {
    return spring_multiplier * spring_torque(alpha, p) / drv_lever(alpha, p) * d_fgr;
}

void write_torque_csv(std::ostream& os, std::span<const double> alphas,
                      std::span<const double> t_sqz, std::span<const double> t_stch) {
    os << "alpha_deg,T_sqz_Nmm,T_stch_Nmm\n";
    for (size_t i = 0; i < alphas.size(); ++i)
        os << csv_num(alphas[i]) << ',' << csv_num(t_sqz[i]) << ',' << csv_num(t_stch[i])
           << '\n';
}

namespace {

// Standard tightening torques (N·m) for general machinery, M3..M6 across
// property classes 4.8..12.9.
constexpr ScrewTorqueEntry kScrewTable[] = {
    {"M3", "4.8", 0.56},   {"M3", "6.8", 1.10},   {"M3", "8.8", 1.45},
    {"M3", "10.9", 2.08},  {"M3", "12.9", 2.43},

    {"M3.5", "4.8", 0.89}, {"M3.5", "6.8", 1.73}, {"M3.5", "8.8", 2.28},
    {"M3.5", "10.9", 3.27}, {"M3.5", "12.9", 3.82},

    {"M4", "4.8", 1.31},   {"M4", "6.8", 2.57},   {"M4", "8.8", 3.38},
    {"M4", "10.9", 4.84},  {"M4", "12.9", 5.66},

    {"M5", "4.8", 2.65},   {"M5", "6.8", 5.19},   {"M5", "8.8", 6.80},
    {"M5", "10.9", 9.78},  {"M5", "12.9", 11.43},

    {"M6", "4.8", 4.50},   {"M6", "6.8", 8.81},   {"M6", "8.8", 11.60},
    {"M6", "10.9", 16.60}, {"M6", "12.9", 19.40},
};

double size_value(const char* size) { return std::atof(size + 1); }

}  // namespace

std::span<const ScrewTorqueEntry> screw_torque_table() { return kScrewTable; }

std::vector<ScrewTorqueEntry> fastenable_screws(double t_sqz_max, double t_stch_max,
                                                RatchetMode mode) {
    if (t_sqz_max < 0.0 || t_stch_max < 0.0)
        throw std::invalid_argument("torque gates must be >= 0");
    double gate_Nmm = mode == RatchetMode::DoubleRatchet
                          ? std::min(t_sqz_max, t_stch_max)
                          : t_sqz_max;
    double gate_Nm = gate_Nmm / 1000.0;
    std::vector<ScrewTorqueEntry> out;
    for (const auto& e : kScrewTable)
        if (e.tightening_torque_Nm <= gate_Nm) out.push_back(e);
    return out;
}

std::optional<ScrewTorqueEntry> max_fastenable(std::span<const ScrewTorqueEntry> cells) {
    std::optional<ScrewTorqueEntry> best;
    for (const auto& e : cells) {
        if (!best || size_value(e.size) > size_value(best->size) ||
            (size_value(e.size) == size_value(best->size) &&
             e.tightening_torque_Nm > best->tightening_torque_Nm))
            best = e;
    }
    return best;
}

}  // namespace screwtool
