#include "screwtool/report.hpp"

#include <cstdio>

namespace screwtool {

std::string fnv1a_digest(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::json ReportEnvelope::to_json() const {
    nlohmann::json j;
    j["analysis"] = analysis;
    j["input_digest"] = input_digest;
    j["parameters"] = parameter_snapshot;
    j["result"] = payload;
    j["notes"] = notes;
    return j;
}

nlohmann::json params_snapshot(const ToolParams& t, const GripperParams& g) {
    nlohmann::json j;
    j["tool"] = {{"w_tool_max", t.w_tool_max}, {"w_tool_min", t.w_tool_min},
                 {"w_hldr", t.w_hldr},         {"w_pad", t.w_pad},
                 {"r_drv", t.r_drv},           {"r_sprt", t.r_sprt},
                 {"r_whl", t.r_whl},           {"l_tool", t.l_tool},
                 {"xi", t.xi},                 {"gamma", t.gamma},
                 {"d_rtct", t.d_rtct},         {"t_rtct", t.t_rtct},
                 {"mu", t.mu},                 {"e_soft", t.e_soft},
                 {"g_tool", t.g_tool}};
    j["gripper"] = {{"f_grpr_max", g.f_grpr_max}, {"v_sqz", g.v_sqz},
                    {"v_stch", g.v_stch},         {"w_fgr", g.w_fgr},
                    {"l_fgr", g.l_fgr},           {"beta", g.beta}};
    return j;
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace screwtool
