#include "screwtool/params.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "screwtool/config_file.hpp"

namespace screwtool {

std::string ValidationReport::summary() const {
    if (ok()) return "valid";
    std::string s;
    for (const auto& i : issues) {
        if (!s.empty()) s += "; ";
        s += i.field + ": " + i.message;
    }
    return s;
}

ValidationReport validate(const ToolParams& p) {
    ValidationReport r;
    auto issue = [&](const std::string& field, const std::string& msg) {
        r.issues.push_back({field, msg});
    };
    auto positive = [&](const char* name, double v) {
        if (!(v > 0.0)) issue(name, "must be > 0");
    };
    positive("w_tool_max", p.w_tool_max);
    positive("w_tool_min", p.w_tool_min);
    positive("w_hldr", p.w_hldr);
    positive("w_pad", p.w_pad);
    positive("r_drv", p.r_drv);
    positive("r_sprt", p.r_sprt);
    positive("r_whl", p.r_whl);
    positive("l_tool", p.l_tool);
    positive("d_rtct", p.d_rtct);
    positive("g_tool", p.g_tool);
    positive("e_soft", p.e_soft);
    if (!(p.xi >= 0.0)) issue("xi", "must be >= 0");
    if (!(p.gamma >= 0.0)) issue("gamma", "must be >= 0");
    if (!(p.t_rtct >= 0.0)) issue("t_rtct", "must be >= 0");
    if (!(p.mu > 0.0)) issue("mu", "must be > 0");
    if (!(p.w_tool_min < p.w_tool_max)) issue("w_tool_min", "min exceeds max");
    if (p.w_tool_min < p.d_rtct) issue("w_tool_min", "pads collide with ratchet");
    if (p.r_drv > 0.0 && p.w_hldr > 0.0) {
        // the open-state angle from the width relation must stay in (0, 90)
        double s = (p.w_tool_max - 2.0 * p.w_hldr) / (4.0 * p.r_drv);
        if (!(s > 0.0 && s < 1.0))
            issue("w_tool_max", "open-state angle out of (0, 90) deg");
        double smin = (p.w_tool_min - 2.0 * p.w_hldr) / (4.0 * p.r_drv);
        if (!(smin >= 0.0))
            issue("w_tool_min", "below the width relation's reach (2 w_hldr)");
    }
    return r;
}

ValidationReport validate(const GripperParams& g) {
    ValidationReport r;
    auto issue = [&](const std::string& field, const std::string& msg) {
        r.issues.push_back({field, msg});
    };
    if (!(g.f_grpr_max > 0.0)) issue("f_grpr_max", "must be > 0");
    if (!(g.v_sqz > 0.0)) issue("v_sqz", "must be > 0");
    if (!(g.v_stch > 0.0)) issue("v_stch", "must be > 0");
    if (!(g.w_fgr > 0.0)) issue("w_fgr", "must be > 0");
    if (!(g.l_fgr > 0.0)) issue("l_fgr", "must be > 0");
    if (!(g.beta > 0.0 && g.beta <= 90.0)) issue("beta", "must be in (0, 90] deg");
    return r;
}

namespace {

using FieldMap = std::map<std::string, std::function<void(double)>, std::less<>>;

FieldMap tool_fields(ToolParams& p) {
    return {
        {"w_tool_max", [&p](double v) { p.w_tool_max = v; }},
        {"w_tool_min", [&p](double v) { p.w_tool_min = v; }},
        {"w_hldr", [&p](double v) { p.w_hldr = v; }},
        {"w_pad", [&p](double v) { p.w_pad = v; }},
        {"r_drv", [&p](double v) { p.r_drv = v; }},
        {"r_sprt", [&p](double v) { p.r_sprt = v; }},
        {"r_whl", [&p](double v) { p.r_whl = v; }},
        {"l_tool", [&p](double v) { p.l_tool = v; }},
        {"xi", [&p](double v) { p.xi = v; }},
        {"gamma", [&p](double v) { p.gamma = v; }},
        {"d_rtct", [&p](double v) { p.d_rtct = v; }},
        {"t_rtct", [&p](double v) { p.t_rtct = v; }},
        {"mu", [&p](double v) { p.mu = v; }},
        {"e_soft", [&p](double v) { p.e_soft = v; }},
        {"g_tool", [&p](double v) { p.g_tool = v; }},
    };
}

FieldMap gripper_fields(GripperParams& g) {
    return {
        {"f_grpr_max", [&g](double v) { g.f_grpr_max = v; }},
        {"v_sqz", [&g](double v) { g.v_sqz = v; }},
        {"v_stch", [&g](double v) { g.v_stch = v; }},
        {"w_fgr", [&g](double v) { g.w_fgr = v; }},
        {"l_fgr", [&g](double v) { g.l_fgr = v; }},
        {"beta", [&g](double v) { g.beta = v; }},
    };
}

}  // namespace

ParamSet parse_params_lenient(const std::string& text) {
    ConfigFile cfg = ConfigFile::parse_string(text);
    ParamSet set;
    auto tool = tool_fields(set.tool);
    auto grip = gripper_fields(set.gripper);
    for (const auto& e : cfg.entries) {
        if (!e.section.empty()) continue;  // sections belong to other schemas
        if (auto it = tool.find(e.key); it != tool.end())
            it->second(parse_number(e));
        else if (auto jt = grip.find(e.key); jt != grip.end())
            jt->second(parse_number(e));
        else
            set.warnings.push_back("line " + std::to_string(e.line) + ": unknown key `" +
                                   e.key + "`");
    }
    return set;
}

ParamSet parse_params(const std::string& text) {
    ParamSet set = parse_params_lenient(text);
    ValidationReport tr = validate(set.tool);
    ValidationReport gr = validate(set.gripper);
    if (!tr.ok() || !gr.ok()) {
        std::string msg = "parameter validation failed: " + tr.summary();
        if (!gr.ok()) msg += (tr.ok() ? "parameter validation failed: " : "; ") + gr.summary();
        throw std::invalid_argument(msg);
    }
    return set;
}

ParamSet load_params(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string(), 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_params(buf.str());
}

namespace {

void emit(std::ostream& os, const char* key, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << key << " = " << buf << "\n";
}

}  // namespace

std::string params_to_string(const ToolParams& t, const GripperParams& g) {
    std::ostringstream os;
    os << "# screwing-tool parameter set\n";
    emit(os, "w_tool_max", t.w_tool_max);
    emit(os, "w_tool_min", t.w_tool_min);
    emit(os, "w_hldr", t.w_hldr);
    emit(os, "w_pad", t.w_pad);
    emit(os, "r_drv", t.r_drv);
    emit(os, "r_sprt", t.r_sprt);
    emit(os, "r_whl", t.r_whl);
    emit(os, "l_tool", t.l_tool);
    emit(os, "xi", t.xi);
    emit(os, "gamma", t.gamma);
    emit(os, "d_rtct", t.d_rtct);
    emit(os, "t_rtct", t.t_rtct);
    emit(os, "mu", t.mu);
    emit(os, "e_soft", t.e_soft);
    emit(os, "g_tool", t.g_tool);
    emit(os, "f_grpr_max", g.f_grpr_max);
    emit(os, "v_sqz", g.v_sqz);
    emit(os, "v_stch", g.v_stch);
    emit(os, "w_fgr", g.w_fgr);
    emit(os, "l_fgr", g.l_fgr);
    emit(os, "beta", g.beta);
    return os.str();
}

void save_params(const std::filesystem::path& path, const ToolParams& t,
                 const GripperParams& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << params_to_string(t, g);
}

}  // namespace screwtool
