#include "screwtool/spring_opt.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "screwtool/config_file.hpp"
#include "screwtool/kinematics.hpp"
#include "screwtool/quasistatics.hpp"

namespace screwtool {

namespace {

double integrand(double alpha, double xi, const TorqueModel& model, const ToolParams& p) {
    ToolParams q = p;
    q.xi = xi;
    double t_sqz =
        torque_squeeze(alpha, model.f_grpr, model.d_fgr, q, model.spring_multiplier).torque;
    double t_stch = torque_stretch(alpha, model.d_fgr, q, model.spring_multiplier);
    return std::abs(t_sqz * t_stch);
}

}  // namespace

double spring_objective(double xi, const TorqueModel& model, const ToolParams& p,
                        double step_deg) {
    if (!(step_deg > 0.0)) throw std::invalid_argument("step_deg must be > 0");
    if (xi < 0.0) throw std::invalid_argument("xi must be >= 0");
    double a_lo = alpha_min(p);
    double a_hi = alpha_init(p);
    if (!(a_lo < a_hi)) throw std::invalid_argument("empty alpha stroke");
    // composite trapezoid; the last partial interval keeps the exact bounds
    int n = static_cast<int>(std::ceil((a_hi - a_lo) / step_deg));
    double sum = 0.0;
    double prev_a = a_lo;
    double prev_f = integrand(a_lo, xi, model, p);
    for (int i = 1; i <= n; ++i) {
        double a = std::min(a_lo + i * step_deg, a_hi);
        double f = integrand(a, xi, model, p);
        sum += 0.5 * (prev_f + f) * (a - prev_a);
        prev_a = a;
        prev_f = f;
    }
    return sum;
}

XiSearchRange default_xi_search_range(const TorqueModel& model, const ToolParams& p) {
    double a_lo = alpha_min(p);
    double stroke = alpha_init(p) - a_lo;
    double xi_stall = model.f_grpr * p.r_drv * std::cos(deg_to_rad(a_lo)) /
                      (model.spring_multiplier * (p.gamma + stroke));
    if (!(xi_stall > 0.5)) xi_stall = 0.5 + 1.0;  // stalled even at tiny xi (e.g. F = 0)
    return {0.5, xi_stall};
}

XiOptimum optimize_xi(const TorqueModel& model, const ToolParams& p,
                      const XiSearchRange& range, double tol, double coarse_step) {
    if (!(range.hi > range.lo)) throw std::invalid_argument("empty search range");
    if (!(tol > 0.0 && coarse_step > 0.0))
        throw std::invalid_argument("tol and coarse_step must be > 0");
    auto f = [&](double xi) { return spring_objective(xi, model, p); };

    // coarse grid to bracket the maximizer
    int n = std::max(2, static_cast<int>(std::ceil((range.hi - range.lo) / coarse_step)));
    double best_x = range.lo, best_v = -std::numeric_limits<double>::infinity();
    double min_v = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        double x = range.lo + (range.hi - range.lo) * i / n;
        double v = f(x);
        min_v = std::min(min_v, v);
        if (v > best_v) {
            best_v = v;
            best_x = x;
        }
    }
    double grid_step = (range.hi - range.lo) / n;
    double lo = std::max(range.lo, best_x - grid_step);
    double hi = std::min(range.hi, best_x + grid_step);

    // golden-section refinement (derivative-free: |.| makes the objective kinked)
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    XiOptimum out;
    out.xi_star = 0.5 * (a + b);
    out.objective = f(out.xi_star);
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.at_boundary = out.xi_star - range.lo < 2.0 * tol + grid_step ||
                      range.hi - out.xi_star < 2.0 * tol + grid_step;
    if (best_v > 0.0 && (best_v - min_v) <= 1e-12 * std::abs(best_v)) {
        out.note = "objective is flat over the search range; optimum degenerate";
        out.at_boundary = true;
    }
    ToolParams q = p;
    q.xi = out.xi_star;
    for (double alpha : {alpha_min(p), 0.5 * (alpha_min(p) + alpha_init(p))}) {
        if (torque_squeeze(alpha, model.f_grpr, model.d_fgr, q, model.spring_multiplier)
                .stalled)
            out.stall_regime = true;
    }
    if (out.stall_regime && out.note.empty())
        out.note = "squeeze output stalls at xi_star; non-physical operating point";
    if (out.at_boundary && out.note.empty())
        out.note = "optimum pinned at the search-range boundary";
    return out;
}

XiOptimum optimize_xi(const TorqueModel& model, const ToolParams& p) {
    return optimize_xi(model, p, default_xi_search_range(model, p));
}

SpringCatalogEntry select_from_catalog(double xi_star,
                                       std::span<const SpringCatalogEntry> catalog,
                                       double max_diameter) {
    if (catalog.empty()) throw std::invalid_argument("empty spring catalog");
    const SpringCatalogEntry* best = nullptr;
    for (const auto& e : catalog) {
        if (e.max_outer_diameter > max_diameter) continue;
        if (!best) {
            best = &e;
            continue;
        }
        double d_new = std::abs(e.xi - xi_star);
        double d_old = std::abs(best->xi - xi_star);
        if (d_new < d_old || (d_new == d_old && e.xi < best->xi)) best = &e;
    }
    if (!best)
        throw std::runtime_error("no catalog spring fits the diameter bound of " +
                                 std::to_string(max_diameter) + " mm");
    return *best;
}

std::vector<SpringCatalogEntry> parse_spring_catalog(const std::string& text) {
    ConfigFile cfg = ConfigFile::parse_string(text);
    int blocks = cfg.section_count("spring");
    std::vector<SpringCatalogEntry> out;
    for (int i = 0; i < blocks; ++i) {
        SpringCatalogEntry e;
        bool has_xi = false;
        for (const ConfigEntry* entry : cfg.section_entries("spring", i)) {
            if (entry->key == "xi") {
                e.xi = parse_number(*entry);
                has_xi = true;
            } else if (entry->key == "max_outer_diameter") {
                e.max_outer_diameter = parse_number(*entry);
            } else if (entry->key == "label") {
                e.label = entry->value;
            } else {
                throw ConfigError("unknown spring key `" + entry->key + "`", entry->line);
            }
        }
        if (!has_xi) throw ConfigError("[spring] block " + std::to_string(i) + " lacks xi", 0);
        if (!(e.xi > 0.0)) throw ConfigError("spring xi must be > 0", 0);
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<SpringCatalogEntry> load_spring_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string(), 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spring_catalog(buf.str());
}

std::vector<SpringCatalogEntry> builtin_spring_catalog() {
    return {
        {2.40, 8.0, "wire-form small"},
        {6.00, 10.0, "prototype spring"},
        {9.80, 14.0, "mid coil"},
        {19.50, 26.0, "heavy coil (oversize)"},
        {28.00, 34.0, "heavy coil XL (oversize)"},
    };
}

}  // namespace screwtool
