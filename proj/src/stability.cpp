#include "screwtool/stability.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "screwtool/cam_profile.hpp"
#include "screwtool/kinematics.hpp"
#include "screwtool/report.hpp"

namespace screwtool {

std::vector<Eigen::Vector3d> contact_wrench_generators(const WrenchContact& c, int n_edges,
                                                       double tau_scale) {
    double nn = c.n.norm();
    if (!(nn > 1e-12)) throw std::invalid_argument("contact normal must be non-zero");
    if (!(c.force_limit > 0.0)) throw std::invalid_argument("force_limit must be > 0");
    if (!(tau_scale > 0.0)) throw std::invalid_argument("tau_scale must be > 0");
    Eigen::Vector2d n = c.n / nn;
    auto wrench = [&](const Eigen::Vector2d& f, double tau_n) {
        double tau = c.p.x() * f.y() - c.p.y() * f.x() + tau_n;
        return Eigen::Vector3d(f.x(), f.y(), tau / tau_scale);
    };
    std::vector<Eigen::Vector3d> out;
    if (!c.friction) {
        out.push_back(wrench(c.force_limit * n, 0.0));
        if (c.bilateral) out.push_back(wrench(-c.force_limit * n, 0.0));
        return out;
    }
    if (c.bilateral)
        throw std::invalid_argument("bilateral contacts must be frictionless");
    if (n_edges < 2) throw std::invalid_argument("n_edges must be >= 2 for friction");
    // boundary of the tangential-force / normal-moment ellipse at full normal load
    Eigen::Vector2d t(-n.y(), n.x());
    double f_t_max = c.friction->mu * c.force_limit;
    double tau_n_max = c.friction->e_soft * c.friction->mu * c.force_limit;
    out.reserve(n_edges);
    for (int k = 0; k < n_edges; ++k) {
        double phi = 2.0 * kPi * k / n_edges;
        Eigen::Vector2d f = c.force_limit * n + f_t_max * std::cos(phi) * t;
        out.push_back(wrench(f, tau_n_max * std::sin(phi)));
    }
    return out;
}

WrenchSet grasp_wrench_set(std::span<const WrenchContact> contacts, int n_edges,
                           double tau_scale) {
    if (contacts.size() < 2)
        throw std::invalid_argument("need at least two contacts for a wrench set");
    std::vector<std::vector<Eigen::Vector3d>> sets;
    size_t total = 1;
    for (const auto& c : contacts) {
        auto gens = contact_wrench_generators(c, n_edges, tau_scale);
        gens.insert(gens.begin(), Eigen::Vector3d::Zero());  // contact may be inactive
        total *= gens.size();
        if (total > 2'000'000)
            throw std::runtime_error("Minkowski sum too large; reduce n_edges or contacts");
        sets.push_back(std::move(gens));
    }
    WrenchSet ws;
    ws.tau_scale = tau_scale;
    ws.wrenches.reserve(total);
    std::vector<size_t> idx(sets.size(), 0);
    while (true) {
        Eigen::Vector3d sum = Eigen::Vector3d::Zero();
        for (size_t i = 0; i < sets.size(); ++i) sum += sets[i][idx[i]];
        ws.wrenches.push_back(sum);
        size_t d = 0;
        while (d < sets.size() && ++idx[d] == sets[d].size()) idx[d++] = 0;
        if (d == sets.size()) break;
    }
    ws.hull = convex_hull_3d(ws.wrenches);
    return ws;
}

double stability_index(const WrenchSet& ws) {
    if (!ws.hull.full_dimensional()) return 0.0;
    double q = std::numeric_limits<double>::infinity();
    for (const auto& f : ws.hull.facets) {
        if (f.offset <= 0.0) return 0.0;  // origin on or outside the boundary
        q = std::min(q, f.offset);
    }
    return std::isfinite(q) ? q : 0.0;
}

std::vector<WrenchContact> pad_contact_layout(double alpha, double r_sprt, double w_hldr,
                                              const ToolParams& p, double force_limit) {
    ToolParams q = p;
    q.r_sprt = r_sprt;
    q.w_hldr = w_hldr;
    double a = deg_to_rad(alpha);
    double hinge_x = 2.0 * p.r_drv * std::sin(a);  // hinge offset from ratchet center

    // cam contact and inward normal in the pad frame (x from hinge toward
    // the ratchet center); the tool frame flips x and adds the hinge offset
    Eigen::Vector2d cp = profile_point(alpha, q);
    Eigen::Vector2d cn = profile_inward_normal(alpha, q);
    auto to_tool_p = [&](const Eigen::Vector2d& v) {
        return Eigen::Vector2d(hinge_x - v.x(), v.y());
    };
    auto to_tool_n = [](const Eigen::Vector2d& v) {
        return Eigen::Vector2d(-v.x(), v.y());
    };

    std::vector<WrenchContact> cs;
    SoftFingerModel finger{p.mu, p.e_soft};
    double y_f = p.l_tool / 2.0;
    // c1, c2: finger patch bracketed at the pad outer-surface corners
    cs.push_back({{hinge_x + w_hldr, +y_f}, {-1.0, 0.0}, finger, force_limit, false});
    cs.push_back({{hinge_x + w_hldr, -y_f}, {-1.0, 0.0}, finger, force_limit, false});
    // c3, c4: supporting-wheel cam contacts (upper, lower)
    cs.push_back({to_tool_p(cp), to_tool_n(cn), std::nullopt, force_limit, false});
    cs.push_back({to_tool_p({cp.x(), -cp.y()}), to_tool_n({cn.x(), -cn.y()}),
                  std::nullopt, force_limit, false});
    // c5, c6: hinge pin as two orthogonal bilateral constraints
    cs.push_back({{hinge_x, 0.0}, {1.0, 0.0}, std::nullopt, force_limit, true});
    cs.push_back({{hinge_x, 0.0}, {0.0, 1.0}, std::nullopt, force_limit, true});
    return cs;
}

StabilityGrid sweep_stability(const ToolParams& p, std::span<const double> r_sprt_values,
                              std::span<const double> alpha_values, double w_hldr,
                              int n_edges) {
    if (r_sprt_values.empty() || alpha_values.empty())
        throw std::invalid_argument("stability sweep needs non-empty grids");
    StabilityGrid grid;
    double tau_scale = p.l_tool / 2.0;
    for (double rs : r_sprt_values) {
        for (double alpha : alpha_values) {
            StabilityCell cell{alpha, rs, 0.0, false};
            if (rs > 0.0 && rs < p.r_drv && alpha > 0.0 && alpha < 90.0) {
                auto contacts = pad_contact_layout(alpha, rs, w_hldr, p);
                WrenchSet ws = grasp_wrench_set(contacts, n_edges, tau_scale);
                cell.q = stability_index(ws);
                cell.feasible = true;
            }
            grid.cells.push_back(cell);
        }
    }
    grid.notes.push_back("torques normalized by l_tool/2 = " + csv_num(tau_scale) +
                         " mm before hull construction");
    // report the empirical Q-vs-r_sprt direction; it is not fixed upstream
    if (r_sprt_values.size() >= 2) {
        double mean_first = 0.0, mean_last = 0.0;
        int count = 0;
        for (const auto& c : grid.cells) {
            if (!c.feasible) continue;
            if (c.r_sprt == r_sprt_values.front()) {
                mean_first += c.q;
                ++count;
            }
            if (c.r_sprt == r_sprt_values.back()) mean_last += c.q;
        }
        if (count > 0) {
            const char* dir = mean_last > mean_first ? "increases" : "decreases";
            grid.notes.push_back(std::string("on this grid, Q ") + dir +
                                 " with r_sprt (empirical; contact force limits are "
                                 "normalized, so only trends are meaningful)");
        }
    }
    return grid;
}

void write_stability_csv(std::ostream& os, const StabilityGrid& grid) {
    os << "alpha_deg,r_sprt_mm,Q\n";
    for (const auto& c : grid.cells)
        os << csv_num(c.alpha) << ',' << csv_num(c.r_sprt) << ','
           << (c.feasible ? csv_num(c.q) : "nan") << '\n';
}

std::string contact_layout_json(std::span<const WrenchContact> contacts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : contacts) {
        nlohmann::json j;
        j["p_mm"] = {c.p.x(), c.p.y()};
        j["n"] = {c.n.x(), c.n.y()};
        if (c.friction)
            j["friction"] = {{"type", "soft_finger"},
                             {"mu", c.friction->mu},
                             {"e_soft_mm", c.friction->e_soft}};
        else
            j["friction"] = {{"type", "frictionless"}};
        j["force_limit_N"] = c.force_limit;
        j["bilateral"] = c.bilateral;
        arr.push_back(j);
    }
    return arr.dump(2);
}

}  // namespace screwtool
