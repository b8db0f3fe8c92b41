#include "screwtool/insertion.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "screwtool/config_file.hpp"
#include "screwtool/kinematics.hpp"
#include "screwtool/report.hpp"

namespace screwtool {

namespace {

void require_unit(const Eigen::Vector3d& v, const char* name) {
    if (std::abs(v.norm() - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(name) + " must be a unit vector");
}

}  // namespace

void InsertionWorld::validate() const {
    if (!(hole_depth > 0.0 && hex_across_flats > 0.0 && chamfer_depth > 0.0 &&
          surface_stiffness > 0.0))
        throw std::invalid_argument("world geometry values must be > 0");
    if (!(chamfer_half_angle > 0.0 && chamfer_half_angle < 90.0))
        throw std::invalid_argument("chamfer_half_angle must be in (0, 90) deg");
    if (!(chamfer_depth < hole_depth))
        throw std::invalid_argument("chamfer_depth must be < hole_depth");
}

double InsertionWorld::chamfer_width() const {
    return chamfer_depth * std::tan(deg_to_rad(chamfer_half_angle));
}

double hex_misalignment(double peg_angle, double socket_angle) {
    double d = std::fmod(peg_angle - socket_angle, 60.0);
    if (d < 0.0) d += 60.0;
    return std::min(d, 60.0 - d);
}

bool InsertionWorld::hex_aligned(double peg_angle, double align_tol) const {
    return hex_misalignment(peg_angle, socket_hex_angle) <= align_tol;
}

double InsertionWorld::surface_height(double rho, bool aligned) const {
    double r_open = opening_radius();
    double r_hole = hole_radius();
    if (rho >= r_open) return 0.0;
    if (rho >= r_hole)
        return -(r_open - rho) / std::tan(deg_to_rad(chamfer_half_angle));
    return aligned ? -hole_depth : -chamfer_depth;  // floor vs blocked rim
}

Eigen::Vector3d InsertionWorld::contact_force(const Eigen::Vector3d& tip_world,
                                              double peg_angle, double align_tol) const {
    Eigen::Vector3d local = socket_rot.transpose() * (tip_world - socket_pos);
    double rho = std::hypot(local.x(), local.y());
    bool aligned = hex_aligned(peg_angle, align_tol);
    double zs = surface_height(rho, aligned);
    double pen = zs - local.z();
    if (pen <= 0.0) return Eigen::Vector3d::Zero();
    Eigen::Vector3d n_local = Eigen::Vector3d::UnitZ();
    if (rho < opening_radius() && rho >= hole_radius()) {
        // chamfer cone: normal points up and toward the axis, centering the tip
        double cot = 1.0 / std::tan(deg_to_rad(chamfer_half_angle));
        Eigen::Vector2d rho_hat(local.x() / rho, local.y() / rho);
        n_local = Eigen::Vector3d(-cot * rho_hat.x(), -cot * rho_hat.y(), 1.0).normalized();
    }
    return socket_rot * (surface_stiffness * pen * n_local);
}

Eigen::Vector3d rodrigues_rotate(double theta_deg, const Eigen::Vector3d& axis,
                                 const Eigen::Vector3d& v) {
    double nn = axis.norm();
    if (!(nn > 1e-12)) throw std::invalid_argument("rotation axis must be non-zero");
    Eigen::Vector3d k = axis / nn;
    double th = deg_to_rad(theta_deg);
    return v * std::cos(th) + k.cross(v) * std::sin(th) +
           k * (k.dot(v)) * (1.0 - std::cos(th));
}

void SpiralPlan::validate() const {
    require_unit(v_att, "v_att");
    require_unit(v_sprl, "v_sprl");
    if (std::abs(v_att.dot(v_sprl)) > 1e-9)
        throw std::invalid_argument("v_att and v_sprl must be orthogonal");
    if (!(d_theta > 0.0 && d_r > 0.0))
        throw std::invalid_argument("spiral step sizes must be > 0");
}

Eigen::Vector3d spiral_step(const Eigen::Vector3d& p_curr, const SpiralPlan& plan, int i) {
    double theta = plan.theta0 + (i + 1) * plan.d_theta;
    double r = plan.r0 + (i + 1) * plan.d_r;
    return r * rodrigues_rotate(theta, plan.v_att, plan.v_sprl) + p_curr;
}

std::vector<Eigen::Vector3d> spiral_waypoints(const Eigen::Vector3d& p0,
                                              const SpiralPlan& plan, int n) {
    std::vector<Eigen::Vector3d> out;
    out.reserve(n + 1);
    out.push_back(p0);
    for (int i = 0; i < n; ++i) out.push_back(spiral_step(out.back(), plan, i));
    return out;
}

void TrajectoryLog::add(int step, double t, const Eigen::Vector3d& pos,
                        const Eigen::Vector3d& f, const std::string& stage) {
    rows.push_back({step, t, pos, f, stage});
}

void write_trajectory_log_csv(std::ostream& os, const TrajectoryLog& log) {
    os << "step,t_s,x_mm,y_mm,z_mm,Fx_N,Fy_N,Fz_N,stage\n";
    for (const auto& r : log.rows)
        os << r.step << ',' << csv_num(r.t) << ',' << csv_num(r.pos.x()) << ','
           << csv_num(r.pos.y()) << ',' << csv_num(r.pos.z()) << ',' << csv_num(r.force.x())
           << ',' << csv_num(r.force.y()) << ',' << csv_num(r.force.z()) << ',' << r.stage
           << '\n';
}

namespace {

// Eq-of-motion contact test: |v_att . (R_grpr F_sensor)|, with the simulated
// sensor reading being the world force expressed in the hand frame.
double axial_force(const Eigen::Vector3d& v_att, const Eigen::Matrix3d& r_grpr,
                   const Eigen::Vector3d& f_world) {
    Eigen::Vector3d f_sensor = r_grpr.transpose() * f_world;
    return std::abs(v_att.dot(r_grpr * f_sensor));
}

}  // namespace

LinearSearchResult linear_search(const Eigen::Vector3d& start, const Eigen::Vector3d& v_att,
                                 double f_threshold, const InsertionWorld& world,
                                 const Eigen::Matrix3d& r_grpr, double peg_angle,
                                 double step, double travel_budget, TrajectoryLog* log) {
    require_unit(v_att, "v_att");
    if (!(f_threshold > 0.0)) throw std::invalid_argument("f_threshold must be > 0");
    if (!(step > 0.0 && travel_budget > 0.0))
        throw std::invalid_argument("step and travel_budget must be > 0");
    Eigen::Vector3d pos = start;
    int steps = 0;
    double traveled = 0.0;
    while (true) {
        Eigen::Vector3d f = world.contact_force(pos, peg_angle, 0.0);
        if (log) log->add(steps, 0.0, pos, f, "linear");
        double axial = axial_force(v_att, r_grpr, f);
        if (axial >= f_threshold) return {pos, axial, steps};
        if (traveled >= travel_budget)
            throw NoContactError("linear search exhausted its travel budget without contact");
        pos += step * v_att;
        traveled += step;
        ++steps;
    }
}

SpiralSearchResult spiral_search(const Eigen::Vector3d& p0, const SpiralPlan& plan,
                                 const InsertionWorld& world, double f_threshold,
                                 double search_bound, double peg_angle, double align_tol,
                                 TrajectoryLog* log) {
    plan.validate();
    if (!(f_threshold > 0.0 && search_bound > 0.0))
        throw std::invalid_argument("f_threshold and search_bound must be > 0");

    auto local_of = [&](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(world.socket_rot.transpose() * (p - world.socket_pos));
    };
    // the linear descent may already have dropped into the opening
    Eigen::Vector3d l0 = local_of(p0);
    if (std::hypot(l0.x(), l0.y()) < world.opening_radius() && l0.z() < -1e-9)
        return {p0, 0};

    Eigen::Vector3d pos = p0;
    int i = 0;
    while (true) {
        pos = spiral_step(pos, plan, i);
        ++i;
        Eigen::Vector3d f = world.contact_force(pos, peg_angle, align_tol);
        if (log) log->add(i, 0.0, pos, f, "spiral");
        double axial = std::abs(plan.v_att.dot(f));
        if (axial < f_threshold) return {pos, i};  // contact condition violated: captured
        Eigen::Vector3d lat = (pos - p0) - (pos - p0).dot(plan.v_att) * plan.v_att;
        if (lat.norm() > search_bound)
            throw HoleNotFoundError("spiral radius exceeded the search bound");
        if (i > 10'000'000) throw HoleNotFoundError("spiral step budget exhausted");
    }
}

void ImpedanceState::validate() const {
    if (!(m > 0.0 && c > 0.0 && k > 0.0 && dt > 0.0))
        throw std::invalid_argument("impedance gains m, c, k, dt must be > 0");
}

Eigen::Vector3d impedance_step(const ImpedanceState& s) {
    s.validate();
    double m_eff = s.m * 1e-3;  // kg -> N·s^2/mm
    double inertia = m_eff / (s.dt * s.dt);
    double damping = s.c / s.dt;
    Eigen::Vector3d f_total = s.f_insrt + s.f_rsst;
    const Eigen::Vector3d& damped =
        s.form == ImpedanceForm::AsPrinted ? s.p_prev : s.p_curr;
    Eigen::Vector3d num = f_total + inertia * (2.0 * s.p_curr - s.p_prev) +
                          damping * damped + s.k * s.p_curr;
    return num / (inertia + damping + s.k);
}

InsertionResult rotation_search_insert(const Eigen::Vector3d& p_pre,
                                       const InsertionWorld& world, ImpedanceState ctl,
                                       double f_insert, double omega, double peg_angle0,
                                       double align_tol, int step_budget,
                                       TrajectoryLog* log) {
    world.validate();
    ctl.validate();
    if (!(f_insert > 0.0)) throw std::invalid_argument("f_insert must be > 0");
    if (!(omega >= 0.0)) throw std::invalid_argument("omega must be >= 0");
    if (!(align_tol > 0.0)) throw std::invalid_argument("align_tol must be > 0");

    auto local_of = [&](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(world.socket_rot.transpose() * (p - world.socket_pos));
    };
    Eigen::Vector3d l_pre = local_of(p_pre);
    if (std::hypot(l_pre.x(), l_pre.y()) > world.opening_radius() + 1e-6)
        throw std::invalid_argument("pre-insertion position outside the capture region");

    Eigen::Vector3d v_att = world.attack_direction();
    ctl.p_prev = ctl.p_curr = p_pre;
    ctl.f_insrt = f_insert * v_att;
    double phi = peg_angle0;
    bool engaged = false;
    InsertionResult res;
    for (int step = 0; step < step_budget; ++step) {
        Eigen::Vector3d f_rsst = world.contact_force(ctl.p_curr, phi, align_tol);
        ctl.f_rsst = f_rsst;
        Eigen::Vector3d next = impedance_step(ctl);
        ctl.p_prev = ctl.p_curr;
        ctl.p_curr = next;
        if (log) log->add(step, step * ctl.dt, ctl.p_curr, f_rsst, "insertion");

        Eigen::Vector3d local = local_of(ctl.p_curr);
        double rho = std::hypot(local.x(), local.y());
        bool aligned = world.hex_aligned(phi, align_tol);
        if (!engaged) {
            // rotation search runs only while the hex phases disagree; once
            // aligned and sunk below the rim, the tip is engaged for good
            if (aligned && rho < world.hole_radius() &&
                local.z() < -0.25 * world.chamfer_depth)
                engaged = true;
            else if (!aligned)
                phi += omega * ctl.dt;
        }
        double reaction = (-f_rsst).dot(v_att);
        bool balanced = std::abs(reaction - f_insert) <= 0.01 * f_insert;
        if (engaged && aligned && local.z() <= -world.hole_depth && balanced) {
            res.success = true;
            res.final_depth = -local.z();
            res.final_misalignment = hex_misalignment(phi, world.socket_hex_angle);
            res.rotation_applied = phi - peg_angle0;
            res.steps = step + 1;
            res.message = "inserted to the socket floor with balanced axial force";
            return res;
        }
    }
    Eigen::Vector3d local = local_of(ctl.p_curr);
    res.success = false;
    res.final_depth = -local.z();
    res.final_misalignment = hex_misalignment(phi, world.socket_hex_angle);
    res.rotation_applied = phi - peg_angle0;
    res.steps = step_budget;
    res.message = "step budget exhausted before insertion completed";
    return res;
}

namespace {

double get_or(const ConfigFile& cfg, const char* key, double fallback) {
    for (const auto& e : cfg.entries)
        if (e.section.empty() && e.key == key) return parse_number(e);
    return fallback;
}

}  // namespace

InsertionScenario InsertionScenario::parse(const std::string& text) {
    ConfigFile cfg = ConfigFile::parse_string(text);
    InsertionScenario s;
    static const char* known[] = {
        "socket_x", "socket_y", "socket_z", "hole_depth", "hex_across_flats",
        "chamfer_depth", "chamfer_half_angle", "surface_stiffness", "socket_hex_angle",
        "start_x", "start_y", "start_z", "peg_angle", "f_threshold", "f_insert",
        "linear_step", "travel_budget", "search_bound", "omega", "align_tol",
        "m", "c", "k", "dt", "step_budget", "d_theta", "d_r", "theta0", "r0"};
    for (const auto& e : cfg.entries) {
        if (!e.section.empty())
            throw ConfigError("unexpected section `" + e.section + "`", e.line);
        bool ok = false;
        for (const char* k : known) ok = ok || e.key == k;
        if (!ok) throw ConfigError("unknown scenario key `" + e.key + "`", e.line);
    }
    s.world.socket_pos = {get_or(cfg, "socket_x", 0.0), get_or(cfg, "socket_y", 0.0),
                          get_or(cfg, "socket_z", 0.0)};
    s.world.hole_depth = get_or(cfg, "hole_depth", s.world.hole_depth);
    s.world.hex_across_flats = get_or(cfg, "hex_across_flats", s.world.hex_across_flats);
    s.world.chamfer_depth = get_or(cfg, "chamfer_depth", s.world.chamfer_depth);
    s.world.chamfer_half_angle =
        get_or(cfg, "chamfer_half_angle", s.world.chamfer_half_angle);
    s.world.surface_stiffness =
        get_or(cfg, "surface_stiffness", s.world.surface_stiffness);
    s.world.socket_hex_angle = get_or(cfg, "socket_hex_angle", s.world.socket_hex_angle);
    s.start = {get_or(cfg, "start_x", s.start.x()), get_or(cfg, "start_y", s.start.y()),
               get_or(cfg, "start_z", s.start.z())};
    s.peg_angle = get_or(cfg, "peg_angle", s.peg_angle);
    s.f_threshold = get_or(cfg, "f_threshold", s.f_threshold);
    s.f_insert = get_or(cfg, "f_insert", s.f_insert);
    s.linear_step = get_or(cfg, "linear_step", s.linear_step);
    s.travel_budget = get_or(cfg, "travel_budget", s.travel_budget);
    s.search_bound = get_or(cfg, "search_bound", s.search_bound);
    s.omega = get_or(cfg, "omega", s.omega);
    s.align_tol = get_or(cfg, "align_tol", s.align_tol);
    s.m = get_or(cfg, "m", s.m);
    s.c = get_or(cfg, "c", s.c);
    s.k = get_or(cfg, "k", s.k);
    s.dt = get_or(cfg, "dt", s.dt);
    s.step_budget = static_cast<int>(get_or(cfg, "step_budget", s.step_budget));
    s.spiral.d_theta = get_or(cfg, "d_theta", s.spiral.d_theta);
    s.spiral.d_r = get_or(cfg, "d_r", s.spiral.d_r);
    s.spiral.theta0 = get_or(cfg, "theta0", s.spiral.theta0);
    s.spiral.r0 = get_or(cfg, "r0", s.spiral.r0);
    s.world.validate();
    return s;
}

InsertionScenario InsertionScenario::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string(), 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

InsertionResult run_insertion_scenario(const InsertionScenario& s, TrajectoryLog* log) {
    s.world.validate();
    SpiralPlan plan = s.spiral;
    plan.v_att = s.world.attack_direction();
    plan.v_sprl = s.world.socket_rot.col(0);
    plan.validate();

    LinearSearchResult lin =
        linear_search(s.start, plan.v_att, s.f_threshold, s.world,
                      Eigen::Matrix3d::Identity(), s.peg_angle, s.linear_step,
                      s.travel_budget, log);
    SpiralSearchResult sp = spiral_search(lin.contact_pos, plan, s.world, s.f_threshold,
                                          s.search_bound, s.peg_angle, s.align_tol, log);
    ImpedanceState ctl;
    ctl.m = s.m;
    ctl.c = s.c;
    ctl.k = s.k;
    ctl.dt = s.dt;
    return rotation_search_insert(sp.pre_insertion_pos, s.world, ctl, s.f_insert, s.omega,
                                  s.peg_angle, s.align_tol, s.step_budget, log);
}

}  // namespace screwtool
