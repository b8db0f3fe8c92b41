#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace screwtool {

class NoContactError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class HoleNotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Penalty-contact world for the tooltip-exchange simulation: a flat
/// pre-insertion surface with a chamfered hexagonal socket. The surface
/// model is axisymmetric (the hex opening is represented by its across-flats
/// circle plus the chamfer ring); the hexagonal shape enters through the
/// rotational alignment gate. Positions in mm, forces in N.
struct InsertionWorld {
    Eigen::Vector3d socket_pos = Eigen::Vector3d::Zero();
    Eigen::Matrix3d socket_rot = Eigen::Matrix3d::Identity();  // z = surface normal
    double hole_depth = 5.0;             // mm, floor below the surface
    double hex_across_flats = 6.35;      // mm
    double chamfer_depth = 1.0;          // mm
    double chamfer_half_angle = 45.0;    // deg, from the socket axis
    double surface_stiffness = 10.0;     // N/mm
    double socket_hex_angle = 0.0;       // deg, rotational phase of the socket

    void validate() const;  // throws std::invalid_argument

    double hole_radius() const { return hex_across_flats / 2.0; }
    double chamfer_width() const;
    double opening_radius() const { return hole_radius() + chamfer_width(); }

    /// Surface height (socket-frame z) under a point at lateral radius rho.
    /// `aligned` selects the floor (peg can enter the hex) or the rim ledge
    /// at the chamfer bottom (peg blocked).
    double surface_height(double rho, bool aligned) const;

    /// Penalty contact force on the tip, world frame. peg_angle is the peg's
    /// rotation about the socket axis; alignment is peg vs socket hex phase
    /// modulo 60 degrees within align_tol.
    Eigen::Vector3d contact_force(const Eigen::Vector3d& tip_world, double peg_angle,
                                  double align_tol) const;

    bool hex_aligned(double peg_angle, double align_tol) const;
    Eigen::Vector3d attack_direction() const { return -socket_rot.col(2); }
};

/// Smallest angular distance from the peg/socket phase difference to the
/// hexagonal (60 degree) lattice, degrees in [0, 30].
double hex_misalignment(double peg_angle, double socket_angle);

/// Rodrigues' rotation of v about unit axis by theta degrees.
Eigen::Vector3d rodrigues_rotate(double theta_deg, const Eigen::Vector3d& axis,
                                 const Eigen::Vector3d& v);

/// Discretized spiral-search parameters. v_att is the attack direction,
/// v_sprl the initial in-plane spiral direction; the two must be orthogonal
/// unit vectors.
struct SpiralPlan {
    Eigen::Vector3d v_att{0, 0, -1};
    Eigen::Vector3d v_sprl{1, 0, 0};
    double d_theta = 6.0;   // deg per step
    double d_r = 0.001;     // mm per step
    double theta0 = 0.0;    // deg
    double r0 = 0.05;       // mm

    void validate() const;  // throws std::invalid_argument
};

/// One spiral recurrence step from P_i (i = index of the current point):
/// P_{i+1} = r_{i+1} * rodrigues(theta_{i+1}, v_att) * v_sprl + P_i with
/// theta_k = theta0 + k d_theta, r_k = r0 + k d_r.
Eigen::Vector3d spiral_step(const Eigen::Vector3d& p_curr, const SpiralPlan& plan, int i);

/// P_0 .. P_n generated by the recurrence.
std::vector<Eigen::Vector3d> spiral_waypoints(const Eigen::Vector3d& p0,
                                              const SpiralPlan& plan, int n);

struct TrajectoryRow {
    int step;
    double t;
    Eigen::Vector3d pos;
    Eigen::Vector3d force;
    std::string stage;
};

struct TrajectoryLog {
    std::vector<TrajectoryRow> rows;
    void add(int step, double t, const Eigen::Vector3d& pos, const Eigen::Vector3d& f,
             const std::string& stage);
};

/// CSV with header `step,t_s,x_mm,y_mm,z_mm,Fx_N,Fy_N,Fz_N,stage`.
void write_trajectory_log_csv(std::ostream& os, const TrajectoryLog& log);

struct LinearSearchResult {
    Eigen::Vector3d contact_pos;
    double contact_force;  // axial component at the stop, N
    int steps;
};

/// Advances from `start` along v_att in fixed steps until the axial force
/// |v_att . (R_grpr F_sensor)| reaches f_threshold. R_grpr maps sensor-frame
/// readings to the world. Throws NoContactError when travel_budget runs out.
LinearSearchResult linear_search(const Eigen::Vector3d& start, const Eigen::Vector3d& v_att,
                                 double f_threshold, const InsertionWorld& world,
                                 const Eigen::Matrix3d& r_grpr, double peg_angle = 0.0,
                                 double step = 0.05, double travel_budget = 50.0,
                                 TrajectoryLog* log = nullptr);

struct SpiralSearchResult {
    Eigen::Vector3d pre_insertion_pos;
    int steps;
};

/// Steps the spiral from the linear-search stop while monitoring the contact
/// condition; returns the position where the axial force drops below
/// f_threshold (the tip fell over the chamfered opening). The lateral error
/// at return is bounded by the opening radius. Throws HoleNotFoundError when
/// the spiral exceeds search_bound.
SpiralSearchResult spiral_search(const Eigen::Vector3d& p0, const SpiralPlan& plan,
                                 const InsertionWorld& world, double f_threshold,
                                 double search_bound, double peg_angle = 0.0,
                                 double align_tol = 2.0, TrajectoryLog* log = nullptr);

/// Which discrete update the impedance loop uses. AsPrinted keeps the
/// published update verbatim (damping on P_{i-1}); StandardDamping uses the
/// conventional backward-difference velocity term instead.
enum class ImpedanceForm { AsPrinted, StandardDamping };

/// Discrete-time impedance controller state. m is in kg (converted
/// internally to N·s^2/mm), c in N·s/mm, k in N/mm, dt in s.
struct ImpedanceState {
    Eigen::Vector3d p_prev = Eigen::Vector3d::Zero();
    Eigen::Vector3d p_curr = Eigen::Vector3d::Zero();
    double m = 1.0;
    double c = 0.5;
    double k = 1.0;
    double dt = 0.01;
    Eigen::Vector3d f_insrt = Eigen::Vector3d::Zero();
    Eigen::Vector3d f_rsst = Eigen::Vector3d::Zero();
    ImpedanceForm form = ImpedanceForm::AsPrinted;

    void validate() const;  // throws std::invalid_argument
};

/// One step of the discrete impedance update, per axis.
Eigen::Vector3d impedance_step(const ImpedanceState& state);

struct InsertionResult {
    bool success = false;
    double final_depth = 0.0;         // mm below the surface
    double final_misalignment = 0.0;  // deg
    double rotation_applied = 0.0;    // deg of rotation search performed
    int steps = 0;
    std::string message;
};

/// Rotation search with impedance descent from a pre-insertion position
/// inside the chamfer capture region: the peg rotates about the attack axis
/// at omega until its hex phase aligns with the socket (mod 60 deg), drops
/// in, and descends until the axial resisting force balances f_insrt at the
/// socket floor. Returns a timeout result when step_budget is exhausted.
InsertionResult rotation_search_insert(const Eigen::Vector3d& p_pre,
                                       const InsertionWorld& world, ImpedanceState ctl,
                                       double f_insert, double omega, double peg_angle0,
                                       double align_tol = 2.0, int step_budget = 200000,
                                       TrajectoryLog* log = nullptr);

/// Full three-stage scenario: linear search, spiral search, rotation search
/// with impedance control.
struct InsertionScenario {
    InsertionWorld world;
    SpiralPlan spiral;  // v_att/v_sprl derived from the socket pose on load
    Eigen::Vector3d start{0, 0, 10};
    double peg_angle = 0.0;       // deg
    double f_threshold = 2.0;     // N
    double f_insert = 10.0;       // N
    double linear_step = 0.05;    // mm
    double travel_budget = 50.0;  // mm
    double search_bound = 10.0;   // mm
    double omega = 30.0;          // deg/s
    double align_tol = 2.0;       // deg
    double m = 1.0, c = 0.5, k = 1.0, dt = 0.01;
    int step_budget = 200000;

    static InsertionScenario load(const std::filesystem::path& path);
    static InsertionScenario parse(const std::string& text);
};

InsertionResult run_insertion_scenario(const InsertionScenario& s,
                                       TrajectoryLog* log = nullptr);

}  // namespace screwtool
