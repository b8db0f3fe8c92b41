#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "screwtool/cam_profile.hpp"
#include "screwtool/insertion.hpp"
#include "screwtool/kinematics.hpp"
#include "screwtool/params.hpp"
#include "screwtool/quasistatics.hpp"
#include "screwtool/spring_opt.hpp"
#include "screwtool/stability.hpp"

namespace py = pybind11;
using namespace screwtool;

PYBIND11_MODULE(_core, m) {
    m.doc() = "quasi-static design analyses for a gripper-driven screwing tool";

    // ---- parameters ----
    py::class_<ToolParams>(m, "ToolParams")
        .def(py::init<>())
        .def_readwrite("w_tool_max", &ToolParams::w_tool_max)
        .def_readwrite("w_tool_min", &ToolParams::w_tool_min)
        .def_readwrite("w_hldr", &ToolParams::w_hldr)
        .def_readwrite("w_pad", &ToolParams::w_pad)
        .def_readwrite("r_drv", &ToolParams::r_drv)
        .def_readwrite("r_sprt", &ToolParams::r_sprt)
        .def_readwrite("r_whl", &ToolParams::r_whl)
        .def_readwrite("l_tool", &ToolParams::l_tool)
        .def_readwrite("xi", &ToolParams::xi)
        .def_readwrite("gamma", &ToolParams::gamma)
        .def_readwrite("d_rtct", &ToolParams::d_rtct)
        .def_readwrite("t_rtct", &ToolParams::t_rtct)
        .def_readwrite("mu", &ToolParams::mu)
        .def_readwrite("e_soft", &ToolParams::e_soft)
        .def_readwrite("g_tool", &ToolParams::g_tool);

    py::class_<GripperParams>(m, "GripperParams")
        .def(py::init<>())
        .def_readwrite("f_grpr_max", &GripperParams::f_grpr_max)
        .def_readwrite("v_sqz", &GripperParams::v_sqz)
        .def_readwrite("v_stch", &GripperParams::v_stch)
        .def_readwrite("w_fgr", &GripperParams::w_fgr)
        .def_readwrite("l_fgr", &GripperParams::l_fgr)
        .def_readwrite("beta", &GripperParams::beta);

    py::class_<ValidationIssue>(m, "ValidationIssue")
        .def_readonly("field", &ValidationIssue::field)
        .def_readonly("message", &ValidationIssue::message);
    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("issues", &ValidationReport::issues)
        .def("ok", &ValidationReport::ok)
        .def("summary", &ValidationReport::summary);
    m.def("validate_tool", [](const ToolParams& p) { return validate(p); });
    m.def("validate_gripper", [](const GripperParams& g) { return validate(g); });

    py::class_<ParamSet>(m, "ParamSet")
        .def_readwrite("tool", &ParamSet::tool)
        .def_readwrite("gripper", &ParamSet::gripper)
        .def_readonly("warnings", &ParamSet::warnings);
    m.def("load_params", &load_params, py::arg("path"));
    m.def("parse_params", &parse_params, py::arg("text"));
    m.def("save_params", &save_params, py::arg("path"), py::arg("tool"),
          py::arg("gripper"));

    // ---- kinematics ----
    py::enum_<Phase>(m, "Phase")
        .value("Squeezing", Phase::Squeezing)
        .value("Stretching", Phase::Stretching)
        .value("Free", Phase::Free);
    py::enum_<TravelConvention>(m, "TravelConvention")
        .value("WheelOffset", TravelConvention::WheelOffset)
        .value("HolderOffset", TravelConvention::HolderOffset);
    py::enum_<PadHeightState>(m, "PadHeightState")
        .value("Closed", PadHeightState::Closed)
        .value("Open", PadHeightState::Open);
    py::class_<AngleSample>(m, "AngleSample")
        .def_readonly("delta_out", &AngleSample::delta_out)
        .def_readonly("phase", &AngleSample::phase)
        .def_readonly("saturated", &AngleSample::saturated);
    py::class_<CycleSample>(m, "CycleSample")
        .def_readonly("t", &CycleSample::t)
        .def_readonly("delta_out", &CycleSample::delta_out)
        .def_readonly("phase", &CycleSample::phase);

    m.def("width_to_alpha", &width_to_alpha, py::arg("w_tool"), py::arg("params"));
    m.def("alpha_to_width", &alpha_to_width, py::arg("alpha"), py::arg("params"));
    m.def("alpha_init", &alpha_init);
    m.def("alpha_min", &alpha_min);
    m.def("max_rotational_travel", &max_rotational_travel, py::arg("params"),
          py::arg("convention") = TravelConvention::WheelOffset);
    m.def("min_pad_height", &min_pad_height, py::arg("params"),
          py::arg("state") = PadHeightState::Closed);
    m.def("output_angle_squeeze", &output_angle_squeeze, py::arg("t"), py::arg("v_sqz"),
          py::arg("params"));
    m.def("output_angle_stretch", &output_angle_stretch, py::arg("t"), py::arg("v_stch"),
          py::arg("alpha_start"), py::arg("params"));
    m.def("output_angle_cycle", &output_angle_cycle, py::arg("t"), py::arg("v_sqz"),
          py::arg("v_stch"), py::arg("params"));
    m.def("time_to_rotate", &time_to_rotate, py::arg("delta_target"), py::arg("v_sqz"),
          py::arg("v_stch"), py::arg("params"));

    // ---- quasi-statics ----
    py::enum_<SpringSign>(m, "SpringSign")
        .value("Deformation", SpringSign::Deformation)
        .value("AsPrinted", SpringSign::AsPrinted);
    py::enum_<FingerSpanMode>(m, "FingerSpanMode")
        .value("AsPrinted", FingerSpanMode::AsPrinted)
        .value("Projected", FingerSpanMode::Projected);
    py::enum_<RatchetMode>(m, "RatchetMode")
        .value("DoubleRatchet", RatchetMode::DoubleRatchet)
        .value("SingleRatchet", RatchetMode::SingleRatchet);
    py::class_<HoldCondition>(m, "HoldCondition")
        .def_readonly("d_com", &HoldCondition::d_com)
        .def_readonly("d_com_limit", &HoldCondition::d_com_limit)
        .def_readonly("holds", &HoldCondition::holds);
    py::class_<TorqueResult>(m, "TorqueResult")
        .def_readonly("torque", &TorqueResult::torque)
        .def_readonly("stalled", &TorqueResult::stalled);
    py::class_<ScrewTorqueEntry>(m, "ScrewTorqueEntry")
        .def_property_readonly("size",
                               [](const ScrewTorqueEntry& e) { return std::string(e.size); })
        .def_property_readonly(
            "property_class",
            [](const ScrewTorqueEntry& e) { return std::string(e.property_class); })
        .def_readonly("tightening_torque_Nm", &ScrewTorqueEntry::tightening_torque_Nm);

    m.def("spring_torque", &spring_torque, py::arg("alpha"), py::arg("params"),
          py::arg("sign") = SpringSign::Deformation);
    m.def("grip_pressure", &grip_pressure, py::arg("alpha"), py::arg("params"));
    m.def("hold_condition", &hold_condition, py::arg("d_com"), py::arg("p_grpr"),
          py::arg("params"));
    m.def("d_finger",
          py::overload_cast<double, double, double, FingerSpanMode>(&d_finger),
          py::arg("w_fgr"), py::arg("l_fgr"), py::arg("beta"),
          py::arg("mode") = FingerSpanMode::AsPrinted);
    m.def("torque_squeeze", &torque_squeeze, py::arg("alpha"), py::arg("f_grpr"),
          py::arg("d_fgr"), py::arg("params"), py::arg("spring_multiplier") = 1);
    m.def("torque_stretch", &torque_stretch, py::arg("alpha"), py::arg("d_fgr"),
          py::arg("params"), py::arg("spring_multiplier") = 1);
    m.def("screw_torque_table", []() {
        return std::vector<ScrewTorqueEntry>(screw_torque_table().begin(),
                                             screw_torque_table().end());
    });
    m.def("fastenable_screws", &fastenable_screws, py::arg("t_sqz_max"),
          py::arg("t_stch_max"), py::arg("mode"));
    m.def("max_fastenable", [](const std::vector<ScrewTorqueEntry>& cells) {
        return max_fastenable(cells);
    });

    // ---- spring optimization ----
    py::class_<TorqueModel>(m, "TorqueModel")
        .def(py::init<>())
        .def_readwrite("f_grpr", &TorqueModel::f_grpr)
        .def_readwrite("d_fgr", &TorqueModel::d_fgr)
        .def_readwrite("spring_multiplier", &TorqueModel::spring_multiplier);
    py::class_<XiSearchRange>(m, "XiSearchRange")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readwrite("lo", &XiSearchRange::lo)
        .def_readwrite("hi", &XiSearchRange::hi);
    py::class_<XiOptimum>(m, "XiOptimum")
        .def_readonly("xi_star", &XiOptimum::xi_star)
        .def_readonly("objective", &XiOptimum::objective)
        .def_readonly("bracket_lo", &XiOptimum::bracket_lo)
        .def_readonly("bracket_hi", &XiOptimum::bracket_hi)
        .def_readonly("at_boundary", &XiOptimum::at_boundary)
        .def_readonly("stall_regime", &XiOptimum::stall_regime)
        .def_readonly("note", &XiOptimum::note);
    py::class_<SpringCatalogEntry>(m, "SpringCatalogEntry")
        .def(py::init<>())
        .def_readwrite("xi", &SpringCatalogEntry::xi)
        .def_readwrite("max_outer_diameter", &SpringCatalogEntry::max_outer_diameter)
        .def_readwrite("label", &SpringCatalogEntry::label);

    m.def("spring_objective", &spring_objective, py::arg("xi"), py::arg("model"),
          py::arg("params"), py::arg("step_deg") = 0.1);
    m.def("default_xi_search_range", &default_xi_search_range, py::arg("model"),
          py::arg("params"));
    m.def("optimize_xi",
          py::overload_cast<const TorqueModel&, const ToolParams&>(&optimize_xi),
          py::arg("model"), py::arg("params"));
    m.def("optimize_xi",
          py::overload_cast<const TorqueModel&, const ToolParams&, const XiSearchRange&,
                            double, double>(&optimize_xi),
          py::arg("model"), py::arg("params"), py::arg("range"), py::arg("tol") = 0.01,
          py::arg("coarse_step") = 0.5);
    m.def("select_from_catalog",
          [](double xi_star, const std::vector<SpringCatalogEntry>& catalog,
             double max_diameter) {
              return select_from_catalog(xi_star, catalog, max_diameter);
          });
    m.def("load_spring_catalog", &load_spring_catalog, py::arg("path"));
    m.def("builtin_spring_catalog", &builtin_spring_catalog);

    // ---- cam profile ----
    py::class_<CamPoint>(m, "CamPoint")
        .def_readonly("alpha", &CamPoint::alpha)
        .def_readonly("x_whl", &CamPoint::x_whl)
        .def_readonly("y_whl", &CamPoint::y_whl)
        .def_readonly("x_sprt", &CamPoint::x_sprt)
        .def_readonly("y_sprt", &CamPoint::y_sprt);
    py::class_<CamProfile>(m, "CamProfile").def_readonly("points", &CamProfile::points);
    m.def("wheel_center", &wheel_center, py::arg("alpha"), py::arg("params"));
    m.def("profile_point", &profile_point, py::arg("alpha"), py::arg("params"));
    m.def("profile_inward_normal", &profile_inward_normal, py::arg("alpha"),
          py::arg("params"));
    m.def("profile_normal_angle", &profile_normal_angle, py::arg("alpha"),
          py::arg("params"));
    m.def("synthesize_cam_profile", &synthesize_cam_profile, py::arg("params"),
          py::arg("n_samples"));

    // ---- stability ----
    py::class_<SoftFingerModel>(m, "SoftFingerModel")
        .def(py::init<double, double>(), py::arg("mu"), py::arg("e_soft"))
        .def_readwrite("mu", &SoftFingerModel::mu)
        .def_readwrite("e_soft", &SoftFingerModel::e_soft);
    py::class_<WrenchContact>(m, "WrenchContact")
        .def(py::init<>())
        .def_readwrite("p", &WrenchContact::p)
        .def_readwrite("n", &WrenchContact::n)
        .def_readwrite("friction", &WrenchContact::friction)
        .def_readwrite("force_limit", &WrenchContact::force_limit)
        .def_readwrite("bilateral", &WrenchContact::bilateral);
    py::class_<WrenchSet>(m, "WrenchSet")
        .def_readonly("wrenches", &WrenchSet::wrenches)
        .def_readonly("tau_scale", &WrenchSet::tau_scale)
        .def_property_readonly(
            "hull_rank", [](const WrenchSet& ws) { return ws.hull.rank; });
    py::class_<StabilityCell>(m, "StabilityCell")
        .def_readonly("alpha", &StabilityCell::alpha)
        .def_readonly("r_sprt", &StabilityCell::r_sprt)
        .def_readonly("q", &StabilityCell::q)
        .def_readonly("feasible", &StabilityCell::feasible);
    py::class_<StabilityGrid>(m, "StabilityGrid")
        .def_readonly("cells", &StabilityGrid::cells)
        .def_readonly("notes", &StabilityGrid::notes);

    m.def("contact_wrench_generators",
          [](const WrenchContact& c, int n_edges, double tau_scale) {
              return contact_wrench_generators(c, n_edges, tau_scale);
          },
          py::arg("contact"), py::arg("n_edges"), py::arg("tau_scale") = 1.0);
    m.def("grasp_wrench_set",
          [](const std::vector<WrenchContact>& cs, int n_edges, double tau_scale) {
              return grasp_wrench_set(cs, n_edges, tau_scale);
          },
          py::arg("contacts"), py::arg("n_edges"), py::arg("tau_scale") = 1.0);
    m.def("stability_index", &stability_index, py::arg("wrench_set"));
    m.def("pad_contact_layout", &pad_contact_layout, py::arg("alpha"), py::arg("r_sprt"),
          py::arg("w_hldr"), py::arg("params"), py::arg("force_limit") = 1.0);
    m.def("sweep_stability",
          [](const ToolParams& p, const std::vector<double>& rs,
             const std::vector<double>& alphas, double w_hldr, int n_edges) {
              return sweep_stability(p, rs, alphas, w_hldr, n_edges);
          },
          py::arg("params"), py::arg("r_sprt_values"), py::arg("alpha_values"),
          py::arg("w_hldr"), py::arg("n_edges") = 8);

    // ---- insertion ----
    py::class_<InsertionWorld>(m, "InsertionWorld")
        .def(py::init<>())
        .def_readwrite("socket_pos", &InsertionWorld::socket_pos)
        .def_readwrite("socket_rot", &InsertionWorld::socket_rot)
        .def_readwrite("hole_depth", &InsertionWorld::hole_depth)
        .def_readwrite("hex_across_flats", &InsertionWorld::hex_across_flats)
        .def_readwrite("chamfer_depth", &InsertionWorld::chamfer_depth)
        .def_readwrite("chamfer_half_angle", &InsertionWorld::chamfer_half_angle)
        .def_readwrite("surface_stiffness", &InsertionWorld::surface_stiffness)
        .def_readwrite("socket_hex_angle", &InsertionWorld::socket_hex_angle)
        .def("contact_force", &InsertionWorld::contact_force, py::arg("tip_world"),
             py::arg("peg_angle"), py::arg("align_tol"))
        .def("surface_height", &InsertionWorld::surface_height, py::arg("rho"),
             py::arg("aligned"))
        .def("opening_radius", &InsertionWorld::opening_radius)
        .def("hole_radius", &InsertionWorld::hole_radius);
    py::class_<SpiralPlan>(m, "SpiralPlan")
        .def(py::init<>())
        .def_readwrite("v_att", &SpiralPlan::v_att)
        .def_readwrite("v_sprl", &SpiralPlan::v_sprl)
        .def_readwrite("d_theta", &SpiralPlan::d_theta)
        .def_readwrite("d_r", &SpiralPlan::d_r)
        .def_readwrite("theta0", &SpiralPlan::theta0)
        .def_readwrite("r0", &SpiralPlan::r0);
    py::enum_<ImpedanceForm>(m, "ImpedanceForm")
        .value("AsPrinted", ImpedanceForm::AsPrinted)
        .value("StandardDamping", ImpedanceForm::StandardDamping);
    py::class_<ImpedanceState>(m, "ImpedanceState")
        .def(py::init<>())
        .def_readwrite("p_prev", &ImpedanceState::p_prev)
        .def_readwrite("p_curr", &ImpedanceState::p_curr)
        .def_readwrite("m", &ImpedanceState::m)
        .def_readwrite("c", &ImpedanceState::c)
        .def_readwrite("k", &ImpedanceState::k)
        .def_readwrite("dt", &ImpedanceState::dt)
        .def_readwrite("f_insrt", &ImpedanceState::f_insrt)
        .def_readwrite("f_rsst", &ImpedanceState::f_rsst)
        .def_readwrite("form", &ImpedanceState::form);
    py::class_<InsertionResult>(m, "InsertionResult")
        .def_readonly("success", &InsertionResult::success)
        .def_readonly("final_depth", &InsertionResult::final_depth)
        .def_readonly("final_misalignment", &InsertionResult::final_misalignment)
        .def_readonly("rotation_applied", &InsertionResult::rotation_applied)
        .def_readonly("steps", &InsertionResult::steps)
        .def_readonly("message", &InsertionResult::message);
    py::class_<InsertionScenario>(m, "InsertionScenario")
        .def(py::init<>())
        .def_readwrite("world", &InsertionScenario::world)
        .def_readwrite("spiral", &InsertionScenario::spiral)
        .def_readwrite("start", &InsertionScenario::start)
        .def_readwrite("peg_angle", &InsertionScenario::peg_angle)
        .def_readwrite("f_threshold", &InsertionScenario::f_threshold)
        .def_readwrite("f_insert", &InsertionScenario::f_insert)
        .def_readwrite("search_bound", &InsertionScenario::search_bound)
        .def_readwrite("omega", &InsertionScenario::omega)
        .def_readwrite("align_tol", &InsertionScenario::align_tol)
        .def_static("load", &InsertionScenario::load, py::arg("path"))
        .def_static("parse", &InsertionScenario::parse, py::arg("text"));

    m.def("hex_misalignment", &hex_misalignment, py::arg("peg_angle"),
          py::arg("socket_angle"));
    m.def("rodrigues_rotate", &rodrigues_rotate, py::arg("theta_deg"), py::arg("axis"),
          py::arg("v"));
    m.def("spiral_step", &spiral_step, py::arg("p_curr"), py::arg("plan"), py::arg("i"));
    m.def("spiral_waypoints", &spiral_waypoints, py::arg("p0"), py::arg("plan"),
          py::arg("n"));
    m.def("impedance_step", &impedance_step, py::arg("state"));
    m.def("run_insertion_scenario",
          [](const InsertionScenario& s) { return run_insertion_scenario(s); },
          py::arg("scenario"));

    py::register_exception<ConfigError>(m, "ConfigFileError");
    py::register_exception<NoContactError>(m, "NoContactError");
    py::register_exception<HoleNotFoundError>(m, "HoleNotFoundError");
}
