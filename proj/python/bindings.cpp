#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ctsdr/calibration.hpp"
#include "ctsdr/errors.hpp"
#include "ctsdr/frame_graph.hpp"
#include "ctsdr/io.hpp"
#include "ctsdr/kinematics.hpp"
#include "ctsdr/procedure.hpp"
#include "ctsdr/sim.hpp"
#include "ctsdr/trajectory.hpp"

namespace py = pybind11;
using namespace ctsdr;

PYBIND11_MODULE(_ctsdr, m) {
    m.doc() = "Kinematics, calibration and drilling-simulation toolkit";

    py::register_exception<Error>(m, "ToolkitError");

    py::class_<Transform>(m, "Transform")
        .def(py::init<>())
        .def(py::init([](const Mat3& R, const Vec3& p) { return Transform{R, p}; }),
             py::arg("R"), py::arg("p"))
        .def_readwrite("R", &Transform::R)
        .def_readwrite("p", &Transform::p)
        .def_static("identity", &Transform::Identity)
        .def_static("from_matrix", &Transform::from_matrix, py::arg("matrix"))
        .def("matrix", &Transform::matrix)
        .def("inverse", &Transform::inverse)
        .def("apply", &Transform::apply, py::arg("point"))
        .def("is_valid", &Transform::is_valid, py::arg("tol") = kRotationTol)
        .def("__mul__", [](const Transform& a, const Transform& b) { return a * b; })
        .def("__repr__", [](const Transform& t) { return transform_to_json(t); });

    py::class_<ScrewAxis>(m, "ScrewAxis")
        .def(py::init<>())
        .def_readwrite("w", &ScrewAxis::w)
        .def_readwrite("v", &ScrewAxis::v)
        .def_readwrite("h", &ScrewAxis::h)
        .def("twist", &ScrewAxis::twist);

    m.def("skew", &skew, py::arg("v"));
    m.def("is_rotation", &is_rotation, py::arg("R"), py::arg("tol") = kRotationTol);
    m.def("exp_rotation", &exp_rotation, py::arg("w"), py::arg("theta"));
    m.def("exp_screw", &exp_screw, py::arg("axis"), py::arg("theta"));
    m.def("log_transform", &log_transform, py::arg("transform"));
    m.def("rotation_angle_between", &rotation_angle_between, py::arg("r1"), py::arg("r2"));
    m.def("project_to_rotation", &project_to_rotation, py::arg("m"));
    m.def("rot_x", &rot_x, py::arg("theta"));
    m.def("rot_y", &rot_y, py::arg("theta"));
    m.def("rot_z", &rot_z, py::arg("theta"));
    m.def("deg_to_rad", &deg_to_rad, py::arg("deg"));
    m.def("rad_to_deg", &rad_to_deg, py::arg("rad"));

    py::class_<RobotModel>(m, "RobotModel")
        .def(py::init<>())
        .def_readwrite("axes", &RobotModel::axes)
        .def_readwrite("home", &RobotModel::home)
        .def_readwrite("limits", &RobotModel::limits)
        .def("joint_count", &RobotModel::joint_count)
        .def("validate", &RobotModel::validate)
        .def("within_limits", &RobotModel::within_limits, py::arg("theta"))
        .def("clamp_to_limits", &RobotModel::clamp_to_limits, py::arg("theta"));

    py::class_<IkResult>(m, "IkResult")
        .def_readonly("theta", &IkResult::theta)
        .def_readonly("residual", &IkResult::residual)
        .def_readonly("iterations", &IkResult::iterations)
        .def_readonly("converged", &IkResult::converged)
        .def_readonly("clamped", &IkResult::clamped);

    m.def("make_screw_axis", &make_screw_axis, py::arg("w"), py::arg("q"), py::arg("h") = 0.0);
    m.def("forward_kinematics", &forward_kinematics, py::arg("model"), py::arg("theta"));
    m.def("adjoint", &adjoint, py::arg("transform"));
    m.def("space_jacobian", &space_jacobian, py::arg("model"), py::arg("theta"));
    m.def("solve_ik", &solve_ik, py::arg("model"), py::arg("target"), py::arg("seed"),
          py::arg("max_iter") = 200, py::arg("tol") = 1e-9, py::arg("damping") = 0.01);
    m.def("default_robot_model", &default_robot_model);
    m.def("default_home_configuration", &default_home_configuration);
    m.def("load_robot_model", &load_robot_model, py::arg("path"));
    m.def("robot_model_to_json", &robot_model_to_json, py::arg("model"));
    m.def("robot_model_from_json", &robot_model_from_json, py::arg("text"));

    py::class_<PivotSample>(m, "PivotSample")
        .def(py::init<>())
        .def(py::init([](const Mat3& R, const Vec3& p) { return PivotSample{R, p}; }),
             py::arg("R"), py::arg("p"))
        .def_readwrite("R", &PivotSample::R)
        .def_readwrite("p", &PivotSample::p);

    py::class_<PivotResult>(m, "PivotResult")
        .def_readonly("x_tip", &PivotResult::x_tip)
        .def_readonly("x_pivot", &PivotResult::x_pivot)
        .def_readonly("rms_residual", &PivotResult::rms_residual)
        .def_readonly("condition_number", &PivotResult::condition_number);

    py::class_<HandEyePair>(m, "HandEyePair")
        .def(py::init<>())
        .def(py::init([](const Transform& a, const Transform& b) { return HandEyePair{a, b}; }),
             py::arg("a"), py::arg("b"))
        .def_readwrite("a", &HandEyePair::a)
        .def_readwrite("b", &HandEyePair::b);

    py::class_<HandEyeResult>(m, "HandEyeResult")
        .def_readonly("X", &HandEyeResult::X)
        .def_readonly("Z", &HandEyeResult::Z)
        .def_readonly("rotation_residual", &HandEyeResult::rotation_residual)
        .def_readonly("translation_residual", &HandEyeResult::translation_residual);

    py::class_<Plane>(m, "Plane")
        .def_readonly("normal", &Plane::normal)
        .def_readonly("point", &Plane::point)
        .def_readonly("rms_distance", &Plane::rms_distance);

    m.def("pivot_calibrate", &pivot_calibrate, py::arg("samples"));
    m.def("hand_eye_calibrate", &hand_eye_calibrate, py::arg("pairs"),
          py::arg("refine") = false, py::arg("refine_max_iter") = 20);
    m.def("fit_plane", &fit_plane, py::arg("points"), py::arg("toward") = std::nullopt);

    py::enum_<FrameId>(m, "FrameId")
        .value("World", FrameId::World)
        .value("RobotBase", FrameId::RobotBase)
        .value("RobotEe", FrameId::RobotEe)
        .value("SdrTip", FrameId::SdrTip)
        .value("NdiCamera", FrameId::NdiCamera)
        .value("TrackerTool", FrameId::TrackerTool)
        .value("DigitizerMarkers", FrameId::DigitizerMarkers)
        .value("DigitizerTip", FrameId::DigitizerTip)
        .value("Specimen", FrameId::Specimen);

    py::enum_<EdgeSource>(m, "EdgeSource")
        .value("Static", EdgeSource::Static)
        .value("Fk", EdgeSource::Fk)
        .value("Tracked", EdgeSource::Tracked)
        .value("Calibrated", EdgeSource::Calibrated);

    py::class_<FrameGraph>(m, "FrameGraph")
        .def(py::init<>())
        .def("add_edge", &FrameGraph::add_edge, py::arg("parent"), py::arg("child"),
             py::arg("transform"), py::arg("source"))
        .def("update_edge", &FrameGraph::update_edge, py::arg("parent"), py::arg("child"),
             py::arg("transform"))
        .def("has_frame", &FrameGraph::has_frame, py::arg("frame"))
        .def("resolve", &FrameGraph::resolve, py::arg("from_frame"), py::arg("to_frame"));

    py::class_<EntryGoal>(m, "EntryGoal")
        .def(py::init<>())
        .def_readwrite("entry_point", &EntryGoal::entry_point)
        .def_readwrite("surface_normal", &EntryGoal::surface_normal)
        .def_readwrite("bend_heading", &EntryGoal::bend_heading)
        .def_readwrite("standoff", &EntryGoal::standoff);

    m.def("build_entry_pose", &build_entry_pose, py::arg("goal"));

    py::class_<SteeringGuide>(m, "SteeringGuide")
        .def(py::init<>())
        .def_readwrite("radius", &SteeringGuide::radius);

    py::class_<DrillPlan>(m, "DrillPlan")
        .def(py::init<>())
        .def_readwrite("standoff", &DrillPlan::standoff)
        .def_readwrite("straight_travel", &DrillPlan::straight_travel)
        .def_readwrite("straight_speed", &DrillPlan::straight_speed)
        .def_readwrite("arc_length", &DrillPlan::arc_length)
        .def_readwrite("arc_speed", &DrillPlan::arc_speed)
        .def_readwrite("drill_rpm", &DrillPlan::drill_rpm)
        .def_readwrite("retract_rpm", &DrillPlan::retract_rpm)
        .def_readwrite("guide", &DrillPlan::guide)
        .def_readwrite("entry_pose", &DrillPlan::entry_pose)
        .def("validate", &DrillPlan::validate);

    py::enum_<Phase>(m, "Phase")
        .value("Home", Phase::Home)
        .value("Aligning", Phase::Aligning)
        .value("SpinUp", Phase::SpinUp)
        .value("StraightDrill", Phase::StraightDrill)
        .value("CurvedDrill", Phase::CurvedDrill)
        .value("SpinDown", Phase::SpinDown)
        .value("RetractCurved", Phase::RetractCurved)
        .value("RetractStraight", Phase::RetractStraight)
        .value("ReturnHome", Phase::ReturnHome)
        .value("Done", Phase::Done)
        .value("Faulted", Phase::Faulted);

    py::enum_<ProcedureEvent>(m, "ProcedureEvent")
        .value("Arrived", ProcedureEvent::Arrived)
        .value("AtSpeed", ProcedureEvent::AtSpeed)
        .value("PhaseComplete", ProcedureEvent::PhaseComplete)
        .value("Fault", ProcedureEvent::Fault)
        .value("Reset", ProcedureEvent::Reset);

    py::class_<Waypoint>(m, "Waypoint")
        .def_readonly("t", &Waypoint::t)
        .def_readonly("ee_target", &Waypoint::ee_target)
        .def_readonly("rpm", &Waypoint::rpm)
        .def_readonly("phase", &Waypoint::phase);

    py::class_<TipState>(m, "TipState")
        .def_readonly("pose", &TipState::pose)
        .def_readonly("insertion_depth", &TipState::insertion_depth)
        .def_readonly("arc_progress", &TipState::arc_progress);

    m.def("tip_pose_straight", &tip_pose_straight, py::arg("plan"), py::arg("depth"));
    m.def("tip_pose_curved", &tip_pose_curved, py::arg("plan"), py::arg("s"));
    m.def("tip_state_at", &tip_state_at, py::arg("plan"), py::arg("path_length"));
    m.def("plan_waypoints", &plan_waypoints, py::arg("plan"), py::arg("step"),
          py::arg("ee_from_tip") = Transform::Identity());

    py::class_<ProcedureState>(m, "ProcedureState")
        .def(py::init<>())
        .def_readwrite("phase", &ProcedureState::phase)
        .def_readwrite("progress_mm", &ProcedureState::progress_mm)
        .def_readwrite("spindle_rpm", &ProcedureState::spindle_rpm);

    py::class_<StepResult>(m, "StepResult")
        .def_readonly("state", &StepResult::state)
        .def_readonly("accepted", &StepResult::accepted)
        .def_readonly("diagnostic", &StepResult::diagnostic);

    m.def("phase_length", &phase_length, py::arg("phase"), py::arg("plan"));
    m.def("step_procedure", &step_procedure, py::arg("state"), py::arg("event"), py::arg("plan"));

    py::class_<GroundTruth>(m, "GroundTruth")
        .def(py::init<>())
        .def_readwrite("x_true", &GroundTruth::x_true)
        .def_readwrite("z_true", &GroundTruth::z_true)
        .def_readwrite("tip_true", &GroundTruth::tip_true)
        .def_readwrite("digitizer_tip_true", &GroundTruth::digitizer_tip_true)
        .def_readwrite("specimen_pose", &GroundTruth::specimen_pose)
        .def_readwrite("mount_angle", &GroundTruth::mount_angle)
        .def_readwrite("pivot_point", &GroundTruth::pivot_point);

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init<>())
        .def(py::init([](double sigma_pos, double sigma_rot, std::uint64_t seed) {
                 NoiseModel n;
                 n.sigma_pos = sigma_pos;
                 n.sigma_rot = sigma_rot;
                 n.seed = seed;
                 return n;
             }),
             py::arg("sigma_pos"), py::arg("sigma_rot"), py::arg("seed"))
        .def_readwrite("sigma_pos", &NoiseModel::sigma_pos)
        .def_readwrite("sigma_rot", &NoiseModel::sigma_rot)
        .def_readwrite("seed", &NoiseModel::seed);

    py::class_<TrialReport>(m, "TrialReport")
        .def(py::init<>())
        .def_readwrite("entry_position_error", &TrialReport::entry_position_error)
        .def_readwrite("rotation_goal", &TrialReport::rotation_goal)
        .def_readwrite("rotation_commanded", &TrialReport::rotation_commanded)
        .def_readwrite("rotation_actual", &TrialReport::rotation_actual)
        .def_readwrite("straight_length_measured", &TrialReport::straight_length_measured)
        .def_readwrite("radius_measured", &TrialReport::radius_measured);

    py::class_<AngleSummary>(m, "AngleSummary")
        .def_readonly("rotation_goal", &AngleSummary::rotation_goal)
        .def_readonly("trials", &AngleSummary::trials)
        .def_readonly("mean_entry_error", &AngleSummary::mean_entry_error)
        .def_readonly("std_entry_error", &AngleSummary::std_entry_error)
        .def_readonly("mean_radius", &AngleSummary::mean_radius)
        .def_readonly("std_radius", &AngleSummary::std_radius)
        .def_readonly("percent_radius_error", &AngleSummary::percent_radius_error)
        .def_readonly("mean_rotation_commanded", &AngleSummary::mean_rotation_commanded)
        .def_readonly("mean_rotation_actual", &AngleSummary::mean_rotation_actual)
        .def_readonly("std_rotation_actual", &AngleSummary::std_rotation_actual)
        .def_readonly("rotation_error", &AngleSummary::rotation_error);

    py::class_<SummaryReport>(m, "SummaryReport")
        .def_readonly("ideal_radius", &SummaryReport::ideal_radius)
        .def_readonly("groups", &SummaryReport::groups);

    m.def("make_ground_truth", &make_ground_truth, py::arg("mount_angle_deg"));
    m.def("synth_pivot_dataset", &synth_pivot_dataset, py::arg("gt"), py::arg("n"),
          py::arg("noise"));
    m.def("synth_handeye_dataset", &synth_handeye_dataset, py::arg("gt"),
          py::arg("joint_configs"), py::arg("model"), py::arg("noise"));
    m.def("synth_digitizer_points", &synth_digitizer_points, py::arg("gt"), py::arg("rows"),
          py::arg("cols"), py::arg("noise"));
    m.def("sample_joint_configs", &sample_joint_configs, py::arg("model"), py::arg("center"),
          py::arg("n"), py::arg("span_rad"), py::arg("seed"));
    m.def("run_trial", &run_trial, py::arg("gt"), py::arg("noise"), py::arg("plan"));
    m.def("fit_circle_radius", &fit_circle_radius, py::arg("points"));
    m.def("aggregate", &aggregate, py::arg("reports"), py::arg("ideal_radius"));

    m.def("summary_to_json", &summary_to_json, py::arg("summary"));
    m.def("drill_plan_to_json", &drill_plan_to_json, py::arg("plan"));
    m.def("drill_plan_from_json", &drill_plan_from_json, py::arg("text"));
}
