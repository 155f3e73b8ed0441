#include "ctsdr/errors.hpp"
#include "ctsdr/frame_graph.hpp"
#include "ctsdr/io.hpp"
#include "ctsdr/kinematics.hpp"
#include "ctsdr/sim.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace ctsdr;

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        write_text_file(output_path, text);
    }
}

Vec3 to_vec3(const std::vector<double>& v, const char* what) {
    if (v.size() != 3) {
        throw SchemaError(std::string(what) + " needs exactly 3 components");
    }
    return Vec3(v[0], v[1], v[2]);
}

struct FkArgs {
    std::string model_path;
    std::vector<double> theta_deg;
    std::string output;
};

struct PivotArgs {
    std::string poses_path;
    std::string output;
};

struct HandEyeArgs {
    std::string a_path;
    std::string b_path;
    bool refine = false;
    std::string output;
};

struct PlaneArgs {
    std::string points_path;
    std::vector<double> toward;
    std::string output;
};

struct PlanArgs {
    std::vector<double> entry;
    std::vector<double> normal;
    std::vector<double> bend{0.0, -1.0, 0.0};
    double radius = 69.5;
    double standoff = 5.0;
    double straight_travel = 18.0;
    double straight_speed = 1.0;
    double arc_length = 35.0;
    double arc_speed = 2.5;
    double drill_rpm = 8250.0;
    double retract_rpm = 1000.0;
    double step = 1.0;
    std::string output;
    std::string waypoints_path;
};

struct SimulateArgs {
    double angle = 0.0;
    double noise_pos = 0.25;
    double noise_rot = 0.05;
    int trials = 50;
    std::uint64_t seed = 1;
    std::string output;
    std::string reports_path;
};

int run_fk(const FkArgs& args) {
    const RobotModel model = load_robot_model(args.model_path);
    if (args.theta_deg.size() != static_cast<std::size_t>(model.joint_count())) {
        throw SchemaError("fk: expected " + std::to_string(model.joint_count()) +
                          " joint angles");
    }
    JointVector theta(model.joint_count());
    for (std::size_t i = 0; i < args.theta_deg.size(); ++i) {
        theta[static_cast<Eigen::Index>(i)] = deg_to_rad(args.theta_deg[i]);
    }
    emit(transform_to_json(forward_kinematics(model, theta)) + "\n", args.output);
    return 0;
}

int run_pivot(const PivotArgs& args) {
    std::vector<PivotSample> samples;
    for (const PoseLogEntry& e : read_pose_log(args.poses_path)) {
        samples.push_back({e.pose.R, e.pose.p});
    }
    emit(pivot_result_to_json(pivot_calibrate(samples)), args.output);
    return 0;
}

int run_handeye(const HandEyeArgs& args) {
    const auto a_log = read_pose_log(args.a_path);
    const auto b_log = read_pose_log(args.b_path);
    if (a_log.size() != b_log.size()) {
        throw SchemaError("handeye-calib: pose logs differ in length");
    }
    std::vector<HandEyePair> pairs;
    pairs.reserve(a_log.size());
    for (std::size_t i = 0; i < a_log.size(); ++i) {
        pairs.push_back({a_log[i].pose, b_log[i].pose});
    }
    emit(hand_eye_result_to_json(hand_eye_calibrate(pairs, args.refine)), args.output);
    return 0;
}

int run_fit_plane(const PlaneArgs& args) {
    const auto points = read_points_csv(args.points_path);
    std::optional<Vec3> toward;
    if (!args.toward.empty()) toward = to_vec3(args.toward, "--toward");
    emit(plane_to_json(fit_plane(points, toward)), args.output);
    return 0;
}

int run_plan(const PlanArgs& args) {
    EntryGoal goal;
    goal.entry_point = to_vec3(args.entry, "--entry");
    goal.surface_normal = to_vec3(args.normal, "--normal");
    goal.bend_heading = to_vec3(args.bend, "--bend");
    goal.standoff = args.standoff;

    DrillPlan plan;
    plan.standoff = args.standoff;
    plan.straight_travel = args.straight_travel;
    plan.straight_speed = args.straight_speed;
    plan.arc_length = args.arc_length;
    plan.arc_speed = args.arc_speed;
    plan.drill_rpm = args.drill_rpm;
    plan.retract_rpm = args.retract_rpm;
    plan.guide.radius = args.radius;
    plan.entry_pose = build_entry_pose(goal);
    plan.validate();

    emit(drill_plan_to_json(plan), args.output);
    if (!args.waypoints_path.empty()) {
        write_waypoints_csv(args.waypoints_path, plan_waypoints(plan, args.step));
    }
    return 0;
}

int run_simulate(const SimulateArgs& args) {
    if (args.trials < 1) throw OutOfRangeError("simulate: --trials must be at least 1");
    const GroundTruth gt = make_ground_truth(args.angle);
    std::vector<TrialReport> reports;
    reports.reserve(static_cast<std::size_t>(args.trials));
    for (int i = 0; i < args.trials; ++i) {
        NoiseModel noise;
        noise.sigma_pos = args.noise_pos;
        noise.sigma_rot = args.noise_rot;
        noise.seed = args.seed + static_cast<std::uint64_t>(i);
        reports.push_back(run_trial(gt, noise, DrillPlan{}));
    }
    emit(summary_to_json(aggregate(reports, DrillPlan{}.guide.radius)), args.output);
    if (!args.reports_path.empty()) {
        write_trial_reports_csv(args.reports_path, reports);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Drilling-pipeline toolbox: kinematics, calibration and simulation"};
    app.require_subcommand(1);

    FkArgs fk_args;
    auto* fk = app.add_subcommand("fk", "Forward kinematics of a joint configuration");
    fk->add_option("--model", fk_args.model_path, "Robot model JSON")->required();
    fk->add_option("--theta", fk_args.theta_deg, "Joint angles, degrees")
        ->required()
        ->delimiter(',');
    fk->add_option("--output", fk_args.output, "Write the result here instead of stdout");

    PivotArgs pivot_args;
    auto* pivot = app.add_subcommand("pivot-calib", "Tool-tip pivot calibration");
    pivot->add_option("--poses", pivot_args.poses_path, "Pose log CSV")->required();
    pivot->add_option("--output", pivot_args.output, "Write the result here instead of stdout");

    HandEyeArgs he_args;
    auto* he = app.add_subcommand("handeye-calib", "Robot-world / hand-eye calibration (AX=ZB)");
    he->add_option("--a", he_args.a_path, "Pose log CSV, tracked side")->required();
    he->add_option("--b", he_args.b_path, "Pose log CSV, robot side")->required();
    he->add_flag("--refine", he_args.refine, "Gauss-Newton refinement after the linear solve");
    he->add_option("--output", he_args.output, "Write the result here instead of stdout");

    PlaneArgs plane_args;
    auto* plane = app.add_subcommand("fit-plane", "Least-squares plane through digitized points");
    plane->add_option("--points", plane_args.points_path, "Points CSV (x,y,z)")->required();
    plane->add_option("--toward", plane_args.toward, "Orient the normal toward this point")
        ->delimiter(',');
    plane->add_option("--output", plane_args.output, "Write the result here instead of stdout");

    PlanArgs plan_args;
    auto* plan = app.add_subcommand("plan", "Build a drill plan and its waypoint stream");
    plan->add_option("--entry", plan_args.entry, "Entry point, mm")->required()->delimiter(',');
    plan->add_option("--normal", plan_args.normal, "Outward surface normal at the entry")
        ->required()
        ->delimiter(',');
    plan->add_option("--bend", plan_args.bend, "World heading the arc bends toward")
        ->delimiter(',');
    plan->add_option("--radius", plan_args.radius, "Steering-guide radius, mm");
    plan->add_option("--standoff", plan_args.standoff, "Standoff before the entry face, mm");
    plan->add_option("--straight-travel", plan_args.straight_travel,
                     "Straight phase length including standoff, mm");
    plan->add_option("--straight-speed", plan_args.straight_speed, "Straight phase speed, mm/s");
    plan->add_option("--arc-length", plan_args.arc_length, "Curved phase length, mm");
    plan->add_option("--arc-speed", plan_args.arc_speed, "Curved phase speed, mm/s");
    plan->add_option("--drill-rpm", plan_args.drill_rpm, "Spindle speed while drilling");
    plan->add_option("--retract-rpm", plan_args.retract_rpm, "Spindle speed while retracting");
    plan->add_option("--step", plan_args.step, "Waypoint spacing, mm");
    plan->add_option("--output", plan_args.output, "Write the plan JSON here instead of stdout");
    plan->add_option("--waypoints", plan_args.waypoints_path, "Also write the waypoint CSV here");

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Monte-Carlo runs of the full pipeline");
    sim->add_option("--angle", sim_args.angle, "Mount angle, degrees (0, 30 or 60)")->required();
    sim->add_option("--noise-pos", sim_args.noise_pos, "Position noise sigma, mm");
    sim->add_option("--noise-rot", sim_args.noise_rot, "Rotation noise sigma, degrees");
    sim->add_option("--trials", sim_args.trials, "Number of trials");
    sim->add_option("--seed", sim_args.seed, "Base seed; trial i uses seed + i");
    sim->add_option("--output", sim_args.output, "Write the summary JSON here instead of stdout");
    sim->add_option("--reports", sim_args.reports_path, "Also write per-trial CSV here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fk->parsed()) return run_fk(fk_args);
        if (pivot->parsed()) return run_pivot(pivot_args);
        if (he->parsed()) return run_handeye(he_args);
        if (plane->parsed()) return run_fit_plane(plane_args);
        if (plan->parsed()) return run_plan(plan_args);
        if (sim->parsed()) return run_simulate(sim_args);
    } catch (const Error& e) {
        std::cerr << error_to_json(e.kind(), e.what()) << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << error_to_json("internal", e.what()) << '\n';
        return 1;
    }
    return 0;
}
