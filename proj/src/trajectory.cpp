#include "ctsdr/trajectory.hpp"

#include "ctsdr/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ctsdr {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw OutOfRangeError(std::string("drill plan: ") + name + " must be positive");
    }
}

}  // namespace

void DrillPlan::validate() const {
    require_positive(standoff, "standoff");
    require_positive(straight_travel, "straight_travel");
    require_positive(straight_speed, "straight_speed");
    require_positive(arc_length, "arc_length");
    require_positive(arc_speed, "arc_speed");
    require_positive(drill_rpm, "drill_rpm");
    require_positive(retract_rpm, "retract_rpm");
    require_positive(guide.radius, "guide radius");
    if (standoff > straight_travel) {
        throw OutOfRangeError("drill plan: standoff exceeds straight_travel");
    }
    if (!(arc_length < guide.radius * std::numbers::pi)) {
        throw OutOfRangeError("drill plan: arc_length must stay under a half circle");
    }
    if (!entry_pose.is_valid()) {
        throw OutOfRangeError("drill plan: entry_pose is not a rigid transform");
    }
}

Transform tip_pose_straight(const DrillPlan& plan, double depth) {
    if (depth < 0.0 || depth > plan.straight_travel) {
        throw OutOfRangeError("tip_pose_straight: depth outside [0, straight_travel]");
    }
    Transform pose = plan.entry_pose;
    pose.p += depth * plan.entry_pose.R.col(0);
    return pose;
}

Transform tip_pose_curved(const DrillPlan& plan, double s) {
    if (s < 0.0 || s > plan.arc_length) {
        throw OutOfRangeError("tip_pose_curved: arc length outside [0, arc_length]");
    }
    const double r = plan.guide.radius;
    const double phi = s / r;
    Transform local;
    local.R = rot_z(-phi);
    local.p = Vec3(r * std::sin(phi), -r * (1.0 - std::cos(phi)), 0.0);
    return tip_pose_straight(plan, plan.straight_travel) * local;
}

TipState tip_state_at(const DrillPlan& plan, double path_length) {
    const double total = plan.straight_travel + plan.arc_length;
    if (path_length < 0.0 || path_length > total) {
        throw OutOfRangeError("tip_state_at: path length outside the planned path");
    }
    TipState state;
    if (path_length <= plan.straight_travel) {
        state.insertion_depth = path_length;
        state.arc_progress = 0.0;
        state.pose = tip_pose_straight(plan, path_length);
    } else {
        state.insertion_depth = plan.straight_travel;
        state.arc_progress = path_length - plan.straight_travel;
        state.pose = tip_pose_curved(plan, state.arc_progress);
    }
    return state;
}

namespace {

/// Sample distances step, 2*step, ... plus the exact phase end.
std::vector<double> phase_stations(double length, double step) {
    std::vector<double> stations;
    for (int i = 1; i * step < length - 1e-12; ++i) stations.push_back(i * step);
    stations.push_back(length);
    return stations;
}

}  // namespace

std::vector<Waypoint> plan_waypoints(const DrillPlan& plan, double step,
                                     const Transform& ee_from_tip) {
    plan.validate();
    if (!(step > 0.0)) throw OutOfRangeError("plan_waypoints: step must be positive");

    const Transform tip_to_ee = ee_from_tip.inverse();
    const auto emit = [&](std::vector<Waypoint>& out, double t, const Transform& tip, double rpm,
                          Phase phase) {
        out.push_back({t, tip * tip_to_ee, rpm, phase});
    };

    std::vector<Waypoint> waypoints;
    emit(waypoints, 0.0, tip_pose_straight(plan, 0.0), 0.0, Phase::Aligning);

    const double t_straight = plan.straight_travel / plan.straight_speed;
    const double t_curved = plan.arc_length / plan.arc_speed;

    for (double d : phase_stations(plan.straight_travel, step)) {
        emit(waypoints, d / plan.straight_speed, tip_pose_straight(plan, d), plan.drill_rpm,
             Phase::StraightDrill);
    }
    for (double s : phase_stations(plan.arc_length, step)) {
        emit(waypoints, t_straight + s / plan.arc_speed, tip_pose_curved(plan, s), plan.drill_rpm,
             Phase::CurvedDrill);
    }
    const double t_drilled = t_straight + t_curved;
    for (double u : phase_stations(plan.arc_length, step)) {
        emit(waypoints, t_drilled + u / plan.arc_speed, tip_pose_curved(plan, plan.arc_length - u),
             plan.retract_rpm, Phase::RetractCurved);
    }
    for (double u : phase_stations(plan.straight_travel, step)) {
        emit(waypoints, t_drilled + t_curved + u / plan.straight_speed,
             tip_pose_straight(plan, plan.straight_travel - u), plan.retract_rpm,
             Phase::RetractStraight);
    }
    return waypoints;
}

}  // namespace ctsdr
