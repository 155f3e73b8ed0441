#pragma once

#include "ctsdr/calibration.hpp"
#include "ctsdr/kinematics.hpp"
#include "ctsdr/sim.hpp"
#include "ctsdr/trajectory.hpp"

#include <string>
#include <vector>

namespace ctsdr {

// All doubles are written with 17 significant digits so that identical
// inputs reproduce byte-identical files and every value reloads exactly.

/// 17-significant-digit decimal form of v (%.17g).
std::string format_double(double v);

/// {"rotation": [9 row-major], "translation": [3]}
std::string transform_to_json(const Transform& t);

std::string pivot_result_to_json(const PivotResult& r);
PivotResult pivot_result_from_json(const std::string& text);

std::string hand_eye_result_to_json(const HandEyeResult& r);
HandEyeResult hand_eye_result_from_json(const std::string& text);

std::string plane_to_json(const Plane& p);
Plane plane_from_json(const std::string& text);

std::string drill_plan_to_json(const DrillPlan& p);
DrillPlan drill_plan_from_json(const std::string& text);

std::string summary_to_json(const SummaryReport& s);
SummaryReport summary_from_json(const std::string& text);

/// {"error": <kind>, "message": <message>} on a single line.
std::string error_to_json(const std::string& kind, const std::string& message);

/// Robot model JSON: {joints: [{w, q, h} x n], home: {rotation, translation},
/// limits: [[lo, hi] x n], units: "mm_rad"}. The units field is mandatory.
std::string robot_model_to_json(const RobotModel& model);
RobotModel robot_model_from_json(const std::string& text);
RobotModel load_robot_model(const std::string& path);

/// Captured pose stream. CSV header:
/// idx,frame,r00,r01,r02,r10,r11,r12,r20,r21,r22,tx,ty,tz
/// Rotations are validated within 1e-6 on load, then re-projected.
struct PoseLogEntry {
    int idx = 0;
    std::string frame;
    Transform pose;
};
std::vector<PoseLogEntry> read_pose_log(const std::string& path);
void write_pose_log(const std::string& path, const std::vector<PoseLogEntry>& entries);

/// Point list CSV with header x,y,z.
std::vector<Vec3> read_points_csv(const std::string& path);
void write_points_csv(const std::string& path, const std::vector<Vec3>& points);

/// Waypoint CSV with header t,phase,rpm,r00,...,r22,tx,ty,tz.
void write_waypoints_csv(const std::string& path, const std::vector<Waypoint>& waypoints);

/// Trial report CSV with header entry_position_error,rotation_goal,
/// rotation_commanded,rotation_actual,straight_length_measured,radius_measured.
void write_trial_reports_csv(const std::string& path, const std::vector<TrialReport>& reports);
std::vector<TrialReport> read_trial_reports_csv(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ctsdr
