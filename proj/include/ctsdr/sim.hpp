#pragma once

#include "ctsdr/calibration.hpp"
#include "ctsdr/kinematics.hpp"
#include "ctsdr/trajectory.hpp"

#include <cstdint>
#include <vector>

namespace ctsdr {

/// Ground-truth statics of the synthetic world. The world frame coincides
/// with the robot base.
struct GroundTruth {
    Transform x_true;             // tracking camera pose in world
    Transform z_true;             // tracker-tool body pose in the ee frame
    Vec3 tip_true;                // drill tip in the ee frame (offset only)
    Vec3 digitizer_tip_true;      // digitizer tip in its marker-body frame
    Transform specimen_pose;      // specimen frame: origin at the true entry
                                  // point, +X into the material, +Z out of
                                  // the top surface
    double mount_angle = 0.0;     // degrees about world +Y, one of {0,30,60}
    Vec3 pivot_point;             // world point both pivot captures share
};

/// Measurement noise for tracked poses: isotropic Gaussian on positions,
/// half-normal angle about a uniformly random axis on rotations.
struct NoiseModel {
    double sigma_pos = 0.25;   // mm
    double sigma_rot = 0.05;   // degrees
    std::uint64_t seed = 0;
};

/// Metrics of one simulated drilling run.
struct TrialReport {
    double entry_position_error = 0.0;     // mm, sqrt(dL^2 + dY^2 + dZ^2)
    double rotation_goal = 0.0;            // deg (mount angle)
    double rotation_commanded = 0.0;       // deg, angle of the commanded pose
    double rotation_actual = 0.0;          // deg, angle seen by the tracker
    double straight_length_measured = 0.0; // mm of straight channel in material
    double radius_measured = 0.0;          // mm, circle fit of the drilled arc
};

/// Per-mount-angle statistics over a set of trials.
struct AngleSummary {
    double rotation_goal = 0.0;  // deg, group key
    int trials = 0;
    double mean_entry_error = 0.0;
    double std_entry_error = 0.0;
    double mean_radius = 0.0;
    double std_radius = 0.0;
    double percent_radius_error = 0.0;  // |mean_radius - ideal| / ideal * 100
    double mean_rotation_commanded = 0.0;
    double mean_rotation_actual = 0.0;
    double std_rotation_actual = 0.0;
    double rotation_error = 0.0;  // |mean_rotation_actual - rotation_goal|
};

struct SummaryReport {
    double ideal_radius = 69.5;
    std::vector<AngleSummary> groups;  // sorted by rotation_goal
};

/// Canonical synthetic world for a specimen mounted at the given angle.
/// Throws OutOfRangeError unless the angle is 0, 30 or 60 degrees.
GroundTruth make_ground_truth(double mount_angle_deg);

/// n tracked tool poses rotating about the shared pivot point. Before noise
/// every pose maps the true tip offset onto the pivot exactly; rotation axes
/// span well over a 90 degree cone.
std::vector<PivotSample> synth_pivot_dataset(const GroundTruth& gt, int n,
                                             const NoiseModel& noise);

/// Hand-eye pairs for the given joint configurations: the robot side comes
/// from forward kinematics, the tracked side from the ground-truth closed
/// chain. Noise lands on the tracked side only.
std::vector<HandEyePair> synth_handeye_dataset(const GroundTruth& gt,
                                               const std::vector<JointVector>& joint_configs,
                                               const RobotModel& model,
                                               const NoiseModel& noise);

/// rows x cols grid digitized on the specimen's top surface, expressed in
/// world through the true tracked-digitizer chain with measurement noise.
std::vector<Vec3> synth_digitizer_points(const GroundTruth& gt, int rows, int cols,
                                         const NoiseModel& noise);

/// Deterministic random joint configurations around `center`, each joint
/// within +-span_rad and inside the model's limits.
std::vector<JointVector> sample_joint_configs(const RobotModel& model, const JointVector& center,
                                              int n, double span_rad, std::uint64_t seed);

/// Full pipeline on one synthetic world: pivot and hand-eye calibration,
/// digitized plane and entry point, alignment through inverse kinematics,
/// then open-loop drilling. The tip path is generated from the calibrated
/// transforms inside the ground-truth world, so calibration error propagates
/// into the entry metrics the way it does on hardware. plan.entry_pose is
/// replaced by the computed alignment pose.
TrialReport run_trial(const GroundTruth& gt, const NoiseModel& noise, DrillPlan plan);

/// Least-squares circle radius of points on (or near) a common plane:
/// projects onto the best-fit plane and runs an algebraic fit there.
/// Throws InsufficientDataError for fewer than 3 points and
/// DegenerateGeometryError for collinear input.
double fit_circle_radius(const std::vector<Vec3>& points);

/// Groups reports by rotation_goal and computes the summary statistics.
/// Sample standard deviations use the n-1 denominator and are 0 for n < 2.
SummaryReport aggregate(const std::vector<TrialReport>& reports, double ideal_radius);

}  // namespace ctsdr
