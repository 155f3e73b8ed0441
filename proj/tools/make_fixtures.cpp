// Regenerates the committed robot model and calibration fixture files.
// Usage: make_fixtures [output_root]   (default: data)

#include "ctsdr/io.hpp"
#include "ctsdr/kinematics.hpp"
#include "ctsdr/sim.hpp"

#include <iostream>
#include <string>
#include <vector>

namespace {

std::vector<ctsdr::PoseLogEntry> as_log(const std::vector<ctsdr::Transform>& poses,
                                        const std::string& frame) {
    std::vector<ctsdr::PoseLogEntry> entries;
    entries.reserve(poses.size());
    for (std::size_t i = 0; i < poses.size(); ++i) {
        entries.push_back({static_cast<int>(i), frame, poses[i]});
    }
    return entries;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string root = argc > 1 ? argv[1] : "data";
    const std::string fixtures = root + "/fixtures";

    ctsdr::write_text_file(root + "/lbr_med7.json",
                           ctsdr::robot_model_to_json(ctsdr::default_robot_model()));

    const ctsdr::GroundTruth gt = ctsdr::make_ground_truth(0.0);
    ctsdr::NoiseModel clean;
    clean.sigma_pos = 0.0;
    clean.sigma_rot = 0.0;
    clean.seed = 42;

    // Pivot fixture: 20 exact pivoting poses and the tip/pivot they encode.
    const auto pivot_samples = ctsdr::synth_pivot_dataset(gt, 20, clean);
    std::vector<ctsdr::Transform> pivot_poses;
    for (const auto& s : pivot_samples) pivot_poses.push_back({s.R, s.p});
    ctsdr::write_pose_log(fixtures + "/pivot_poses.csv", as_log(pivot_poses, "tracker_tool"));

    ctsdr::PivotResult pivot_truth;
    pivot_truth.x_tip = gt.z_true.inverse().apply(gt.tip_true);
    pivot_truth.x_pivot = gt.x_true.inverse().apply(gt.pivot_point);
    pivot_truth.rms_residual = 0.0;
    pivot_truth.condition_number = 1.0;
    ctsdr::write_text_file(fixtures + "/pivot_truth.json",
                           ctsdr::pivot_result_to_json(pivot_truth));

    // Hand-eye fixture: 12 exact pose pairs plus the transforms that solve them.
    const ctsdr::RobotModel model = ctsdr::default_robot_model();
    const auto configs =
        ctsdr::sample_joint_configs(model, ctsdr::default_home_configuration(), 12, 0.8, 42);
    const auto pairs = ctsdr::synth_handeye_dataset(gt, configs, model, clean);
    std::vector<ctsdr::Transform> a_side;
    std::vector<ctsdr::Transform> b_side;
    for (const auto& pair : pairs) {
        a_side.push_back(pair.a);
        b_side.push_back(pair.b);
    }
    ctsdr::write_pose_log(fixtures + "/handeye_a.csv", as_log(a_side, "camera_in_tool"));
    ctsdr::write_pose_log(fixtures + "/handeye_b.csv", as_log(b_side, "world_in_ee"));

    ctsdr::HandEyeResult handeye_truth;
    handeye_truth.X = gt.x_true.inverse();
    handeye_truth.Z = gt.z_true.inverse();
    handeye_truth.rotation_residual = 0.0;
    handeye_truth.translation_residual = 0.0;
    ctsdr::write_text_file(fixtures + "/handeye_truth.json",
                           ctsdr::hand_eye_result_to_json(handeye_truth));

    std::cout << "wrote fixtures under " << root << "\n";
    return 0;
}
