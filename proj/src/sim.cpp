#include "ctsdr/sim.hpp"

#include "ctsdr/errors.hpp"
#include "ctsdr/frame_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace ctsdr {

namespace {

// Seed salts keep the per-operation random streams independent while the
// whole trial stays a pure function of NoiseModel::seed.
constexpr std::uint64_t kSaltPivotTool = 1;
constexpr std::uint64_t kSaltPivotDigitizer = 2;
constexpr std::uint64_t kSaltHandEyeConfigs = 3;
constexpr std::uint64_t kSaltHandEyeNoise = 4;
constexpr std::uint64_t kSaltSurface = 5;
constexpr std::uint64_t kSaltEntry = 6;
constexpr std::uint64_t kSaltAlignment = 7;

constexpr int kPivotPoses = 30;
constexpr int kHandEyePoses = 12;
constexpr int kGridRows = 5;
constexpr int kGridCols = 5;
constexpr int kArcSamples = 200;
constexpr double kConfigSpanRad = 0.8;

// splitmix64 finalizer: decorrelates (seed, salt) pairs deterministically.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t salt) {
    return std::mt19937_64(mix_seed(seed, salt));
}

// Uniform in (0, 1]; raw engine bits so results do not depend on the
// standard library's distribution implementations.
double next_unit(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * (1.0 / 9007199254740992.0);
}

double next_uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * next_unit(rng);
}

// Box-Muller standard normal.
double next_gaussian(std::mt19937_64& rng) {
    const double u1 = next_unit(rng);
    const double u2 = next_unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec3 next_gaussian_vec3(std::mt19937_64& rng) {
    const double x = next_gaussian(rng);
    const double y = next_gaussian(rng);
    const double z = next_gaussian(rng);
    return Vec3(x, y, z);
}

Vec3 next_unit_axis(std::mt19937_64& rng) {
    const double z = next_uniform(rng, -1.0, 1.0);
    const double phi = next_uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return Vec3(r * std::cos(phi), r * std::sin(phi), z);
}

Mat3 next_rotation(std::mt19937_64& rng, double min_angle, double max_angle) {
    const Vec3 axis = next_unit_axis(rng);
    return exp_rotation(axis, next_uniform(rng, min_angle, max_angle));
}

// Gaussian position offset plus a half-normal-angle rotation about a uniform
// axis, applied on the left. The draws are consumed even at zero sigma so
// that runs with different noise levels share the same underlying variates.
Transform apply_pose_noise(const Transform& pose, const NoiseModel& noise,
                           std::mt19937_64& rng) {
    const Vec3 g = next_gaussian_vec3(rng);
    const Vec3 axis = next_unit_axis(rng);
    const double angle = std::abs(next_gaussian(rng)) * deg_to_rad(noise.sigma_rot);
    Transform out;
    out.R = exp_rotation(axis, angle) * pose.R;
    out.p = pose.p + noise.sigma_pos * g;
    return out;
}

// Tracked poses of a marker body rotating about a fixed pivot: the body
// carries `tip_body` onto `pivot_cam` in every frame (before noise).
std::vector<PivotSample> pivot_dataset_for(const Vec3& tip_body, const Vec3& pivot_cam, int n,
                                           const NoiseModel& noise, std::mt19937_64& rng) {
    if (n < 0) throw OutOfRangeError("pivot dataset size must be non-negative");
    std::vector<PivotSample> samples;
    samples.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Transform pose;
        pose.R = next_rotation(rng, 0.35, 1.2);
        pose.p = pivot_cam - pose.R * tip_body;
        pose = apply_pose_noise(pose, noise, rng);
        samples.push_back({pose.R, pose.p});
    }
    return samples;
}

// Digitizer marker-body pose (camera frame) whose tip lands on the given
// camera-frame target, with a random wrist orientation.
Transform digitizer_capture(const Vec3& target_cam, const Vec3& tip_body,
                            std::mt19937_64& rng) {
    Transform pose;
    pose.R = next_rotation(rng, 0.2, 0.8);
    pose.p = target_cam - pose.R * tip_body;
    return pose;
}

// Grid targets on the top surface, specimen frame. The 60x40 mm entry face
// centers the entry point; the top surface sits 20 mm above it and extends
// 60 mm into the material. The exact extents do not enter any metric.
std::vector<Vec3> top_surface_grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw OutOfRangeError("digitizer grid must be at least 1x1");
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const double x = rows == 1 ? 30.0 : 6.0 + 48.0 * i / (rows - 1.0);
            const double y = cols == 1 ? 0.0 : -24.0 + 48.0 * j / (cols - 1.0);
            pts.emplace_back(x, y, 20.0);
        }
    }
    return pts;
}

double sample_std(const std::vector<double>& values, double mean) {
    if (values.size() < 2) return 0.0;
    double acc = 0.0;
    for (double v : values) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / (static_cast<double>(values.size()) - 1.0));
}

double mean_of(const std::vector<double>& values) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return values.empty() ? 0.0 : acc / static_cast<double>(values.size());
}

}  // namespace

GroundTruth make_ground_truth(double mount_angle_deg) {
    const bool known = std::abs(mount_angle_deg) < 1e-9 ||
                       std::abs(mount_angle_deg - 30.0) < 1e-9 ||
                       std::abs(mount_angle_deg - 60.0) < 1e-9;
    if (!known) {
        throw OutOfRangeError("mount angle must be 0, 30 or 60 degrees");
    }
    GroundTruth gt;
    gt.x_true.R = rot_z(2.9) * rot_y(-0.4) * rot_x(0.2);
    gt.x_true.p = Vec3(1200.0, 800.0, 1500.0);
    gt.z_true.R = rot_x(0.15) * rot_z(-0.3);
    gt.z_true.p = Vec3(100.0, 60.0, 40.0);
    gt.tip_true = Vec3(250.0, 8.0, -4.0);
    gt.digitizer_tip_true = Vec3(120.0, 5.0, 3.0);
    gt.specimen_pose.R = rot_y(deg_to_rad(mount_angle_deg));
    gt.specimen_pose.p = Vec3(450.0, 0.0, 850.0);
    gt.mount_angle = mount_angle_deg;
    gt.pivot_point = Vec3(500.0, 200.0, 300.0);
    return gt;
}

std::vector<PivotSample> synth_pivot_dataset(const GroundTruth& gt, int n,
                                             const NoiseModel& noise) {
    auto rng = make_rng(noise.seed, kSaltPivotTool);
    const Vec3 tip_body = gt.z_true.inverse().apply(gt.tip_true);
    const Vec3 pivot_cam = gt.x_true.inverse().apply(gt.pivot_point);
    return pivot_dataset_for(tip_body, pivot_cam, n, noise, rng);
}

std::vector<HandEyePair> synth_handeye_dataset(const GroundTruth& gt,
                                               const std::vector<JointVector>& joint_configs,
                                               const RobotModel& model,
                                               const NoiseModel& noise) {
    auto rng = make_rng(noise.seed, kSaltHandEyeNoise);
    std::vector<HandEyePair> pairs;
    pairs.reserve(joint_configs.size());
    for (const auto& theta : joint_configs) {
        const Transform ee = forward_kinematics(model, theta);
        const Transform tracked = gt.x_true.inverse() * ee * gt.z_true;
        HandEyePair pair;
        pair.a = apply_pose_noise(tracked, noise, rng).inverse();
        pair.b = ee.inverse();
        pairs.push_back(pair);
    }
    return pairs;
}

std::vector<Vec3> synth_digitizer_points(const GroundTruth& gt, int rows, int cols,
                                         const NoiseModel& noise) {
    auto rng = make_rng(noise.seed, kSaltSurface);
    std::vector<Vec3> out;
    for (const Vec3& local : top_surface_grid(rows, cols)) {
        const Vec3 target_cam = gt.x_true.inverse().apply(gt.specimen_pose.apply(local));
        Transform capture = digitizer_capture(target_cam, gt.digitizer_tip_true, rng);
        capture = apply_pose_noise(capture, noise, rng);
        out.push_back(gt.x_true.apply(capture.apply(gt.digitizer_tip_true)));
    }
    return out;
}

std::vector<JointVector> sample_joint_configs(const RobotModel& model, const JointVector& center,
                                              int n, double span_rad, std::uint64_t seed) {
    if (center.size() != static_cast<Eigen::Index>(model.joint_count())) {
        throw OutOfRangeError("joint config center size does not match the model");
    }
    auto rng = make_rng(seed, kSaltHandEyeConfigs);
    std::vector<JointVector> configs;
    configs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        JointVector theta = center;
        for (Eigen::Index j = 0; j < theta.size(); ++j) {
            theta[j] += next_uniform(rng, -span_rad, span_rad);
        }
        configs.push_back(model.clamp_to_limits(theta));
    }
    return configs;
}

double fit_circle_radius(const std::vector<Vec3>& points) {
    if (points.size() < 3) {
        throw InsufficientDataError("circle fit needs at least 3 points");
    }
    const Plane plane = fit_plane(points);

    // In-plane orthonormal basis.
    const Vec3 n = plane.normal;
    Vec3 ref = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 u = n.cross(ref).normalized();
    const Vec3 v = n.cross(u);

    Eigen::MatrixXd A(points.size(), 3);
    Eigen::VectorXd b(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec3 d = points[i] - plane.point;
        const double x = d.dot(u);
        const double y = d.dot(v);
        A(static_cast<Eigen::Index>(i), 0) = 2.0 * x;
        A(static_cast<Eigen::Index>(i), 1) = 2.0 * y;
        A(static_cast<Eigen::Index>(i), 2) = 1.0;
        b(static_cast<Eigen::Index>(i)) = x * x + y * y;
    }
    const auto qr = A.colPivHouseholderQr();
    if (qr.rank() < 3) {
        throw DegenerateGeometryError("circle fit: points do not determine a circle");
    }
    const Eigen::Vector3d sol = qr.solve(b);
    const double r2 = sol(2) + sol(0) * sol(0) + sol(1) * sol(1);
    if (!(r2 > 0.0) || !std::isfinite(r2)) {
        throw DegenerateGeometryError("circle fit: non-positive squared radius");
    }
    return std::sqrt(r2);
}

TrialReport run_trial(const GroundTruth& gt, const NoiseModel& noise, DrillPlan plan) {
    const RobotModel model = default_robot_model();
    const JointVector home = default_home_configuration();

    // Pivot calibration of the drill tip (tracker-tool body frame) and of
    // the digitizer tip (digitizer marker-body frame).
    const Vec3 tip_tool_cal = pivot_calibrate(synth_pivot_dataset(gt, kPivotPoses, noise)).x_tip;
    auto dig_rng = make_rng(noise.seed, kSaltPivotDigitizer);
    const Vec3 dig_pivot_cam = gt.x_true.inverse().apply(gt.pivot_point);
    const Vec3 dig_tip_cal =
        pivot_calibrate(
            pivot_dataset_for(gt.digitizer_tip_true, dig_pivot_cam, kPivotPoses, noise, dig_rng))
            .x_tip;

    // Hand-eye: recover camera-in-world and tool-in-ee.
    const auto configs =
        sample_joint_configs(model, home, kHandEyePoses, kConfigSpanRad, noise.seed);
    const HandEyeResult he = hand_eye_calibrate(synth_handeye_dataset(gt, configs, model, noise));
    const Transform x_cal = he.X.inverse();  // camera pose in world
    const Transform z_cal = he.Z.inverse();  // tool body pose in ee
    const Vec3 tip_ee_cal = z_cal.apply(tip_tool_cal);

    // Digitize the top surface and the entry point through the calibrated
    // chain, so calibration error lands in the world-frame points. The chain
    // lives in a frame graph whose tracked edge is refreshed per capture.
    FrameGraph graph;
    graph.add_edge(FrameId::World, FrameId::NdiCamera, x_cal, EdgeSource::Calibrated);
    Transform dig_tip_offset;
    dig_tip_offset.p = dig_tip_cal;
    graph.add_edge(FrameId::DigitizerMarkers, FrameId::DigitizerTip, dig_tip_offset,
                   EdgeSource::Calibrated);

    auto surf_rng = make_rng(noise.seed, kSaltSurface);
    bool first_capture = true;
    const auto digitize = [&](const Vec3& target_world, std::mt19937_64& rng) {
        const Vec3 target_cam = gt.x_true.inverse().apply(target_world);
        Transform capture = digitizer_capture(target_cam, gt.digitizer_tip_true, rng);
        capture = apply_pose_noise(capture, noise, rng);
        if (first_capture) {
            graph.add_edge(FrameId::NdiCamera, FrameId::DigitizerMarkers, capture,
                           EdgeSource::Tracked);
            first_capture = false;
        } else {
            graph.update_edge(FrameId::NdiCamera, FrameId::DigitizerMarkers, capture);
        }
        return graph.resolve(FrameId::World, FrameId::DigitizerTip).p;
    };

    std::vector<Vec3> surface;
    for (const Vec3& local : top_surface_grid(kGridRows, kGridCols)) {
        surface.push_back(digitize(gt.specimen_pose.apply(local), surf_rng));
    }
    const Plane top = fit_plane(surface, x_cal.p);

    auto entry_rng = make_rng(noise.seed, kSaltEntry);
    const Vec3 entry_hat = digitize(gt.specimen_pose.p, entry_rng);

    // Drilling direction: into the material, parallel to the digitized top
    // plane. The fixture rotates about world +Y, so the entry-face outward
    // normal is top_normal x world_Y.
    Vec3 face_outward = top.normal.cross(Vec3::UnitY());
    const double fn = face_outward.norm();
    if (fn < 1e-9) {
        throw DegenerateGeometryError("run_trial: top normal parallel to the fixture axis");
    }
    face_outward /= fn;

    EntryGoal goal;
    goal.entry_point = entry_hat;
    goal.surface_normal = face_outward;
    goal.bend_heading = -Vec3::UnitY();
    goal.standoff = plan.standoff;
    const Transform tip_goal = build_entry_pose(goal);
    plan.entry_pose = tip_goal;
    plan.validate();

    // Align: command the arm so the calibrated tip lands on the entry pose.
    Transform tip_offset_cal;
    tip_offset_cal.p = tip_ee_cal;
    const Transform ee_goal = tip_goal * tip_offset_cal.inverse();
    const IkResult ik = solve_ik(model, ee_goal, home, 300, 1e-12, 0.01);

    // Ground truth of the achieved alignment.
    const Transform ee_actual = forward_kinematics(model, ik.theta);
    Transform tip_offset_true;
    tip_offset_true.p = gt.tip_true;
    const Transform tip_actual = ee_actual * tip_offset_true;

    TrialReport report;
    report.rotation_goal = gt.mount_angle;
    report.rotation_commanded = rad_to_deg(rotation_angle_between(Mat3::Identity(), tip_goal.R));

    // The achieved rotation is measured the way the physical system sees it:
    // through one tracked tool pose mapped by the calibrated transforms.
    auto align_rng = make_rng(noise.seed, kSaltAlignment);
    const Transform tracked =
        apply_pose_noise(gt.x_true.inverse() * ee_actual * gt.z_true, noise, align_rng);
    const Transform ee_seen = x_cal * tracked * z_cal.inverse();
    report.rotation_actual = rad_to_deg(rotation_angle_between(Mat3::Identity(), ee_seen.R));

    // Drilling is open loop: the planned path relative to the commanded
    // entry pose, executed from the actually reached pose.
    const Transform plan_origin_inv = tip_goal.inverse();
    const Vec3 start = tip_actual.p;
    const Vec3 dir = tip_actual.R.col(0);

    const Vec3 entry_true = gt.specimen_pose.p;
    const Vec3 n_face = gt.specimen_pose.R * Vec3(-1.0, 0.0, 0.0);
    const double denom = dir.dot(n_face);
    if (std::abs(denom) < 1e-9) {
        throw DegenerateGeometryError("run_trial: drill direction parallel to the entry face");
    }
    const double t_cross = (entry_true - start).dot(n_face) / denom;
    const double straight_in_material = plan.straight_travel - t_cross;
    const Vec3 crossing = start + t_cross * dir;
    const Vec3 offset = crossing - entry_true;
    const double d_y = offset.dot(gt.specimen_pose.R * Vec3(0.0, 1.0, 0.0));
    const double d_z = offset.dot(gt.specimen_pose.R * Vec3(0.0, 0.0, 1.0));
    const double d_l = straight_in_material - (plan.straight_travel - plan.standoff);

    report.straight_length_measured = straight_in_material;
    report.entry_position_error = std::sqrt(d_l * d_l + d_y * d_y + d_z * d_z);

    std::vector<Vec3> arc;
    arc.reserve(kArcSamples);
    for (int i = 0; i < kArcSamples; ++i) {
        const double s = plan.arc_length * (i + 1.0) / kArcSamples;
        const Transform rel = plan_origin_inv * tip_pose_curved(plan, s);
        arc.push_back((tip_actual * rel).p);
    }
    report.radius_measured = fit_circle_radius(arc);
    return report;
}

SummaryReport aggregate(const std::vector<TrialReport>& reports, double ideal_radius) {
    if (!(ideal_radius > 0.0)) {
        throw OutOfRangeError("aggregate: ideal radius must be positive");
    }
    std::map<double, std::vector<const TrialReport*>> groups;
    for (const auto& r : reports) groups[r.rotation_goal].push_back(&r);

    SummaryReport summary;
    summary.ideal_radius = ideal_radius;
    for (const auto& [goal, members] : groups) {
        std::vector<double> entry_errors, radii, commanded, actual;
        for (const TrialReport* r : members) {
            entry_errors.push_back(r->entry_position_error);
            radii.push_back(r->radius_measured);
            commanded.push_back(r->rotation_commanded);
            actual.push_back(r->rotation_actual);
        }
        AngleSummary row;
        row.rotation_goal = goal;
        row.trials = static_cast<int>(members.size());
        row.mean_entry_error = mean_of(entry_errors);
        row.std_entry_error = sample_std(entry_errors, row.mean_entry_error);
        row.mean_radius = mean_of(radii);
        row.std_radius = sample_std(radii, row.mean_radius);
        row.percent_radius_error = std::abs(row.mean_radius - ideal_radius) / ideal_radius * 100.0;
        row.mean_rotation_commanded = mean_of(commanded);
        row.mean_rotation_actual = mean_of(actual);
        row.std_rotation_actual = sample_std(actual, row.mean_rotation_actual);
        row.rotation_error = std::abs(row.mean_rotation_actual - goal);
        summary.groups.push_back(row);
    }
    return summary;
}

}  // namespace ctsdr
