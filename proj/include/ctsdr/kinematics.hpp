#pragma once

#include "ctsdr/se3.hpp"

#include <vector>

namespace ctsdr {

using JointVector = Eigen::VectorXd;  // radians

/// Serial-arm model: base-to-tip screw axes, end-effector home pose, and
/// per-joint limits. The file schema pins seven joints for the medical arm;
/// the math here is generic over the joint count so that reduced models can
/// be exercised directly.
struct RobotModel {
    std::vector<ScrewAxis> axes;
    Transform home;                                  // end-effector pose at zero configuration
    std::vector<std::pair<double, double>> limits;   // radians, lower < upper

    int joint_count() const { return static_cast<int>(axes.size()); }

    /// Throws SchemaError when axes/limits disagree or a limit pair is inverted.
    void validate() const;

    bool within_limits(const JointVector& theta) const;
    JointVector clamp_to_limits(const JointVector& theta) const;
};

/// Builds the screw axis of a joint from its unit direction w, a point q on
/// the axis, and pitch h: v = -w x q + h w. Revolute joints use h = 0.
ScrewAxis make_screw_axis(const Vec3& w, const Vec3& q, double h = 0.0);

/// Product-of-exponentials forward kinematics:
/// T = exp([S1] t1) ... exp([Sn] tn) * home.
Transform forward_kinematics(const RobotModel& model, const JointVector& theta);

/// Adjoint of T mapping twists between frames.
Mat6 adjoint(const Transform& T);

/// Space-frame Jacobian, 6 x n; column i is axis i transported by the
/// adjoint of the preceding joint exponentials.
Eigen::Matrix<double, 6, Eigen::Dynamic> space_jacobian(const RobotModel& model,
                                                        const JointVector& theta);

struct IkResult {
    JointVector theta;
    double residual = 0.0;   // twist norm (rad + mm) of the remaining error
    int iterations = 0;
    bool converged = false;
    bool clamped = false;    // joint limits altered the raw update
};

/// Damped least-squares inverse kinematics. Returns the best configuration
/// found together with its residual; `converged` is false when max_iter was
/// exhausted first. Iterates are clamped into the joint limits.
IkResult solve_ik(const RobotModel& model, const Transform& target, const JointVector& seed,
                  int max_iter = 200, double tol = 1e-9, double damping = 0.01);

/// Seven-joint model with alternating z/y axes at the link offsets of the
/// medical arm used throughout the simulator (A1..A7, heights 340/740/1140 mm,
/// flange at 1266 mm). Joint axis data is configuration, replaceable via the
/// model file schema.
RobotModel default_robot_model();

/// Elbows-bent home configuration for the default model: end-effector axes
/// aligned with the world frame and the arm away from stretch singularities.
JointVector default_home_configuration();

}  // namespace ctsdr
