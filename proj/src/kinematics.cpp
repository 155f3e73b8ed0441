#include "ctsdr/kinematics.hpp"

#include "ctsdr/errors.hpp"

#include <cmath>

namespace ctsdr {

void RobotModel::validate() const {
    if (axes.empty()) throw SchemaError("robot model has no joints");
    if (limits.size() != axes.size()) {
        throw SchemaError("robot model: limits count does not match joint count");
    }
    for (const auto& ax : axes) {
        const double wn = ax.w.norm();
        if (wn > kSmallAngle && std::abs(wn - 1.0) > kRotationTol) {
            throw InvalidAxisError("robot model: joint direction is not a unit vector");
        }
    }
    for (const auto& [lo, hi] : limits) {
        if (!(lo < hi)) throw SchemaError("robot model: joint limit lower >= upper");
    }
    if (!home.is_valid(1e-6)) throw SchemaError("robot model: home pose rotation invalid");
}

bool RobotModel::within_limits(const JointVector& theta) const {
    for (int i = 0; i < joint_count(); ++i) {
        if (theta[i] < limits[i].first || theta[i] > limits[i].second) return false;
    }
    return true;
}

JointVector RobotModel::clamp_to_limits(const JointVector& theta) const {
    JointVector out = theta;
    for (int i = 0; i < joint_count(); ++i) {
        out[i] = std::clamp(out[i], limits[i].first, limits[i].second);
    }
    return out;
}

ScrewAxis make_screw_axis(const Vec3& w, const Vec3& q, double h) {
    if (std::abs(w.norm() - 1.0) > kRotationTol) {
        throw InvalidAxisError("make_screw_axis: direction must be a unit vector");
    }
    ScrewAxis S;
    S.w = w;
    S.v = -w.cross(q) + h * w;
    S.h = h;
    return S;
}

Transform forward_kinematics(const RobotModel& model, const JointVector& theta) {
    if (theta.size() != model.joint_count()) {
        throw SchemaError("forward_kinematics: joint vector size mismatch");
    }
    Transform T = Transform::Identity();
    for (int i = 0; i < model.joint_count(); ++i) {
        T = T * exp_screw(model.axes[i], theta[i]);
    }
    return T * model.home;
}

Mat6 adjoint(const Transform& T) {
    Mat6 ad = Mat6::Zero();
    ad.topLeftCorner<3, 3>() = T.R;
    ad.bottomRightCorner<3, 3>() = T.R;
    ad.bottomLeftCorner<3, 3>() = skew(T.p) * T.R;
    return ad;
}

Eigen::Matrix<double, 6, Eigen::Dynamic> space_jacobian(const RobotModel& model,
                                                        const JointVector& theta) {
    if (theta.size() != model.joint_count()) {
        throw SchemaError("space_jacobian: joint vector size mismatch");
    }
    const int n = model.joint_count();
    Eigen::Matrix<double, 6, Eigen::Dynamic> J(6, n);
    Transform prefix = Transform::Identity();
    for (int i = 0; i < n; ++i) {
        J.col(i) = adjoint(prefix) * model.axes[i].twist();
        prefix = prefix * exp_screw(model.axes[i], theta[i]);
    }
    return J;
}

IkResult solve_ik(const RobotModel& model, const Transform& target, const JointVector& seed,
                  int max_iter, double tol, double damping) {
    if (!model.within_limits(seed)) {
        throw OutOfRangeError("solve_ik: seed violates joint limits");
    }

    IkResult result;
    result.theta = seed;

    auto error_twist = [&](const JointVector& th) -> Vec6 {
        const Transform err = target * forward_kinematics(model, th).inverse();
        const auto [S, angle] = log_transform(err);
        return S.twist() * angle;
    };

    Vec6 err = error_twist(result.theta);
    result.residual = err.norm();

    const double lambda2 = damping * damping;
    for (int iter = 0; iter < max_iter && result.residual >= tol; ++iter) {
        const auto J = space_jacobian(model, result.theta);
        const Mat6 JJt = J * J.transpose() + lambda2 * Mat6::Identity();
        const JointVector step = J.transpose() * JJt.ldlt().solve(err);

        JointVector raw = result.theta + step;
        JointVector clamped = model.clamp_to_limits(raw);
        if ((raw - clamped).cwiseAbs().maxCoeff() > 0.0) result.clamped = true;
        result.theta = clamped;

        err = error_twist(result.theta);
        result.residual = err.norm();
        result.iterations = iter + 1;
    }

    result.converged = result.residual < tol;
    return result;
}

RobotModel default_robot_model() {
    // Alternating z/y axes; shoulder at 340 mm, elbow at 740 mm, wrist at
    // 1140 mm, flange at 1266 mm above the base.
    const double d1 = 340.0, d2 = 740.0, d3 = 1140.0, d4 = 1266.0;
    RobotModel m;
    m.axes = {
        make_screw_axis(Vec3(0, 0, 1), Vec3(0, 0, 0)),
        make_screw_axis(Vec3(0, 1, 0), Vec3(0, 0, d1)),
        make_screw_axis(Vec3(0, 0, 1), Vec3(0, 0, 0)),
        make_screw_axis(Vec3(0, -1, 0), Vec3(0, 0, d2)),
        make_screw_axis(Vec3(0, 0, 1), Vec3(0, 0, 0)),
        make_screw_axis(Vec3(0, 1, 0), Vec3(0, 0, d3)),
        make_screw_axis(Vec3(0, 0, 1), Vec3(0, 0, 0)),
    };
    m.home.R = Mat3::Identity();
    m.home.p = Vec3(0, 0, d4);
    const double deg = M_PI / 180.0;
    m.limits = {
        {-170 * deg, 170 * deg}, {-120 * deg, 120 * deg}, {-170 * deg, 170 * deg},
        {-120 * deg, 120 * deg}, {-170 * deg, 170 * deg}, {-120 * deg, 120 * deg},
        {-175 * deg, 175 * deg},
    };
    return m;
}

JointVector default_home_configuration() {
    const double deg = M_PI / 180.0;
    JointVector theta(7);
    theta << 0.0, 30 * deg, 0.0, 60 * deg, 0.0, 30 * deg, 0.0;
    return theta;
}

}  // namespace ctsdr
