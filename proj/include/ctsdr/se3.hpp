#pragma once

#include <Eigen/Dense>

#include <numbers>
#include <utility>

namespace ctsdr {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// Angles are radians and lengths millimetres throughout the library.
// Degrees appear only at CLI / report boundaries.

constexpr double kRotationTol = 1e-9;     // orthonormality tolerance for a valid rotation
constexpr double kSmallAngle = 1e-10;     // below this, exp/log switch to series forms

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Skew-symmetric matrix of v, so that skew(v) * u == v.cross(u).
Mat3 skew(const Vec3& v);

/// True iff R is orthonormal with determinant +1 within `tol` per entry.
bool is_rotation(const Mat3& R, double tol = kRotationTol);

/// Rigid transform: rotation R plus translation p (mm). Composition uses
/// operator*, and points map through `apply`.
struct Transform {
    Mat3 R = Mat3::Identity();
    Vec3 p = Vec3::Zero();

    static Transform Identity() { return {}; }

    Transform operator*(const Transform& other) const {
        return {R * other.R, R * other.p + p};
    }

    Vec3 apply(const Vec3& point) const { return R * point + p; }

    /// Inverse via rotation transpose; no general matrix inversion.
    Transform inverse() const { return {R.transpose(), -(R.transpose() * p)}; }

    Eigen::Matrix4d matrix() const;
    static Transform from_matrix(const Eigen::Matrix4d& m);

    bool is_valid(double tol = kRotationTol) const { return is_rotation(R, tol) && p.allFinite(); }
};

inline Transform compose(const Transform& a, const Transform& b) { return a * b; }
inline Transform invert(const Transform& t) { return t.inverse(); }

/// Screw axis (w, v) with pitch h. For the revolute joints used here the
/// pitch is zero, ‖w‖ = 1 and v = -w x q for a point q on the axis. A pure
/// translation direction is represented by w = 0, ‖v‖ = 1.
struct ScrewAxis {
    Vec3 w = Vec3::UnitZ();
    Vec3 v = Vec3::Zero();
    double h = 0.0;

    Vec6 twist() const {
        Vec6 s;
        s << w, v;
        return s;
    }
};

/// Rodrigues rotation about unit axis w by theta.
/// Throws InvalidAxisError if ‖w‖ deviates from 1 by more than 1e-9.
Mat3 exp_rotation(const Vec3& w, double theta);

/// Closed-form rigid-motion exponential of a screw axis scaled by theta.
Transform exp_screw(const ScrewAxis& S, double theta);

/// Inverse of exp_screw: recovers (S, theta) with theta in [0, pi] such that
/// exp_screw(S, theta) reproduces T. Identity maps to (z-axis, 0); a pure
/// translation maps to (w = 0, v = direction) with theta = distance. The
/// theta = pi branch picks the axis from the largest diagonal element.
std::pair<ScrewAxis, double> log_transform(const Transform& T);

/// Geodesic angle of R1^T R2, in [0, pi].
double rotation_angle_between(const Mat3& r1, const Mat3& r2);

/// Nearest rotation to M in Frobenius norm (SVD projection, determinant
/// forced to +1). Throws DegenerateMatrixError when two singular values
/// vanish and the rotation is no longer determined.
Mat3 project_to_rotation(const Mat3& m);

/// Convenience axis rotations.
Mat3 rot_x(double theta);
Mat3 rot_y(double theta);
Mat3 rot_z(double theta);

}  // namespace ctsdr
