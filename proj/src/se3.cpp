#include "ctsdr/se3.hpp"

#include "ctsdr/errors.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace ctsdr {

Mat3 skew(const Vec3& v) {
    Mat3 s;
    // clang-format off
    s <<     0, -v.z(),  v.y(),
         v.z(),      0, -v.x(),
        -v.y(),  v.x(),      0;
    // clang-format on
    return s;
}

bool is_rotation(const Mat3& R, double tol) {
    if (!R.allFinite()) return false;
    Mat3 err = R.transpose() * R - Mat3::Identity();
    if (err.cwiseAbs().maxCoeff() > tol) return false;
    return std::abs(R.determinant() - 1.0) <= tol;
}

Eigen::Matrix4d Transform::matrix() const {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.topLeftCorner<3, 3>() = R;
    m.topRightCorner<3, 1>() = p;
    return m;
}

Transform Transform::from_matrix(const Eigen::Matrix4d& m) {
    return {m.topLeftCorner<3, 3>(), m.topRightCorner<3, 1>()};
}

namespace {

// 1 - cos(t) rewritten as 2 sin^2(t/2): exact for all t, no cancellation for
// small t. The log of a near-pure translation carries v ~ p/theta, so these
// coefficients get multiplied by huge vectors and must stay accurate.
double one_minus_cos(double theta) {
    const double s = std::sin(0.5 * theta);
    return 2.0 * s * s;
}

double theta_minus_sin(double theta) {
    if (std::abs(theta) < 1e-4) {
        const double t2 = theta * theta;
        return theta * t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0));
    }
    return theta - std::sin(theta);
}

}  // namespace

Mat3 exp_rotation(const Vec3& w, double theta) {
    if (std::abs(w.norm() - 1.0) > kRotationTol) {
        throw InvalidAxisError("exp_rotation: axis must be a unit vector");
    }
    const Mat3 wx = skew(w);
    return Mat3::Identity() + std::sin(theta) * wx + one_minus_cos(theta) * wx * wx;
}

Transform exp_screw(const ScrewAxis& S, double theta) {
    const double wn = S.w.norm();
    if (wn < kSmallAngle) {
        // Pure translation screw.
        return {Mat3::Identity(), theta * S.v};
    }
    if (std::abs(wn - 1.0) > kRotationTol) {
        throw InvalidAxisError("exp_screw: angular part must be a unit vector or zero");
    }
    const Mat3 wx = skew(S.w);
    const Mat3 R = Mat3::Identity() + std::sin(theta) * wx + one_minus_cos(theta) * wx * wx;
    const Mat3 G = Mat3::Identity() * theta + one_minus_cos(theta) * wx +
                   theta_minus_sin(theta) * wx * wx;
    return {R, G * S.v};
}

namespace {

// Rotation log. Returns (unit axis, angle in [0, pi]); axis is (0,0,1) for
// the identity. Near pi the sin-based formula loses the axis, so the branch
// switches to the diagonal form keyed on the largest diagonal element.
std::pair<Vec3, double> log_rotation(const Mat3& R) {
    const double cos_theta = std::clamp((R.trace() - 1.0) / 2.0, -1.0, 1.0);
    Vec3 antisym;
    antisym << R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1);
    // atan2 keeps full precision at both ends of [0, pi]; acos of the trace
    // alone flattens to sqrt(eps) near 0 and loses the tail near pi.
    const double theta = std::atan2(0.5 * antisym.norm(), cos_theta);

    if (theta < kSmallAngle) {
        // Taylor regime: sin(theta) ~ theta, so the rotation vector is half
        // the antisymmetric part. The exact identity keeps its pinned axis.
        if (antisym.isZero(0.0)) return {Vec3::UnitZ(), 0.0};
        return {antisym.normalized(), theta};
    }

    constexpr double kPiBranch = M_PI - 1e-3;
    if (theta <= kPiBranch) {
        return {antisym.normalized(), theta};
    }

    // theta near pi: w_i^2 = (R_ii - cos)/(1 - cos), off-diagonals give the
    // cross terms. Sign fixed against the (possibly tiny) antisymmetric part.
    int k = 0;
    R.diagonal().maxCoeff(&k);
    const double one_minus_cos = 1.0 - cos_theta;
    Vec3 w;
    w[k] = std::sqrt(std::max(0.0, (R(k, k) - cos_theta) / one_minus_cos));
    for (int j = 0; j < 3; ++j) {
        if (j != k) w[j] = (R(j, k) + R(k, j)) / (2.0 * one_minus_cos * w[k]);
    }
    w.normalize();
    if (antisym.dot(w) < 0.0) w = -w;
    return {w, theta};
}

}  // namespace

std::pair<ScrewAxis, double> log_transform(const Transform& T) {
    auto [w, theta] = log_rotation(T.R);

    // Only an exactly-identity rotation becomes a prismatic screw; collapsing
    // merely-small rotations here would hide them from callers that resolve
    // poses to tighter accuracy than the angle, e.g. the IK residual.
    if (theta == 0.0) {
        const double d = T.p.norm();
        if (d < kSmallAngle) {
            return {ScrewAxis{Vec3::UnitZ(), Vec3::Zero(), 0.0}, 0.0};
        }
        // Pure translation: unit-speed prismatic screw.
        ScrewAxis S;
        S.w = Vec3::Zero();
        S.v = T.p / d;
        return {S, d};
    }

    const Mat3 wx = skew(w);
    // G(theta)^-1 = I/theta - [w]/2 + c [w]^2 with c = 1/theta - cot(theta/2)/2.
    // The direct form cancels catastrophically for small theta; switch to the
    // series c = theta/12 + theta^3/720 + theta^5/30240 there.
    double c;
    if (theta < 1e-2) {
        const double t2 = theta * theta;
        c = theta / 12.0 + theta * t2 / 720.0 + theta * t2 * t2 / 30240.0;
    } else {
        c = 1.0 / theta - 0.5 / std::tan(theta / 2.0);
    }
    const Mat3 Ginv = Mat3::Identity() / theta - 0.5 * wx + c * wx * wx;

    ScrewAxis S;
    S.w = w;
    S.v = Ginv * T.p;
    return {S, theta};
}

double rotation_angle_between(const Mat3& r1, const Mat3& r2) {
    // atan2 of (sin, cos) stays accurate near 0 and pi, where acos of the
    // trace alone loses half the significant digits.
    const Mat3 rel = r1.transpose() * r2;
    const Vec3 skew(rel(2, 1) - rel(1, 2), rel(0, 2) - rel(2, 0), rel(1, 0) - rel(0, 1));
    const double s = 0.5 * skew.norm();
    const double c = 0.5 * (rel.trace() - 1.0);
    return std::atan2(s, c);
}

Mat3 project_to_rotation(const Mat3& m) {
    Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vec3 sv = svd.singularValues();
    if (sv(1) <= 1e-12 * std::max(sv(0), 1e-300)) {
        throw DegenerateMatrixError("project_to_rotation: matrix has rank < 2");
    }
    Mat3 R = svd.matrixU() * svd.matrixV().transpose();
    if (R.determinant() < 0.0) {
        Mat3 flip = Mat3::Identity();
        flip(2, 2) = -1.0;  // flip the smallest singular direction
        R = svd.matrixU() * flip * svd.matrixV().transpose();
    }
    return R;
}

Mat3 rot_x(double theta) { return exp_rotation(Vec3::UnitX(), theta); }
Mat3 rot_y(double theta) { return exp_rotation(Vec3::UnitY(), theta); }
Mat3 rot_z(double theta) { return exp_rotation(Vec3::UnitZ(), theta); }

}  // namespace ctsdr
