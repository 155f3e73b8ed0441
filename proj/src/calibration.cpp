#include "ctsdr/calibration.hpp"

#include "ctsdr/errors.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>

namespace ctsdr {

namespace {

constexpr double kConditionLimit = 1e6;
constexpr double kAxisVarietyMinRad = 5.0 * M_PI / 180.0;

// Unit axes of the relative rotations within `rotations`, skipping
// near-identity motions that carry no axis information.
std::vector<Vec3> relative_rotation_axes(const std::vector<Mat3>& rotations) {
    std::vector<Vec3> axes;
    for (std::size_t i = 0; i + 1 < rotations.size(); ++i) {
        for (std::size_t j = i + 1; j < rotations.size(); ++j) {
            const Transform rel{rotations[i].transpose() * rotations[j], Vec3::Zero()};
            const auto [S, angle] = log_transform(rel);
            if (angle > 1e-6) axes.push_back(S.w);
        }
    }
    return axes;
}

// Largest acute angle between any two axis lines; 0 when fewer than two.
double axis_spread(const std::vector<Vec3>& axes) {
    double spread = 0.0;
    for (std::size_t i = 0; i + 1 < axes.size(); ++i) {
        for (std::size_t j = i + 1; j < axes.size(); ++j) {
            const double c = std::clamp(std::abs(axes[i].dot(axes[j])), 0.0, 1.0);
            spread = std::max(spread, std::acos(c));
        }
    }
    return spread;
}

void require_rotation_variety(const std::vector<Mat3>& rotations, const char* who) {
    const auto axes = relative_rotation_axes(rotations);
    if (axes.empty() || axis_spread(axes) < kAxisVarietyMinRad) {
        throw DegenerateMotionError(std::string(who) +
                                    ": rotations span less than two distinct axes");
    }
}

// Row-major layout throughout, matching the Kronecker identities
// vec(P X) = (P kron I) vec(X) and vec(X Q) = (I kron Q^T) vec(X).
Mat3 unvec_row_major(const Eigen::Matrix<double, 9, 1>& v) {
    Mat3 m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = v(3 * r + c);
    return m;
}

Eigen::Matrix<double, 9, 9> kron3(const Mat3& a, const Mat3& b) {
    Eigen::Matrix<double, 9, 9> k;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) k.block<3, 3>(3 * r, 3 * c) = a(r, c) * b;
    return k;
}

struct HandEyeResiduals {
    double rotation = 0.0;
    double translation = 0.0;
};

HandEyeResiduals residuals_against(const std::vector<HandEyePair>& pairs, const Transform& X,
                                   const Transform& Z) {
    double rot2 = 0.0, trans2 = 0.0;
    for (const auto& [a, b] : pairs) {
        const Transform lhs = a * X;
        const Transform rhs = Z * b;
        const double ang = rotation_angle_between(lhs.R, rhs.R);
        rot2 += ang * ang;
        trans2 += (lhs.p - rhs.p).squaredNorm();
    }
    const double n = static_cast<double>(pairs.size());
    return {std::sqrt(rot2 / n), std::sqrt(trans2 / n)};
}

// Stacked residual vector for the optional Gauss-Newton polish: per pair the
// rotation log and translation gap of a_i X - Z b_i.
Eigen::VectorXd handeye_residual_vector(const std::vector<HandEyePair>& pairs, const Transform& X,
                                        const Transform& Z) {
    Eigen::VectorXd r(6 * pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const Transform lhs = pairs[i].a * X;
        const Transform rhs = Z * pairs[i].b;
        const Transform err = lhs * rhs.inverse();
        const auto [S, angle] = log_transform(err);
        r.segment<3>(6 * i) = S.w * angle;
        r.segment<3>(6 * i + 3) = lhs.p - rhs.p;
    }
    return r;
}

Transform perturb(const Transform& T, const Eigen::Matrix<double, 6, 1>& delta) {
    ScrewAxis S;
    const double angle = delta.head<3>().norm();
    if (angle > kSmallAngle) {
        S.w = delta.head<3>() / angle;
        S.v = Vec3::Zero();
    }
    Transform out = exp_screw(S, angle) * T;
    out.p += delta.tail<3>();
    return out;
}

}  // namespace

PivotResult pivot_calibrate(const std::vector<PivotSample>& samples) {
    const int n = static_cast<int>(samples.size());
    if (n < 3) throw InsufficientDataError("pivot_calibrate: need at least 3 samples");

    std::vector<Mat3> rotations;
    rotations.reserve(samples.size());
    for (const auto& s : samples) rotations.push_back(s.R);
    require_rotation_variety(rotations, "pivot_calibrate");

    Eigen::MatrixXd A(3 * n, 6);
    Eigen::VectorXd b(3 * n);
    for (int i = 0; i < n; ++i) {
        A.block<3, 3>(3 * i, 0) = samples[i].R;
        A.block<3, 3>(3 * i, 3) = -Mat3::Identity();
        b.segment<3>(3 * i) = -samples[i].p;
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cond = sv(0) / std::max(sv(sv.size() - 1), 1e-300);
    if (cond > kConditionLimit) {
        throw DegenerateMotionError("pivot_calibrate: stacked system is ill-conditioned");
    }

    const Eigen::VectorXd x = svd.solve(b);

    PivotResult result;
    result.x_tip = x.head<3>();
    result.x_pivot = x.tail<3>();
    result.condition_number = cond;

    double ss = 0.0;
    for (const auto& s : samples) {
        ss += (s.R * result.x_tip + s.p - result.x_pivot).squaredNorm();
    }
    result.rms_residual = std::sqrt(ss / n);
    return result;
}

HandEyeResult hand_eye_calibrate(const std::vector<HandEyePair>& pairs, bool refine,
                                 int refine_max_iter) {
    const int n = static_cast<int>(pairs.size());
    if (n < 3) throw InsufficientDataError("hand_eye_calibrate: need at least 3 pose pairs");

    std::vector<Mat3> rotations_a;
    rotations_a.reserve(pairs.size());
    for (const auto& p : pairs) rotations_a.push_back(p.a.R);
    require_rotation_variety(rotations_a, "hand_eye_calibrate");

    // Rotation stage: per pair (R_a kron I) vec(R_X) - (I kron R_b^T) vec(R_Z) = 0,
    // stacked into a 9n x 18 homogeneous system solved by the smallest
    // singular direction.
    Eigen::MatrixXd K(9 * n, 18);
    for (int i = 0; i < n; ++i) {
        K.block<9, 9>(9 * i, 0) = kron3(pairs[i].a.R, Mat3::Identity());
        K.block<9, 9>(9 * i, 9) = -kron3(Mat3::Identity(), pairs[i].b.R.transpose());
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(K, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd null_dir = svd.matrixV().col(17);

    Mat3 rx_raw = unvec_row_major(null_dir.head<9>());
    Mat3 rz_raw = unvec_row_major(null_dir.tail<9>());

    // One common scale on the null vector; a sign-preserving cube root makes
    // both determinants positive before projection.
    const double det = rx_raw.determinant();
    if (std::abs(det) < 1e-12) {
        throw DegenerateMotionError("hand_eye_calibrate: rotation system is rank deficient");
    }
    const double scale = 1.0 / std::cbrt(det);
    rx_raw *= scale;
    rz_raw *= scale;

    HandEyeResult result;
    result.X.R = project_to_rotation(rx_raw);
    result.Z.R = project_to_rotation(rz_raw);

    // Translation stage: R_a t_X + t_a = R_Z t_b + t_Z stacked as
    // [R_a | -I] [t_X; t_Z] = R_Z t_b - t_a.
    Eigen::MatrixXd At(3 * n, 6);
    Eigen::VectorXd bt(3 * n);
    for (int i = 0; i < n; ++i) {
        At.block<3, 3>(3 * i, 0) = pairs[i].a.R;
        At.block<3, 3>(3 * i, 3) = -Mat3::Identity();
        bt.segment<3>(3 * i) = result.Z.R * pairs[i].b.p - pairs[i].a.p;
    }
    const Eigen::VectorXd t = At.colPivHouseholderQr().solve(bt);
    result.X.p = t.head<3>();
    result.Z.p = t.tail<3>();

    if (refine) {
        // Gauss-Newton over the 12 perturbation parameters (6 per transform),
        // numeric Jacobian; the linear solution is already close.
        const double eps = 1e-7;
        for (int iter = 0; iter < refine_max_iter; ++iter) {
            const Eigen::VectorXd r0 = handeye_residual_vector(pairs, result.X, result.Z);
            if (r0.norm() < 1e-14) break;
            Eigen::MatrixXd J(r0.size(), 12);
            for (int k = 0; k < 12; ++k) {
                Eigen::Matrix<double, 6, 1> dx = Eigen::Matrix<double, 6, 1>::Zero();
                Eigen::Matrix<double, 6, 1> dz = Eigen::Matrix<double, 6, 1>::Zero();
                if (k < 6) dx(k) = eps; else dz(k - 6) = eps;
                const Eigen::VectorXd rk =
                    handeye_residual_vector(pairs, perturb(result.X, dx), perturb(result.Z, dz));
                J.col(k) = (rk - r0) / eps;
            }
            const Eigen::VectorXd step = J.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-r0);
            if (!step.allFinite() || step.norm() < 1e-14) break;
            result.X = perturb(result.X, step.head<6>());
            result.Z = perturb(result.Z, step.tail<6>());
        }
    }

    const auto res = residuals_against(pairs, result.X, result.Z);
    result.rotation_residual = res.rotation;
    result.translation_residual = res.translation;
    return result;
}

Plane fit_plane(const std::vector<Vec3>& points, const std::optional<Vec3>& toward) {
    const int n = static_cast<int>(points.size());
    if (n < 3) throw DegenerateGeometryError("fit_plane: need at least 3 points");

    Vec3 centroid = Vec3::Zero();
    for (const auto& p : points) centroid += p;
    centroid /= n;

    Eigen::MatrixXd centered(n, 3);
    for (int i = 0; i < n; ++i) centered.row(i) = (points[i] - centroid).transpose();

    Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(1) < 1e-9 * std::max(sv(0), 1e-300) || sv(0) == 0.0) {
        throw DegenerateGeometryError("fit_plane: points are collinear or coincident");
    }

    Plane plane;
    plane.normal = svd.matrixV().col(2).normalized();
    plane.point = centroid;

    const Vec3 reference = toward.value_or(Vec3::Zero());
    if (plane.normal.dot(reference - centroid) < 0.0) plane.normal = -plane.normal;

    double ss = 0.0;
    for (const auto& p : points) {
        const double d = (p - centroid).dot(plane.normal);
        ss += d * d;
    }
    plane.rms_distance = std::sqrt(ss / n);
    return plane;
}

}  // namespace ctsdr
