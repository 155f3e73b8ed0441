#pragma once

#include "ctsdr/se3.hpp"

#include <optional>
#include <vector>

namespace ctsdr {

/// One captured end-effector pose while the tool pivots about a fixed point.
struct PivotSample {
    Mat3 R = Mat3::Identity();  // end-effector rotation in the world frame
    Vec3 p = Vec3::Zero();      // end-effector position, mm
};

struct PivotResult {
    Vec3 x_tip = Vec3::Zero();    // tool-tip offset in the end-effector frame, mm
    Vec3 x_pivot = Vec3::Zero();  // pivot location in the world frame, mm
    double rms_residual = 0.0;    // mm
    double condition_number = 1.0;
};

/// One paired capture for the robot-world/hand-eye problem. `a` is built from
/// the tracker measurement (camera pose in the tracked-tool frame), `b` from
/// the robot chain (world pose in the end-effector frame); the solver is
/// agnostic and recovers whatever X, Z satisfy a_i X = Z b_i.
struct HandEyePair {
    Transform a;
    Transform b;
};

struct HandEyeResult {
    Transform X;
    Transform Z;
    double rotation_residual = 0.0;     // rad, rms over pairs
    double translation_residual = 0.0;  // mm, rms over pairs
};

struct Plane {
    Vec3 normal = Vec3::UnitZ();  // unit
    Vec3 point = Vec3::Zero();    // centroid of the samples, mm
    double rms_distance = 0.0;    // mm
};

/// Tool-tip offset by pivoting: solves the stacked least-squares system
/// [R_i | -I] [x_tip; x_pivot] = [-p_i] with an orthogonal decomposition.
/// Throws InsufficientDataError below 3 samples and DegenerateMotionError
/// when the rotations do not constrain the tip (condition number > 1e6 or
/// all rotation axes within 5 degrees of one line).
PivotResult pivot_calibrate(const std::vector<PivotSample>& samples);

/// Robot-world/hand-eye AX = ZB, linear Kronecker-product method: the
/// homogeneous rotation system is solved by its smallest singular direction,
/// scaled to unit-determinant blocks, projected onto rotations, and the
/// translations then follow from a linear least squares. An optional
/// Gauss-Newton polish over both transforms is off by default so baseline
/// outputs stay bit-stable.
HandEyeResult hand_eye_calibrate(const std::vector<HandEyePair>& pairs, bool refine = false,
                                 int refine_max_iter = 20);

/// Best-fit plane through digitized points (centroid + smallest singular
/// direction). The normal is oriented toward `toward` (default: the origin
/// of the digitizing frame). Throws DegenerateGeometryError for collinear or
/// coincident points.
Plane fit_plane(const std::vector<Vec3>& points,
                const std::optional<Vec3>& toward = std::nullopt);

}  // namespace ctsdr
