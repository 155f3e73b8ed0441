#pragma once

#include "ctsdr/phase.hpp"
#include "ctsdr/se3.hpp"

#include <vector>

namespace ctsdr {

/// Curved steering guide of the drilling tool. The guide bends the tip along
/// a fixed-radius arc in the tool XY plane; the tangent rotates about tool +Z
/// so that the tip displaces toward tool -Y.
struct SteeringGuide {
    double radius = 69.5;  // mm
};

/// Parameters of one drilling execution. Lengths mm, speeds mm/s.
///
/// straight_travel covers the 5 mm standoff plus the nominal 13 mm of
/// straight channel, so the tip crosses the entry face 5 mm into the phase.
struct DrillPlan {
    double standoff = 5.0;
    double straight_travel = 18.0;
    double straight_speed = 1.0;
    double arc_length = 35.0;
    double arc_speed = 2.5;
    double drill_rpm = 8250.0;
    double retract_rpm = 1000.0;
    SteeringGuide guide;
    Transform entry_pose;  // tool pose at standoff, +X into the material

    /// Throws OutOfRangeError unless every length, speed and rpm is positive
    /// and the arc stays under a half circle (arc_length < radius * pi).
    void validate() const;
};

/// Tip pose plus scalar progress along the planned path.
struct TipState {
    Transform pose;
    double insertion_depth = 0.0;  // mm travelled in the straight phase
    double arc_progress = 0.0;     // mm travelled along the arc
};

/// Tip pose after `depth` mm of straight travel: entry_pose translated along
/// its own +X axis, orientation unchanged. depth must lie in
/// [0, straight_travel].
Transform tip_pose_straight(const DrillPlan& plan, double depth);

/// Tip pose after `s` mm along the curved phase. With phi = s / radius, the
/// pose relative to tip_pose_straight(straight_travel) is
///   position (radius*sin(phi), -radius*(1 - cos(phi)), 0),
///   orientation Rz(-phi),
/// so the tangent swings toward tool -Y. s must lie in [0, arc_length].
Transform tip_pose_curved(const DrillPlan& plan, double s);

/// Tip state at `path_length` mm along the full drilled path, where the
/// straight phase spans [0, straight_travel] and the arc continues to
/// straight_travel + arc_length.
TipState tip_state_at(const DrillPlan& plan, double path_length);

/// One timed end-effector target. Time is seconds from the start of the
/// straight phase (the aligning waypoint sits at t = 0 with the spindle off).
struct Waypoint {
    double t = 0.0;
    Transform ee_target;
    double rpm = 0.0;
    Phase phase = Phase::Aligning;
};

/// Discretizes the plan into end-effector targets at `step` mm spacing:
/// one aligning waypoint at the entry pose, the straight and curved drilling
/// phases at their programmed speeds and drill_rpm, then the same geometry
/// reversed (curved first) at the same speeds and retract_rpm. Phase
/// endpoints are always emitted; a step larger than a phase yields just the
/// endpoint. `ee_from_tip` maps tip poses to end-effector targets
/// (ee = tip * inverse(ee_from_tip)); pass the identity to plan in tip space.
std::vector<Waypoint> plan_waypoints(const DrillPlan& plan, double step,
                                     const Transform& ee_from_tip = Transform::Identity());

}  // namespace ctsdr
