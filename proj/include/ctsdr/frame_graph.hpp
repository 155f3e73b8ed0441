#pragma once

#include "ctsdr/se3.hpp"

#include <string>
#include <vector>

namespace ctsdr {

/// Frames of the drilling system. World is fixed at the robot base; the
/// others mirror the tracked and calibrated bodies.
enum class FrameId {
    World,
    RobotBase,
    RobotEe,
    SdrTip,
    NdiCamera,
    TrackerTool,
    DigitizerMarkers,
    DigitizerTip,
    Specimen,
};

const char* to_string(FrameId id);
FrameId frame_from_string(const std::string& name);

/// How an edge transform was obtained.
enum class EdgeSource { Static, Fk, Tracked, Calibrated };

const char* to_string(EdgeSource s);
EdgeSource edge_source_from_string(const std::string& name);

/// Tree of frames with transform-labelled edges. An edge (parent, child, T)
/// stores the child frame expressed in the parent: p_parent = T * p_child.
/// Insertion rejects duplicate edges and anything that would close a cycle,
/// so every frame pair has at most one path and resolution is unambiguous.
class FrameGraph {
public:
    struct Edge {
        FrameId parent;
        FrameId child;
        Transform transform;
        EdgeSource source = EdgeSource::Static;
    };

    /// Throws AmbiguousPathError on duplicate registration or a cycle.
    void add_edge(FrameId parent, FrameId child, const Transform& transform,
                  EdgeSource source = EdgeSource::Static);

    /// Replaces the transform of an existing edge (same endpoints, either
    /// direction of registration). Throws NoPathError if absent.
    void update_edge(FrameId parent, FrameId child, const Transform& transform);

    bool has_frame(FrameId id) const;

    /// Transform of `to` expressed in `from`, composed along the unique path.
    /// Throws NoPathError when either frame is unknown or unreachable.
    Transform resolve(FrameId from, FrameId to) const;

    const std::vector<Edge>& edges() const { return edges_; }

private:
    std::vector<Edge> edges_;
};

/// Target for the drill at the specimen face.
struct EntryGoal {
    Vec3 entry_point = Vec3::Zero();       // mm, world
    Vec3 surface_normal = Vec3::UnitZ();   // unit, outward from the face
    Vec3 bend_heading = -Vec3::UnitY();    // desired tool -Y direction at entry
    double standoff = 5.0;                 // mm backed off the face
};

/// Tool pose at the entry: +X drills into the face (-surface_normal), -Y is
/// the bend heading after Gram-Schmidt against X, Z completes the frame, and
/// the translation backs off the entry point by `standoff` along the outward
/// normal. Throws UndefinedRollError when the heading is parallel to the
/// normal and OutOfRangeError for a negative standoff.
Transform build_entry_pose(const EntryGoal& goal);

}  // namespace ctsdr
