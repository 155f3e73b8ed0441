#include "ctsdr/frame_graph.hpp"

#include "ctsdr/errors.hpp"

#include <array>
#include <cmath>
#include <map>
#include <queue>

namespace ctsdr {

namespace {

constexpr std::array<std::pair<FrameId, const char*>, 9> kFrameNames = {{
    {FrameId::World, "world"},
    {FrameId::RobotBase, "robot_base"},
    {FrameId::RobotEe, "robot_ee"},
    {FrameId::SdrTip, "sdr_tip"},
    {FrameId::NdiCamera, "ndi_camera"},
    {FrameId::TrackerTool, "tracker_tool"},
    {FrameId::DigitizerMarkers, "digitizer_markers"},
    {FrameId::DigitizerTip, "digitizer_tip"},
    {FrameId::Specimen, "specimen"},
}};

}  // namespace

const char* to_string(FrameId id) {
    for (const auto& [fid, name] : kFrameNames) {
        if (fid == id) return name;
    }
    return "unknown";
}

FrameId frame_from_string(const std::string& name) {
    for (const auto& [fid, fname] : kFrameNames) {
        if (name == fname) return fid;
    }
    throw SchemaError("unknown frame name: " + name);
}

const char* to_string(EdgeSource s) {
    switch (s) {
        case EdgeSource::Static: return "static";
        case EdgeSource::Fk: return "fk";
        case EdgeSource::Tracked: return "tracked";
        case EdgeSource::Calibrated: return "calibrated";
    }
    return "static";
}

EdgeSource edge_source_from_string(const std::string& name) {
    if (name == "static") return EdgeSource::Static;
    if (name == "fk") return EdgeSource::Fk;
    if (name == "tracked") return EdgeSource::Tracked;
    if (name == "calibrated") return EdgeSource::Calibrated;
    throw SchemaError("unknown edge source: " + name);
}

void FrameGraph::add_edge(FrameId parent, FrameId child, const Transform& transform,
                          EdgeSource source) {
    if (parent == child) {
        throw AmbiguousPathError("frame graph: self-edge on " + std::string(to_string(parent)));
    }
    for (const auto& e : edges_) {
        const bool same = e.parent == parent && e.child == child;
        const bool reversed = e.parent == child && e.child == parent;
        if (same || reversed) {
            throw AmbiguousPathError("frame graph: edge between " +
                                     std::string(to_string(parent)) + " and " +
                                     std::string(to_string(child)) + " already registered");
        }
    }
    if (has_frame(parent) && has_frame(child)) {
        // Both frames already connected somewhere: a new edge would close a cycle.
        try {
            resolve(parent, child);
            throw AmbiguousPathError("frame graph: edge would create a second path between " +
                                     std::string(to_string(parent)) + " and " +
                                     std::string(to_string(child)));
        } catch (const NoPathError&) {
            // Different components: linking them is fine.
        }
    }
    edges_.push_back({parent, child, transform, source});
}

void FrameGraph::update_edge(FrameId parent, FrameId child, const Transform& transform) {
    for (auto& e : edges_) {
        if (e.parent == parent && e.child == child) {
            e.transform = transform;
            return;
        }
        if (e.parent == child && e.child == parent) {
            e.transform = transform.inverse();
            return;
        }
    }
    throw NoPathError("frame graph: no edge between " + std::string(to_string(parent)) +
                      " and " + std::string(to_string(child)));
}

bool FrameGraph::has_frame(FrameId id) const {
    for (const auto& e : edges_) {
        if (e.parent == id || e.child == id) return true;
    }
    return false;
}

Transform FrameGraph::resolve(FrameId from, FrameId to) const {
    if (from == to) {
        if (!has_frame(from)) {
            throw NoPathError("frame graph: unknown frame " + std::string(to_string(from)));
        }
        return Transform::Identity();
    }
    if (!has_frame(from) || !has_frame(to)) {
        throw NoPathError("frame graph: unknown frame in query");
    }

    // BFS over the undirected tree, accumulating the transform from `from`.
    std::map<FrameId, Transform> reached;
    reached[from] = Transform::Identity();
    std::queue<FrameId> frontier;
    frontier.push(from);
    while (!frontier.empty()) {
        const FrameId cur = frontier.front();
        frontier.pop();
        const Transform& acc = reached.at(cur);
        if (cur == to) return acc;
        for (const auto& e : edges_) {
            if (e.parent == cur && reached.find(e.child) == reached.end()) {
                reached[e.child] = acc * e.transform;
                frontier.push(e.child);
            } else if (e.child == cur && reached.find(e.parent) == reached.end()) {
                reached[e.parent] = acc * e.transform.inverse();
                frontier.push(e.parent);
            }
        }
    }
    auto it = reached.find(to);
    if (it == reached.end()) {
        throw NoPathError("frame graph: frames " + std::string(to_string(from)) + " and " +
                          std::string(to_string(to)) + " are disconnected");
    }
    return it->second;
}

Transform build_entry_pose(const EntryGoal& goal) {
    if (goal.standoff < 0.0) {
        throw OutOfRangeError("build_entry_pose: standoff must be non-negative");
    }
    const double nn = goal.surface_normal.norm();
    if (nn < 1e-12) throw InvalidAxisError("build_entry_pose: zero surface normal");
    const Vec3 normal = goal.surface_normal / nn;

    const Vec3 x_axis = -normal;
    Vec3 heading = goal.bend_heading - goal.bend_heading.dot(x_axis) * x_axis;
    const double hn = heading.norm();
    if (hn < 1e-9) {
        throw UndefinedRollError("build_entry_pose: bend heading parallel to surface normal");
    }
    heading /= hn;

    const Vec3 y_axis = -heading;
    const Vec3 z_axis = x_axis.cross(y_axis);

    Transform pose;
    pose.R.col(0) = x_axis;
    pose.R.col(1) = y_axis;
    pose.R.col(2) = z_axis;
    pose.p = goal.entry_point + goal.standoff * normal;
    return pose;
}

}  // namespace ctsdr
