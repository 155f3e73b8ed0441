#include "ctsdr/io.hpp"

#include "ctsdr/errors.hpp"
#include "ctsdr/procedure.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ctsdr {

namespace {

using nlohmann::json;

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
}

Vec3 vec3_from(const json& j) {
    if (!j.is_array() || j.size() != 3) throw SchemaError("expected a 3-element array");
    return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

/// Parses {"rotation": [...9...], "translation": [...3...]} verbatim; the
/// rotation is checked within 1e-6 but not altered, so a written transform
/// reloads bit-exactly.
Transform transform_from(const json& j) {
    const json& rot = j.at("rotation");
    if (!rot.is_array() || rot.size() != 9) throw SchemaError("rotation must hold 9 reals");
    Transform t;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) t.R(r, c) = rot[3 * r + c].get<double>();
    }
    t.p = vec3_from(j.at("translation"));
    if (!is_rotation(t.R, 1e-6)) throw SchemaError("rotation block is not orthonormal");
    return t;
}

std::string vec3_json(const Vec3& v) {
    return "[" + format_double(v.x()) + ", " + format_double(v.y()) + ", " +
           format_double(v.z()) + "]";
}

std::string rotation_json(const Mat3& R) {
    std::string out = "[";
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            if (r != 0 || c != 0) out += ", ";
            out += format_double(R(r, c));
        }
    }
    return out + "]";
}

template <typename Fn>
auto with_schema_context(const char* what, Fn&& fn) {
    try {
        return fn();
    } catch (const json::exception& e) {
        throw SchemaError(std::string(what) + ": " + e.what());
    }
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw SchemaError(std::string(what) + ": not a number: '" + s + "'");
    }
}

/// Lines of a CSV file with verified header, trailing \r stripped.
std::vector<std::string> read_csv_rows(const std::string& path, const std::string& header) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw SchemaError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) {
        throw SchemaError(path + ": expected header '" + header + "', got '" + line + "'");
    }
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) rows.push_back(line);
    }
    return rows;
}

constexpr const char* kPoseLogHeader =
    "idx,frame,r00,r01,r02,r10,r11,r12,r20,r21,r22,tx,ty,tz";
constexpr const char* kPointsHeader = "x,y,z";
constexpr const char* kWaypointHeader =
    "t,phase,rpm,r00,r01,r02,r10,r11,r12,r20,r21,r22,tx,ty,tz";
constexpr const char* kTrialHeader =
    "entry_position_error,rotation_goal,rotation_commanded,rotation_actual,"
    "straight_length_measured,radius_measured";

void append_matrix_fields(std::string& line, const Transform& t) {
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) line += "," + format_double(t.R(r, c));
    }
    line += "," + format_double(t.p.x()) + "," + format_double(t.p.y()) + "," +
            format_double(t.p.z());
}

Transform transform_from_fields(const std::vector<std::string>& f, std::size_t first,
                                const char* what) {
    Transform t;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            t.R(r, c) = parse_double(f[first + 3 * static_cast<std::size_t>(r) +
                                       static_cast<std::size_t>(c)],
                                     what);
        }
    }
    t.p = Vec3(parse_double(f[first + 9], what), parse_double(f[first + 10], what),
               parse_double(f[first + 11], what));
    if (!is_rotation(t.R, 1e-6)) {
        throw SchemaError(std::string(what) + ": rotation block is not orthonormal within 1e-6");
    }
    t.R = project_to_rotation(t.R);
    return t;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string transform_to_json(const Transform& t) {
    return "{\"rotation\": " + rotation_json(t.R) + ", \"translation\": " + vec3_json(t.p) + "}";
}

std::string pivot_result_to_json(const PivotResult& r) {
    std::ostringstream out;
    out << "{\n"
        << "  \"x_tip\": " << vec3_json(r.x_tip) << ",\n"
        << "  \"x_pivot\": " << vec3_json(r.x_pivot) << ",\n"
        << "  \"rms_residual\": " << format_double(r.rms_residual) << ",\n"
        << "  \"condition_number\": " << format_double(r.condition_number) << "\n"
        << "}\n";
    return out.str();
}

PivotResult pivot_result_from_json(const std::string& text) {
    return with_schema_context("pivot result", [&] {
        const json j = parse_json(text);
        PivotResult r;
        r.x_tip = vec3_from(j.at("x_tip"));
        r.x_pivot = vec3_from(j.at("x_pivot"));
        r.rms_residual = j.at("rms_residual").get<double>();
        r.condition_number = j.at("condition_number").get<double>();
        return r;
    });
}

std::string hand_eye_result_to_json(const HandEyeResult& r) {
    std::ostringstream out;
    out << "{\n"
        << "  \"X\": " << transform_to_json(r.X) << ",\n"
        << "  \"Z\": " << transform_to_json(r.Z) << ",\n"
        << "  \"rotation_residual\": " << format_double(r.rotation_residual) << ",\n"
        << "  \"translation_residual\": " << format_double(r.translation_residual) << "\n"
        << "}\n";
    return out.str();
}

HandEyeResult hand_eye_result_from_json(const std::string& text) {
    return with_schema_context("hand-eye result", [&] {
        const json j = parse_json(text);
        HandEyeResult r;
        r.X = transform_from(j.at("X"));
        r.Z = transform_from(j.at("Z"));
        r.rotation_residual = j.at("rotation_residual").get<double>();
        r.translation_residual = j.at("translation_residual").get<double>();
        return r;
    });
}

std::string plane_to_json(const Plane& p) {
    std::ostringstream out;
    out << "{\n"
        << "  \"normal\": " << vec3_json(p.normal) << ",\n"
        << "  \"point\": " << vec3_json(p.point) << ",\n"
        << "  \"rms_distance\": " << format_double(p.rms_distance) << "\n"
        << "}\n";
    return out.str();
}

Plane plane_from_json(const std::string& text) {
    return with_schema_context("plane", [&] {
        const json j = parse_json(text);
        Plane p;
        p.normal = vec3_from(j.at("normal"));
        p.point = vec3_from(j.at("point"));
        p.rms_distance = j.at("rms_distance").get<double>();
        return p;
    });
}

std::string drill_plan_to_json(const DrillPlan& p) {
    std::ostringstream out;
    out << "{\n"
        << "  \"standoff\": " << format_double(p.standoff) << ",\n"
        << "  \"straight_travel\": " << format_double(p.straight_travel) << ",\n"
        << "  \"straight_speed\": " << format_double(p.straight_speed) << ",\n"
        << "  \"arc_length\": " << format_double(p.arc_length) << ",\n"
        << "  \"arc_speed\": " << format_double(p.arc_speed) << ",\n"
        << "  \"drill_rpm\": " << format_double(p.drill_rpm) << ",\n"
        << "  \"retract_rpm\": " << format_double(p.retract_rpm) << ",\n"
        << "  \"radius\": " << format_double(p.guide.radius) << ",\n"
        << "  \"entry_pose\": " << transform_to_json(p.entry_pose) << "\n"
        << "}\n";
    return out.str();
}

DrillPlan drill_plan_from_json(const std::string& text) {
    return with_schema_context("drill plan", [&] {
        const json j = parse_json(text);
        DrillPlan p;
        p.standoff = j.at("standoff").get<double>();
        p.straight_travel = j.at("straight_travel").get<double>();
        p.straight_speed = j.at("straight_speed").get<double>();
        p.arc_length = j.at("arc_length").get<double>();
        p.arc_speed = j.at("arc_speed").get<double>();
        p.drill_rpm = j.at("drill_rpm").get<double>();
        p.retract_rpm = j.at("retract_rpm").get<double>();
        p.guide.radius = j.at("radius").get<double>();
        p.entry_pose = transform_from(j.at("entry_pose"));
        return p;
    });
}

std::string summary_to_json(const SummaryReport& s) {
    std::ostringstream out;
    out << "{\n  \"ideal_radius\": " << format_double(s.ideal_radius) << ",\n  \"groups\": [";
    for (std::size_t i = 0; i < s.groups.size(); ++i) {
        const AngleSummary& g = s.groups[i];
        out << (i == 0 ? "\n" : ",\n");
        out << "    {\n"
            << "      \"rotation_goal\": " << format_double(g.rotation_goal) << ",\n"
            << "      \"trials\": " << g.trials << ",\n"
            << "      \"mean_entry_error\": " << format_double(g.mean_entry_error) << ",\n"
            << "      \"std_entry_error\": " << format_double(g.std_entry_error) << ",\n"
            << "      \"mean_radius\": " << format_double(g.mean_radius) << ",\n"
            << "      \"std_radius\": " << format_double(g.std_radius) << ",\n"
            << "      \"percent_radius_error\": " << format_double(g.percent_radius_error)
            << ",\n"
            << "      \"mean_rotation_commanded\": " << format_double(g.mean_rotation_commanded)
            << ",\n"
            << "      \"mean_rotation_actual\": " << format_double(g.mean_rotation_actual)
            << ",\n"
            << "      \"std_rotation_actual\": " << format_double(g.std_rotation_actual) << ",\n"
            << "      \"rotation_error\": " << format_double(g.rotation_error) << "\n"
            << "    }";
    }
    out << (s.groups.empty() ? "]" : "\n  ]") << "\n}\n";
    return out.str();
}

SummaryReport summary_from_json(const std::string& text) {
    return with_schema_context("summary report", [&] {
        const json j = parse_json(text);
        SummaryReport s;
        s.ideal_radius = j.at("ideal_radius").get<double>();
        for (const json& gj : j.at("groups")) {
            AngleSummary g;
            g.rotation_goal = gj.at("rotation_goal").get<double>();
            g.trials = gj.at("trials").get<int>();
            g.mean_entry_error = gj.at("mean_entry_error").get<double>();
            g.std_entry_error = gj.at("std_entry_error").get<double>();
            g.mean_radius = gj.at("mean_radius").get<double>();
            g.std_radius = gj.at("std_radius").get<double>();
            g.percent_radius_error = gj.at("percent_radius_error").get<double>();
            g.mean_rotation_commanded = gj.at("mean_rotation_commanded").get<double>();
            g.mean_rotation_actual = gj.at("mean_rotation_actual").get<double>();
            g.std_rotation_actual = gj.at("std_rotation_actual").get<double>();
            g.rotation_error = gj.at("rotation_error").get<double>();
            s.groups.push_back(g);
        }
        return s;
    });
}

std::string error_to_json(const std::string& kind, const std::string& message) {
    return "{\"error\": \"" + json_escape(kind) + "\", \"message\": \"" + json_escape(message) +
           "\"}";
}

std::string robot_model_to_json(const RobotModel& model) {
    std::ostringstream out;
    out << "{\n  \"joints\": [";
    for (std::size_t i = 0; i < model.axes.size(); ++i) {
        const ScrewAxis& s = model.axes[i];
        const Vec3 q = s.w.cross(s.v);  // nearest axis point to the origin
        out << (i == 0 ? "\n" : ",\n");
        out << "    {\"w\": " << vec3_json(s.w) << ", \"q\": " << vec3_json(q)
            << ", \"h\": " << format_double(s.h) << "}";
    }
    out << "\n  ],\n"
        << "  \"home\": " << transform_to_json(model.home) << ",\n"
        << "  \"limits\": [";
    for (std::size_t i = 0; i < model.limits.size(); ++i) {
        out << (i == 0 ? "\n" : ",\n");
        out << "    [" << format_double(model.limits[i].first) << ", "
            << format_double(model.limits[i].second) << "]";
    }
    out << "\n  ],\n  \"units\": \"mm_rad\"\n}\n";
    return out.str();
}

RobotModel robot_model_from_json(const std::string& text) {
    return with_schema_context("robot model", [&] {
        const json j = parse_json(text);
        if (j.at("units").get<std::string>() != "mm_rad") {
            throw SchemaError("robot model: units must be \"mm_rad\"");
        }
        const json& joints = j.at("joints");
        if (!joints.is_array() || joints.size() != 7) {
            throw SchemaError("robot model: expected exactly 7 joints");
        }
        RobotModel model;
        for (const json& joint : joints) {
            model.axes.push_back(make_screw_axis(vec3_from(joint.at("w")),
                                                 vec3_from(joint.at("q")),
                                                 joint.at("h").get<double>()));
        }
        Transform home = transform_from(j.at("home"));
        home.R = project_to_rotation(home.R);
        model.home = home;
        const json& limits = j.at("limits");
        if (!limits.is_array() || limits.size() != joints.size()) {
            throw SchemaError("robot model: limits must match the joint count");
        }
        for (const json& l : limits) {
            if (!l.is_array() || l.size() != 2) {
                throw SchemaError("robot model: each limit must be [lo, hi]");
            }
            model.limits.emplace_back(l[0].get<double>(), l[1].get<double>());
        }
        model.validate();
        return model;
    });
}

RobotModel load_robot_model(const std::string& path) {
    return robot_model_from_json(read_text_file(path));
}

std::vector<PoseLogEntry> read_pose_log(const std::string& path) {
    std::vector<PoseLogEntry> entries;
    for (const std::string& row : read_csv_rows(path, kPoseLogHeader)) {
        const auto fields = split_csv_line(row);
        if (fields.size() != 14) {
            throw SchemaError(path + ": pose log rows need 14 fields, got " +
                              std::to_string(fields.size()));
        }
        PoseLogEntry e;
        e.idx = static_cast<int>(parse_double(fields[0], "pose log idx"));
        e.frame = fields[1];
        e.pose = transform_from_fields(fields, 2, "pose log");
        entries.push_back(std::move(e));
    }
    return entries;
}

void write_pose_log(const std::string& path, const std::vector<PoseLogEntry>& entries) {
    std::string out = kPoseLogHeader;
    out += "\n";
    for (const PoseLogEntry& e : entries) {
        std::string line = std::to_string(e.idx) + "," + e.frame;
        append_matrix_fields(line, e.pose);
        out += line + "\n";
    }
    write_text_file(path, out);
}

std::vector<Vec3> read_points_csv(const std::string& path) {
    std::vector<Vec3> points;
    for (const std::string& row : read_csv_rows(path, kPointsHeader)) {
        const auto fields = split_csv_line(row);
        if (fields.size() != 3) {
            throw SchemaError(path + ": point rows need 3 fields, got " +
                              std::to_string(fields.size()));
        }
        points.emplace_back(parse_double(fields[0], "point x"),
                            parse_double(fields[1], "point y"),
                            parse_double(fields[2], "point z"));
    }
    return points;
}

void write_points_csv(const std::string& path, const std::vector<Vec3>& points) {
    std::string out = kPointsHeader;
    out += "\n";
    for (const Vec3& p : points) {
        out += format_double(p.x()) + "," + format_double(p.y()) + "," + format_double(p.z()) +
               "\n";
    }
    write_text_file(path, out);
}

void write_waypoints_csv(const std::string& path, const std::vector<Waypoint>& waypoints) {
    std::string out = kWaypointHeader;
    out += "\n";
    for (const Waypoint& w : waypoints) {
        std::string line = format_double(w.t);
        line += ",";
        line += to_string(w.phase);
        line += "," + format_double(w.rpm);
        append_matrix_fields(line, w.ee_target);
        out += line + "\n";
    }
    write_text_file(path, out);
}

void write_trial_reports_csv(const std::string& path, const std::vector<TrialReport>& reports) {
    std::string out = kTrialHeader;
    out += "\n";
    for (const TrialReport& r : reports) {
        out += format_double(r.entry_position_error) + "," + format_double(r.rotation_goal) +
               "," + format_double(r.rotation_commanded) + "," +
               format_double(r.rotation_actual) + "," +
               format_double(r.straight_length_measured) + "," +
               format_double(r.radius_measured) + "\n";
    }
    write_text_file(path, out);
}

std::vector<TrialReport> read_trial_reports_csv(const std::string& path) {
    std::vector<TrialReport> reports;
    for (const std::string& row : read_csv_rows(path, kTrialHeader)) {
        const auto fields = split_csv_line(row);
        if (fields.size() != 6) {
            throw SchemaError(path + ": trial rows need 6 fields, got " +
                              std::to_string(fields.size()));
        }
        TrialReport r;
        r.entry_position_error = parse_double(fields[0], "entry_position_error");
        r.rotation_goal = parse_double(fields[1], "rotation_goal");
        r.rotation_commanded = parse_double(fields[2], "rotation_commanded");
        r.rotation_actual = parse_double(fields[3], "rotation_actual");
        r.straight_length_measured = parse_double(fields[4], "straight_length_measured");
        r.radius_measured = parse_double(fields[5], "radius_measured");
        reports.push_back(r);
    }
    return reports;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw IoError("failed writing " + path);
}

}  // namespace ctsdr
