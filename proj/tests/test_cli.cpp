#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ctsdr/io.hpp"
#include "ctsdr/se3.hpp"
#include "test_helpers.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace ctsdr;
using namespace ctsdr::testing;

namespace {

constexpr const char* kCli = CTSDR_CLI_PATH;
constexpr const char* kData = CTSDR_DATA_DIR;

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("ctsdr_cli_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args, const TempDir& dir) {
    static int counter = 0;
    const std::string out_path = dir.file("stdout_" + std::to_string(counter));
    const std::string err_path = dir.file("stderr_" + std::to_string(counter));
    ++counter;
    const std::string cmd =
        std::string(kCli) + " " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    REQUIRE(status != -1);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_text_file(out_path);
    r.err = read_text_file(err_path);
    return r;
}

std::string data_file(const std::string& rel) {
    return (std::filesystem::path(kData) / rel).string();
}

}  // namespace

TEST_CASE("fk with zero joint angles prints the home pose") {
    TempDir dir;
    const auto r = run_cli(
        "fk --model " + data_file("lbr_med7.json") + " --theta 0,0,0,0,0,0,0", dir);
    CHECK(r.code == 0);
    CHECK(r.err.empty());

    const auto j = nlohmann::json::parse(r.out);
    const auto rot = j.at("rotation");
    const auto tr = j.at("translation");
    REQUIRE(rot.size() == 9);
    for (int i = 0; i < 9; ++i) {
        CHECK(rot[i].get<double>() == doctest::Approx(i % 4 == 0 ? 1.0 : 0.0).epsilon(1e-12));
    }
    CHECK(tr[0].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tr[1].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tr[2].get<double>() == doctest::Approx(1266.0).epsilon(1e-12));
}

TEST_CASE("fk rejects a joint vector of the wrong length") {
    TempDir dir;
    const auto r = run_cli("fk --model " + data_file("lbr_med7.json") + " --theta 0,0,0", dir);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    const auto err = nlohmann::json::parse(r.err);
    CHECK(err.at("error").get<std::string>() == "schema");
}

TEST_CASE("pivot-calib recovers the shipped fixture truth") {
    TempDir dir;
    const auto r = run_cli("pivot-calib --poses " + data_file("fixtures/pivot_poses.csv"), dir);
    REQUIRE(r.code == 0);
    const PivotResult got = pivot_result_from_json(r.out);
    const PivotResult truth =
        pivot_result_from_json(read_text_file(data_file("fixtures/pivot_truth.json")));
    CHECK((got.x_tip - truth.x_tip).norm() < 1e-9);
    CHECK((got.x_pivot - truth.x_pivot).norm() < 1e-9);
    CHECK(got.rms_residual < 1e-9);
}

TEST_CASE("handeye-calib recovers the shipped fixture truth") {
    TempDir dir;
    const auto r = run_cli("handeye-calib --a " + data_file("fixtures/handeye_a.csv") +
                               " --b " + data_file("fixtures/handeye_b.csv"),
                           dir);
    REQUIRE(r.code == 0);
    const HandEyeResult got = hand_eye_result_from_json(r.out);
    const HandEyeResult truth =
        hand_eye_result_from_json(read_text_file(data_file("fixtures/handeye_truth.json")));
    CHECK(rotation_angle_between(got.X.R, truth.X.R) < 1e-6);
    CHECK((got.X.p - truth.X.p).norm() < 1e-6);
    CHECK(rotation_angle_between(got.Z.R, truth.Z.R) < 1e-6);
    CHECK((got.Z.p - truth.Z.p).norm() < 1e-6);
    CHECK(got.rotation_residual < 1e-8);
}

TEST_CASE("degenerate input exits 2 with a JSON error object on stderr") {
    TempDir dir;

    SUBCASE("too few pivot poses") {
        std::vector<PoseLogEntry> entries;
        std::mt19937_64 rng(11);
        for (int i = 0; i < 2; ++i) entries.push_back({i, "tool", random_transform(rng)});
        const std::string path = dir.file("two.csv");
        write_pose_log(path, entries);
        const auto r = run_cli("pivot-calib --poses " + path, dir);
        CHECK(r.code == 2);
        CHECK(r.out.empty());
        const auto err = nlohmann::json::parse(r.err);
        CHECK(err.at("error").get<std::string>() == "insufficient-data");
        CHECK(!err.at("message").get<std::string>().empty());
    }

    SUBCASE("collinear plane points") {
        std::vector<Vec3> pts;
        for (int i = 0; i < 6; ++i) pts.emplace_back(static_cast<double>(i), 0.0, 0.0);
        const std::string path = dir.file("line.csv");
        write_points_csv(path, pts);
        const auto r = run_cli("fit-plane --points " + path, dir);
        CHECK(r.code == 2);
        const auto err = nlohmann::json::parse(r.err);
        CHECK(err.at("error").get<std::string>() == "degenerate-geometry");
    }

    SUBCASE("missing input file") {
        const auto r = run_cli("pivot-calib --poses " + dir.file("absent.csv"), dir);
        CHECK(r.code == 2);
        const auto err = nlohmann::json::parse(r.err);
        CHECK(err.at("error").get<std::string>() == "io");
    }
}

TEST_CASE("fit-plane reports the digitized surface") {
    TempDir dir;
    std::vector<Vec3> pts;
    for (int i = 0; i < 5; ++i) {
        for (int k = 0; k < 5; ++k) {
            pts.emplace_back(10.0 * i, 10.0 * k, 25.0);
        }
    }
    const std::string path = dir.file("grid.csv");
    write_points_csv(path, pts);
    const auto r = run_cli("fit-plane --points " + path + " --toward 0,0,100", dir);
    REQUIRE(r.code == 0);
    const Plane plane = plane_from_json(r.out);
    CHECK((plane.normal - Vec3(0, 0, 1)).norm() < 1e-12);
    CHECK(plane.rms_distance < 1e-12);
    CHECK(std::abs(plane.point.z() - 25.0) < 1e-12);
}

TEST_CASE("plan emits the drill plan and a waypoint stream") {
    TempDir dir;
    const std::string wp_path = dir.file("waypoints.csv");
    const auto r = run_cli(
        "plan --entry 450,0,850 --normal 0,0,1 --standoff 5 --waypoints " + wp_path, dir);
    REQUIRE(r.code == 0);
    const DrillPlan plan = drill_plan_from_json(r.out);
    CHECK((plan.entry_pose.R.col(0) - Vec3(0, 0, -1)).norm() < 1e-12);
    CHECK((plan.entry_pose.p - Vec3(450, 0, 855)).norm() < 1e-12);
    CHECK(plan.guide.radius == 69.5);

    const std::string csv = read_text_file(wp_path);
    CHECK(csv.rfind("t,phase,rpm,", 0) == 0);
    CHECK(csv.find("straight_drill") != std::string::npos);
    CHECK(csv.find("retract_straight") != std::string::npos);
}

TEST_CASE("plan rejects a bend heading parallel to the normal") {
    TempDir dir;
    const auto r = run_cli("plan --entry 0,0,0 --normal 0,-1,0", dir);
    CHECK(r.code == 2);
    const auto err = nlohmann::json::parse(r.err);
    CHECK(err.at("error").get<std::string>() == "undefined-roll");
}

TEST_CASE("simulate with zero noise reports near-exact trials") {
    TempDir dir;
    const auto r = run_cli(
        "simulate --angle 30 --noise-pos 0 --noise-rot 0 --trials 3 --seed 1", dir);
    REQUIRE(r.code == 0);
    const SummaryReport summary = summary_from_json(r.out);
    REQUIRE(summary.groups.size() == 1);
    const AngleSummary& g = summary.groups[0];
    CHECK(g.rotation_goal == 30.0);
    CHECK(g.trials == 3);
    CHECK(g.mean_entry_error < 1e-6);
    CHECK(g.std_entry_error < 1e-6);
    CHECK(std::abs(g.mean_radius - 69.5) < 1e-6);
    CHECK(g.percent_radius_error < 1e-6);
    CHECK(std::abs(g.mean_rotation_actual - 30.0) < 1e-6);
    CHECK(g.rotation_error < 1e-6);
}

TEST_CASE("simulate writes per-trial reports when asked") {
    TempDir dir;
    const std::string reports_path = dir.file("trials.csv");
    const auto r = run_cli("simulate --angle 0 --trials 4 --seed 3 --reports " + reports_path,
                           dir);
    REQUIRE(r.code == 0);
    const auto reports = read_trial_reports_csv(reports_path);
    CHECK(reports.size() == 4);
    for (const TrialReport& t : reports) CHECK(t.rotation_goal == 0.0);
}

TEST_CASE("identical inputs and seed give byte-identical output") {
    TempDir dir;
    const std::string cmd = "simulate --angle 60 --trials 3 --seed 17";
    const auto first = run_cli(cmd, dir);
    const auto second = run_cli(cmd, dir);
    REQUIRE(first.code == 0);
    REQUIRE(second.code == 0);
    CHECK(first.out == second.out);

    const auto third = run_cli("simulate --angle 60 --trials 3 --seed 18", dir);
    CHECK(third.out != first.out);

    const std::string fk_cmd =
        "fk --model " + data_file("lbr_med7.json") + " --theta 10,20,-15,40,5,-30,25";
    CHECK(run_cli(fk_cmd, dir).out == run_cli(fk_cmd, dir).out);
}

TEST_CASE("--output writes the result file instead of stdout") {
    TempDir dir;
    const std::string out_path = dir.file("fk.json");
    const auto r = run_cli("fk --model " + data_file("lbr_med7.json") +
                               " --theta 0,0,0,0,0,0,0 --output " + out_path,
                           dir);
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const auto j = nlohmann::json::parse(read_text_file(out_path));
    CHECK(j.at("translation")[2].get<double>() == doctest::Approx(1266.0).epsilon(1e-12));
}
