#include "ctsdr/errors.hpp"
#include "ctsdr/se3.hpp"

#include "doctest.h"
#include "test_helpers.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <random>

using namespace ctsdr;
using namespace ctsdr::testing;

namespace {

// Independent oracle for the screw exponential with a rotation axis through
// point q: translate q to the origin, rotate, translate back.
Transform conjugation_oracle(const Vec3& w, const Vec3& q, double theta) {
    Transform shift_in{Mat3::Identity(), -q};
    Transform rot{Eigen::AngleAxisd(theta, w).toRotationMatrix(), Vec3::Zero()};
    Transform shift_out{Mat3::Identity(), q};
    return shift_out * rot * shift_in;
}

}  // namespace

TEST_CASE("exp_rotation matches the angle-axis oracle") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 200; ++i) {
        const Vec3 w = random_unit(rng);
        std::uniform_real_distribution<double> a(0.0, std::numbers::pi - 1e-3);
        const double theta = a(rng);
        const Mat3 expected = Eigen::AngleAxisd(theta, w).toRotationMatrix();
        CHECK((exp_rotation(w, theta) - expected).norm() < 1e-12);
    }
}

TEST_CASE("exp_screw handles the documented special cases") {
    SUBCASE("axis through the origin gives a pure rotation") {
        ScrewAxis s;  // z axis, zero pitch, through origin
        const Transform t = exp_screw(s, std::numbers::pi);
        CHECK(t.p.norm() < 1e-12);
        CHECK(rotation_angle_between(t.R, rot_z(std::numbers::pi)) < 1e-12);
    }
    SUBCASE("axis offset to q=(1,0,0) maps the origin to (2,0,0) at theta=pi") {
        ScrewAxis s;
        s.w = Vec3::UnitZ();
        s.v = -s.w.cross(Vec3(1.0, 0.0, 0.0));
        CHECK((s.v - Vec3(0.0, -1.0, 0.0)).norm() < 1e-15);
        const Transform t = exp_screw(s, std::numbers::pi);
        CHECK((t.apply(Vec3::Zero()) - Vec3(2.0, 0.0, 0.0)).norm() < 1e-12);
        const Transform expected =
            conjugation_oracle(Vec3::UnitZ(), Vec3(1.0, 0.0, 0.0), std::numbers::pi);
        CHECK(pose_gap(t, expected) < 1e-12);
    }
    SUBCASE("zero angle is the identity") {
        std::mt19937_64 rng(7);
        ScrewAxis s;
        s.w = random_unit(rng);
        s.v = random_vec(rng, 5.0);
        CHECK(pose_gap(exp_screw(s, 0.0), Transform::Identity()) < 1e-15);
    }
    SUBCASE("random offset axes agree with the conjugation oracle") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> a(-3.0, 3.0);
        for (int i = 0; i < 200; ++i) {
            const Vec3 w = random_unit(rng);
            const Vec3 q = random_vec(rng, 50.0);
            const double theta = a(rng);
            ScrewAxis s;
            s.w = w;
            s.v = -w.cross(q);
            CHECK(pose_gap(exp_screw(s, theta), conjugation_oracle(w, q, theta)) < 1e-10);
        }
    }
}

TEST_CASE("one-parameter subgroup property on a shared axis") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> a(-1.5, 1.5);
    for (int i = 0; i < 100; ++i) {
        ScrewAxis s;
        s.w = random_unit(rng);
        s.v = random_vec(rng, 10.0);
        s.h = 0.0;
        const double t1 = a(rng);
        const double t2 = a(rng);
        const Transform lhs = exp_screw(s, t1) * exp_screw(s, t2);
        const Transform rhs = exp_screw(s, t1 + t2);
        CHECK(pose_gap(lhs, rhs) < 1e-9);
    }
}

TEST_CASE("log_transform special branches") {
    SUBCASE("identity yields the canonical zero screw") {
        const auto [axis, theta] = log_transform(Transform::Identity());
        CHECK(theta == 0.0);
        CHECK((axis.w - Vec3::UnitZ()).norm() == 0.0);
    }
    SUBCASE("pure translation yields w=0 and v along the displacement") {
        Transform t;
        t.p = Vec3(3.0, -4.0, 0.0);
        const auto [axis, theta] = log_transform(t);
        CHECK(axis.w.norm() < 1e-15);
        CHECK(theta == doctest::Approx(5.0).epsilon(1e-12));
        CHECK((axis.v - Vec3(0.6, -0.8, 0.0)).norm() < 1e-12);
    }
    SUBCASE("rotation by pi picks a consistent axis") {
        const Transform t{rot_x(std::numbers::pi), Vec3::Zero()};
        const auto [axis, theta] = log_transform(t);
        CHECK(theta == doctest::Approx(std::numbers::pi).epsilon(1e-12));
        CHECK(std::abs(std::abs(axis.w.x()) - 1.0) < 1e-12);
        CHECK(pose_gap(exp_screw(axis, theta), t) < 1e-9);
    }
}

TEST_CASE("log/exp round-trips across the angle range") {
    std::mt19937_64 rng(31);
    SUBCASE("generic angles") {
        std::uniform_real_distribution<double> a(1e-4, std::numbers::pi - 1e-3);
        for (int i = 0; i < 300; ++i) {
            const double theta = a(rng);
            const Transform t{exp_rotation(random_unit(rng), theta), random_vec(rng, 200.0)};
            const auto [axis, rec] = log_transform(t);
            CHECK(std::abs(rec - theta) < 1e-9);
            CHECK(pose_gap(exp_screw(axis, rec), t) < 1e-9);
        }
    }
    SUBCASE("near-pi angles") {
        std::uniform_real_distribution<double> a(std::numbers::pi - 1e-6, std::numbers::pi);
        for (int i = 0; i < 100; ++i) {
            const Transform t{exp_rotation(random_unit(rng), a(rng)), random_vec(rng, 50.0)};
            const auto [axis, rec] = log_transform(t);
            CHECK(pose_gap(exp_screw(axis, rec), t) < 1e-8);
        }
    }
    SUBCASE("tiny angles stay finite and accurate") {
        for (double theta : {1e-12, 1e-10, 1e-8, 1e-6}) {
            const Transform t{exp_rotation(Vec3::UnitY(), theta), Vec3(1.0, 2.0, 3.0)};
            const auto [axis, rec] = log_transform(t);
            CHECK(std::isfinite(rec));
            CHECK(pose_gap(exp_screw(axis, rec), t) < 1e-9);
        }
    }
}

TEST_CASE("group operations satisfy the group axioms") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 1000; ++i) {
        const Transform a = random_transform(rng);
        const Transform b = random_transform(rng);
        const Transform c = random_transform(rng);
        CHECK(pose_gap(compose(a, invert(a)), Transform::Identity()) < 1e-9);
        CHECK(pose_gap(compose(invert(a), a), Transform::Identity()) < 1e-9);
        CHECK(pose_gap(compose(compose(a, b), c), compose(a, compose(b, c))) < 1e-9);
        CHECK(pose_gap(compose(a, Transform::Identity()), a) < 1e-15);
    }
}

TEST_CASE("rotation_angle_between") {
    CHECK(rotation_angle_between(Mat3::Identity(), rot_z(deg_to_rad(30.0))) ==
          doctest::Approx(deg_to_rad(30.0)).epsilon(1e-12));
    CHECK(rotation_angle_between(rot_z(deg_to_rad(10.0)), rot_z(deg_to_rad(40.0))) ==
          doctest::Approx(deg_to_rad(30.0)).epsilon(1e-12));

    std::mt19937_64 rng(53);
    for (int i = 0; i < 200; ++i) {
        const Mat3 r1 = random_rotation(rng);
        const Mat3 r2 = random_rotation(rng);
        // Oracle: clamped arccos of the relative rotation's trace.
        const Mat3 rel = r1.transpose() * r2;
        const double c = std::clamp((rel.trace() - 1.0) / 2.0, -1.0, 1.0);
        const double expected = std::acos(c);
        CHECK(std::abs(rotation_angle_between(r1, r2) - expected) < 1e-9);
        CHECK(std::abs(rotation_angle_between(r2, r1) - expected) < 1e-9);
    }
}

TEST_CASE("project_to_rotation") {
    std::mt19937_64 rng(61);
    SUBCASE("fixed point on valid rotations") {
        for (int i = 0; i < 100; ++i) {
            const Mat3 r = random_rotation(rng);
            CHECK((project_to_rotation(r) - r).norm() < 1e-12);
        }
    }
    SUBCASE("projects a perturbed rotation back to the manifold") {
        for (int i = 0; i < 100; ++i) {
            const Mat3 r = random_rotation(rng);
            Mat3 noisy = r;
            for (int k = 0; k < 9; ++k) {
                noisy(k / 3, k % 3) += 1e-4 * std::uniform_real_distribution<double>(-1, 1)(rng);
            }
            const Mat3 proj = project_to_rotation(noisy);
            CHECK(is_rotation(proj, 1e-9));
            CHECK((proj - r).norm() < 1e-3);
        }
    }
    SUBCASE("flips the sign on an improper orthogonal matrix") {
        Mat3 mirror = Mat3::Identity();
        mirror(2, 2) = -1.0;
        const Mat3 proj = project_to_rotation(mirror);
        CHECK(is_rotation(proj, 1e-9));
    }
    SUBCASE("rank-deficient input is rejected") {
        Mat3 bad = Mat3::Zero();
        bad(0, 0) = 1.0;
        CHECK_THROWS_AS(project_to_rotation(bad), DegenerateMatrixError);
    }
}

TEST_CASE("transform validity checks") {
    std::mt19937_64 rng(71);
    Transform t = random_transform(rng);
    CHECK(t.is_valid());
    Transform bad = t;
    bad.R(0, 0) += 0.01;
    CHECK_FALSE(bad.is_valid());
    CHECK(is_rotation(t.R));
    Mat3 mirror = Mat3::Identity();
    mirror(1, 1) = -1.0;
    CHECK_FALSE(is_rotation(mirror));
}

TEST_CASE("matrix round-trip") {
    std::mt19937_64 rng(83);
    const Transform t = random_transform(rng);
    const Transform back = Transform::from_matrix(t.matrix());
    CHECK(pose_gap(t, back) < 1e-15);
}
