#pragma once

#include "ctsdr/se3.hpp"

#include <random>

namespace ctsdr::testing {

// Deterministic generators for property tests. Angles stay below pi so the
// log branch is unambiguous unless a test asks for the near-pi regime.

inline Vec3 random_unit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> z(-1.0, 1.0);
    std::uniform_real_distribution<double> phi(0.0, 2.0 * std::numbers::pi);
    const double c = z(rng);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double a = phi(rng);
    return Vec3(s * std::cos(a), s * std::sin(a), c);
}

inline Vec3 random_vec(std::mt19937_64& rng, double scale = 100.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return Vec3(u(rng), u(rng), u(rng));
}

inline Mat3 random_rotation(std::mt19937_64& rng, double max_angle = 3.0) {
    std::uniform_real_distribution<double> a(0.0, max_angle);
    return exp_rotation(random_unit(rng), a(rng));
}

inline Transform random_transform(std::mt19937_64& rng, double pos_scale = 100.0,
                                  double max_angle = 3.0) {
    return Transform{random_rotation(rng, max_angle), random_vec(rng, pos_scale)};
}

inline double pose_gap(const Transform& a, const Transform& b) {
    return rotation_angle_between(a.R, b.R) + (a.p - b.p).norm();
}

}  // namespace ctsdr::testing
