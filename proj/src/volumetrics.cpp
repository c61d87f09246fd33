#include "ebr/volumetrics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ebr/errors.hpp"

namespace ebr {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

void check_query(int m, double r) {
    if (m < 1) {
        throw ValidationError("volumetrics: dimension must be >= 1, got " + std::to_string(m));
    }
    if (!(r > 0.0)) {
        throw ValidationError("volumetrics: radius must be positive");
    }
}
} // namespace

double log_ball_volume(int m, double r) {
    check_query(m, r);
    return 0.5 * m * std::log(kPi) + m * std::log(r) - std::lgamma(0.5 * m + 1.0);
}

double ball_volume(int m, double r) {
    return std::exp(log_ball_volume(m, r));
}

double log_ball_volume_asymptotic(int m, double r) {
    check_query(m, r);
    if (m % 2 != 0) {
        throw OddDimensionError("ball_volume_asymptotic: defined for even M only, got " +
                                std::to_string(m));
    }
    return -(0.5 * std::log(2.0 * kE) + std::log(kPi) + std::log(r)) +
           (m + 1.0) * (0.5 * std::log(2.0 * kPi * kE / m) + std::log(r));
}

double ball_volume_asymptotic(int m, double r) {
    return std::exp(log_ball_volume_asymptotic(m, r));
}

double log_inscribed_simplex_volume(int m, double r) {
    check_query(m, r);
    return 0.5 * std::log(static_cast<double>(m)) - std::lgamma(m + 1.0) +
           0.5 * (m + 1.0) * (std::log(m + 1.0) - std::log(static_cast<double>(m))) +
           m * std::log(r);
}

double inscribed_simplex_volume(int m, double r) {
    return std::exp(log_inscribed_simplex_volume(m, r));
}

int unit_ball_argmax() {
    int best = 1;
    double best_log = log_ball_volume(1, 1.0);
    for (int m = 2; m <= 50; ++m) {
        const double lv = log_ball_volume(m, 1.0);
        if (lv > best_log) {
            best_log = lv;
            best = m;
        }
    }
    return best;
}

} // namespace ebr
