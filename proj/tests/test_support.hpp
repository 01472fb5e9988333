#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "nhlab/qmath.hpp"

namespace test_support {

inline constexpr double kPi = std::numbers::pi;

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline bool complex_close(nhlab::Complex a, nhlab::Complex b, double tol = 1e-12) {
    return std::abs(a - b) <= tol;
}

inline nhlab::StateVector qubit_state(double theta0_deg) {
    double a = 2.0 * theta0_deg * kPi / 180.0;
    return nhlab::StateVector{nhlab::Complex(std::cos(a)), nhlab::Complex(std::sin(a))};
}

// Paper angle sets.
struct RealAngles {
    double theta1 = 22.5, theta3 = 60.0, theta5 = 22.5, theta7 = 75.0;
};
struct ComplexAngles {
    double theta1 = 22.5, theta3 = 60.0, theta5 = 0.0, theta7 = 75.0;
};

}  // namespace test_support
