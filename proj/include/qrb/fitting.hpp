#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qrb/errors.hpp"

namespace qrb {

/// Result of fitting f(m) = a p^m + b by Levenberg-Marquardt least squares.
struct ExpFit {
    double a = 0.0;
    double p = 1.0;
    double b = 0.0;
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero(); // order (a, p, b)
    double residual_rms = 0.0;
    bool converged = false;
    bool flat = false; // data constant within tolerance; p pinned to 1
    int iterations = 0;
};

/// weights, when given, multiply the squared residuals (inverse-variance).
ExpFit fit_exponential_decay(const std::vector<double>& m, const std::vector<double>& F,
                             const std::vector<double>* weights = nullptr);

} // namespace qrb
