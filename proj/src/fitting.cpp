#include "qrb/fitting.hpp"

#include <algorithm>
#include <cmath>

#include "qrb/errors.hpp"

namespace qrb {

namespace {

double model(double a, double p, double b, double m) {
    return a * std::pow(p, m) + b;
}

double cost(const std::vector<double>& m, const std::vector<double>& F,
            const std::vector<double>* w, double a, double p, double b) {
    double c = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double r = model(a, p, b, m[i]) - F[i];
        c += (w ? (*w)[i] : 1.0) * r * r;
    }
    return c;
}

} // namespace

ExpFit fit_exponential_decay(const std::vector<double>& m, const std::vector<double>& F,
                             const std::vector<double>* weights) {
    if (m.size() != F.size() || m.size() < 3)
        throw Error("fit: need >= 3 aligned points");
    const std::size_t n = m.size();

    ExpFit fit;
    const auto [lo, hi] = std::minmax_element(F.begin(), F.end());
    const double scale = std::max(1.0, std::abs(*hi));
    if (*hi - *lo <= 1e-12 * scale) {
        // Constant data: no decay; p is pinned to 1.
        fit.a = 0.0;
        fit.p = 1.0;
        double sum = 0.0;
        for (double f : F) sum += f;
        fit.b = sum / double(n);
        fit.flat = true;
        fit.converged = true;
        return fit;
    }

    // Seeds: a0 from the endpoint drop, b0 from the tail, p0 from the
    // log-slope of (F - b0).
    const std::size_t i_min = std::size_t(std::min_element(m.begin(), m.end()) - m.begin());
    const std::size_t i_max = std::size_t(std::max_element(m.begin(), m.end()) - m.begin());
    double b0 = F[i_max];
    double a0 = F[i_min] - F[i_max];
    if (std::abs(a0) < 1e-12) a0 = (a0 < 0 ? -1.0 : 1.0) * 1e-12;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = (F[i] - b0) / a0;
        if (y > 1e-14) {
            sx += m[i];
            sy += std::log(y);
            sxx += m[i] * m[i];
            sxy += m[i] * std::log(y);
            ++cnt;
        }
    }
    double p0 = 0.95;
    if (cnt >= 2) {
        const double slope = (double(cnt) * sxy - sx * sy) / (double(cnt) * sxx - sx * sx);
        if (std::isfinite(slope)) p0 = std::exp(slope);
    }
    p0 = std::clamp(p0, 1e-6, 1.049);

    Eigen::Vector3d x(a0, p0, b0);
    double lambda = 1e-3;
    double prev_cost = cost(m, F, weights, x[0], x[1], x[2]);
    for (fit.iterations = 0; fit.iterations < 200; ++fit.iterations) {
        Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
        Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
        for (std::size_t i = 0; i < n; ++i) {
            const double wi = weights ? (*weights)[i] : 1.0;
            const double pm = std::pow(x[1], m[i]);
            const double r = x[0] * pm + x[2] - F[i];
            Eigen::Vector3d j(pm, x[0] * m[i] * std::pow(x[1], m[i] - 1.0), 1.0);
            jtj += wi * j * j.transpose();
            jtr += wi * r * j;
        }
        Eigen::Matrix3d damped = jtj;
        damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
        const Eigen::Vector3d step = damped.ldlt().solve(-jtr);
        Eigen::Vector3d trial = x + step;
        trial[1] = std::clamp(trial[1], 1e-9, 1.05);
        const double c = cost(m, F, weights, trial[0], trial[1], trial[2]);
        if (c < prev_cost) {
            const bool small_step = step.norm() <= 1e-14 * (1.0 + x.norm());
            const bool small_gain = prev_cost - c <= 1e-15 * (1.0 + prev_cost);
            x = trial;
            prev_cost = c;
            lambda = std::max(lambda / 3.0, 1e-12);
            if (small_step || small_gain) {
                fit.converged = true;
                break;
            }
        } else {
            lambda *= 10.0;
            if (lambda > 1e12) break;
        }
    }

    fit.a = x[0];
    fit.p = x[1];
    fit.b = x[2];
    double rss = 0.0;
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = weights ? (*weights)[i] : 1.0;
        const double pm = std::pow(fit.p, m[i]);
        const double r = fit.a * pm + fit.b - F[i];
        rss += r * r;
        Eigen::Vector3d j(pm, fit.a * m[i] * std::pow(fit.p, m[i] - 1.0), 1.0);
        jtj += wi * j * j.transpose();
    }
    fit.residual_rms = std::sqrt(rss / double(n));
    if (n > 3) {
        const double s2 = rss / double(n - 3);
        Eigen::Matrix3d inv = jtj.completeOrthogonalDecomposition().pseudoInverse();
        fit.cov = s2 * inv;
    }
    return fit;
}

} // namespace qrb
