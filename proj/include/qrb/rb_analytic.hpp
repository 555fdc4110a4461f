#pragma once

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qrb/channels.hpp"
#include "qrb/superop.hpp"

namespace qrb {

/// M = <G (x) Gt> over the gate set, full (d^4) and unital (D^2) sectors.
struct MOperator {
    Mat full;    // 16 x 16
    Mat unital;  // 9 x 9
    Eigen::Vector3d avg_translation;
    Eigen::Matrix3d avg_unital;
};

MOperator build_M(const std::vector<Superop>& cliffords, const std::vector<Superop>& noisy);

struct DecayRate {
    double p = 1.0;
    std::vector<std::complex<double>> eigenvalues; // unital sector, |.|-descending
    double gap = 0.0;                              // |p2| / |p1|
    bool imag_warning = false;
    bool gap_warning = false;
    // Dominant eigenpair, normalized to (R1^dag|L1) = 1; absent when the
    // dominant eigenvalue sits in a degenerate cluster (|p_i - p_j| < 1e-10),
    // which is reported as a cluster rather than split.
    std::optional<Vec> right_eigvec; // |L1)
    std::optional<Vec> left_eigvec;  // (R1^dag|
    bool degenerate_cluster = false;
};

/// p = real part of the largest-magnitude eigenvalue of M_u.
DecayRate decay_rate(const MOperator& M);

/// m-independent constants of F_{m+1} ~ a p^m + b predicted from the
/// dominant eigenpair of M_u and the fiducial state.
struct TheoryIntercepts {
    double a = 0.0;
    double b = 0.0;
};
TheoryIntercepts theory_intercepts(const MOperator& M, const Eigen::Vector3d& psi0);

/// q = (1| M_u |1).
double q_from_M(const MOperator& M);

struct SpectralReport {
    double p = 1.0;
    double q = 1.0;
    double r = 0.0;
    double epsilon = 0.0;
    std::optional<double> alpha, beta, x1, x2;
    std::vector<std::complex<double>> eigenvalues;
    double gap = 0.0;
    bool imag_warning = false;
    bool gap_warning = false;
    bool beta_flagged = false; // beta < 0 accepted but flagged
    int d = 2;
};

/// Rank-1 geometry of the unital L*G*R model: alpha, beta, x1, x2,
/// p = alpha*beta and q = alpha*x1*(beta*x1 + sqrt(1-beta^2)*x2).
SpectralReport lgr_geometry(const Superop& L, const Superop& R);

/// Generic spectral report for an arbitrary noisy gate set.
SpectralReport spectral_report(const std::vector<Superop>& cliffords,
                               const std::vector<Superop>& noisy);

struct InfidelityBound {
    double general = 0.0;          // (d-1)/(2d) (1-alpha) + r/2
    std::optional<double> qubit;   // r/2 when d = 2
};

InfidelityBound infidelity_bound(double alpha, double r, int d);

/// Largest singular value of E_u; <= 1 + 1e-10 for every CPTP qubit channel.
double alpha_qubit_check(const Superop& E);

struct NonunitalSpectrum {
    std::vector<std::complex<double>> eigenvalues; // of the full 16x16 M
    bool has_unit_eigenvalue = false;
    int n_zero = 0;                  // eigenvalues with |l| < 1e-9
    double factorization_max_dist = 0.0;
    bool factorization_ok = false;   // spectrum = {1} u {0}^D u spec(<Gt_u>) u spec(M_u)
    double k_norm = 0.0;             // ||M - M_ideal||_2
    double bauer_fike_max_dist = 0.0;
    bool bauer_fike_ok = false;      // every eigenvalue within k_norm of {0, 1}
};

NonunitalSpectrum nonunital_spectrum(const MOperator& M);

/// Coefficients p^(1)..p^(4) of p(theta) = 1 + sum_n theta^n p^(n), plus the
/// intermediate bracket values (1|M^(i)...|1). Each order is reported only if
/// every lower order vanished within 1e-9; valid_to is the highest such order.
struct PerturbSeries {
    std::array<double, 5> coeffs{}; // index n = 1..4; [0] unused
    int valid_to = 0;
    std::map<std::string, double> brackets;

    /// p^(n); throws FormulaPreconditionViolated beyond valid_to.
    double coeff(int n) const {
        if (n < 1 || n > valid_to)
            throw FormulaPreconditionViolated("perturb series: order " + std::to_string(n) +
                                              " not valid (lower order nonzero)");
        return coeffs[std::size_t(n)];
    }
};

/// Taylor coefficients M^(0)..M^(4) of M_u(theta), exact truncated-series route.
/// The model must be PerGateUnitary or ProctorPrimitive.
std::array<Mat, 5> taylor_M_exact(const NoiseModel& model);

/// Finite-difference route: 9-point central stencils with Richardson
/// extrapolation from h = 1e-2 and 5e-3.
std::array<Mat, 5> taylor_M_fd(const std::function<Mat(double)>& Mu_of_theta);

/// Unital M_u(theta) for a theta-parameterized unitary-noise model.
Mat Mu_of_theta(const NoiseModel& model, double theta);

PerturbSeries perturb_series(const NoiseModel& model, int max_order = 4);
PerturbSeries perturb_series_from_taylor(const std::array<Mat, 5>& Mn, int max_order = 4);

struct GaugeComparison {
    double p = 0.0, p_prime = 0.0;
    double q = 0.0, q_prime = 0.0;
    bool p_equal = false; // |p - p'| < 1e-10
};

/// Compare the gate set with its conjugate Gt' = U Gt U^dagger.
GaugeComparison same_p_different_q(const std::vector<Superop>& noisy, const Superop& U);

struct Fig1Row {
    double beta, p_over_alpha, q_lo, q_hi, q_sample;
};

/// Band of attainable q/alpha vs beta; the sample column traces the
/// conjugate-unitary family L = R^dagger.
std::vector<Fig1Row> sweep_fig1(int grid);

struct ProctorScanRow {
    double theta, epsilon, r_spectral, r_fitted;
};

/// <theta_k^2>/theta^2 for the word table, evaluated at a small reference
/// angle; throws DecompositionGateFailed when off 3/2 by more than 1%.
double proctor_decomposition_gate(const ProctorPrimitive& model);

} // namespace qrb
