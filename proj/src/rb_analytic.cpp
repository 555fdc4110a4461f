#include "qrb/rb_analytic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "qrb/metrics.hpp"

namespace qrb {

namespace {

std::vector<std::complex<double>> sorted_eigs(const Mat& m) {
    Eigen::EigenSolver<Mat> es(m);
    if (es.info() != Eigen::Success) throw EigSolverFailure("eigensolver did not converge");
    std::vector<std::complex<double>> evs(es.eigenvalues().data(),
                                          es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(evs.begin(), evs.end(), [](const auto& a, const auto& b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return evs;
}

double bra1_ket1(const Mat& X) {
    const Vec& v1 = ket1_unital();
    return v1.dot(X * v1);
}

Eigen::Matrix3d cross_matrix(const Eigen::Vector3d& m) {
    Eigen::Matrix3d k;
    k << 0, -m.z(), m.y(), m.z(), 0, -m.x(), -m.y(), m.x(), 0;
    return k;
}

// Truncated power series of 3x3 matrices, orders theta^0..theta^4.
using MatSeries = std::array<Eigen::Matrix3d, 5>;

MatSeries series_mul(const MatSeries& A, const MatSeries& B) {
    MatSeries out;
    for (auto& c : out) c.setZero();
    for (int i = 0; i < 5; ++i)
        for (int j = 0; i + j < 5; ++j) out[i + j] += A[i] * B[j];
    return out;
}

// Rotation by (a * theta) about unit axis m, expanded about theta = 0.
MatSeries rotation_series(const Eigen::Vector3d& m, double a) {
    const Eigen::Matrix3d K = cross_matrix(m);
    const Eigen::Matrix3d P = m * m.transpose();
    const Eigen::Matrix3d I = Eigen::Matrix3d::Identity();
    const double a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
    MatSeries s;
    s[0] = I;
    s[1] = a * K;
    s[2] = -a2 / 2.0 * (I - P);
    s[3] = -a3 / 6.0 * K;
    s[4] = a4 / 24.0 * (I - P);
    return s;
}

MatSeries series_const(const Eigen::Matrix3d& m) {
    MatSeries s;
    for (auto& c : s) c.setZero();
    s[0] = m;
    return s;
}

const Mat& m_ideal_full() {
    static const Mat m = ket0() * ket0().transpose() + ket1() * ket1().transpose();
    return m;
}

} // namespace

MOperator build_M(const std::vector<Superop>& cliffords, const std::vector<Superop>& noisy) {
    if (cliffords.size() != noisy.size() || cliffords.empty())
        throw LengthMismatch("build_M: list lengths differ");
    for (const auto& g : noisy)
        if (!g.is_tp()) throw NotTracePreserving("build_M: noisy gate not TP");

    MOperator M;
    M.full = Mat::Zero(16, 16);
    M.unital = Mat::Zero(9, 9);
    M.avg_translation.setZero();
    M.avg_unital.setZero();
    const double w = 1.0 / double(cliffords.size());
    for (std::size_t k = 0; k < cliffords.size(); ++k) {
        M.full += w * kron(cliffords[k].mat(), noisy[k].mat());
        M.unital += w * kron(cliffords[k].unital_block(), noisy[k].unital_block());
        M.avg_translation += w * noisy[k].translation();
        M.avg_unital += w * noisy[k].unital_block();
    }
    return M;
}

namespace {

// Right eigenvector of A nearest the target eigenvalue, as a real vector.
Vec right_eigvec_near(const Mat& A, std::complex<double> target) {
    Eigen::EigenSolver<Mat> es(A);
    if (es.info() != Eigen::Success) throw EigSolverFailure("eigensolver did not converge");
    int best = 0;
    for (int i = 1; i < es.eigenvalues().size(); ++i)
        if (std::abs(es.eigenvalues()(i) - target) < std::abs(es.eigenvalues()(best) - target))
            best = i;
    Eigen::VectorXcd v = es.eigenvectors().col(best);
    // rotate the phase away; dominant eigenvectors here are real up to phase
    int piv = 0;
    for (int i = 1; i < v.size(); ++i)
        if (std::abs(v(i)) > std::abs(v(piv))) piv = i;
    v *= std::abs(v(piv)) / v(piv);
    return v.real();
}

} // namespace

DecayRate decay_rate(const MOperator& M) {
    DecayRate out;
    out.eigenvalues = sorted_eigs(M.unital);
    const auto& top = out.eigenvalues.front();
    out.p = top.real();
    out.imag_warning = std::abs(top.imag()) > 1e-9;
    out.gap = std::abs(top) > 0 ? std::abs(out.eigenvalues[1]) / std::abs(top) : 0.0;
    out.gap_warning = out.gap > 0.5;

    double isolation = 1e300;
    for (std::size_t i = 1; i < out.eigenvalues.size(); ++i)
        isolation = std::min(isolation, std::abs(top - out.eigenvalues[i]));
    out.degenerate_cluster = isolation < 1e-10;
    if (!out.degenerate_cluster && !out.imag_warning) {
        Vec right = right_eigvec_near(M.unital, top);
        Vec left = right_eigvec_near(M.unital.transpose(), top);
        const double ip = left.dot(right);
        if (std::abs(ip) > 1e-12) {
            left /= ip; // (R1^dag|L1) = 1
            out.right_eigvec = right;
            out.left_eigvec = left;
        }
    }
    return out;
}

TheoryIntercepts theory_intercepts(const MOperator& M, const Eigen::Vector3d& psi0) {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Vector4d s0(s, s * psi0.x(), s * psi0.y(), s * psi0.z());
    const Vec psi_vec = vec(Superop(Mat(s0 * s0.transpose()))).v;
    const Vec id_vec = vec(Superop::identity()).v;

    const DecayRate d = decay_rate(M);
    TheoryIntercepts out;

    // b from the eigenvalue-1 pair of the full operator; the |0) direction
    // tilts for nonunital noise, so solve for it rather than assume it.
    Vec r1 = right_eigvec_near(M.full, {1.0, 0.0});
    Vec l1 = right_eigvec_near(M.full.transpose(), {1.0, 0.0});
    out.b = psi_vec.dot(r1) * l1.dot(id_vec) / l1.dot(r1);

    // a from the dominant decaying pair, computed in the full space so the
    // same (R|vec(identity)) contraction applies.
    Vec rp = right_eigvec_near(M.full, {d.p, 0.0});
    Vec lp = right_eigvec_near(M.full.transpose(), {d.p, 0.0});
    out.a = psi_vec.dot(rp) * lp.dot(id_vec) / lp.dot(rp);
    return out;
}

double q_from_M(const MOperator& M) {
    return bra1_ket1(M.unital);
}

SpectralReport lgr_geometry(const Superop& L, const Superop& R) {
    if (!L.is_tp() || !R.is_tp() || !L.is_unital() || !R.is_unital())
        throw Error("lgr_geometry: L and R must be unital TP maps");
    const Eigen::Matrix3d Lu = L.unital_block(), Ru = R.unital_block();
    const double nL = Lu.norm(), nR = Ru.norm();
    if (nL < 1e-12 || nR < 1e-12)
        throw DegenerateNoise("lgr_geometry: vanishing unital block");

    SpectralReport rep;
    const double D = 3.0;
    const double alpha = nL * nR / D;
    const Vec vL = vec_unital(Lu).v / nL;
    const Vec vRd = vec_unital(Ru.transpose()).v / nR; // |R^dagger)
    const double beta = vRd.dot(vL);
    const double x1 = vL.dot(ket1_unital());
    double x2 = 0.0;
    const double ortho2 = 1.0 - beta * beta;
    if (ortho2 > 1e-14) {
        const Vec vPerp = (vRd - beta * vL) / std::sqrt(ortho2);
        x2 = vPerp.dot(ket1_unital());
    }
    rep.alpha = alpha;
    rep.beta = beta;
    rep.x1 = x1;
    rep.x2 = x2;
    rep.p = alpha * beta;
    rep.q = alpha * x1 * (beta * x1 + std::sqrt(std::max(0.0, ortho2)) * x2);
    rep.r = rb_number(rep.p, 2);
    rep.epsilon = rb_number(rep.q, 2);
    rep.beta_flagged = beta < 0.0;
    rep.eigenvalues.assign(9, {0.0, 0.0});
    rep.eigenvalues[0] = {rep.p, 0.0}; // M_u = alpha |L)(R^dagger| is rank one
    rep.gap = 0.0;
    return rep;
}

SpectralReport spectral_report(const std::vector<Superop>& cliffords,
                               const std::vector<Superop>& noisy) {
    const MOperator M = build_M(cliffords, noisy);
    const DecayRate d = decay_rate(M);
    SpectralReport rep;
    rep.p = d.p;
    rep.q = q_from_M(M);
    rep.r = rb_number(rep.p, 2);
    rep.epsilon = rb_number(rep.q, 2);
    rep.eigenvalues = d.eigenvalues;
    rep.gap = d.gap;
    rep.imag_warning = d.imag_warning;
    rep.gap_warning = d.gap_warning;
    return rep;
}

InfidelityBound infidelity_bound(double alpha, double r, int d) {
    if (alpha <= 0.0) throw Error("infidelity_bound: alpha must be positive");
    InfidelityBound b;
    b.general = double(d - 1) / double(2 * d) * (1.0 - alpha) + 0.5 * r;
    if (d == 2) b.qubit = 0.5 * r;
    return b;
}

double alpha_qubit_check(const Superop& E) {
    if (!is_cptp(E, 1e-9)) throw NotCPTP("alpha_qubit_check: channel is not CPTP");
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(E.unital_block());
    return svd.singularValues()(0);
}

NonunitalSpectrum nonunital_spectrum(const MOperator& M) {
    NonunitalSpectrum rep;
    rep.eigenvalues = sorted_eigs(M.full);

    std::vector<std::complex<double>> expected;
    expected.push_back({1.0, 0.0});
    for (int i = 0; i < 3; ++i) expected.push_back({0.0, 0.0});
    {
        Eigen::EigenSolver<Eigen::Matrix3d> es(M.avg_unital);
        for (int i = 0; i < 3; ++i) expected.push_back(es.eigenvalues()(i));
    }
    for (const auto& l : sorted_eigs(M.unital)) expected.push_back(l);

    std::vector<bool> used(expected.size(), false);
    double maxdist = 0.0;
    for (const auto& l : rep.eigenvalues) {
        int best = -1;
        double bestd = 1e300;
        for (std::size_t j = 0; j < expected.size(); ++j) {
            if (used[j]) continue;
            const double dd = std::abs(l - expected[j]);
            if (dd < bestd) {
                bestd = dd;
                best = int(j);
            }
        }
        used[std::size_t(best)] = true;
        maxdist = std::max(maxdist, bestd);
    }
    rep.factorization_max_dist = maxdist;
    rep.factorization_ok = maxdist < 1e-9;

    double min_to_one = 1e300;
    for (const auto& l : rep.eigenvalues) {
        min_to_one = std::min(min_to_one, std::abs(l - 1.0));
        if (std::abs(l) < 1e-9) ++rep.n_zero;
    }
    rep.has_unit_eigenvalue = min_to_one < 1e-10;

    Eigen::BDCSVD<Mat> svd(M.full - m_ideal_full());
    rep.k_norm = svd.singularValues()(0);
    double bf = 0.0;
    for (const auto& l : rep.eigenvalues)
        bf = std::max(bf, std::min(std::abs(l), std::abs(l - 1.0)));
    rep.bauer_fike_max_dist = bf;
    rep.bauer_fike_ok = bf <= rep.k_norm + 1e-12;
    return rep;
}

std::array<Mat, 5> taylor_M_exact(const NoiseModel& model) {
    const auto& group = CliffordGroup::instance();
    std::array<Mat, 5> Mn;
    for (auto& m : Mn) m = Mat::Zero(9, 9);
    const double w = 1.0 / double(kCliffordCount);

    auto accumulate = [&](int k, const MatSeries& noisy_series) {
        const Eigen::Matrix3d Gu = group.gate(k).unital_block();
        for (int n = 0; n < 5; ++n) Mn[std::size_t(n)] += w * kron(Gu, noisy_series[std::size_t(n)]);
    };

    if (const auto* pgu = std::get_if<PerGateUnitary>(&model)) {
        for (int k = 0; k < kCliffordCount; ++k) {
            const Eigen::Vector3d axis = pgu->axes[k].normalized();
            MatSeries s = rotation_series(axis, pgu->scale[k]);
            accumulate(k, series_mul(series_const(group.gate(k).unital_block()), s));
        }
    } else if (const auto* pp = std::get_if<ProctorPrimitive>(&model)) {
        const Eigen::Vector3d axis = pp->axis.normalized();
        const MatSeries noise = rotation_series(axis, 1.0);
        for (int k = 0; k < kCliffordCount; ++k) {
            MatSeries acc = series_const(Eigen::Matrix3d::Identity());
            for (char ch : pp->words[k]) {
                const Eigen::Matrix3d Pu = xy_word_ptm(std::string(1, ch)).unital_block();
                acc = series_mul(series_mul(series_const(Pu), noise), acc);
            }
            accumulate(k, acc);
        }
    } else {
        throw Error("taylor_M_exact: model must be PerGateUnitary or ProctorPrimitive");
    }
    return Mn;
}

Mat Mu_of_theta(const NoiseModel& model, double theta) {
    const auto& group = CliffordGroup::instance();
    Mat M = Mat::Zero(9, 9);
    const double w = 1.0 / double(kCliffordCount);
    if (const auto* pgu = std::get_if<PerGateUnitary>(&model)) {
        for (int k = 0; k < kCliffordCount; ++k) {
            const Superop u = rotation_channel({pgu->axes[k], pgu->scale[k] * theta});
            M += w * kron(group.gate(k).unital_block(),
                          group.gate(k).unital_block() * u.unital_block());
        }
    } else if (const auto* pp = std::get_if<ProctorPrimitive>(&model)) {
        for (int k = 0; k < kCliffordCount; ++k) {
            const Superop noisy = xy_word_noisy(pp->words[k], theta, pp->axis);
            M += w * kron(group.gate(k).unital_block(), noisy.unital_block());
        }
    } else {
        throw Error("Mu_of_theta: model must be PerGateUnitary or ProctorPrimitive");
    }
    return M;
}

std::array<Mat, 5> taylor_M_fd(const std::function<Mat(double)>& f) {
    constexpr int kPts = 9;
    const double h1 = 1e-2, h2 = 5e-3;

    // Fornberg-style weights on the stencil {-4..4} for derivative order n.
    auto weights = [&](int n) {
        Eigen::MatrixXd A(kPts, kPts);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(kPts);
        for (int t = 0; t < kPts; ++t)
            for (int j = 0; j < kPts; ++j) A(t, j) = std::pow(double(j - 4), t);
        double fact = 1.0;
        for (int i = 2; i <= n; ++i) fact *= i;
        b(n) = fact;
        return Eigen::VectorXd(A.fullPivLu().solve(b));
    };

    auto taylor_at = [&](int n, double h, const std::array<Mat, kPts>& samples) {
        const Eigen::VectorXd w = weights(n);
        Mat acc = Mat::Zero(9, 9);
        for (int j = 0; j < kPts; ++j) acc += w(j) * samples[std::size_t(j)];
        double fact = 1.0;
        for (int i = 2; i <= n; ++i) fact *= i;
        return Mat(acc / std::pow(h, n) / fact);
    };

    std::array<Mat, kPts> s1, s2;
    for (int j = 0; j < kPts; ++j) {
        s1[std::size_t(j)] = f(double(j - 4) * h1);
        s2[std::size_t(j)] = f(double(j - 4) * h2);
    }

    std::array<Mat, 5> Mn;
    Mn[0] = f(0.0);
    for (int n = 1; n <= 4; ++n) {
        const Mat d1 = taylor_at(n, h1, s1);
        const Mat d2 = taylor_at(n, h2, s2);
        const int q = ((kPts - n) % 2 == 0) ? kPts - n : kPts + 1 - n;
        const double f2q = std::pow(2.0, q);
        Mn[std::size_t(n)] = d2 + (d2 - d1) / (f2q - 1.0);
        if ((d2 - d1).cwiseAbs().maxCoeff() > 1e-3)
            throw TaylorIllConditioned("taylor_M_fd: Richardson levels disagree at order " +
                                       std::to_string(n));
    }
    return Mn;
}

PerturbSeries perturb_series_from_taylor(const std::array<Mat, 5>& Mn, int max_order) {
    const Mat& M1 = Mn[1];
    const Mat& M2 = Mn[2];
    const Mat& M3 = Mn[3];
    const Mat& M4 = Mn[4];

    PerturbSeries s;
    auto& br = s.brackets;
    br["(1|M1|1)"] = bra1_ket1(M1);
    br["(1|(M1)^2|1)"] = bra1_ket1(M1 * M1);
    br["(1|M2|1)"] = bra1_ket1(M2);
    br["(1|(M1)^3|1)"] = bra1_ket1(M1 * M1 * M1);
    br["(1|M1M2|1)"] = bra1_ket1(M1 * M2);
    br["(1|M2M1|1)"] = bra1_ket1(M2 * M1);
    br["(1|M3|1)"] = bra1_ket1(M3);
    br["(1|(M1)^4|1)"] = bra1_ket1(M1 * M1 * M1 * M1);
    br["(1|(M2)^2|1)"] = bra1_ket1(M2 * M2);
    br["(1|M4|1)"] = bra1_ket1(M4);
    br["(1|[M1M3+M3M1]|1)"] = bra1_ket1(M1 * M3) + bra1_ket1(M3 * M1);
    br["(1|[(M1)^2M2+M2(M1)^2+M1M2M1]|1)"] =
        bra1_ket1(M1 * M1 * M2) + bra1_ket1(M2 * M1 * M1) + bra1_ket1(M1 * M2 * M1);

    constexpr double kVanish = 1e-9;
    s.coeffs[1] = br["(1|M1|1)"];
    s.valid_to = 1;
    if (max_order >= 2 && std::abs(s.coeffs[1]) < kVanish) {
        s.coeffs[2] = br["(1|(M1)^2|1)"] + br["(1|M2|1)"];
        s.valid_to = 2;
        if (max_order >= 3 && std::abs(s.coeffs[2]) < kVanish) {
            s.coeffs[3] = br["(1|(M1)^3|1)"] + br["(1|M3|1)"] + br["(1|M1M2|1)"] +
                          br["(1|M2M1|1)"];
            s.valid_to = 3;
            if (max_order >= 4 && std::abs(s.coeffs[3]) < kVanish) {
                s.coeffs[4] = br["(1|(M1)^4|1)"] + br["(1|(M2)^2|1)"] + br["(1|M4|1)"] +
                              br["(1|[M1M3+M3M1]|1)"] +
                              br["(1|[(M1)^2M2+M2(M1)^2+M1M2M1]|1)"];
                s.valid_to = 4;
            }
        }
    }
    return s;
}

PerturbSeries perturb_series(const NoiseModel& model, int max_order) {
    if (max_order < 1 || max_order > 4)
        throw OutOfRange("perturb_series: max_order must be in [1, 4]");
    return perturb_series_from_taylor(taylor_M_exact(model), max_order);
}

GaugeComparison same_p_different_q(const std::vector<Superop>& noisy, const Superop& U) {
    const Eigen::Matrix3d uu = U.unital_block();
    if (!U.is_tp() || !U.is_unital() ||
        (uu.transpose() * uu - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-10)
        throw NotUnitary("same_p_different_q: U must be a unitary PTM");

    const auto& cliffords = CliffordGroup::instance().gates();
    std::vector<Superop> conj;
    conj.reserve(noisy.size());
    for (const auto& g : noisy) conj.push_back(Superop(U.mat() * g.mat() * U.mat().transpose()));

    const MOperator M = build_M(cliffords, noisy);
    const MOperator Mc = build_M(cliffords, conj);
    GaugeComparison cmp;
    cmp.p = decay_rate(M).p;
    cmp.p_prime = decay_rate(Mc).p;
    cmp.q = q_from_M(M);
    cmp.q_prime = q_from_M(Mc);
    cmp.p_equal = std::abs(cmp.p - cmp.p_prime) < 1e-10;
    return cmp;
}

std::vector<Fig1Row> sweep_fig1(int grid) {
    if (grid < 2) throw OutOfRange("sweep_fig1: grid must be >= 2");
    std::vector<Fig1Row> rows;
    rows.reserve(std::size_t(grid));
    for (int i = 0; i < grid; ++i) {
        const double beta = double(i) / double(grid - 1);
        Fig1Row row;
        row.beta = beta;
        row.p_over_alpha = beta;
        row.q_lo = 0.0;
        row.q_hi = 0.5 * (1.0 + beta);
        // Conjugate-unitary family L = R^dagger = rotation(z, phi):
        // beta = (1 + 2 cos phi)/3, q/alpha = ((1 + 2 cos(phi/2))/3)^2.
        const double phi = std::acos(std::clamp((3.0 * beta - 1.0) / 2.0, -1.0, 1.0));
        const double tr_half = 1.0 + 2.0 * std::cos(phi / 2.0);
        row.q_sample = tr_half * tr_half / 9.0;
        rows.push_back(row);
    }
    return rows;
}

double proctor_decomposition_gate(const ProctorPrimitive& model) {
    const auto& group = CliffordGroup::instance();
    const double theta_ref = 1e-3;
    double sum = 0.0;
    for (int k = 0; k < kCliffordCount; ++k) {
        const Superop noisy = xy_word_noisy(model.words[k], theta_ref, model.axis);
        const double th = effective_right_unitary_angle(group.gate(k), noisy);
        sum += th * th;
    }
    const double ratio = sum / double(kCliffordCount) / (theta_ref * theta_ref);
    if (std::abs(ratio - 1.5) > 0.015)
        throw DecompositionGateFailed("proctor: <theta_k^2>/theta^2 = " + std::to_string(ratio) +
                                      ", expected 3/2 within 1%");
    return ratio;
}

} // namespace qrb
