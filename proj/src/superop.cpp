#include "qrb/superop.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qrb {

namespace {

constexpr double kAlgebraTol = 1e-12;
constexpr double kBasisTol = 1e-14;

using Eigen::Matrix2cd;
using cplx = std::complex<double>;

std::vector<Matrix2cd> make_pauli_basis() {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix2cd id, sx, sy, sz;
    id << 1, 0, 0, 1;
    sx << 0, 1, 1, 0;
    sy << 0, cplx(0, -1), cplx(0, 1), 0;
    sz << 1, 0, 0, -1;
    return {s * id, s * sx, s * sy, s * sz};
}

} // namespace

OperatorBasis::OperatorBasis(int dim) : d_(dim) {
    if (dim != 2)
        throw UnsupportedDimension("operator basis: only d = 2 is supported, got d = " +
                                   std::to_string(dim));
    ops_ = make_pauli_basis();
    for (int a = 0; a < 4; ++a) {
        if ((ops_[a] - ops_[a].adjoint()).cwiseAbs().maxCoeff() > kBasisTol)
            throw Error("operator basis: element not Hermitian");
        for (int b = 0; b < 4; ++b) {
            const cplx ip = (ops_[a].adjoint() * ops_[b]).trace();
            const double want = (a == b) ? 1.0 : 0.0;
            if (std::abs(ip - want) > kBasisTol)
                throw Error("operator basis: not orthonormal");
        }
    }
    Matrix2cd o0_want = Matrix2cd::Identity() / std::sqrt(2.0);
    if ((ops_[0] - o0_want).cwiseAbs().maxCoeff() > kBasisTol)
        throw Error("operator basis: O_0 != 1/sqrt(d)");
}

const OperatorBasis& OperatorBasis::pauli() {
    static const OperatorBasis basis(2);
    return basis;
}

Superop::Superop(Mat m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols())
        throw DimensionMismatch("superop: matrix must be square");
    const int n = int(mat_.rows());
    const int d = int(std::lround(std::sqrt(double(n))));
    if (d * d != n)
        throw DimensionMismatch("superop: size must be d^2 x d^2");
    if (d != 2)
        throw UnsupportedDimension("superop: only d = 2 is supported");
    d_ = d;
    is_tp_ = std::abs(mat_(0, 0) - 1.0) <= kAlgebraTol &&
             mat_.row(0).tail(n - 1).cwiseAbs().maxCoeff() <= kAlgebraTol;
    is_unital_ = mat_.col(0).tail(n - 1).cwiseAbs().maxCoeff() <= kAlgebraTol;
}

Superop Superop::identity(int dim) {
    if (dim != 2)
        throw UnsupportedDimension("superop: only d = 2 is supported");
    return Superop(Mat::Identity(4, 4));
}

Superop ptm_from_kraus(const std::vector<Eigen::Matrix2cd>& kraus) {
    if (kraus.empty())
        throw NotTracePreserving("ptm_from_kraus: empty Kraus list");
    Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
    for (const auto& K : kraus) sum += K.adjoint() * K;
    if ((sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10)
        throw NotTracePreserving("ptm_from_kraus: sum K^dag K != 1");

    const auto& basis = OperatorBasis::pauli();
    Mat m(4, 4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            cplx e = 0.0;
            for (const auto& K : kraus)
                e += (basis.element(a) * K * basis.element(b) * K.adjoint()).trace();
            m(a, b) = e.real();
        }
    return Superop(m);
}

UnitalDecomp unital_decomp(const Superop& E) {
    if (!E.is_tp())
        throw NotTracePreserving("unital_decomp: first row != (1, 0, ..., 0)");
    return {E.translation(), E.unital_block()};
}

Superop assemble(const UnitalDecomp& d) {
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = 1.0;
    m.block<3, 1>(1, 0) = d.t;
    m.block<3, 3>(1, 1) = d.Eu;
    return Superop(m);
}

Superop compose(const Superop& A, const Superop& B) {
    if (A.dim() != B.dim())
        throw DimensionMismatch("compose: dimension mismatch");
    return Superop(A.mat() * B.mat());
}

Superop adjoint(const Superop& A) {
    return Superop(A.mat().transpose());
}

VecForm vec(const Superop& E) {
    const Mat& m = E.mat();
    Vec v(m.size());
    for (int j = 0; j < m.cols(); ++j)
        v.segment(j * m.rows(), m.rows()) = m.col(j);
    return {v, VecSector::Full};
}

VecForm vec_unital(const Eigen::Matrix3d& Eu) {
    Vec v(9);
    for (int j = 0; j < 3; ++j) v.segment(j * 3, 3) = Eu.col(j);
    return {v, VecSector::Unital};
}

Superop unvec(const VecForm& f) {
    if (f.sector != VecSector::Full || f.v.size() != 16)
        throw DimensionMismatch("unvec: expected a full-sector 16-vector");
    Mat m(4, 4);
    for (int j = 0; j < 4; ++j) m.col(j) = f.v.segment(j * 4, 4);
    return Superop(m);
}

Eigen::Matrix3d unvec_unital(const VecForm& f) {
    if (f.sector != VecSector::Unital || f.v.size() != 9)
        throw DimensionMismatch("unvec_unital: expected a unital-sector 9-vector");
    Eigen::Matrix3d m;
    for (int j = 0; j < 3; ++j) m.col(j) = f.v.segment(j * 3, 3);
    return m;
}

Eigen::Matrix4cd choi_matrix(const Superop& E) {
    const auto& basis = OperatorBasis::pauli();
    Eigen::Matrix4cd J = Eigen::Matrix4cd::Zero();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Eigen::Matrix2cd ob_t = basis.element(b).transpose();
            Eigen::Matrix4cd term = Eigen::Matrix4cd::Zero();
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    term.block<2, 2>(2 * i, 2 * j) = ob_t(i, j) * basis.element(a);
            J += E(a, b) * term;
        }
    return J;
}

bool is_cptp(const Superop& E, double tol) {
    const Mat& m = E.mat();
    if (std::abs(m(0, 0) - 1.0) > tol) return false;
    if (m.row(0).tail(3).cwiseAbs().maxCoeff() > tol) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(choi_matrix(E));
    if (es.info() != Eigen::Success) return false;
    return es.eigenvalues().minCoeff() >= -tol;
}

const Mat& b0_ptm() {
    static const Mat b0 = [] {
        Mat m = Mat::Zero(4, 4);
        m(0, 0) = 1.0;
        return m;
    }();
    return b0;
}

const Mat& b1_ptm() {
    static const Mat b1 = [] {
        Mat m = Mat::Zero(4, 4);
        m.block<3, 3>(1, 1) = Eigen::Matrix3d::Identity() / std::sqrt(3.0);
        return m;
    }();
    return b1;
}

const Vec& ket0() {
    static const Vec v = vec(Superop(b0_ptm())).v;
    return v;
}

const Vec& ket1() {
    static const Vec v = vec(Superop(b1_ptm())).v;
    return v;
}

const Vec& ket1_unital() {
    static const Vec v = vec_unital(Eigen::Matrix3d::Identity() / std::sqrt(3.0)).v;
    return v;
}

Mat kron(const Mat& A, const Mat& B) {
    Mat out(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

} // namespace qrb
