#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qrb/errors.hpp"

namespace qrb {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Orthonormal Hermitian operator basis with O_0 = 1/sqrt(d).
/// Fixed to the normalized Paulis {1,X,Y,Z}/sqrt(2) for d = 2.
class OperatorBasis {
public:
    explicit OperatorBasis(int dim);

    /// Shared d = 2 instance.
    static const OperatorBasis& pauli();

    int dim() const { return d_; }
    int traceless_dim() const { return d_ * d_ - 1; }
    const Eigen::Matrix2cd& element(int alpha) const { return ops_.at(alpha); }

private:
    int d_;
    std::vector<Eigen::Matrix2cd> ops_;
};

/// A superoperator in the Pauli transfer matrix (Liouville) representation:
/// real d^2 x d^2 matrix with entries E_ab = tr(O_a E(O_b)).
class Superop {
public:
    explicit Superop(Mat m);
    static Superop identity(int dim = 2);

    const Mat& mat() const { return mat_; }
    double operator()(int i, int j) const { return mat_(i, j); }
    int dim() const { return d_; }
    int traceless_dim() const { return d_ * d_ - 1; }
    bool is_tp() const { return is_tp_; }
    bool is_unital() const { return is_unital_; }

    Eigen::Matrix3d unital_block() const { return mat_.block<3, 3>(1, 1); }
    Eigen::Vector3d translation() const { return mat_.block<3, 1>(1, 0); }

private:
    Mat mat_;
    int d_;
    bool is_tp_;
    bool is_unital_;
};

/// Nonunital translation t and unital block E_u of a TP map.
struct UnitalDecomp {
    Eigen::Vector3d t;
    Eigen::Matrix3d Eu;
};

enum class VecSector { Full, Unital };

/// Column-stacked vectorization of a superoperator (d^4) or its unital block (D^2).
struct VecForm {
    Vec v;
    VecSector sector;
};

Superop ptm_from_kraus(const std::vector<Eigen::Matrix2cd>& kraus);

UnitalDecomp unital_decomp(const Superop& E);
Superop assemble(const UnitalDecomp& d);

Superop compose(const Superop& A, const Superop& B);
Superop adjoint(const Superop& A);

VecForm vec(const Superop& E);
VecForm vec_unital(const Eigen::Matrix3d& Eu);
Superop unvec(const VecForm& f);
Eigen::Matrix3d unvec_unital(const VecForm& f);

Eigen::Matrix4cd choi_matrix(const Superop& E);
bool is_cptp(const Superop& E, double tol = 1e-10);

/// B0, B1 of the superoperator basis, as PTMs.
const Mat& b0_ptm();
const Mat& b1_ptm();
/// |0), |1): vectorized B0, B1 (d^4-dimensional).
const Vec& ket0();
const Vec& ket1();
/// |1) restricted to the unital sector (D^2-dimensional).
const Vec& ket1_unital();

Mat kron(const Mat& A, const Mat& B);

} // namespace qrb
