#pragma once

#include "qgt/types.hpp"

#include <functional>
#include <string_view>

namespace qgt {

/// N x N complex Hermitian matrix. Construction symmetrizes the input,
/// A -> (A + A^dag)/2, and rejects inputs whose anti-Hermitian part exceeds
/// 1e-9 in max-norm.
class HermitianOperator {
public:
    static constexpr double kSymmetrizeTolerance = 1e-9;

    explicit HermitianOperator(Matrix entries);

    Eigen::Index dim() const { return mat_.rows(); }
    const Matrix& matrix() const { return mat_; }

    static HermitianOperator identity(Eigen::Index n) {
        return HermitianOperator(Matrix::Identity(n, n));
    }
    static HermitianOperator zero(Eigen::Index n) {
        return HermitianOperator(Matrix::Zero(n, n));
    }

private:
    Matrix mat_;
};

/// Eigensystem of a Hermitian operator: ascending eigenvalues, orthonormal
/// gauge-fixed eigenvector columns. Gauge convention: in each column the
/// entry of largest magnitude (ties broken by lowest index) is made real and
/// strictly positive.
struct SpectralDecomposition {
    RealVector eigenvalues;
    Matrix eigenvectors;

    Matrix reconstruct() const {
        return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
    }
};

/// Index of the largest-magnitude entry of a vector; ties go to the lowest index.
Eigen::Index gauge_pivot(const Vector& v);

/// Rotate the phase of v so that v[pivot] is real and strictly positive.
Vector gauge_fix(const Vector& v, Eigen::Index pivot);
Vector gauge_fix(const Vector& v);

/// Deterministic spectral decomposition with the gauge convention above.
/// Identical input bits produce identical output bits.
SpectralDecomposition spectral_decompose(const HermitianOperator& a);

/// f(A) = sum_i f(lambda_i) |i><i|. Throws std::domain_error, naming the
/// offending eigenvalue, if f is not finite on the spectrum.
HermitianOperator matrix_function(const HermitianOperator& a,
                                  const std::function<double(double)>& f,
                                  std::string_view fname = "f");

/// Principal square root for positive semi-definite operators. Eigenvalues in
/// [-1e-12, 0) are clipped to zero; anything below -1e-12 is a domain error.
HermitianOperator matrix_sqrt(const HermitianOperator& a);

/// exp(X) for anti-Hermitian X, computed spectrally so the result is unitary
/// to machine precision.
Matrix unitary_exp(const Matrix& anti_hermitian);

}  // namespace qgt
