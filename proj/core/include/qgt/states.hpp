#pragma once

#include "qgt/hermitian.hpp"
#include "qgt/types.hpp"

namespace qgt {

/// Normalized state-vector in C^N.
class PureState {
public:
    static constexpr double kNormTolerance = 1e-12;

    explicit PureState(Vector amplitudes);

    /// Normalize an arbitrary nonzero vector first, then construct.
    static PureState normalized(const Vector& v);

    Eigen::Index dim() const { return amp_.size(); }
    const Vector& amplitudes() const { return amp_; }

    Complex overlap(const PureState& other) const { return amp_.dot(other.amp_); }

private:
    Vector amp_;
};

/// Trace-one positive Hermitian operator with cached spectral decomposition.
/// Eigenvalues in [-1e-12, 0) are clipped to zero; full_rank() compares the
/// smallest eigenvalue against rank_tolerance.
class DensityMatrix {
public:
    static constexpr double kTraceTolerance = 1e-12;
    static constexpr double kNegativityTolerance = 1e-12;
    static constexpr double kDefaultRankTolerance = 1e-12;

    explicit DensityMatrix(HermitianOperator op, double rank_tolerance = kDefaultRankTolerance);

    /// Construct from an already-known eigensystem (weights need not be sorted).
    /// Used by gibbs_state, where the spectrum is exact by construction.
    DensityMatrix(SpectralDecomposition spectrum, double rank_tolerance);

    Eigen::Index dim() const { return op_.dim(); }
    const Matrix& matrix() const { return op_.matrix(); }
    const HermitianOperator& op() const { return op_; }
    const SpectralDecomposition& spectrum() const { return spectrum_; }
    double rank_tolerance() const { return rank_tolerance_; }

    bool full_rank() const { return spectrum_.eigenvalues.minCoeff() > rank_tolerance_; }

    HermitianOperator sqrt() const;

    static DensityMatrix maximally_mixed(Eigen::Index n) {
        return DensityMatrix(HermitianOperator(Matrix::Identity(n, n) / double(n)));
    }
    static DensityMatrix from_pure(const PureState& psi) {
        return DensityMatrix(
            HermitianOperator(psi.amplitudes() * psi.amplitudes().adjoint()));
    }

private:
    void validate_and_clip();

    HermitianOperator op_;
    SpectralDecomposition spectrum_;
    double rank_tolerance_;
};

/// Purification W = sqrt(rho) U of a full-rank density matrix, with the polar
/// factors cached. The purified state |W> in H (x) H* is kept implicit: inner
/// products of purifications are always Tr(W1^dag W2), so the explicit
/// N^2-vector (whose construction would fix a transpose convention for the
/// second factor) is never materialized.
class Amplitude {
public:
    const Matrix& w() const { return w_; }
    const HermitianOperator& sqrt_rho() const { return sqrt_rho_; }
    const Matrix& phase() const { return phase_; }
    Eigen::Index dim() const { return w_.rows(); }

    friend Amplitude purify(const DensityMatrix& rho, const Matrix& unitary);

private:
    Amplitude(Matrix w, HermitianOperator sqrt_rho, Matrix phase)
        : w_(std::move(w)), sqrt_rho_(std::move(sqrt_rho)), phase_(std::move(phase)) {}

    Matrix w_;
    HermitianOperator sqrt_rho_;
    Matrix phase_;
};

/// Bloch vector of a qubit state, rho = 1/2 + a . sigma, |a| <= 1/2.
class BlochVector {
public:
    explicit BlochVector(Eigen::Vector3d a);

    const Eigen::Vector3d& vec() const { return a_; }
    double norm() const { return a_.norm(); }

private:
    Eigen::Vector3d a_;
};

/// Thermal state rho = exp(-H/T) / Tr exp(-H/T) for T > 0, computed spectrally
/// with the max-weight exponent shifted out so beta up to ~1e3 stays finite.
/// Positivity of the weights is analytic, so the result carries
/// rank_tolerance = 0 (full rank unless a weight underflows to exactly zero).
DensityMatrix gibbs_state(const HermitianOperator& h, double temperature);

/// a_i = Tr(rho sigma_i) / 2 for N = 2; inverse of bloch_compose.
BlochVector bloch_decompose(const DensityMatrix& rho);
DensityMatrix bloch_compose(const BlochVector& a);

/// W = sqrt(rho) U for full-rank rho and unitary U.
Amplitude purify(const DensityMatrix& rho, const Matrix& unitary);

/// Hilbert-Schmidt product Tr(A^dag B).
Complex hs_inner(const Matrix& a, const Matrix& b);

const Matrix& pauli_x();
const Matrix& pauli_y();
const Matrix& pauli_z();

}  // namespace qgt
