#include "qgt/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qgt {

PureState::PureState(Vector amplitudes) : amp_(std::move(amplitudes)) {
    if (amp_.size() == 0) throw std::invalid_argument("PureState: empty vector");
    const double n = amp_.norm();
    if (std::abs(n - 1.0) > kNormTolerance) {
        std::ostringstream msg;
        msg << "PureState: norm " << n << " is not 1 within " << kNormTolerance;
        throw std::invalid_argument(msg.str());
    }
}

PureState PureState::normalized(const Vector& v) {
    const double n = v.norm();
    if (n == 0.0) throw std::invalid_argument("PureState: cannot normalize the zero vector");
    return PureState(v / n);
}

DensityMatrix::DensityMatrix(HermitianOperator op, double rank_tolerance)
    : op_(std::move(op)), spectrum_(spectral_decompose(op_)), rank_tolerance_(rank_tolerance) {
    validate_and_clip();
}

DensityMatrix::DensityMatrix(SpectralDecomposition spectrum, double rank_tolerance)
    : op_(spectrum.reconstruct()), spectrum_(std::move(spectrum)), rank_tolerance_(rank_tolerance) {
    // Sort ascending in case the caller provided weights in another order.
    const Eigen::Index n = spectrum_.eigenvalues.size();
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return spectrum_.eigenvalues[a] < spectrum_.eigenvalues[b];
    });
    SpectralDecomposition sorted;
    sorted.eigenvalues.resize(n);
    sorted.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        sorted.eigenvalues[i] = spectrum_.eigenvalues[order[i]];
        sorted.eigenvectors.col(i) = spectrum_.eigenvectors.col(order[i]);
    }
    spectrum_ = std::move(sorted);
    validate_and_clip();
}

void DensityMatrix::validate_and_clip() {
    const double tr = op_.matrix().trace().real();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        std::ostringstream msg;
        msg << "DensityMatrix: trace " << tr << " is not 1 within " << kTraceTolerance;
        throw std::invalid_argument(msg.str());
    }
    for (Eigen::Index i = 0; i < spectrum_.eigenvalues.size(); ++i) {
        double& lambda = spectrum_.eigenvalues[i];
        if (lambda < -kNegativityTolerance) {
            std::ostringstream msg;
            msg << "DensityMatrix: negative eigenvalue " << lambda;
            throw std::invalid_argument(msg.str());
        }
        if (lambda < 0.0) lambda = 0.0;
    }
}

HermitianOperator DensityMatrix::sqrt() const {
    RealVector roots = spectrum_.eigenvalues.cwiseSqrt();
    return HermitianOperator(spectrum_.eigenvectors * roots.asDiagonal() *
                             spectrum_.eigenvectors.adjoint());
}

DensityMatrix gibbs_state(const HermitianOperator& h, double temperature) {
    if (!(temperature > 0.0)) {
        throw std::domain_error("gibbs_state: temperature must be > 0");
    }
    const SpectralDecomposition hd = spectral_decompose(h);
    const double beta = 1.0 / temperature;
    const double e_min = hd.eigenvalues.minCoeff();
    RealVector weights(hd.eigenvalues.size());
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
        weights[i] = std::exp(-beta * (hd.eigenvalues[i] - e_min));
    }
    weights /= weights.sum();
    SpectralDecomposition spectrum;
    spectrum.eigenvalues = std::move(weights);
    spectrum.eigenvectors = hd.eigenvectors;
    return DensityMatrix(std::move(spectrum), /*rank_tolerance=*/0.0);
}

namespace {

const Matrix& pauli(int which) {
    static const Matrix sx = [] {
        Matrix m(2, 2);
        m << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
        return m;
    }();
    static const Matrix sy = [] {
        Matrix m(2, 2);
        m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
        return m;
    }();
    static const Matrix sz = [] {
        Matrix m(2, 2);
        m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
        return m;
    }();
    switch (which) {
        case 0: return sx;
        case 1: return sy;
        default: return sz;
    }
}

}  // namespace

const Matrix& pauli_x() { return pauli(0); }
const Matrix& pauli_y() { return pauli(1); }
const Matrix& pauli_z() { return pauli(2); }

BlochVector::BlochVector(Eigen::Vector3d a) : a_(std::move(a)) {
    if (!a_.allFinite()) throw std::invalid_argument("BlochVector: non-finite entries");
    if (a_.norm() > 0.5 + 1e-12) {
        std::ostringstream msg;
        msg << "BlochVector: |a| = " << a_.norm() << " exceeds the purity bound 1/2";
        throw std::invalid_argument(msg.str());
    }
}

BlochVector bloch_decompose(const DensityMatrix& rho) {
    if (rho.dim() != 2) {
        throw std::invalid_argument("bloch_decompose: only N = 2 is supported");
    }
    Eigen::Vector3d a;
    a[0] = 0.5 * (rho.matrix() * pauli_x()).trace().real();
    a[1] = 0.5 * (rho.matrix() * pauli_y()).trace().real();
    a[2] = 0.5 * (rho.matrix() * pauli_z()).trace().real();
    return BlochVector(a);
}

DensityMatrix bloch_compose(const BlochVector& a) {
    const Eigen::Vector3d& v = a.vec();
    Matrix m = 0.5 * Matrix::Identity(2, 2) + v[0] * pauli_x() + v[1] * pauli_y() +
               v[2] * pauli_z();
    return DensityMatrix(HermitianOperator(std::move(m)));
}

Amplitude purify(const DensityMatrix& rho, const Matrix& unitary) {
    if (!rho.full_rank()) {
        std::ostringstream msg;
        msg << "purify: density matrix is rank-deficient (min eigenvalue "
            << rho.spectrum().eigenvalues.minCoeff()
            << "); rank-deficient purifications have no unique polar decomposition "
               "and are out of scope";
        throw RankError(msg.str());
    }
    if (unitary.rows() != rho.dim() || unitary.cols() != rho.dim()) {
        throw std::invalid_argument("purify: unitary dimension mismatch");
    }
    const double unitarity =
        max_abs(Matrix(unitary.adjoint() * unitary - Matrix::Identity(rho.dim(), rho.dim())));
    if (unitarity > 1e-10) {
        std::ostringstream msg;
        msg << "purify: phase factor is not unitary (|U^dag U - 1|_max = " << unitarity << ")";
        throw std::invalid_argument(msg.str());
    }
    HermitianOperator root = rho.sqrt();
    Matrix w = root.matrix() * unitary;
    return Amplitude(std::move(w), std::move(root), unitary);
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("hs_inner: dimension mismatch");
    }
    return (a.adjoint() * b).trace();
}

}  // namespace qgt
