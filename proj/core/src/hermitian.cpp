#include "qgt/hermitian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace qgt {

HermitianOperator::HermitianOperator(Matrix entries) {
    if (entries.rows() != entries.cols() || entries.rows() == 0) {
        throw std::invalid_argument("HermitianOperator: matrix must be square and non-empty");
    }
    const double anti = max_abs(Matrix(0.5 * (entries - entries.adjoint().eval())));
    if (anti > kSymmetrizeTolerance) {
        std::ostringstream msg;
        msg << "HermitianOperator: anti-Hermitian part " << anti
            << " exceeds tolerance " << kSymmetrizeTolerance;
        throw std::invalid_argument(msg.str());
    }
    mat_ = 0.5 * (entries + entries.adjoint().eval());
}

Eigen::Index gauge_pivot(const Vector& v) {
    Eigen::Index pivot = 0;
    double best = std::norm(v[0]);
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        const double m = std::norm(v[i]);
        if (m > best) {
            best = m;
            pivot = i;
        }
    }
    return pivot;
}

Vector gauge_fix(const Vector& v, Eigen::Index pivot) {
    const Complex p = v[pivot];
    const double mag = std::abs(p);
    if (mag == 0.0) return v;
    return v * (std::conj(p) / mag);
}

Vector gauge_fix(const Vector& v) { return gauge_fix(v, gauge_pivot(v)); }

SpectralDecomposition spectral_decompose(const HermitianOperator& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "spectral_decompose: eigen-solver did not converge (dim=" << a.dim()
            << ", max|A|=" << max_abs(a.matrix()) << ")";
        throw std::runtime_error(msg.str());
    }
    SpectralDecomposition dec;
    dec.eigenvalues = solver.eigenvalues();
    dec.eigenvectors = solver.eigenvectors();
    for (Eigen::Index i = 0; i < dec.eigenvectors.cols(); ++i) {
        dec.eigenvectors.col(i) = gauge_fix(dec.eigenvectors.col(i));
    }
    return dec;
}

HermitianOperator matrix_function(const HermitianOperator& a,
                                  const std::function<double(double)>& f,
                                  std::string_view fname) {
    const SpectralDecomposition dec = spectral_decompose(a);
    RealVector fx(dec.eigenvalues.size());
    for (Eigen::Index i = 0; i < fx.size(); ++i) {
        fx[i] = f(dec.eigenvalues[i]);
        if (!std::isfinite(fx[i])) {
            std::ostringstream msg;
            msg << "matrix_function: " << fname << " undefined on eigenvalue "
                << dec.eigenvalues[i];
            throw std::domain_error(msg.str());
        }
    }
    return HermitianOperator(dec.eigenvectors * fx.asDiagonal() * dec.eigenvectors.adjoint());
}

HermitianOperator matrix_sqrt(const HermitianOperator& a) {
    return matrix_function(
        a,
        [](double x) {
            if (x < -1e-12) return std::sqrt(x);  // NaN -> domain error with the eigenvalue
            return x > 0.0 ? std::sqrt(x) : 0.0;
        },
        "sqrt");
}

Matrix unitary_exp(const Matrix& anti_hermitian) {
    // X = iH with H Hermitian, exp(X) = V exp(i diag) V^dag.
    const HermitianOperator h(Matrix(Complex(0, -1) * anti_hermitian));
    const SpectralDecomposition dec = spectral_decompose(h);
    Vector phases(dec.eigenvalues.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        phases[i] = std::polar(1.0, dec.eigenvalues[i]);
    }
    return dec.eigenvectors * phases.asDiagonal() * dec.eigenvectors.adjoint();
}

}  // namespace qgt
