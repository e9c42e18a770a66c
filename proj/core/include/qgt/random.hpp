#pragma once

#include "qgt/types.hpp"

#include <cstdint>

namespace qgt {

/// Deterministic, platform-independent RNG (splitmix64). std:: distributions
/// are implementation-defined, which would break seed-reproducibility claims
/// across standard libraries, so all randomness in the library goes through
/// this generator.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 bits of entropy.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    Complex complex_uniform(double half_width) {
        return {uniform(-half_width, half_width), uniform(-half_width, half_width)};
    }

    /// Random Hermitian matrix with entries of order `scale`.
    Matrix hermitian(Eigen::Index n, double scale = 1.0) {
        Matrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            m(i, i) = Complex(uniform(-scale, scale), 0.0);
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const Complex z = complex_uniform(scale);
                m(i, j) = z;
                m(j, i) = std::conj(z);
            }
        }
        return m;
    }

    /// Random anti-Hermitian matrix, entries uniform in [-half_width, half_width].
    Matrix anti_hermitian(Eigen::Index n, double half_width = 0.5) {
        Matrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = complex_uniform(half_width);
        return 0.5 * (m - m.adjoint().eval());
    }

    /// Haar-ish random unitary via QR of a complex matrix with uniform entries.
    Matrix unitary(Eigen::Index n) {
        Matrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = complex_uniform(1.0);
        Eigen::HouseholderQR<Matrix> qr(m);
        Matrix q = qr.householderQ();
        Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Eigen::Index i = 0; i < n; ++i) {
            const Complex d = r(i, i);
            const double a = std::abs(d);
            q.col(i) *= (a > 0) ? d / a : Complex(1.0, 0.0);
        }
        return q;
    }

    ParamPoint point(Eigen::Index k, double lo, double hi) {
        ParamPoint p(k);
        for (Eigen::Index i = 0; i < k; ++i) p[i] = uniform(lo, hi);
        return p;
    }

private:
    std::uint64_t state_;
};

}  // namespace qgt
