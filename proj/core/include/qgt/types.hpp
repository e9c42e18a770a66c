#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qgt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// A point R = (R^1, ..., R^k) in parameter space.
using ParamPoint = Eigen::VectorXd;

/// Ground-state (or eigenvalue) gap below the resolvable threshold.
class DegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation requires a full-rank density matrix and got a rank-deficient one.
class RankError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A discretized loop is too coarse for the requested computation.
class LoopResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require_finite(const ParamPoint& r, const char* what) {
    if (!r.allFinite()) {
        throw std::domain_error(std::string(what) + ": non-finite parameter point");
    }
}

inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs(const RealMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace qgt
