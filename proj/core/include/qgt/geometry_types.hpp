#pragma once

#include "qgt/types.hpp"

#include <vector>

namespace qgt {

/// k x k real symmetric tensor over parameter space. Symmetry is exact by
/// storage (the lower triangle mirrors the upper); positive semi-definiteness
/// is validated to 1e-10 at construction.
class MetricTensor {
public:
    static constexpr double kPsdTolerance = 1e-10;

    explicit MetricTensor(const RealMatrix& entries);

    Eigen::Index dim_params() const { return m_.rows(); }
    const RealMatrix& entries() const { return m_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

private:
    RealMatrix m_;
};

/// k x k real antisymmetric tensor (a 2-form); antisymmetry exact by storage.
class TwoForm {
public:
    explicit TwoForm(const RealMatrix& entries);

    Eigen::Index dim_params() const { return m_.rows(); }
    const RealMatrix& entries() const { return m_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

private:
    RealMatrix m_;
};

/// k x k complex Hermitian tensor whose real part is a metric. Hermiticity is
/// validated to 1e-10 and then made exact by storage; the real part must be
/// positive semi-definite to 1e-10.
class QGTensor {
public:
    static constexpr double kHermiticityTolerance = 1e-10;
    static constexpr double kPsdTolerance = 1e-10;

    explicit QGTensor(const Matrix& entries);

    Eigen::Index dim_params() const { return m_.rows(); }
    const Matrix& entries() const { return m_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    MetricTensor real_part() const { return MetricTensor(m_.real()); }
    /// Omega_ij = -Im g_ij (the Berry-curvature 2-form for pure states).
    TwoForm negative_imag_part() const { return TwoForm(RealMatrix(-m_.imag())); }

private:
    Matrix m_;
};

/// Closed, ordered list of parameter points: first == last exactly, and at
/// least 3 distinct points. Loops built by coordinate_sweep instead close
/// through a coordinate period: the last point sits at `to` and the loop
/// operations identify it with the first point, so the winding of the path is
/// preserved (collapsing `to` onto `from` would turn a once-around sweep into
/// a null-homotopic out-and-back path and ruin path-ordered products).
class ParamLoop {
public:
    explicit ParamLoop(std::vector<ParamPoint> points);

    /// Points including the closing one; unless periodic_closure(), the first
    /// and last entries are identical.
    const std::vector<ParamPoint>& points() const { return pts_; }
    std::size_t segment_count() const { return pts_.size() - 1; }

    /// True when the loop closes through a periodic coordinate rather than by
    /// an exact repeat of the first point; the model must be periodic along
    /// the swept coordinate for such a sweep to be a genuine loop.
    bool periodic_closure() const { return periodic_; }

    ParamLoop reversed() const;

    /// Circle of `count` segments in the (ci, cj) coordinate plane around `center`.
    static ParamLoop circle(const ParamPoint& center, Eigen::Index ci, Eigen::Index cj,
                            double radius, std::size_t count);

    /// Sweep of coordinate `coord` from `from` to `to` in `count` segments with
    /// the remaining coordinates fixed at `base`; closes through the coordinate
    /// period (see periodic_closure()).
    static ParamLoop coordinate_sweep(const ParamPoint& base, Eigen::Index coord, double from,
                                      double to, std::size_t count);

private:
    ParamLoop(std::vector<ParamPoint> points, bool periodic);
    void validate_shape() const;

    std::vector<ParamPoint> pts_;
    bool periodic_ = false;
};

/// Residual report for the Pythagorean fibration identities: the raw
/// total-space metric should decompose into the base metric plus the fiber
/// contribution, raw = base + fiber.
struct PythagoreanReport {
    RealMatrix raw;
    RealMatrix base;
    RealMatrix fiber;
    RealMatrix residual;
    double max_residual = 0.0;
};

}  // namespace qgt
