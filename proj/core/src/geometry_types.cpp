#include "qgt/geometry_types.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace qgt {

namespace {

void check_square(const Eigen::Index rows, const Eigen::Index cols, const char* what) {
    if (rows != cols || rows == 0) {
        throw std::invalid_argument(std::string(what) + ": tensor must be square and non-empty");
    }
}

void check_psd(const RealMatrix& sym, double tol, const char* what) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -tol) {
        std::ostringstream msg;
        msg << what << ": real part is not positive semi-definite (min eigenvalue " << min_eig
            << ")";
        throw std::invalid_argument(msg.str());
    }
}

RealMatrix symmetrized(const RealMatrix& m) {
    RealMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out(i, i) = m(i, i);
        for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
            const double v = 0.5 * (m(i, j) + m(j, i));
            out(i, j) = v;
            out(j, i) = v;
        }
    }
    return out;
}

}  // namespace

MetricTensor::MetricTensor(const RealMatrix& entries) {
    check_square(entries.rows(), entries.cols(), "MetricTensor");
    m_ = symmetrized(entries);
    check_psd(m_, kPsdTolerance, "MetricTensor");
}

TwoForm::TwoForm(const RealMatrix& entries) {
    check_square(entries.rows(), entries.cols(), "TwoForm");
    m_.resize(entries.rows(), entries.cols());
    for (Eigen::Index i = 0; i < entries.rows(); ++i) {
        m_(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < entries.cols(); ++j) {
            const double v = 0.5 * (entries(i, j) - entries(j, i));
            m_(i, j) = v;
            m_(j, i) = -v;
        }
    }
}

QGTensor::QGTensor(const Matrix& entries) {
    check_square(entries.rows(), entries.cols(), "QGTensor");
    const double h = max_abs(Matrix(0.5 * (entries - entries.adjoint().eval())));
    if (h > kHermiticityTolerance) {
        std::ostringstream msg;
        msg << "QGTensor: Hermiticity violated by " << h;
        throw std::invalid_argument(msg.str());
    }
    m_ = 0.5 * (entries + entries.adjoint().eval());
    check_psd(symmetrized(m_.real()), kPsdTolerance, "QGTensor");
}

ParamLoop::ParamLoop(std::vector<ParamPoint> points) : pts_(std::move(points)) {
    if (pts_.size() >= 2 && pts_.front() != pts_.back()) {
        throw std::invalid_argument("ParamLoop: loop must close exactly (first == last)");
    }
    validate_shape();
}

ParamLoop::ParamLoop(std::vector<ParamPoint> points, bool periodic)
    : pts_(std::move(points)), periodic_(periodic) {
    validate_shape();
}

void ParamLoop::validate_shape() const {
    if (pts_.size() < 4) {
        throw std::invalid_argument("ParamLoop: need at least 3 distinct points plus closure");
    }
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
        if (i + 1 < pts_.size() && pts_[i] != pts_[i + 1]) ++distinct;
        if (pts_[i].size() != pts_.front().size()) {
            throw std::invalid_argument("ParamLoop: inconsistent point dimensions");
        }
        require_finite(pts_[i], "ParamLoop");
    }
    if (distinct < 3) throw std::invalid_argument("ParamLoop: need at least 3 distinct points");
}

ParamLoop ParamLoop::reversed() const {
    std::vector<ParamPoint> rev(pts_.rbegin(), pts_.rend());
    return ParamLoop(std::move(rev), periodic_);
}

ParamLoop ParamLoop::circle(const ParamPoint& center, Eigen::Index ci, Eigen::Index cj,
                            double radius, std::size_t count) {
    if (count < 3) throw std::invalid_argument("ParamLoop::circle: need at least 3 points");
    if (ci == cj || ci < 0 || cj < 0 || ci >= center.size() || cj >= center.size()) {
        throw std::invalid_argument("ParamLoop::circle: bad coordinate indices");
    }
    std::vector<ParamPoint> pts;
    pts.reserve(count + 1);
    for (std::size_t m = 0; m < count; ++m) {
        const double angle = 2.0 * M_PI * double(m) / double(count);
        ParamPoint p = center;
        p[ci] += radius * std::cos(angle);
        p[cj] += radius * std::sin(angle);
        pts.push_back(std::move(p));
    }
    pts.push_back(pts.front());
    return ParamLoop(std::move(pts));
}

ParamLoop ParamLoop::coordinate_sweep(const ParamPoint& base, Eigen::Index coord, double from,
                                      double to, std::size_t count) {
    if (count < 3) {
        throw std::invalid_argument("ParamLoop::coordinate_sweep: need at least 3 segments");
    }
    if (coord < 0 || coord >= base.size()) {
        throw std::invalid_argument("ParamLoop::coordinate_sweep: bad coordinate index");
    }
    std::vector<ParamPoint> pts;
    pts.reserve(count + 1);
    for (std::size_t m = 0; m <= count; ++m) {
        ParamPoint p = base;
        p[coord] = from + (to - from) * double(m) / double(count);
        pts.push_back(std::move(p));
    }
    return ParamLoop(std::move(pts), /*periodic=*/true);
}

}  // namespace qgt
