#include "qgt/pure_geometry.hpp"

#include <cmath>
#include <sstream>

namespace qgt {

namespace {

SpectralDecomposition decompose_checked(const ParameterizedModel& model, const ParamPoint& r) {
    const SpectralDecomposition dec = spectral_decompose(model.hamiltonian_at(r));
    if (dec.eigenvalues.size() >= 2) {
        const double gap = dec.eigenvalues[1] - dec.eigenvalues[0];
        if (gap < kGroundStateGapTolerance) {
            std::ostringstream msg;
            msg << model.name() << ": ground-state gap " << gap << " below "
                << kGroundStateGapTolerance;
            throw DegeneracyError(msg.str());
        }
    }
    return dec;
}

}  // namespace

PureState ground_state(const ParameterizedModel& model, const ParamPoint& r) {
    const SpectralDecomposition dec = decompose_checked(model, r);
    return PureState(dec.eigenvectors.col(0));
}

std::function<Vector(const ParamPoint&)> ground_state_field(const ParameterizedModel& model,
                                                            const ParamPoint& reference) {
    const Vector ref = ground_state(model, reference).amplitudes();
    const Eigen::Index pivot = gauge_pivot(ref);
    return [model, ref, pivot](const ParamPoint& r) -> Vector {
        const SpectralDecomposition dec = spectral_decompose(model.hamiltonian_at(r));
        Eigen::Index best = 0;
        double best_overlap = 0.0;
        for (Eigen::Index c = 0; c < dec.eigenvectors.cols(); ++c) {
            const double o = std::abs(ref.dot(dec.eigenvectors.col(c)));
            if (o > best_overlap) {
                best_overlap = o;
                best = c;
            }
        }
        return gauge_fix(dec.eigenvectors.col(best), pivot);
    };
}

QGTensor fubini_study_qgt(const ParameterizedModel& model, const ParamPoint& r,
                          const DifferentiationPlan& plan) {
    const auto field = ground_state_field(model, r);  // rejects degeneracies at r
    const Vector psi = field(r);
    const Eigen::Index k = r.size();
    std::vector<Vector> dpsi;
    dpsi.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index mu = 0; mu < k; ++mu) {
        dpsi.push_back(fd_derivative(field, r, mu, plan));
    }
    Vector connection(k);  // A_mu = <psi|d_mu psi>
    for (Eigen::Index mu = 0; mu < k; ++mu) connection[mu] = psi.dot(dpsi[static_cast<std::size_t>(mu)]);
    Matrix g(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            g(i, j) = dpsi[static_cast<std::size_t>(i)].dot(dpsi[static_cast<std::size_t>(j)]) -
                      connection[i] * std::conj(connection[j]);
        }
    }
    return QGTensor(g);
}

MetricTensor fubini_study_metric(const ParameterizedModel& model, const ParamPoint& r,
                                 const DifferentiationPlan& plan) {
    return fubini_study_qgt(model, r, plan).real_part();
}

TwoForm berry_curvature_form(const ParameterizedModel& model, const ParamPoint& r,
                             const DifferentiationPlan& plan) {
    return fubini_study_qgt(model, r, plan).negative_imag_part();
}

double berry_phase(const ParameterizedModel& model, const ParamLoop& loop) {
    const auto& pts = loop.points();
    Complex product(1.0, 0.0);
    Vector prev = ground_state(model, pts[0]).amplitudes();
    const Vector first = prev;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        // The closing point equals the first, so reuse its state; intermediate
        // points are diagonalized fresh (gauge drops out of the product).
        const Vector cur =
            (k + 1 == pts.size()) ? first : ground_state(model, pts[k]).amplitudes();
        const Complex overlap = prev.dot(cur);
        if (std::abs(overlap) < 0.1) {
            std::ostringstream msg;
            msg << "berry_phase: overlap magnitude " << std::abs(overlap) << " at segment "
                << k - 1 << " (loop under-resolved)";
            throw LoopResolutionError(msg.str());
        }
        product *= overlap;
        prev = cur;
    }
    return -std::arg(product);
}

double fubini_study_distance(const PureState& psi1, const PureState& psi2) {
    if (psi1.dim() != psi2.dim()) {
        throw std::invalid_argument("fubini_study_distance: dimension mismatch");
    }
    const double d2 = 2.0 - 2.0 * std::abs(psi1.overlap(psi2));
    return std::max(0.0, d2);
}

PythagoreanReport check_pure_pythagorean(
    const ParameterizedModel& model, const ParamPoint& r,
    const std::function<double(const ParamPoint&)>& theta_field,
    const DifferentiationPlan& plan) {
    const auto base_field = ground_state_field(model, r);
    auto lifted = [&](const ParamPoint& rr) -> Vector {
        return std::polar(1.0, theta_field(rr)) * base_field(rr);
    };
    const Vector psi = base_field(r);
    const Eigen::Index k = r.size();

    std::vector<Vector> dpsi_base, dpsi_lifted;
    RealVector dtheta(k);
    for (Eigen::Index mu = 0; mu < k; ++mu) {
        dpsi_base.push_back(fd_derivative(base_field, r, mu, plan));
        dpsi_lifted.push_back(fd_derivative(lifted, r, mu, plan));
        dtheta[mu] = fd_derivative(theta_field, r, mu, plan);
    }
    Vector connection(k);
    for (Eigen::Index mu = 0; mu < k; ++mu) {
        connection[mu] = psi.dot(dpsi_base[static_cast<std::size_t>(mu)]);
    }

    PythagoreanReport report;
    report.raw.resize(k, k);
    report.base.resize(k, k);
    report.fiber.resize(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            const auto& di = dpsi_lifted[static_cast<std::size_t>(i)];
            const auto& dj = dpsi_lifted[static_cast<std::size_t>(j)];
            report.raw(i, j) = 0.5 * (di.dot(dj) + dj.dot(di)).real();
            const Complex gij =
                dpsi_base[static_cast<std::size_t>(i)].dot(dpsi_base[static_cast<std::size_t>(j)]) -
                connection[i] * std::conj(connection[j]);
            report.base(i, j) = gij.real();
            const Complex xi = dtheta[i] - Complex(0, 1) * connection[i];
            const Complex xj = dtheta[j] - Complex(0, 1) * connection[j];
            report.fiber(i, j) = 0.5 * (xi * xj + xj * xi).real();
        }
    }
    report.residual = report.raw - report.base - report.fiber;
    report.max_residual = max_abs(report.residual);
    return report;
}

}  // namespace qgt
