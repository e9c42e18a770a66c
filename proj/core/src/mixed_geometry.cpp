#include "qgt/mixed_geometry.hpp"

#include "qgt/pure_geometry.hpp"
#include "qgt/random.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qgt {

namespace {

void require_full_rank(const DensityMatrix& rho, const char* what) {
    if (!rho.full_rank()) {
        std::ostringstream msg;
        msg << what << ": density matrix is rank-deficient (min eigenvalue "
            << rho.spectrum().eigenvalues.minCoeff() << ", tolerance " << rho.rank_tolerance()
            << ")";
        throw RankError(msg.str());
    }
}

/// rho(R) as a plain matrix field for finite differencing (Hermitized, since
/// the exact derivative is Hermitian).
std::function<Matrix(const ParamPoint&)> density_field(const ParameterizedModel& model) {
    return [model](const ParamPoint& r) -> Matrix { return model.density_at(r).matrix(); };
}

Matrix hermitized(const Matrix& m) { return 0.5 * (m + m.adjoint().eval()); }

/// Everything the spectral double sums need at one parameter point: the state,
/// its eigensystem, and the derivative matrices rotated into the eigenbasis.
struct SpectralData {
    DensityMatrix rho;
    std::vector<Matrix> drho_eig;  // M_mu = V^dag (d_mu rho) V
    RealVector lambda;
    Matrix v;
};

SpectralData spectral_data(const ParameterizedModel& model, const ParamPoint& r,
                           const DifferentiationPlan& plan, const char* what) {
    SpectralData data{model.density_at(r), {}, {}, {}};
    require_full_rank(data.rho, what);
    data.lambda = data.rho.spectrum().eigenvalues;
    data.v = data.rho.spectrum().eigenvectors;
    const auto field = density_field(model);
    const Eigen::Index k = r.size();
    data.drho_eig.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index mu = 0; mu < k; ++mu) {
        const Matrix drho = hermitized(fd_derivative(field, r, mu, plan));
        data.drho_eig.push_back(data.v.adjoint() * drho * data.v);
    }
    return data;
}

/// Uhlmann connection components in the eigenbasis of rho. Pairs below the
/// spectral cutoff are zeroed; see kSpectralPairCutoff.
std::vector<Matrix> connection_eig(const SpectralData& data) {
    const Eigen::Index n = data.lambda.size();
    const Eigen::Index k = static_cast<Eigen::Index>(data.drho_eig.size());
    std::vector<Matrix> a;
    a.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index mu = 0; mu < k; ++mu) {
        Matrix am = Matrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const double li = data.lambda[i], lj = data.lambda[j];
                if (li + lj < kSpectralPairCutoff) continue;
                const double ri = std::sqrt(li), rj = std::sqrt(lj);
                // <i|d sqrt(rho)|j> = <i|d rho|j> / (sqrt(li) + sqrt(lj))
                const Complex dsqrt = data.drho_eig[static_cast<std::size_t>(mu)](i, j) / (ri + rj);
                am(i, j) = (ri - rj) / (li + lj) * dsqrt;
            }
        }
        a.push_back(std::move(am));
    }
    return a;
}

RealMatrix real_symmetric_part(const Matrix& m) {
    return RealMatrix(0.5 * (m + m.adjoint().eval()).real());
}

}  // namespace

ConnectionOneForm::ConnectionOneForm(std::vector<Matrix> components) : comps_(std::move(components)) {
    if (comps_.empty()) throw std::invalid_argument("ConnectionOneForm: no components");
    for (auto& c : comps_) {
        if (c.rows() != c.cols() || c.rows() != comps_.front().rows()) {
            throw std::invalid_argument("ConnectionOneForm: inconsistent component shapes");
        }
        const double herm = max_abs(Matrix(0.5 * (c + c.adjoint().eval())));
        if (herm > kAntiHermiticityTolerance) {
            std::ostringstream msg;
            msg << "ConnectionOneForm: component violates anti-Hermiticity by " << herm;
            throw std::invalid_argument(msg.str());
        }
        c = 0.5 * (c - c.adjoint().eval());
    }
}

Matrix ConnectionOneForm::contract(const ParamPoint& dr) const {
    if (dr.size() != dim_params()) {
        throw std::invalid_argument("ConnectionOneForm: contraction dimension mismatch");
    }
    Matrix sum = Matrix::Zero(comps_.front().rows(), comps_.front().cols());
    for (Eigen::Index mu = 0; mu < dr.size(); ++mu) {
        sum += dr[mu] * comps_[static_cast<std::size_t>(mu)];
    }
    return sum;
}

GaugeField::GaugeField(std::vector<Matrix> generators) : gens_(std::move(generators)) {
    if (gens_.empty()) throw std::invalid_argument("GaugeField: no generators");
    for (const auto& g : gens_) {
        if (g.rows() != g.cols() || g.rows() != gens_.front().rows()) {
            throw std::invalid_argument("GaugeField: inconsistent generator shapes");
        }
        if (max_abs(Matrix(0.5 * (g + g.adjoint().eval()))) > 1e-12) {
            throw std::invalid_argument("GaugeField: generators must be anti-Hermitian");
        }
    }
}

GaugeField GaugeField::random(std::uint64_t seed, Eigen::Index n, Eigen::Index k) {
    Rng rng(seed);
    std::vector<Matrix> gens;
    gens.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index mu = 0; mu < k; ++mu) gens.push_back(rng.anti_hermitian(n, 0.5));
    return GaugeField(std::move(gens));
}

GaugeField GaugeField::trivial(Eigen::Index n, Eigen::Index k) {
    return GaugeField(std::vector<Matrix>(static_cast<std::size_t>(k), Matrix::Zero(n, n)));
}

Matrix GaugeField::unitary_at(const ParamPoint& r) const {
    if (r.size() != dim_params()) {
        throw std::invalid_argument("GaugeField: parameter dimension mismatch");
    }
    Matrix exponent = Matrix::Zero(dim(), dim());
    for (Eigen::Index mu = 0; mu < r.size(); ++mu) {
        exponent += r[mu] * gens_[static_cast<std::size_t>(mu)];
    }
    return unitary_exp(exponent);
}

MetricTensor hilbert_schmidt_metric(const ParameterizedModel& model, const ParamPoint& r,
                                    const DifferentiationPlan& plan) {
    const auto field = density_field(model);
    const Eigen::Index k = r.size();
    std::vector<Matrix> drho;
    drho.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index mu = 0; mu < k; ++mu) {
        drho.push_back(hermitized(fd_derivative(field, r, mu, plan)));
    }
    Matrix g(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            g(i, j) = 0.5 * (drho[static_cast<std::size_t>(i)] * drho[static_cast<std::size_t>(j)])
                                .trace();
        }
    }
    return MetricTensor(real_symmetric_part(g));
}

MetricTensor bures_metric(const ParameterizedModel& model, const ParamPoint& r,
                          const DifferentiationPlan& plan) {
    const SpectralData data = spectral_data(model, r, plan, "bures_metric");
    const Eigen::Index n = data.lambda.size();
    const Eigen::Index k = r.size();
    Matrix g = Matrix::Zero(k, k);
    for (Eigen::Index mu = 0; mu < k; ++mu) {
        for (Eigen::Index nu = 0; nu < k; ++nu) {
            Complex sum(0, 0);
            for (Eigen::Index i = 0; i < n; ++i) {
                for (Eigen::Index j = 0; j < n; ++j) {
                    const double denom = data.lambda[i] + data.lambda[j];
                    if (denom < kSpectralPairCutoff) continue;
                    sum += data.drho_eig[static_cast<std::size_t>(mu)](i, j) *
                           data.drho_eig[static_cast<std::size_t>(nu)](j, i) / denom;
                }
            }
            g(mu, nu) = 0.5 * sum;
        }
    }
    return MetricTensor(real_symmetric_part(g));
}

MetricTensor bures_metric_bloch(const std::function<BlochVector(const ParamPoint&)>& a_field,
                                const ParamPoint& r, const DifferentiationPlan& plan) {
    auto checked = [&a_field](const ParamPoint& rr) -> Eigen::Vector3d {
        const BlochVector a = a_field(rr);
        if (a.norm() >= 0.5) {
            std::ostringstream msg;
            msg << "bures_metric_bloch: |a| = " << a.norm()
                << " reaches the purity boundary 1/2 on the stencil";
            throw std::domain_error(msg.str());
        }
        return a.vec();
    };
    const Eigen::Vector3d a0 = checked(r);
    const Eigen::Index k = r.size();
    std::vector<Eigen::Vector3d> da;
    da.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index mu = 0; mu < k; ++mu) da.push_back(fd_derivative(checked, r, mu, plan));
    const double b2 = 0.25 - a0.squaredNorm();
    RealMatrix g(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            g(i, j) = da[static_cast<std::size_t>(i)].dot(da[static_cast<std::size_t>(j)]) +
                      (a0.dot(da[static_cast<std::size_t>(i)])) *
                          (a0.dot(da[static_cast<std::size_t>(j)])) / b2;
        }
    }
    return MetricTensor(g);
}

double uhlmann_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim()) {
        throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
    }
    // Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)) equals the nuclear norm of
    // sqrt(rho1) sqrt(rho2): the eigenvalues of the symmetrized product are
    // the squared singular values. Summing singular values directly keeps
    // absolute accuracy ~eps even for (near-)pure states, where taking
    // sqrt of roundoff-sized eigenvalues would lose half the digits.
    const Matrix m = rho1.sqrt().matrix() * rho2.sqrt().matrix();
    Eigen::JacobiSVD<Matrix> svd(m);
    const double f = svd.singularValues().sum();
    return std::min(f, 1.0);
}

double bures_distance_squared(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    return std::max(0.0, 2.0 - 2.0 * uhlmann_fidelity(rho1, rho2));
}

ConnectionOneForm uhlmann_connection(const ParameterizedModel& model, const ParamPoint& r,
                                     const DifferentiationPlan& plan) {
    const SpectralData data = spectral_data(model, r, plan, "uhlmann_connection");
    std::vector<Matrix> comps;
    for (const Matrix& aeig : connection_eig(data)) {
        comps.push_back(data.v * aeig * data.v.adjoint());
    }
    return ConnectionOneForm(std::move(comps));
}

MetricTensor uhlmann_metric(const ParameterizedModel& model, const ParamPoint& r,
                            const DifferentiationPlan& plan) {
    const SpectralData data = spectral_data(model, r, plan, "uhlmann_metric");
    const Eigen::Index n = data.lambda.size();
    const Eigen::Index k = r.size();
    const std::vector<Matrix> a = connection_eig(data);

    // d sqrt(rho) in the eigenbasis, with the same pair cutoff as the connection.
    std::vector<Matrix> dsqrt;
    dsqrt.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index mu = 0; mu < k; ++mu) {
        Matrix s = Matrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                if (data.lambda[i] + data.lambda[j] < kSpectralPairCutoff) continue;
                s(i, j) = data.drho_eig[static_cast<std::size_t>(mu)](i, j) /
                          (std::sqrt(data.lambda[i]) + std::sqrt(data.lambda[j]));
            }
        }
        dsqrt.push_back(std::move(s));
    }

    Matrix g(k, k);
    for (Eigen::Index mu = 0; mu < k; ++mu) {
        for (Eigen::Index nu = 0; nu < k; ++nu) {
            const auto& smu = dsqrt[static_cast<std::size_t>(mu)];
            const auto& snu = dsqrt[static_cast<std::size_t>(nu)];
            const auto& amu = a[static_cast<std::size_t>(mu)];
            const auto& anu = a[static_cast<std::size_t>(nu)];
            Complex val = (smu * snu).trace();
            const Matrix anticomm = amu * anu + anu * amu;
            for (Eigen::Index p = 0; p < n; ++p) {
                val += 0.5 * data.lambda[p] * anticomm(p, p);
            }
            g(mu, nu) = val;
        }
    }
    return MetricTensor(real_symmetric_part(g));
}

TwoForm uhlmann_form(const ParameterizedModel& model, const ParamPoint& r,
                     const DifferentiationPlan& plan) {
    const Eigen::Index k = r.size();
    // Scalar fields t_nu(R) = Tr(rho A_nu); each evaluation rebuilds the
    // connection at the shifted point.
    auto trace_field = [&model, &plan](Eigen::Index nu) {
        return [&model, &plan, nu](const ParamPoint& rr) -> Complex {
            const DensityMatrix rho = model.density_at(rr);
            const ConnectionOneForm a = uhlmann_connection(model, rr, plan);
            return (rho.matrix() * a.component(nu)).trace();
        };
    };
    RealMatrix sigma = RealMatrix::Zero(k, k);
    for (Eigen::Index mu = 0; mu < k; ++mu) {
        for (Eigen::Index nu = mu + 1; nu < k; ++nu) {
            const Complex dmu_tnu = fd_derivative(trace_field(nu), r, mu, plan);
            const Complex dnu_tmu = fd_derivative(trace_field(mu), r, nu, plan);
            sigma(mu, nu) = (0.5 * Complex(0, 1) * (dmu_tnu - dnu_tmu)).real();
            sigma(nu, mu) = -sigma(mu, nu);
        }
    }
    return TwoForm(sigma);
}

double sjoqvist_distance_squared(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim()) {
        throw std::invalid_argument("sjoqvist_distance_squared: dimension mismatch");
    }
    const Eigen::Index n = rho1.dim();
    for (const DensityMatrix* rho : {&rho1, &rho2}) {
        const RealVector& lambda = rho->spectrum().eigenvalues;
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            if (lambda[i + 1] - lambda[i] < 1e-10) {
                std::ostringstream msg;
                msg << "sjoqvist_distance_squared: spectrum gap " << lambda[i + 1] - lambda[i]
                    << " below 1e-10, spectral-ray pairing is ambiguous";
                throw DegeneracyError(msg.str());
            }
        }
    }
    // Pair spectral rays by overlap magnitude, largest first.
    RealMatrix overlap(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            overlap(i, j) = std::abs(
                rho1.spectrum().eigenvectors.col(i).dot(rho2.spectrum().eigenvectors.col(j)));
        }
    }
    std::vector<bool> row_used(static_cast<std::size_t>(n), false);
    std::vector<bool> col_used(static_cast<std::size_t>(n), false);
    double sum = 0.0;
    for (Eigen::Index pick = 0; pick < n; ++pick) {
        Eigen::Index bi = -1, bj = -1;
        double best = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (row_used[static_cast<std::size_t>(i)]) continue;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (col_used[static_cast<std::size_t>(j)]) continue;
                if (overlap(i, j) > best) {
                    best = overlap(i, j);
                    bi = i;
                    bj = j;
                }
            }
        }
        row_used[static_cast<std::size_t>(bi)] = true;
        col_used[static_cast<std::size_t>(bj)] = true;
        sum += std::sqrt(rho1.spectrum().eigenvalues[bi] * rho2.spectrum().eigenvalues[bj]) *
               overlap(bi, bj);
    }
    return std::max(0.0, 2.0 - 2.0 * sum);
}

DensityPath::DensityPath(const ParameterizedModel& model, const ParamLoop& loop) : loop_(loop) {
    states_.reserve(loop_.points().size());
    for (const auto& p : loop_.points()) {
        states_.push_back(model.density_at(p));
        require_full_rank(states_.back(), "DensityPath");
    }
}

Matrix uhlmann_holonomy(const ParameterizedModel& model, const ParamLoop& loop,
                        const DifferentiationPlan& plan) {
    const auto& pts = loop.points();
    // Resolution guard: consecutive states must be close in Bures distance.
    const DensityPath path(model, loop);
    const auto& states = path.states();
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        const double d = std::sqrt(bures_distance_squared(states[s], states[s + 1]));
        if (d > 0.1) {
            std::ostringstream msg;
            msg << "uhlmann_holonomy: Bures distance " << d << " across segment " << s
                << " (loop under-resolved)";
            throw LoopResolutionError(msg.str());
        }
    }
    const Eigen::Index n = model.dim();
    Matrix holonomy = Matrix::Identity(n, n);
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        const ParamPoint mid = 0.5 * (pts[s] + pts[s + 1]);
        const ParamPoint delta = pts[s + 1] - pts[s];
        const ConnectionOneForm a = uhlmann_connection(model, mid, plan);
        holonomy = unitary_exp(Matrix(-a.contract(delta))) * holonomy;
    }
    return holonomy;
}

PythagoreanReport check_mixed_pythagorean(const ParameterizedModel& model, const ParamPoint& r,
                                          const GaugeField& gauge,
                                          const DifferentiationPlan& plan) {
    if (gauge.dim() != model.dim() || gauge.dim_params() != r.size()) {
        throw std::invalid_argument("check_mixed_pythagorean: gauge field shape mismatch");
    }
    const Eigen::Index k = r.size();
    const DensityMatrix rho = model.density_at(r);
    require_full_rank(rho, "check_mixed_pythagorean");

    auto w_field = [&model, &gauge](const ParamPoint& rr) -> Matrix {
        return model.density_at(rr).sqrt().matrix() * gauge.unitary_at(rr);
    };
    auto u_field = [&gauge](const ParamPoint& rr) -> Matrix { return gauge.unitary_at(rr); };

    const Matrix u0 = gauge.unitary_at(r);
    const ConnectionOneForm a = uhlmann_connection(model, r, plan);

    std::vector<Matrix> dw, x;
    for (Eigen::Index mu = 0; mu < k; ++mu) {
        dw.push_back(fd_derivative(w_field, r, mu, plan));
        const Matrix du = fd_derivative(u_field, r, mu, plan);
        x.push_back(Complex(0, 1) * (a.component(mu) + du * u0.adjoint()));
    }

    const MetricTensor bures = bures_metric(model, r, plan);

    PythagoreanReport report;
    report.raw.resize(k, k);
    report.fiber.resize(k, k);
    report.base = bures.entries();
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            const auto& di = dw[static_cast<std::size_t>(i)];
            const auto& dj = dw[static_cast<std::size_t>(j)];
            report.raw(i, j) =
                0.5 * ((di.adjoint() * dj).trace() + (dj.adjoint() * di).trace()).real();
            const auto& xi = x[static_cast<std::size_t>(i)];
            const auto& xj = x[static_cast<std::size_t>(j)];
            report.fiber(i, j) = 0.5 * (rho.matrix() * (xi * xj + xj * xi)).trace().real();
        }
    }
    report.residual = report.raw - report.base - report.fiber;
    report.max_residual = max_abs(report.residual);
    return report;
}

bool TemperatureSweepResult::monotone_tail(double min_gap, double beta_gap_threshold,
                                           double slack) const {
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& row : rows) {
        if (row.beta * min_gap <= beta_gap_threshold) continue;
        if (row.max_abs_diff > prev + slack) return false;
        prev = row.max_abs_diff;
    }
    return true;
}

TemperatureSweepResult zero_temperature_sweep(const ParameterizedModel& model,
                                              const ParamPoint& r, std::span<const double> betas,
                                              const DifferentiationPlan& plan) {
    TemperatureSweepResult result;
    result.fubini_study = fubini_study_metric(model, r, plan).entries();
    result.rows.reserve(betas.size());
    for (const double beta : betas) {
        if (!(beta > 0.0)) throw std::domain_error("zero_temperature_sweep: beta must be > 0");
        const ParameterizedModel at_t = model.with_temperature(1.0 / beta);
        TemperatureSweepRow row;
        row.beta = beta;
        row.bures = bures_metric(at_t, r, plan).entries();
        row.max_abs_diff = max_abs(RealMatrix(row.bures - result.fubini_study));
        result.rows.push_back(std::move(row));
    }
    return result;
}

}  // namespace qgt
