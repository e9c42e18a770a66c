#pragma once

#include "qgt/finite_diff.hpp"
#include "qgt/geometry_types.hpp"
#include "qgt/models.hpp"
#include "qgt/states.hpp"

#include <span>

namespace qgt {

/// Pairs (i, j) of density-matrix eigenvalues with lambda_i + lambda_j below
/// this cutoff are dropped from the spectral double sums (Bures, Uhlmann
/// metric and connection). Their true contributions are O(cutoff) -- matrix
/// elements of d(rho) between near-null eigenvectors are themselves
/// O(lambda_i + lambda_j) -- while stencil noise divided by such a
/// denominator would otherwise grow without bound as the Gibbs weights
/// underflow at large beta.
inline constexpr double kSpectralPairCutoff = 1e-12;

/// Uhlmann connection one-form: k anti-Hermitian N x N component matrices.
class ConnectionOneForm {
public:
    static constexpr double kAntiHermiticityTolerance = 1e-10;

    explicit ConnectionOneForm(std::vector<Matrix> components);

    Eigen::Index dim_params() const { return static_cast<Eigen::Index>(comps_.size()); }
    const Matrix& component(Eigen::Index mu) const {
        return comps_[static_cast<std::size_t>(mu)];
    }
    const std::vector<Matrix>& components() const { return comps_; }

    /// Contraction A . dR = sum_mu A_mu dR^mu.
    Matrix contract(const ParamPoint& dr) const;

private:
    std::vector<Matrix> comps_;
};

/// U(N)-valued gauge field U(R) = exp(sum_mu R^mu G_mu) built from fixed
/// anti-Hermitian generators; used to dress purifications in the fibration
/// checks.
class GaugeField {
public:
    explicit GaugeField(std::vector<Matrix> generators);

    /// Generators with entries drawn uniform in [-1/2, 1/2], anti-Hermitized.
    static GaugeField random(std::uint64_t seed, Eigen::Index n, Eigen::Index k);
    /// The trivial gauge U(R) = 1.
    static GaugeField trivial(Eigen::Index n, Eigen::Index k);

    Eigen::Index dim_params() const { return static_cast<Eigen::Index>(gens_.size()); }
    Eigen::Index dim() const { return gens_.empty() ? 0 : gens_.front().rows(); }
    Matrix unitary_at(const ParamPoint& r) const;

private:
    std::vector<Matrix> gens_;
};

/// Discretized path of thermal states rho(R(t)) along a loop: the samples are
/// validated to be full rank at construction.
class DensityPath {
public:
    DensityPath(const ParameterizedModel& model, const ParamLoop& loop);

    const ParamLoop& loop() const { return loop_; }
    const std::vector<DensityMatrix>& states() const { return states_; }

private:
    ParamLoop loop_;
    std::vector<DensityMatrix> states_;
};

/// g^HS_mu_nu = Tr(d_mu rho d_nu rho) / 2.
MetricTensor hilbert_schmidt_metric(const ParameterizedModel& model, const ParamPoint& r,
                                    const DifferentiationPlan& plan);

/// Bures metric g^B_mu_nu = (1/2) sum_ij <i|d_mu rho|j><j|d_nu rho|i> / (lambda_i + lambda_j),
/// symmetrized. Requires a full-rank state; eigenvector phases cancel in the
/// double sum.
MetricTensor bures_metric(const ParameterizedModel& model, const ParamPoint& r,
                          const DifferentiationPlan& plan);

/// Bures metric of a qubit Bloch field,
/// d_mu a . d_nu a + (a . d_mu a)(a . d_nu a) / (1/4 - a^2).
/// Throws std::domain_error when |a| reaches the purity boundary on the stencil.
MetricTensor bures_metric_bloch(const std::function<BlochVector(const ParamPoint&)>& a_field,
                                const ParamPoint& r, const DifferentiationPlan& plan);

/// Uhlmann fidelity F = Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)) in [0, 1].
double uhlmann_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Squared Bures distance d_B^2 = 2 - 2 F; in [0, 2], symmetric in its arguments.
double bures_distance_squared(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Uhlmann connection components
/// A_mu = sum_ij (sqrt(li) - sqrt(lj)) / (li + lj) <i|d_mu sqrt(rho)|j> |i><j|,
/// with <i|d_mu sqrt(rho)|j> = <i|d_mu rho|j> / (sqrt(li) + sqrt(lj)).
/// Each component is anti-Hermitian and satisfies Tr(rho A_mu) = 0.
ConnectionOneForm uhlmann_connection(const ParameterizedModel& model, const ParamPoint& r,
                                     const DifferentiationPlan& plan);

/// Uhlmann metric Tr(d_mu sqrt(rho) d_nu sqrt(rho))
///   + Tr[rho (A_mu A_nu + A_nu A_mu)] / 2;
/// equal to the Bures metric.
MetricTensor uhlmann_metric(const ParameterizedModel& model, const ParamPoint& r,
                            const DifferentiationPlan& plan);

/// Uhlmann form sigma^U_mu_nu = (i/2)[d_mu Tr(rho A_nu) - d_nu Tr(rho A_mu)],
/// computed by finite differences of the scalar fields Tr(rho A_mu).
/// Identically zero for trace-preserving finite-dimensional families; returned
/// for inspection.
TwoForm uhlmann_form(const ParameterizedModel& model, const ParamPoint& r,
                     const DifferentiationPlan& plan);

/// Sjoqvist distance squared, d_S^2 = 2 - 2 sum_n sqrt(lambda_n lambda'_n) |<n|n'>|,
/// with spectral rays paired by maximal overlap magnitude. Requires
/// non-degenerate spectra (gaps > 1e-10) so the pairing is well defined.
/// Satisfies d_B <= d_S.
double sjoqvist_distance_squared(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Uhlmann holonomy of a loop: the path-ordered product of midpoint segment
/// exponentials exp(-A(R_mid) . dR), later segments multiplying on the left,
/// realizing P exp(-loop-integral of A_U). Unitary; identity for constant or
/// commuting families. Throws LoopResolutionError when consecutive states are
/// farther than 0.1 in Bures distance.
Matrix uhlmann_holonomy(const ParameterizedModel& model, const ParamLoop& loop,
                        const DifferentiationPlan& plan);

/// Residual of the mixed-state Pythagorean identity for W(R) = sqrt(rho(R)) U(R):
///   Re Tr(d_mu W^dag d_nu W)|sym = g^B_mu_nu
///     + (1/2) Tr[rho {i(A_mu + d_mu U U^dag), i(A_nu + d_nu U U^dag)}].
PythagoreanReport check_mixed_pythagorean(const ParameterizedModel& model, const ParamPoint& r,
                                          const GaugeField& gauge,
                                          const DifferentiationPlan& plan);

struct TemperatureSweepRow {
    double beta = 0.0;
    double max_abs_diff = 0.0;  // max-norm of g^B(beta) - g^FS
    RealMatrix bures;
};

struct TemperatureSweepResult {
    RealMatrix fubini_study;
    std::vector<TemperatureSweepRow> rows;

    /// True when max_abs_diff is non-increasing over rows with beta * gap >
    /// threshold, up to `slack`. The true difference decays like e^{-beta gap}
    /// and crosses below the double-precision stencil floor (~1e-13) near
    /// beta gap ~ 30; beyond that the tail is constant noise and increments
    /// below `slack` carry no information.
    bool monotone_tail(double min_gap, double beta_gap_threshold = 10.0,
                       double slack = 0.0) const;
};

/// Bures-vs-Fubini-Study distance table over an ascending beta grid at fixed R:
/// the zero-temperature correspondence. The model's temperature is overridden
/// row by row with 1/beta.
TemperatureSweepResult zero_temperature_sweep(const ParameterizedModel& model,
                                              const ParamPoint& r, std::span<const double> betas,
                                              const DifferentiationPlan& plan);

}  // namespace qgt
