#pragma once

#include "qgt/geometry_types.hpp"
#include "qgt/hermitian.hpp"
#include "qgt/states.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qgt {

/// Differentiable map R -> H(R) with metadata. The domain box is the
/// recommended scan window; evaluation accepts any point inside the box
/// inflated by 25% of its extent per side (the built-in Hamiltonians are
/// entire in R, and loops and stencils routinely step slightly outside the
/// canonical chart), and throws std::domain_error beyond that.
///
/// Models with a temperature expose the thermal state rho(R) = e^{-beta H(R)}/Z
/// through density_at(). Models are immutable after construction and safe to
/// share across threads.
class ParameterizedModel {
public:
    using HamiltonianFn = std::function<Matrix(const ParamPoint&)>;

    ParameterizedModel(std::string name, std::vector<std::string> param_names,
                       std::vector<std::pair<double, double>> domain_box, Eigen::Index dim,
                       HamiltonianFn hamiltonian,
                       std::optional<double> temperature = std::nullopt);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& param_names() const { return param_names_; }
    const std::vector<std::pair<double, double>>& domain_box() const { return box_; }
    Eigen::Index param_count() const { return static_cast<Eigen::Index>(param_names_.size()); }
    Eigen::Index dim() const { return dim_; }
    std::optional<double> temperature() const { return temperature_; }

    HermitianOperator hamiltonian_at(const ParamPoint& r) const;
    DensityMatrix density_at(const ParamPoint& r) const;

    ParameterizedModel with_temperature(double t) const;

private:
    void check_domain(const ParamPoint& r) const;

    std::string name_;
    std::vector<std::string> param_names_;
    std::vector<std::pair<double, double>> box_;
    Eigen::Index dim_;
    HamiltonianFn hamiltonian_;
    std::optional<double> temperature_;
};

/// Spin-1/2 paramagnet H = (omega0/2) B_hat . sigma with B_hat set by the
/// polar angles (theta, phi). Eigenvalues are +-omega0/2 everywhere.
ParameterizedModel make_paramagnet(double omega0 = 1.0,
                                   std::optional<double> temperature = std::nullopt);

/// 2D two-band lattice model H_k = sin(kx) sigma_x + sin(ky) sigma_y + mu sigma_z
/// over the Brillouin zone, gap 2*sqrt(sin^2 kx + sin^2 ky + mu^2) >= 2 mu.
ParameterizedModel make_twoband(double mu = 1.0,
                                std::optional<double> temperature = std::nullopt);

/// Smooth random Hermitian field H(R) = H0 + sum_mu sin(R^mu) H_mu with fixed
/// seeded random Hermitian coefficients; redrawn until the spectrum of H(0)
/// has all gaps > 1e-6. Reproducible from the seed.
ParameterizedModel make_random_model(std::uint64_t seed, Eigen::Index n, Eigen::Index k,
                                     std::optional<double> temperature = std::nullopt);

/// Closed-form Bures metric of the paramagnet in (theta, phi):
/// diag(tanh^2(beta omega0/2)/4, tanh^2(beta omega0/2) sin^2(theta)/4).
MetricTensor paramagnet_bures_closed_form(double theta, double temperature, double omega0);

/// Closed-form Bures metric of the two-band model at (kx, ky).
MetricTensor twoband_bures_closed_form(double kx, double ky, double mu, double temperature);

/// Closed-form Fubini-Study metric of the two-band model's lower band.
MetricTensor twoband_fs_closed_form(double kx, double ky, double mu);

/// Registry used by the CLI: "paramagnet", "twoband", "random" with options
/// omega0 / mu / seed / N / k. Unknown names or options throw.
ParameterizedModel make_model(const std::string& name,
                              const std::map<std::string, double>& options,
                              std::optional<double> temperature = std::nullopt);
std::vector<std::string> model_names();

}  // namespace qgt
