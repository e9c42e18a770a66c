#pragma once

#include "qgt/models.hpp"
#include "qgt/states.hpp"

#include <cmath>

namespace qgt::testing {

/// Wrap an arbitrary full-rank density field rho(R) as a ParameterizedModel:
/// H(R) = -log rho(R) at T = 1 reproduces rho(R) exactly through the Gibbs
/// construction, so the mixed-geometry pipeline can run on direct density
/// parameterizations (e.g. Bloch-coordinate fields).
inline ParameterizedModel model_from_density_field(
    std::string name, std::vector<std::string> param_names,
    std::vector<std::pair<double, double>> box, Eigen::Index dim,
    std::function<Matrix(const ParamPoint&)> rho_field) {
    auto h = [rho_field = std::move(rho_field)](const ParamPoint& r) -> Matrix {
        const HermitianOperator rho(rho_field(r));
        return matrix_function(rho, [](double x) { return -std::log(x); }, "-log").matrix();
    };
    return ParameterizedModel(std::move(name), std::move(param_names), std::move(box), dim,
                              std::move(h), 1.0);
}

/// Constant-Hamiltonian model over k parameters (for zero-tensor cases).
inline ParameterizedModel constant_model(const Matrix& h_matrix, Eigen::Index k,
                                         std::optional<double> temperature = std::nullopt) {
    std::vector<std::string> names;
    std::vector<std::pair<double, double>> box;
    for (Eigen::Index i = 0; i < k; ++i) {
        names.push_back("R" + std::to_string(i + 1));
        box.emplace_back(-10.0, 10.0);
    }
    Matrix copy = h_matrix;
    return ParameterizedModel("constant", std::move(names), std::move(box), h_matrix.rows(),
                              [copy](const ParamPoint&) { return copy; }, temperature);
}

}  // namespace qgt::testing
