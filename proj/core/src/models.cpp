#include "qgt/models.hpp"

#include "qgt/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace qgt {

ParameterizedModel::ParameterizedModel(std::string name, std::vector<std::string> param_names,
                                       std::vector<std::pair<double, double>> domain_box,
                                       Eigen::Index dim, HamiltonianFn hamiltonian,
                                       std::optional<double> temperature)
    : name_(std::move(name)),
      param_names_(std::move(param_names)),
      box_(std::move(domain_box)),
      dim_(dim),
      hamiltonian_(std::move(hamiltonian)),
      temperature_(temperature) {
    if (param_names_.size() != box_.size()) {
        throw std::invalid_argument("ParameterizedModel: domain box / parameter count mismatch");
    }
    if (dim_ < 1) throw std::invalid_argument("ParameterizedModel: dimension must be >= 1");
    if (temperature_ && !(*temperature_ > 0.0)) {
        throw std::domain_error("ParameterizedModel: temperature must be > 0");
    }
}

void ParameterizedModel::check_domain(const ParamPoint& r) const {
    require_finite(r, name_.c_str());
    if (r.size() != param_count()) {
        std::ostringstream msg;
        msg << name_ << ": expected " << param_count() << " parameters, got " << r.size();
        throw std::invalid_argument(msg.str());
    }
    for (Eigen::Index i = 0; i < r.size(); ++i) {
        const auto [lo, hi] = box_[static_cast<std::size_t>(i)];
        const double margin = 0.25 * (hi - lo);
        if (r[i] < lo - margin || r[i] > hi + margin) {
            std::ostringstream msg;
            msg << name_ << ": parameter " << param_names_[static_cast<std::size_t>(i)] << " = "
                << r[i] << " lies outside the domain box [" << lo << ", " << hi
                << "] (with stencil margin " << margin << ")";
            throw std::domain_error(msg.str());
        }
    }
}

HermitianOperator ParameterizedModel::hamiltonian_at(const ParamPoint& r) const {
    check_domain(r);
    return HermitianOperator(hamiltonian_(r));
}

DensityMatrix ParameterizedModel::density_at(const ParamPoint& r) const {
    if (!temperature_) {
        throw std::logic_error(name_ + ": model has no temperature; mixed-state operations "
                               "need a thermal state (use with_temperature)");
    }
    return gibbs_state(hamiltonian_at(r), *temperature_);
}

ParameterizedModel ParameterizedModel::with_temperature(double t) const {
    ParameterizedModel copy = *this;
    if (!(t > 0.0)) throw std::domain_error(name_ + ": temperature must be > 0");
    copy.temperature_ = t;
    return copy;
}

ParameterizedModel make_paramagnet(double omega0, std::optional<double> temperature) {
    if (!(omega0 > 0.0)) throw std::invalid_argument("make_paramagnet: omega0 must be > 0");
    auto h = [omega0](const ParamPoint& r) -> Matrix {
        const double theta = r[0], phi = r[1];
        const Eigen::Vector3d b(std::sin(theta) * std::cos(phi),
                                std::sin(theta) * std::sin(phi), std::cos(theta));
        return 0.5 * omega0 *
               (b[0] * pauli_x() + b[1] * pauli_y() + b[2] * pauli_z());
    };
    // Grids keep clear of the poles, where finite differences in phi degenerate.
    return ParameterizedModel("paramagnet", {"theta", "phi"},
                              {{0.05, M_PI - 0.05}, {0.0, 2.0 * M_PI}}, 2, std::move(h),
                              temperature);
}

ParameterizedModel make_twoband(double mu, std::optional<double> temperature) {
    if (!(mu > 0.0)) throw std::invalid_argument("make_twoband: mu must be > 0");
    auto h = [mu](const ParamPoint& r) -> Matrix {
        return std::sin(r[0]) * pauli_x() + std::sin(r[1]) * pauli_y() + mu * pauli_z();
    };
    return ParameterizedModel("twoband", {"kx", "ky"}, {{-M_PI, M_PI}, {-M_PI, M_PI}}, 2,
                              std::move(h), temperature);
}

ParameterizedModel make_random_model(std::uint64_t seed, Eigen::Index n, Eigen::Index k,
                                     std::optional<double> temperature) {
    if (n < 2) throw std::invalid_argument("make_random_model: N must be >= 2");
    if (k < 1) throw std::invalid_argument("make_random_model: k must be >= 1");
    Rng rng(seed);
    auto draw = [&] {
        auto coeffs = std::make_shared<std::vector<Matrix>>();
        coeffs->push_back(rng.hermitian(n));  // H0
        for (Eigen::Index mu = 0; mu < k; ++mu) coeffs->push_back(rng.hermitian(n));
        return coeffs;
    };
    auto coeffs = draw();
    // H(0) = H0; redraw until its spectrum is safely non-degenerate.
    for (int attempt = 0; attempt < 64; ++attempt) {
        const SpectralDecomposition dec =
            spectral_decompose(HermitianOperator((*coeffs)[0]));
        double min_gap = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            min_gap = std::min(min_gap, dec.eigenvalues[i + 1] - dec.eigenvalues[i]);
        }
        if (min_gap > 1e-6) break;
        coeffs = draw();
    }
    auto h = [coeffs, k](const ParamPoint& r) -> Matrix {
        Matrix sum = (*coeffs)[0];
        for (Eigen::Index mu = 0; mu < k; ++mu) {
            sum += std::sin(r[mu]) * (*coeffs)[static_cast<std::size_t>(mu) + 1];
        }
        return sum;
    };
    std::vector<std::string> names;
    std::vector<std::pair<double, double>> box;
    for (Eigen::Index mu = 0; mu < k; ++mu) {
        names.push_back("R" + std::to_string(mu + 1));
        box.emplace_back(-M_PI, M_PI);
    }
    return ParameterizedModel("random[" + std::to_string(seed) + "]", std::move(names),
                              std::move(box), n, std::move(h), temperature);
}

MetricTensor paramagnet_bures_closed_form(double theta, double temperature, double omega0) {
    if (!(temperature > 0.0)) {
        throw std::domain_error("paramagnet_bures_closed_form: temperature must be > 0");
    }
    const double t = std::tanh(0.5 * omega0 / temperature);
    RealMatrix g = RealMatrix::Zero(2, 2);
    g(0, 0) = 0.25 * t * t;
    g(1, 1) = 0.25 * t * t * std::sin(theta) * std::sin(theta);
    return MetricTensor(g);
}

MetricTensor twoband_bures_closed_form(double kx, double ky, double mu, double temperature) {
    if (!(temperature > 0.0) || !(mu > 0.0)) {
        throw std::domain_error("twoband_bures_closed_form: mu and temperature must be > 0");
    }
    const double beta = 1.0 / temperature;
    const double sx = std::sin(kx), cx = std::cos(kx);
    const double sy = std::sin(ky), cy = std::cos(ky);
    const double delta = 2.0 * std::sqrt(sx * sx + sy * sy + mu * mu);
    const double d2 = delta * delta;
    const double th = std::tanh(0.5 * beta * delta);
    const double ch = std::cosh(0.5 * beta * delta);
    const double bracket = 0.25 * beta * beta / (ch * ch) - th * th / d2;
    RealMatrix g(2, 2);
    g(0, 0) = bracket * 4.0 * sx * sx * cx * cx / d2 + th * th / d2 * cx * cx;
    g(1, 1) = bracket * 4.0 * sy * sy * cy * cy / d2 + th * th / d2 * cy * cy;
    g(0, 1) = bracket * 4.0 * sx * cx * sy * cy / d2;
    g(1, 0) = g(0, 1);
    return MetricTensor(g);
}

MetricTensor twoband_fs_closed_form(double kx, double ky, double mu) {
    if (!(mu > 0.0)) throw std::domain_error("twoband_fs_closed_form: mu must be > 0");
    const double sx = std::sin(kx), cx = std::cos(kx);
    const double sy = std::sin(ky), cy = std::cos(ky);
    const double s = sx * sx + sy * sy + mu * mu;
    RealMatrix g(2, 2);
    g(0, 0) = 0.25 * cx * cx * (sy * sy + mu * mu) / (s * s);
    g(1, 1) = 0.25 * cy * cy * (sx * sx + mu * mu) / (s * s);
    g(0, 1) = -0.0625 * std::sin(2.0 * kx) * std::sin(2.0 * ky) / (s * s);
    g(1, 0) = g(0, 1);
    return MetricTensor(g);
}

ParameterizedModel make_model(const std::string& name,
                              const std::map<std::string, double>& options,
                              std::optional<double> temperature) {
    auto get = [&options](const std::string& key, double fallback) {
        auto it = options.find(key);
        return it == options.end() ? fallback : it->second;
    };
    for (const auto& [key, value] : options) {
        static const std::vector<std::string> known = {"omega0", "mu", "seed", "N", "k"};
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw std::invalid_argument("make_model: unknown model option '" + key + "'");
        }
        (void)value;
    }
    if (name == "paramagnet") return make_paramagnet(get("omega0", 1.0), temperature);
    if (name == "twoband") return make_twoband(get("mu", 1.0), temperature);
    if (name == "random") {
        return make_random_model(static_cast<std::uint64_t>(get("seed", 1.0)),
                                 static_cast<Eigen::Index>(get("N", 2.0)),
                                 static_cast<Eigen::Index>(get("k", 2.0)), temperature);
    }
    throw std::invalid_argument("make_model: unknown model '" + name + "'");
}

std::vector<std::string> model_names() { return {"paramagnet", "twoband", "random"}; }

}  // namespace qgt
