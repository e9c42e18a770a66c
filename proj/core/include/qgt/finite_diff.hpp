#pragma once

#include "qgt/types.hpp"

namespace qgt {

enum class FdScheme { Central2, Central4 };

/// Central-difference plan: step per coordinate and stencil order.
/// Central-2 error is O(h^2), central-4 error is O(h^4). The central-4
/// default (h = 1e-3) is used where cancellation amplifies stencil noise,
/// e.g. low-temperature metric sweeps.
struct DifferentiationPlan {
    double step = 1e-5;
    FdScheme scheme = FdScheme::Central2;

    static DifferentiationPlan central2(double h = 1e-5) { return {h, FdScheme::Central2}; }
    static DifferentiationPlan central4(double h = 1e-3) { return {h, FdScheme::Central4}; }

    void validate() const {
        if (!(step > 0.0)) throw std::invalid_argument("DifferentiationPlan: step must be > 0");
        if (step >= 1e-2) {
            throw std::invalid_argument(
                "DifferentiationPlan: step must stay below 1e-2 of the unit domain scale");
        }
    }
};

namespace detail {

template <typename Expr>
auto materialize(Expr&& e) {
    if constexpr (requires { e.eval(); }) {
        return e.eval();
    } else {
        return e;
    }
}

}  // namespace detail

/// Central-difference derivative of a field over parameter space along
/// coordinate `coord`. Works for any value type with +, - and /double
/// (matrices, vectors, scalars). State-valued fields must apply the gauge
/// convention and overlap tracking inside the closure before this is called.
template <typename Field>
auto fd_derivative(const Field& field, const ParamPoint& at, Eigen::Index coord,
                   const DifferentiationPlan& plan) {
    plan.validate();
    require_finite(at, "fd_derivative");
    if (coord < 0 || coord >= at.size()) {
        throw std::invalid_argument("fd_derivative: coordinate index out of range");
    }
    const double h = plan.step;
    ParamPoint shifted = at;
    auto eval_at = [&](double offset) {
        shifted[coord] = at[coord] + offset;
        return field(shifted);
    };
    if (plan.scheme == FdScheme::Central2) {
        auto fp = eval_at(h);
        auto fm = eval_at(-h);
        return detail::materialize((fp - fm) / (2.0 * h));
    }
    auto fp2 = eval_at(2.0 * h);
    auto fp1 = eval_at(h);
    auto fm1 = eval_at(-h);
    auto fm2 = eval_at(-2.0 * h);
    return detail::materialize((-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h));
}

}  // namespace qgt
