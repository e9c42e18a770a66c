#pragma once

#include "qgt/finite_diff.hpp"
#include "qgt/geometry_types.hpp"
#include "qgt/models.hpp"
#include "qgt/states.hpp"

namespace qgt {

/// Gap below which two lowest levels count as degenerate and the ground state
/// is rejected.
inline constexpr double kGroundStateGapTolerance = 1e-8;

/// Gauge-fixed lowest eigenvector of H(R). Throws DegeneracyError when the
/// spectral gap E1 - E0 is below 1e-8.
PureState ground_state(const ParameterizedModel& model, const ParamPoint& r);

/// Ground-state field closure suitable for finite differencing: at each
/// evaluation point the eigenvector with maximal overlap against the state at
/// the reference point is selected (overlap tracking instead of eigenvalue
/// order) and the phase is fixed with the pivot chosen at the reference point,
/// which keeps the field smooth away from pivot zero-crossings.
std::function<Vector(const ParamPoint&)> ground_state_field(const ParameterizedModel& model,
                                                            const ParamPoint& reference);

/// Quantum geometric tensor of the ground state,
/// g_ij = <d_i psi|d_j psi> - <psi|d_i psi><d_j psi|psi>,
/// with |d_i psi> from gauge-fixed finite differences. The real part is the
/// Fubini-Study metric; the imaginary part is -Omega_ij, where Omega_ij =
/// -Im<d_i psi|d_j psi> is the Berry-curvature 2-form (Omega = -(i/2) F as
/// forms). Both sign conventions are stated here because the factor-of-2 and
/// sign drift between them is a recurring source of bugs.
QGTensor fubini_study_qgt(const ParameterizedModel& model, const ParamPoint& r,
                          const DifferentiationPlan& plan);

MetricTensor fubini_study_metric(const ParameterizedModel& model, const ParamPoint& r,
                                 const DifferentiationPlan& plan);

TwoForm berry_curvature_form(const ParameterizedModel& model, const ParamPoint& r,
                             const DifferentiationPlan& plan);

/// Discrete gauge-invariant Berry phase of the ground state around a loop,
/// theta_B = -arg prod_k <psi(R_k)|psi(R_k+1)>, reduced to (-pi, pi].
/// Throws LoopResolutionError if any consecutive overlap magnitude is < 0.1.
double berry_phase(const ParameterizedModel& model, const ParamLoop& loop);

/// Fubini-Study distance squared, 2 - 2|<psi1|psi2>| (infimum over the
/// relative phase); in [0, 2].
double fubini_study_distance(const PureState& psi1, const PureState& psi2);

/// Residual of the pure-state Pythagorean identity
///   Re<d_mu psi~|d_nu psi~>|sym = Re g_mu_nu + (d_mu theta - i A_mu)(d_nu theta - i A_nu)|sym
/// for psi~ = e^{i theta(R)} psi(R) and A_mu = <psi|d_mu psi>.
PythagoreanReport check_pure_pythagorean(const ParameterizedModel& model, const ParamPoint& r,
                                         const std::function<double(const ParamPoint&)>& theta_field,
                                         const DifferentiationPlan& plan);

}  // namespace qgt
