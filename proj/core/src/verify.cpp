#include "qgt/verify.hpp"

#include "qgt/mixed_geometry.hpp"
#include "qgt/pure_geometry.hpp"
#include "qgt/random.hpp"
#include "qgt/scan.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace qgt {

namespace {

CheckResult check(const std::string& name, double residual, double tolerance,
                  const std::string& note = "") {
    return {name, residual, tolerance, residual < tolerance, note};
}

/// Random full-rank density matrix as a Gibbs state of a random Hamiltonian.
DensityMatrix random_state(Rng& rng, Eigen::Index n, double temperature = 1.0) {
    return gibbs_state(HermitianOperator(rng.hermitian(n)), temperature);
}

// ---------------------------------------------------------------------------
// pure-geometry invariants
// ---------------------------------------------------------------------------

/// QGT assembled from an arbitrary state field; used to probe gauge
/// invariance independently of the packaged pipeline.
Matrix qgt_of_field(const std::function<Vector(const ParamPoint&)>& field, const ParamPoint& r,
                    const DifferentiationPlan& plan) {
    const Vector psi = field(r);
    const Eigen::Index k = r.size();
    std::vector<Vector> dpsi;
    for (Eigen::Index mu = 0; mu < k; ++mu) dpsi.push_back(fd_derivative(field, r, mu, plan));
    Matrix g(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            g(i, j) = dpsi[i].dot(dpsi[j]) - psi.dot(dpsi[i]) * std::conj(psi.dot(dpsi[j]));
        }
    }
    return g;
}

CheckResult check_qgt_gauge_invariance(std::uint64_t seed) {
    const DifferentiationPlan plan = DifferentiationPlan::central2();
    Rng rng(seed);
    double worst = 0.0;
    const ParameterizedModel model = make_paramagnet();
    for (int trial = 0; trial < 10; ++trial) {
        ParamPoint r(2);
        r << rng.uniform(0.4, 2.6), rng.uniform(0.2, 6.0);
        const Matrix reference = fubini_study_qgt(model, r, plan).entries();
        const double c0 = rng.uniform(-1.0, 1.0);
        const double c1 = rng.uniform(-1.0, 1.0);
        const double c2 = rng.uniform(-1.0, 1.0);
        const auto base = ground_state_field(model, r);
        auto dressed = [&](const ParamPoint& rr) -> Vector {
            const double chi = c0 + c1 * std::sin(rr[0]) + c2 * std::cos(rr[1]);
            return std::polar(1.0, chi) * base(rr);
        };
        worst = std::max(worst, max_abs(Matrix(qgt_of_field(dressed, r, plan) - reference)));
    }
    return check("pure/qgt-gauge-invariance", worst, 1e-8, "10 random smooth phase fields");
}

CheckResult check_qgt_hermiticity(std::uint64_t seed) {
    Rng rng(seed);
    const DifferentiationPlan plan = DifferentiationPlan::central2();
    double worst = 0.0;
    for (const auto& model : {make_paramagnet(), make_twoband()}) {
        for (int trial = 0; trial < 5; ++trial) {
            const ParamPoint r = model.name() == "paramagnet"
                                     ? ParamPoint{{rng.uniform(0.4, 2.6), rng.uniform(0.2, 6.0)}}
                                     : ParamPoint{{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)}};
            const Matrix g = fubini_study_qgt(model, r, plan).entries();
            worst = std::max(worst, max_abs(Matrix(g - g.adjoint().eval())));
        }
    }
    return check("pure/qgt-hermiticity", worst, 1e-10, "zoo models, random points");
}

CheckResult check_fs_distance_metric_consistency(std::uint64_t seed) {
    Rng rng(seed);
    const ParameterizedModel model = make_paramagnet();
    const DifferentiationPlan plan = DifferentiationPlan::central2();
    double worst = 0.0;
    bool decreasing = true;
    for (int trial = 0; trial < 5; ++trial) {
        ParamPoint r(2);
        r << rng.uniform(0.6, 2.4), rng.uniform(0.3, 5.8);
        ParamPoint delta(2);
        delta << rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0);
        delta.normalize();
        const RealMatrix g = fubini_study_metric(model, r, plan).entries();
        const double quad = delta.dot(g * delta);
        double prev_err = 0.0;
        int step = 0;
        for (const double h : {1e-2, 1e-3}) {
            const PureState a = ground_state(model, r);
            const PureState b = ground_state(model, ParamPoint(r + h * delta));
            const double ratio = fubini_study_distance(a, b) / (h * h * quad);
            const double err = std::abs(ratio - 1.0);
            worst = std::max(worst, err / (10.0 * h));  // pass iff |ratio-1| < 10 h
            if (step++ > 0 && err > prev_err) decreasing = false;
            prev_err = err;
        }
    }
    if (!decreasing) worst = std::max(worst, 2.0);
    return check("pure/fs-distance-metric-consistency", worst, 1.0,
                 "|d_FS^2/(h^2 g dd) - 1| < 10h at h in {1e-2,1e-3}, Richardson-decreasing");
}

CheckResult check_berry_phase_gauge_invariance(std::uint64_t seed) {
    Rng rng(seed);
    const ParameterizedModel model = make_paramagnet();
    ParamPoint base(2);
    base << 1.1, 0.0;
    const ParamLoop loop = ParamLoop::coordinate_sweep(base, 1, 0.0, 2.0 * M_PI, 40);
    const double reference = berry_phase(model, loop);
    // Redress every point with a random phase; the overlap product telescopes,
    // so the discrete phase must not move.
    const auto& pts = loop.points();
    std::vector<Vector> states;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        states.push_back(std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI)) *
                         ground_state(model, pts[i]).amplitudes());
    }
    states.push_back(states.front());
    Complex product(1.0, 0.0);
    for (std::size_t i = 0; i + 1 < states.size(); ++i) product *= states[i].dot(states[i + 1]);
    const double redressed = -std::arg(product);
    double diff = std::abs(redressed - reference);
    diff = std::min(diff, std::abs(diff - 2.0 * M_PI));
    return check("pure/berry-phase-gauge-invariance", diff, 1e-10,
                 "random per-point phase redressing");
}

// ---------------------------------------------------------------------------
// mixed-geometry invariants
// ---------------------------------------------------------------------------

CheckResult check_uhlmann_equals_bures(std::uint64_t seed) {
    Rng rng(seed);
    const DifferentiationPlan plan = DifferentiationPlan::central2();
    const Eigen::Index dims[] = {2, 3, 4};
    const Eigen::Index ks[] = {2, 3};
    const double temps[] = {0.2, 1.0, 5.0};
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index n = dims[trial % 3];
        const Eigen::Index k = ks[(trial / 3) % 2];
        const double t = temps[(trial / 6) % 3];
        const ParameterizedModel model = make_random_model(rng.next_u64(), n, k, t);
        const ParamPoint r = rng.point(k, -1.5, 1.5);
        const RealMatrix gb = bures_metric(model, r, plan).entries();
        const RealMatrix gu = uhlmann_metric(model, r, plan).entries();
        worst = std::max(worst, max_abs(RealMatrix(gu - gb)));
    }
    return check("mixed/uhlmann-equals-bures", worst, 1e-8,
                 "200 random models, N in {2,3,4}, k in {2,3}, T in {0.2,1,5}");
}

CheckResult check_connection_trace_zero(std::uint64_t seed) {
    Rng rng(seed);
    const DifferentiationPlan plan = DifferentiationPlan::central2();
    double worst = 0.0;
    auto probe = [&](const ParameterizedModel& model, const ParamPoint& r) {
        const DensityMatrix rho = model.density_at(r);
        const ConnectionOneForm a = uhlmann_connection(model, r, plan);
        for (Eigen::Index mu = 0; mu < a.dim_params(); ++mu) {
            worst = std::max(worst, std::abs((rho.matrix() * a.component(mu)).trace()));
        }
    };
    probe(make_paramagnet(1.0, 0.7), ParamPoint{{1.1, 2.2}});
    probe(make_twoband(1.0, 0.4), ParamPoint{{1.0, -2.0}});
    for (int trial = 0; trial < 20; ++trial) {
        const ParameterizedModel model = make_random_model(rng.next_u64(), 3, 2, 1.0);
        probe(model, rng.point(2, -1.5, 1.5));
    }
    return check("mixed/uhlmann-connection-trace-zero", worst, 1e-12, "Tr(rho A_mu) = 0");
}

CheckResult check_uhlmann_form_vanishing(std::uint64_t seed) {
    Rng rng(seed);
    const DifferentiationPlan plan = DifferentiationPlan::central2();
    double worst = 0.0;
    for (const double t : {0.3, 1.0}) {
        const auto paramagnet = make_paramagnet(1.0, t);
        const auto twoband = make_twoband(1.0, t);
        for (int i = 0; i < 5; ++i) {
            worst = std::max(worst, max_abs(uhlmann_form(paramagnet,
                                                          ParamPoint{{rng.uniform(0.4, 2.6),
                                                                      rng.uniform(0.3, 5.9)}},
                                                          plan)
                                                .entries()));
            worst = std::max(worst, max_abs(uhlmann_form(twoband,
                                                          ParamPoint{{rng.uniform(-3.0, 3.0),
                                                                      rng.uniform(-3.0, 3.0)}},
                                                          plan)
                                                .entries()));
        }
    }
    for (int trial = 0; trial < 10; ++trial) {
        const ParameterizedModel model = make_random_model(rng.next_u64(), 3, 2, 0.8);
        worst = std::max(worst, max_abs(uhlmann_form(model, rng.point(2, -1.5, 1.5), plan).entries()));
    }
    return check("mixed/uhlmann-form-vanishing", worst, 1e-8, "zoo + random models");
}

CheckResult check_bures_distance_isometry(std::uint64_t seed) {
    Rng rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = 2 + trial % 3;
        const DensityMatrix rho1 = random_state(rng, n);
        const DensityMatrix rho2 = random_state(rng, n);
        const Matrix v = rng.unitary(n);
        const DensityMatrix rho1c(HermitianOperator(Matrix(v * rho1.matrix() * v.adjoint())));
        const DensityMatrix rho2c(HermitianOperator(Matrix(v * rho2.matrix() * v.adjoint())));
        worst = std::max(worst, std::abs(bures_distance_squared(rho1, rho2) -
                                         bures_distance_squared(rho1c, rho2c)));
    }
    return check("mixed/bures-distance-isometry", worst, 1e-10, "joint unitary conjugation");
}

CheckResult check_distance_hierarchy(std::uint64_t seed) {
    Rng rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Eigen::Index n = 2 + trial % 3;
        const DensityMatrix rho1 = random_state(rng, n);
        const DensityMatrix rho2 = random_state(rng, n);
        const double db2 = bures_distance_squared(rho1, rho2);
        const double ds2 = sjoqvist_distance_squared(rho1, rho2);
        worst = std::max({worst, -db2, db2 - ds2, ds2 - 2.0});
    }
    // Commuting pairs: d_B = d_S (both reduce to the classical fidelity).
    double worst_eq = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = 2 + trial % 3;
        const Matrix v = rng.unitary(n);
        auto spectrum = [&] {
            RealVector w(n);
            for (Eigen::Index i = 0; i < n; ++i) w[i] = rng.uniform(0.05, 1.0);
            w /= w.sum();
            return w;
        };
        const RealVector w1 = spectrum(), w2 = spectrum();
        const DensityMatrix rho1(HermitianOperator(Matrix(v * w1.asDiagonal().toDenseMatrix().cast<Complex>() * v.adjoint())));
        const DensityMatrix rho2(HermitianOperator(Matrix(v * w2.asDiagonal().toDenseMatrix().cast<Complex>() * v.adjoint())));
        worst_eq = std::max(worst_eq, std::abs(std::sqrt(bures_distance_squared(rho1, rho2)) -
                                               std::sqrt(sjoqvist_distance_squared(rho1, rho2))));
    }
    return check("mixed/distance-hierarchy", std::max(worst, worst_eq - 1e-10), 1e-12,
                 "0 <= d_B^2 <= d_S^2 <= 2 on 1000 pairs; |d_B - d_S| < 1e-10 when commuting");
}

CheckResult check_metric_distance_consistency(std::uint64_t seed) {
    Rng rng(seed);
    const DifferentiationPlan plan = DifferentiationPlan::central2();
    double worst = 0.0;
    for (const auto& model : {make_paramagnet(1.0, 0.5), make_twoband(1.0, 0.5)}) {
        for (int trial = 0; trial < 3; ++trial) {
            const ParamPoint r = model.name() == "paramagnet"
                                     ? ParamPoint{{rng.uniform(0.6, 2.4), rng.uniform(0.3, 5.8)}}
                                     // Stay clear of the cos(k) = 0 lines, where the quadratic
                    // form degenerates and the ratio bound cannot hold for any h.
                    : ParamPoint{{rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)}};
            ParamPoint delta = rng.point(2, -1.0, 1.0);
            delta.normalize();
            const RealMatrix g = bures_metric(model, r, plan).entries();
            const double quad = delta.dot(g * delta);
            const DensityMatrix rho0 = model.density_at(r);
            for (const double h : {1e-2, 1e-3}) {
                const DensityMatrix rho1 = model.density_at(ParamPoint(r + h * delta));
                const double ratio = bures_distance_squared(rho0, rho1) / (h * h * quad);
                worst = std::max(worst, std::abs(ratio - 1.0) / (10.0 * h));
            }
        }
    }
    return check("mixed/bures-metric-distance-consistency", worst, 1.0,
                 "|d_B^2/(h^2 g dd) - 1| < 10h at h in {1e-2,1e-3}");
}

CheckResult check_bloch_consistency(std::uint64_t seed) {
    Rng rng(seed);
    const DifferentiationPlan plan = DifferentiationPlan::central2();
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        // Random affine qubit Bloch field over two parameters.
        Eigen::Vector3d a0(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2));
        Eigen::Matrix<double, 3, 2> slope;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 2; ++j) slope(i, j) = rng.uniform(-0.15, 0.15);
        auto a_field = [a0, slope](const ParamPoint& r) {
            return BlochVector(a0 + slope * Eigen::Vector2d(r[0], r[1]));
        };
        auto rho_matrix = [&a_field](const ParamPoint& r) -> Matrix {
            return bloch_compose(a_field(r)).matrix();
        };
        const ParamPoint r = rng.point(2, -0.3, 0.3);
        const RealMatrix g_bloch = bures_metric_bloch(a_field, r, plan).entries();

        // Same metric through the spectral double-sum route.
        const DensityMatrix rho(HermitianOperator(rho_matrix(r)));
        const RealVector lambda = rho.spectrum().eigenvalues;
        const Matrix v = rho.spectrum().eigenvectors;
        Matrix g_spec(2, 2);
        std::vector<Matrix> drho_eig;
        for (Eigen::Index mu = 0; mu < 2; ++mu) {
            const Matrix d = fd_derivative(rho_matrix, r, mu, plan);
            drho_eig.push_back(v.adjoint() * d * v);
        }
        for (Eigen::Index mu = 0; mu < 2; ++mu) {
            for (Eigen::Index nu = 0; nu < 2; ++nu) {
                Complex sum(0, 0);
                for (Eigen::Index i = 0; i < 2; ++i)
                    for (Eigen::Index j = 0; j < 2; ++j)
                        sum += drho_eig[mu](i, j) * drho_eig[nu](j, i) / (lambda[i] + lambda[j]);
                g_spec(mu, nu) = 0.5 * sum;
            }
        }
        worst = std::max(worst, max_abs(RealMatrix(g_bloch - g_spec.real())));

        // Two-level identity: Tr(d rho)^2 / 2 + (d sqrt(det rho))^2 equals the
        // quadratic form of the Bures metric along a random direction.
        ParamPoint delta = rng.point(2, -1.0, 1.0);
        delta.normalize();
        auto rho_dir = [&](const ParamPoint& rr) { return rho_matrix(rr); };
        Matrix drho_dir = Matrix::Zero(2, 2);
        for (Eigen::Index mu = 0; mu < 2; ++mu) {
            drho_dir += delta[mu] * fd_derivative(rho_dir, r, mu, plan);
        }
        auto sqrt_det_field = [&](const ParamPoint& rr) -> double {
            return std::sqrt(rho_matrix(rr).determinant().real());
        };
        double dsqrtdet = 0.0;
        for (Eigen::Index mu = 0; mu < 2; ++mu) {
            dsqrtdet += delta[mu] * fd_derivative(sqrt_det_field, r, mu, plan);
        }
        const double lhs = 0.5 * (drho_dir * drho_dir).trace().real() + dsqrtdet * dsqrtdet;
        const double rhs = delta.dot(g_bloch * delta);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return check("mixed/bloch-consistency", worst, 1e-8,
                 "bures_metric_bloch vs spectral route; Tr(drho)^2/2 + (d sqrt det rho)^2 identity");
}

CheckResult check_holonomy_properties(std::uint64_t seed) {
    (void)seed;
    const DifferentiationPlan plan = DifferentiationPlan::central2();
    const ParameterizedModel model = make_paramagnet(1.0, 0.5);
    ParamPoint base(2);
    base << 1.0, 0.0;
    const ParamLoop loop = ParamLoop::coordinate_sweep(base, 1, 0.0, 2.0 * M_PI, 96);
    const Matrix u = uhlmann_holonomy(model, loop, plan);
    const Matrix ur = uhlmann_holonomy(model, loop.reversed(), plan);
    const Eigen::Index n = model.dim();
    const double unitarity = max_abs(Matrix(u.adjoint() * u - Matrix::Identity(n, n)));
    const double inverse = max_abs(Matrix(ur - u.adjoint()));
    return check("mixed/holonomy-unitarity-and-inverse", std::max(unitarity, inverse), 1e-8,
                 "U^dag U = 1; reversed loop gives U^dag");
}

CheckResult check_pythagorean_residuals(std::uint64_t seed) {
    const DifferentiationPlan plan = DifferentiationPlan::central2();
    Rng rng(seed);
    const ParameterizedModel pm = make_paramagnet(1.0, 0.6);
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
        const ParamPoint r{{rng.uniform(0.6, 2.4), rng.uniform(0.3, 5.8)}};
        const double c0 = rng.uniform(-1.0, 1.0), c1 = rng.uniform(-1.0, 1.0),
                     c2 = rng.uniform(-1.0, 1.0);
        auto theta = [c0, c1, c2](const ParamPoint& rr) { return c0 + c1 * rr[0] + c2 * rr[1]; };
        worst = std::max(worst, check_pure_pythagorean(pm, r, theta, plan).max_residual);
        const GaugeField gauge = GaugeField::random(rng.next_u64(), 2, 2);
        worst = std::max(worst, check_mixed_pythagorean(pm, r, gauge, plan).max_residual);
    }
    return check("mixed/pythagorean-residuals", worst, 1e-6,
                 "pure and mixed fibration identities, random phases/gauges");
}

// ---------------------------------------------------------------------------
// model-zoo invariants
// ---------------------------------------------------------------------------

CheckResult check_zoo_closed_forms() {
    const DifferentiationPlan plan = DifferentiationPlan::central2();
    double worst = 0.0;
    for (const double t : {0.1, 0.5, 1.0, 5.0}) {
        const ParameterizedModel pm = make_paramagnet(1.0, t);
        const ParameterizedModel tb = make_twoband(1.0, t);
        for (int i = 0; i < 16; ++i) {
            for (int j = 0; j < 16; ++j) {
                const double theta = 0.05 + (M_PI - 0.1) * (i + 0.5) / 16.0;
                const double phi = 2.0 * M_PI * j / 16.0;
                const RealMatrix got = bures_metric(pm, ParamPoint{{theta, phi}}, plan).entries();
                const RealMatrix want = paramagnet_bures_closed_form(theta, t, 1.0).entries();
                worst = std::max(worst, max_abs(RealMatrix(got - want)));

                const double kx = -M_PI + 2.0 * M_PI * i / 16.0;
                const double ky = -M_PI + 2.0 * M_PI * j / 16.0;
                const RealMatrix got_tb = bures_metric(tb, ParamPoint{{kx, ky}}, plan).entries();
                const RealMatrix want_tb = twoband_bures_closed_form(kx, ky, 1.0, t).entries();
                worst = std::max(worst, max_abs(RealMatrix(got_tb - want_tb)));
            }
        }
    }
    return check("zoo/pipeline-vs-closed-form", worst, 1e-8,
                 "16x16 grids, T in {0.1,0.5,1,5}, both models");
}

CheckResult check_twoband_symmetries(std::uint64_t seed) {
    Rng rng(seed);
    const DifferentiationPlan plan = DifferentiationPlan::central2();
    const double mu = 1.0, t = 0.5;
    const ParameterizedModel tb = make_twoband(mu, t);
    double worst = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
        const double kx = rng.uniform(-2.8, 2.8), ky = rng.uniform(-2.8, 2.8);
        for (const bool pipeline : {false, true}) {
            auto eval = [&](double x, double y) -> RealMatrix {
                return pipeline ? bures_metric(tb, ParamPoint{{x, y}}, plan).entries()
                                : twoband_bures_closed_form(x, y, mu, t).entries();
            };
            const RealMatrix g = eval(kx, ky);
            const RealMatrix swap = eval(ky, kx);
            const RealMatrix rot = eval(-ky, kx);
            worst = std::max({worst, std::abs(g(0, 0) - swap(1, 1)),
                              std::abs(g(1, 1) - swap(0, 0)), std::abs(g(0, 1) - swap(0, 1)),
                              std::abs(g(0, 0) - rot(1, 1)), std::abs(g(1, 1) - rot(0, 0)),
                              std::abs(g(0, 1) + rot(0, 1))});
        }
    }
    return check("zoo/twoband-symmetries", worst, 1e-8,
                 "gxx<->gyy under (kx,ky)->(ky,kx) and (-ky,kx); gxy even/odd");
}

CheckResult check_twoband_peaks() {
    const double mu = 1.0, t = 0.1;
    const int n = 16;
    auto trace_at = [&](int i, int j) {
        const double kx = -M_PI + 2.0 * M_PI * ((i % n + n) % n) / n;
        const double ky = -M_PI + 2.0 * M_PI * ((j % n + n) % n) / n;
        const RealMatrix g = twoband_bures_closed_form(kx, ky, mu, t).entries();
        return g(0, 0) + g(1, 1);
    };
    double worst = 0.0;
    // k_c = (n pi, m pi) lands on grid indices 0 and n/2; those must dominate
    // their 8 neighbors and have vanishing off-diagonal metric.
    for (const int i : {0, n / 2}) {
        for (const int j : {0, n / 2}) {
            const double center = trace_at(i, j);
            for (int di = -1; di <= 1; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    if (trace_at(i + di, j + dj) >= center) worst = std::max(worst, 1.0);
                }
            }
            const double kx = -M_PI + 2.0 * M_PI * i / n;
            const double ky = -M_PI + 2.0 * M_PI * j / n;
            worst = std::max(worst,
                             std::abs(twoband_bures_closed_form(kx, ky, mu, t).entries()(0, 1)));
        }
    }
    return check("zoo/twoband-peak-structure", worst, 1e-8,
                 "trace maxima at k_c = (n pi, m pi), g_xy(k_c) = 0");
}

CheckResult check_random_model_reproducibility(std::uint64_t seed) {
    const ParameterizedModel a = make_random_model(seed, 3, 2, 1.0);
    const ParameterizedModel b = make_random_model(seed, 3, 2, 1.0);
    Rng rng(seed + 1);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const ParamPoint r = rng.point(2, -2.0, 2.0);
        worst = std::max(worst, max_abs(Matrix(a.hamiltonian_at(r).matrix() -
                                               b.hamiltonian_at(r).matrix())));
    }
    return check("zoo/random-model-reproducibility", worst, 1e-300,
                 "same seed gives bit-identical fields");
}

}  // namespace

VerifyReport run_verify(const std::string& suite, std::uint64_t seed) {
    if (suite != "all" && suite != "pure" && suite != "mixed" && suite != "zoo") {
        throw std::invalid_argument("run_verify: suite must be all, pure, mixed or zoo");
    }
    VerifyReport report;
    const bool pure = suite == "all" || suite == "pure";
    const bool mixed = suite == "all" || suite == "mixed";
    const bool zoo = suite == "all" || suite == "zoo";
    if (pure) {
        report.checks.push_back(check_qgt_gauge_invariance(seed));
        report.checks.push_back(check_qgt_hermiticity(seed + 1));
        report.checks.push_back(check_fs_distance_metric_consistency(seed + 2));
        report.checks.push_back(check_berry_phase_gauge_invariance(seed + 3));
    }
    if (mixed) {
        report.checks.push_back(check_uhlmann_equals_bures(seed + 4));
        report.checks.push_back(check_connection_trace_zero(seed + 5));
        report.checks.push_back(check_uhlmann_form_vanishing(seed + 6));
        report.checks.push_back(check_bures_distance_isometry(seed + 7));
        report.checks.push_back(check_distance_hierarchy(seed + 8));
        report.checks.push_back(check_metric_distance_consistency(seed + 9));
        report.checks.push_back(check_bloch_consistency(seed + 10));
        report.checks.push_back(check_holonomy_properties(seed + 11));
        report.checks.push_back(check_pythagorean_residuals(seed + 12));
    }
    if (zoo) {
        report.checks.push_back(check_zoo_closed_forms());
        report.checks.push_back(check_twoband_symmetries(seed + 13));
        report.checks.push_back(check_twoband_peaks());
        report.checks.push_back(check_random_model_reproducibility(seed + 14));
    }
    return report;
}

}  // namespace qgt
