#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qgt/pure_geometry.hpp"
#include "qgt/random.hpp"
#include "support.hpp"

using namespace qgt;

namespace {

const DifferentiationPlan kPlan = DifferentiationPlan::central2();

ParamPoint sphere_point(double theta, double phi) {
    ParamPoint r(2);
    r << theta, phi;
    return r;
}

/// First-order perturbation theory,
/// g_ij = sum_{n>0} <0|dH_i|n><n|dH_j|0> / (E_n - E_0)^2,
/// with dH from finite differences of the Hamiltonian field only. Independent
/// of the eigenvector-differencing route used by fubini_study_qgt.
Matrix qgt_perturbation_oracle(const ParameterizedModel& model, const ParamPoint& r,
                               const DifferentiationPlan& plan) {
    const auto dec = spectral_decompose(model.hamiltonian_at(r));
    auto h_field = [&model](const ParamPoint& rr) -> Matrix {
        return model.hamiltonian_at(rr).matrix();
    };
    const Eigen::Index k = r.size();
    const Eigen::Index n = model.dim();
    std::vector<Matrix> dh;
    for (Eigen::Index mu = 0; mu < k; ++mu) dh.push_back(fd_derivative(h_field, r, mu, plan));
    Matrix g = Matrix::Zero(k, k);
    const Vector ground = dec.eigenvectors.col(0);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            Complex sum(0, 0);
            for (Eigen::Index m = 1; m < n; ++m) {
                const Vector excited = dec.eigenvectors.col(m);
                const double denom = dec.eigenvalues[m] - dec.eigenvalues[0];
                sum += ground.dot(dh[i] * excited) * excited.dot(dh[j] * ground) / (denom * denom);
            }
            g(i, j) = sum;
        }
    }
    return g;
}

}  // namespace

TEST_CASE("ground_state: Pauli Hamiltonians and the paramagnet") {
    const auto sz_model = testing::constant_model(pauli_z(), 1);
    ParamPoint r0(1);
    r0 << 0.0;
    const Vector gz = ground_state(sz_model, r0).amplitudes();
    CHECK(std::abs(gz[0]) < 1e-14);
    CHECK(std::abs(gz[1] - Complex(1, 0)) < 1e-14);

    const auto sx_model = testing::constant_model(pauli_x(), 1);
    const Vector gx = ground_state(sx_model, r0).amplitudes();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(gx[0] - Complex(inv_sqrt2, 0)) < 1e-14);
    CHECK(std::abs(gx[1] - Complex(-inv_sqrt2, 0)) < 1e-14);

    // Ground state of B.sigma has <B.sigma> = -1.
    const ParameterizedModel pm = make_paramagnet();
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const ParamPoint r = sphere_point(rng.uniform(0.2, 2.9), rng.uniform(0.0, 6.2));
        const Vector psi = ground_state(pm, r).amplitudes();
        const Matrix h = pm.hamiltonian_at(r).matrix();  // (omega0/2) B.sigma
        const double expectation = psi.dot(h * psi).real() / 0.5;
        CHECK(expectation == doctest::Approx(-1.0).epsilon(1e-12));
    }
}

TEST_CASE("ground_state: degenerate spectrum is rejected") {
    const auto degenerate = testing::constant_model(Matrix::Identity(3, 3), 1);
    ParamPoint r0(1);
    r0 << 0.0;
    CHECK_THROWS_AS(ground_state(degenerate, r0), DegeneracyError);
}

TEST_CASE("fubini_study_qgt on the sphere: quarter metric and Berry curvature") {
    const ParameterizedModel pm = make_paramagnet();
    for (const auto& [theta, phi] : {std::pair{0.7, 0.3}, {1.3, 2.0}, {2.2, 5.1}}) {
        const QGTensor g = fubini_study_qgt(pm, sphere_point(theta, phi), kPlan);
        CHECK(g(0, 0).real() == doctest::Approx(0.25).epsilon(1e-8));
        CHECK(g(1, 1).real() ==
              doctest::Approx(0.25 * std::sin(theta) * std::sin(theta)).epsilon(1e-8));
        CHECK(std::abs(g(0, 1).real()) < 1e-8);
        // -Im g_{theta,phi} = sin(theta)/4
        CHECK(-g(0, 1).imag() == doctest::Approx(0.25 * std::sin(theta)).epsilon(1e-8));
    }
}

TEST_CASE("fubini_study_qgt: constant model gives the zero tensor") {
    const auto constant = testing::constant_model(Matrix(pauli_z() + 0.3 * pauli_x()), 2);
    ParamPoint r(2);
    r << 0.4, -1.0;
    CHECK(max_abs(fubini_study_qgt(constant, r, kPlan).entries()) < 1e-12);
}

TEST_CASE("fubini_study_metric and berry_curvature_form split the QGT") {
    const ParameterizedModel pm = make_paramagnet();
    const ParamPoint r = sphere_point(M_PI / 2.0, 1.0);
    const MetricTensor metric = fubini_study_metric(pm, r, kPlan);
    CHECK(metric(0, 0) == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(metric(1, 1) == doctest::Approx(0.25).epsilon(1e-8));
    const TwoForm omega = berry_curvature_form(pm, r, kPlan);
    CHECK(omega(0, 1) == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(omega(1, 0) == doctest::Approx(-0.25).epsilon(1e-8));

    // One-parameter family: the 1x1 two-form vanishes by antisymmetry.
    const auto one_param = testing::constant_model(pauli_z(), 1);
    ParamPoint r1(1);
    r1 << 0.2;
    CHECK(berry_curvature_form(one_param, r1, kPlan)(0, 0) == 0.0);
}

TEST_CASE("fubini_study_qgt agrees with the perturbation-theory oracle") {
    Rng rng(19);
    for (int trial = 0; trial < 5; ++trial) {
        const ParameterizedModel model = make_random_model(rng.next_u64(), 4, 2);
        const ParamPoint r = rng.point(2, -1.2, 1.2);
        const Matrix via_states = fubini_study_qgt(model, r, kPlan).entries();
        const Matrix via_perturbation = qgt_perturbation_oracle(model, r, kPlan);
        CHECK(max_abs(Matrix(via_states - via_perturbation)) < 1e-6);
    }
}

TEST_CASE("fubini_study_qgt is insensitive to the pivot convention") {
    const ParameterizedModel pm = make_paramagnet();
    const ParamPoint r = sphere_point(1.2, 0.8);  // both spinor entries well away from zero
    const Matrix reference = fubini_study_qgt(pm, r, kPlan).entries();

    // Same assembly, but the phase is fixed at the other entry.
    const Vector psi0 = ground_state(pm, r).amplitudes();
    const Eigen::Index other = gauge_pivot(psi0) == 0 ? 1 : 0;
    auto field = [&pm, psi0, other](const ParamPoint& rr) -> Vector {
        const auto dec = spectral_decompose(pm.hamiltonian_at(rr));
        Eigen::Index best = 0;
        double best_overlap = 0.0;
        for (Eigen::Index c = 0; c < dec.eigenvectors.cols(); ++c) {
            const double o = std::abs(psi0.dot(dec.eigenvectors.col(c)));
            if (o > best_overlap) {
                best_overlap = o;
                best = c;
            }
        }
        return gauge_fix(dec.eigenvectors.col(best), other);
    };
    const Vector psi = field(r);
    std::vector<Vector> dpsi;
    for (Eigen::Index mu = 0; mu < 2; ++mu) dpsi.push_back(fd_derivative(field, r, mu, kPlan));
    Matrix g(2, 2);
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 2; ++j)
            g(i, j) = dpsi[i].dot(dpsi[j]) - psi.dot(dpsi[i]) * std::conj(psi.dot(dpsi[j]));
    CHECK(max_abs(Matrix(g - reference)) < 1e-8);
}

TEST_CASE("berry_phase: constant Hamiltonian loops pick up nothing") {
    const auto constant = testing::constant_model(Matrix(pauli_z() + 0.2 * pauli_y()), 2);
    ParamPoint center(2);
    center << 0.0, 0.0;
    const ParamLoop loop = ParamLoop::circle(center, 0, 1, 1.0, 12);
    CHECK(std::abs(berry_phase(constant, loop)) < 1e-12);
}

TEST_CASE("berry_phase: paramagnet phi-loop gives pi(1 - cos theta)") {
    const ParameterizedModel pm = make_paramagnet();
    auto wrap = [](double x) {
        while (x > M_PI) x -= 2.0 * M_PI;
        while (x <= -M_PI) x += 2.0 * M_PI;
        return x;
    };
    for (const double theta : {0.6, 1.0, M_PI / 2.0, 2.1}) {
        const ParamLoop dense =
            ParamLoop::coordinate_sweep(sphere_point(theta, 0.0), 1, 0.0, 2.0 * M_PI, 10000);
        const double phase = berry_phase(pm, dense);
        const double expected = M_PI * (1.0 - std::cos(theta));  // lower band, half solid angle
        CHECK(std::abs(wrap(phase - expected)) < 1e-6);

        // Self-convergence: a 200-point loop is already O(delta^2) close.
        const ParamLoop coarse =
            ParamLoop::coordinate_sweep(sphere_point(theta, 0.0), 1, 0.0, 2.0 * M_PI, 200);
        CHECK(std::abs(wrap(berry_phase(pm, coarse) - phase)) < 1e-3);
    }
}

TEST_CASE("berry_phase: reversing the loop negates the phase") {
    const ParameterizedModel pm = make_paramagnet();
    const ParamLoop loop =
        ParamLoop::coordinate_sweep(sphere_point(0.9, 0.0), 1, 0.0, 2.0 * M_PI, 400);
    const double forward = berry_phase(pm, loop);
    const double backward = berry_phase(pm, loop.reversed());
    double wrapped = forward + backward;  // 0 mod 2 pi
    while (wrapped > M_PI) wrapped -= 2.0 * M_PI;
    while (wrapped < -M_PI) wrapped += 2.0 * M_PI;
    CHECK(std::abs(wrapped) < 1e-10);
}

TEST_CASE("berry_phase: under-resolved loops are rejected") {
    const ParameterizedModel pm = make_paramagnet();
    // Antipodal equator hop: consecutive ground states are orthogonal.
    std::vector<ParamPoint> pts = {sphere_point(M_PI / 2.0, 0.0), sphere_point(M_PI / 2.0, M_PI),
                                   sphere_point(1.0, 2.0), sphere_point(M_PI / 2.0, 0.0)};
    CHECK_THROWS_AS(berry_phase(pm, ParamLoop(pts)), LoopResolutionError);
}

TEST_CASE("fubini_study_distance basics") {
    Vector e1(2), e2(2);
    e1 << Complex(1, 0), Complex(0, 0);
    e2 << Complex(0, 0), Complex(1, 0);
    const PureState a{Vector(e1)}, b{Vector(e2)};
    CHECK(fubini_study_distance(a, a) == doctest::Approx(0.0));
    CHECK(fubini_study_distance(a, b) == doctest::Approx(2.0));

    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const double chi = rng.uniform(0.0, 2.0 * M_PI);
        const PureState rotated{Vector(std::polar(1.0, chi) * e1)};
        CHECK(fubini_study_distance(a, rotated) < 1e-15);
    }
}

TEST_CASE("pure Pythagorean identity: residuals at stencil accuracy") {
    const ParameterizedModel pm = make_paramagnet();
    const ParamPoint r = sphere_point(1.1, 0.7);

    auto zero_field = [](const ParamPoint&) { return 0.0; };
    CHECK(check_pure_pythagorean(pm, r, zero_field, kPlan).max_residual < 1e-6);

    Rng rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        const double c0 = rng.uniform(-1.0, 1.0);
        const double c1 = rng.uniform(-1.0, 1.0);
        const double c2 = rng.uniform(-1.0, 1.0);
        auto theta = [c0, c1, c2](const ParamPoint& rr) { return c0 + c1 * rr[0] + c2 * rr[1]; };
        const auto report = check_pure_pythagorean(pm, r, theta, kPlan);
        CHECK(report.max_residual < 1e-6);

        // Only d theta enters: shifting the field by a constant changes nothing.
        auto shifted = [theta](const ParamPoint& rr) { return theta(rr) + 17.0; };
        const auto report2 = check_pure_pythagorean(pm, r, shifted, kPlan);
        CHECK(std::abs(report.max_residual - report2.max_residual) < 1e-9);
    }
}

TEST_CASE("distance/metric consistency with Richardson step check") {
    const ParameterizedModel pm = make_paramagnet();
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const ParamPoint r = sphere_point(rng.uniform(0.6, 2.5), rng.uniform(0.2, 6.0));
        ParamPoint delta = rng.point(2, -1.0, 1.0);
        delta.normalize();
        const RealMatrix g = fubini_study_metric(pm, r, kPlan).entries();
        const double quad = delta.dot(g * delta);
        double prev = 0.0;
        int step = 0;
        for (const double h : {1e-2, 1e-3}) {
            const double d2 = fubini_study_distance(ground_state(pm, r),
                                                    ground_state(pm, ParamPoint(r + h * delta)));
            const double err = std::abs(d2 / (h * h * quad) - 1.0);
            CHECK(err < 10.0 * h);
            if (step++ > 0) CHECK(err < prev);
            prev = err;
        }
    }
}
