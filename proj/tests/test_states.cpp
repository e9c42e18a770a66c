#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qgt/random.hpp"
#include "qgt/states.hpp"

using namespace qgt;

namespace {

Matrix direction_dot_sigma(double theta, double phi) {
    return std::sin(theta) * std::cos(phi) * pauli_x() +
           std::sin(theta) * std::sin(phi) * pauli_y() + std::cos(theta) * pauli_z();
}

}  // namespace

TEST_CASE("PureState validates normalization") {
    Vector v(2);
    v << Complex(1, 0), Complex(1, 0);
    CHECK_THROWS_AS(PureState{v}, std::invalid_argument);
    CHECK(PureState::normalized(v).amplitudes().norm() == doctest::Approx(1.0));
}

TEST_CASE("DensityMatrix validates trace and positivity") {
    CHECK_THROWS_AS(DensityMatrix{HermitianOperator::identity(2)}, std::invalid_argument);

    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{HermitianOperator(bad)}, std::invalid_argument);

    // Eigenvalues in [-1e-12, 0) are clipped to zero.
    Matrix edge = Matrix::Zero(2, 2);
    edge(0, 0) = 1.0 + 5e-13;
    edge(1, 1) = -5e-13;
    const DensityMatrix rho{HermitianOperator(edge)};
    CHECK(rho.spectrum().eigenvalues[0] == 0.0);
    CHECK_FALSE(rho.full_rank());
}

TEST_CASE("gibbs_state: limits and the paramagnet closed form") {
    // Infinite-temperature limit.
    const DensityMatrix hot = gibbs_state(HermitianOperator(Matrix(0.5 * pauli_z())), 1e6);
    CHECK(max_abs(Matrix(hot.matrix() - 0.5 * Matrix::Identity(2, 2))) < 1e-6);

    // H = 0 gives exactly 1/N.
    const DensityMatrix flat = gibbs_state(HermitianOperator::zero(3), 0.7);
    CHECK(max_abs(Matrix(flat.matrix() - Matrix::Identity(3, 3) / 3.0)) == 0.0);

    // rho = (1 - tanh(beta w0/2) B.sigma)/2 for the paramagnet.
    const double omega0 = 1.3, temperature = 0.6, theta = 1.1, phi = 2.3;
    const Matrix h = 0.5 * omega0 * direction_dot_sigma(theta, phi);
    const DensityMatrix rho = gibbs_state(HermitianOperator(h), temperature);
    const double t = std::tanh(0.5 * omega0 / temperature);
    const Matrix expected =
        0.5 * (Matrix::Identity(2, 2) - t * direction_dot_sigma(theta, phi));
    CHECK(max_abs(Matrix(rho.matrix() - expected)) < 1e-12);

    CHECK_THROWS_AS(gibbs_state(HermitianOperator::identity(2), 0.0), std::domain_error);
    CHECK_THROWS_AS(gibbs_state(HermitianOperator::identity(2), -1.0), std::domain_error);
}

TEST_CASE("gibbs_state: spectrum weights are positive, normalized, anti-ordered") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const HermitianOperator h(rng.hermitian(4, 2.0));
        const DensityMatrix rho = gibbs_state(h, 0.5);
        const RealVector& lambda = rho.spectrum().eigenvalues;
        CHECK(lambda.minCoeff() > 0.0);
        CHECK(std::abs(lambda.sum() - 1.0) < 1e-12);
        CHECK(rho.full_rank());
        // Cached spectrum ascends; weights e^{-beta E} descend when E ascends,
        // so the largest weight pairs with the lowest energy.
        const auto hd = spectral_decompose(h);
        const Vector ground = hd.eigenvectors.col(0);
        const Vector top = rho.spectrum().eigenvectors.col(3);
        CHECK(std::abs(ground.dot(top)) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("gibbs_state: extreme beta keeps a valid state without errors") {
    const DensityMatrix cold = gibbs_state(HermitianOperator(Matrix(0.5 * pauli_z())), 1e-3);
    CHECK(std::abs(cold.matrix().trace().real() - 1.0) < 1e-12);
    CHECK(cold.spectrum().eigenvalues.maxCoeff() == doctest::Approx(1.0));
}

TEST_CASE("bloch_decompose / bloch_compose round trip") {
    CHECK(bloch_decompose(DensityMatrix::maximally_mixed(2)).vec().norm() == 0.0);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 0.9;
    d(1, 1) = 0.1;
    const BlochVector a = bloch_decompose(DensityMatrix(HermitianOperator(d)));
    CHECK(a.vec()[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(a.vec()[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(a.vec()[2] == doctest::Approx(0.4));

    const DensityMatrix back = bloch_compose(BlochVector(Eigen::Vector3d(0, 0, 0.4)));
    CHECK(max_abs(Matrix(back.matrix() - d)) < 1e-12);

    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix rho = gibbs_state(HermitianOperator(rng.hermitian(2)), 1.0);
        const DensityMatrix round = bloch_compose(bloch_decompose(rho));
        CHECK(max_abs(Matrix(round.matrix() - rho.matrix())) < 1e-12);
    }

    CHECK_THROWS_AS(bloch_decompose(DensityMatrix::maximally_mixed(3)), std::invalid_argument);
    CHECK_THROWS_AS(BlochVector{Eigen::Vector3d(0.6, 0, 0)}, std::invalid_argument);
}

TEST_CASE("bloch norm of the paramagnet thermal state") {
    const double omega0 = 1.0;
    for (const double temperature : {0.2, 1.0, 5.0}) {
        const Matrix h = 0.5 * omega0 * direction_dot_sigma(0.9, 0.4);
        const BlochVector a = bloch_decompose(gibbs_state(HermitianOperator(h), temperature));
        CHECK(a.norm() == doctest::Approx(0.5 * std::tanh(0.5 * omega0 / temperature)));
        CHECK(a.norm() < 0.5);
    }
}

TEST_CASE("purify: canonical and maximally mixed cases") {
    Rng rng(13);
    const DensityMatrix rho = gibbs_state(HermitianOperator(rng.hermitian(3)), 1.0);
    const Amplitude canonical = purify(rho, Matrix::Identity(3, 3));
    CHECK(max_abs(Matrix(canonical.w() - rho.sqrt().matrix())) < 1e-14);

    const Matrix u = rng.unitary(2);
    const Amplitude mixed = purify(DensityMatrix::maximally_mixed(2), u);
    CHECK(max_abs(Matrix(mixed.w() - u / std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("purify: W W^dag recovers rho for random gauge choices") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = 2 + trial % 3;
        const DensityMatrix rho = gibbs_state(HermitianOperator(rng.hermitian(n)), 1.0);
        const Matrix u = rng.unitary(n);
        const Amplitude w = purify(rho, u);
        CHECK(max_abs(Matrix(w.w() * w.w().adjoint() - rho.matrix())) < 1e-10);
        CHECK(max_abs(Matrix(w.phase().adjoint() * w.phase() - Matrix::Identity(n, n))) < 1e-10);
        CHECK(max_abs(Matrix(w.w() - w.sqrt_rho().matrix() * w.phase())) < 1e-10);
    }
}

TEST_CASE("purify: rejects rank-deficient states and non-unitary phases") {
    Matrix pure = Matrix::Zero(2, 2);
    pure(0, 0) = 1.0;
    CHECK_THROWS_AS(purify(DensityMatrix(HermitianOperator(pure)), Matrix::Identity(2, 2)),
                    RankError);

    Matrix not_unitary = Matrix::Identity(2, 2) * 1.5;
    CHECK_THROWS_AS(purify(DensityMatrix::maximally_mixed(2), not_unitary),
                    std::invalid_argument);
}

TEST_CASE("hs_inner basics and purified-state normalization") {
    CHECK(hs_inner(Matrix::Identity(4, 4), Matrix::Identity(4, 4)).real() ==
          doctest::Approx(4.0));
    CHECK(std::abs(hs_inner(pauli_x(), pauli_y())) < 1e-15);
    CHECK_THROWS_AS(hs_inner(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
                    std::invalid_argument);

    Rng rng(31);
    const DensityMatrix rho = gibbs_state(HermitianOperator(rng.hermitian(3)), 0.8);
    const Amplitude w = purify(rho, rng.unitary(3));
    CHECK(hs_inner(w.w(), w.w()).real() == doctest::Approx(1.0).epsilon(1e-12));
}
