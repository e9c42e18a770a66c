#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qgt/finite_diff.hpp"
#include "qgt/hermitian.hpp"
#include "qgt/random.hpp"
#include "qgt/states.hpp"

#include <cstring>

using namespace qgt;

TEST_CASE("construction symmetrizes and rejects non-Hermitian input") {
    Matrix m(2, 2);
    m << Complex(1, 0), Complex(0.5, 0.25), Complex(0.5, -0.25), Complex(-1, 0);
    CHECK_NOTHROW(HermitianOperator{m});

    Matrix tiny = m;
    tiny(0, 1) += Complex(0, 1e-11);  // below the 1e-9 gate, symmetrized away
    const HermitianOperator fixed(tiny);
    CHECK(max_abs(Matrix(fixed.matrix() - fixed.matrix().adjoint())) == 0.0);

    Matrix bad = m;
    bad(0, 1) += Complex(0, 1e-6);
    CHECK_THROWS_AS(HermitianOperator{bad}, std::invalid_argument);
}

TEST_CASE("spectral_decompose: identity and Pauli matrices") {
    const auto id = spectral_decompose(HermitianOperator::identity(2));
    CHECK(id.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(id.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(max_abs(Matrix(id.eigenvectors - Matrix::Identity(2, 2))) < 1e-14);

    const auto sz = spectral_decompose(HermitianOperator(pauli_z()));
    CHECK(sz.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(sz.eigenvalues[1] == doctest::Approx(1.0));
    CHECK(std::abs(sz.eigenvectors(1, 0) - Complex(1, 0)) < 1e-14);  // e2 first
    CHECK(std::abs(sz.eigenvectors(0, 1) - Complex(1, 0)) < 1e-14);  // then e1

    // sigma_x eigenvectors tie in magnitude, so the pivot is the lowest index
    // and the first entry comes out real positive.
    const auto sx = spectral_decompose(HermitianOperator(pauli_x()));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(sx.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(sx.eigenvalues[1] == doctest::Approx(1.0));
    CHECK(std::abs(sx.eigenvectors(0, 0) - Complex(inv_sqrt2, 0)) < 1e-14);
    CHECK(std::abs(sx.eigenvectors(1, 0) - Complex(-inv_sqrt2, 0)) < 1e-14);
    CHECK(std::abs(sx.eigenvectors(0, 1) - Complex(inv_sqrt2, 0)) < 1e-14);
    CHECK(std::abs(sx.eigenvectors(1, 1) - Complex(inv_sqrt2, 0)) < 1e-14);
}

TEST_CASE("spectral_decompose: reconstruction over 1000 random Hermitians") {
    Rng rng(42);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_u64() % 7);  // N <= 8
        const HermitianOperator a(rng.hermitian(n, 2.0));
        const auto dec = spectral_decompose(a);
        worst = std::max(worst, max_abs(Matrix(dec.reconstruct() - a.matrix())));
        for (Eigen::Index i = 0; i + 1 < n; ++i) CHECK(dec.eigenvalues[i] <= dec.eigenvalues[i + 1]);
        worst = std::max(worst, max_abs(Matrix(dec.eigenvectors.adjoint() * dec.eigenvectors -
                                               Matrix::Identity(n, n))));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("spectral_decompose: identical input bits give identical output bits") {
    Rng rng(7);
    const HermitianOperator a(rng.hermitian(5));
    const auto d1 = spectral_decompose(a);
    const auto d2 = spectral_decompose(a);
    CHECK(std::memcmp(d1.eigenvalues.data(), d2.eigenvalues.data(),
                      sizeof(double) * d1.eigenvalues.size()) == 0);
    CHECK(std::memcmp(d1.eigenvectors.data(), d2.eigenvectors.data(),
                      sizeof(Complex) * d1.eigenvectors.size()) == 0);
}

TEST_CASE("gauge convention: pivot entry is real positive") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto dec = spectral_decompose(HermitianOperator(rng.hermitian(4)));
        for (Eigen::Index c = 0; c < 4; ++c) {
            const Vector v = dec.eigenvectors.col(c);
            const Eigen::Index pivot = gauge_pivot(v);
            CHECK(v[pivot].imag() == doctest::Approx(0.0).epsilon(1e-15));
            CHECK(v[pivot].real() > 0.0);
        }
    }
}

TEST_CASE("matrix_function: sqrt and identity cases") {
    CHECK(max_abs(Matrix(matrix_sqrt(HermitianOperator::identity(3)).matrix() -
                         Matrix::Identity(3, 3))) < 1e-14);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = 2.0;
    expected(1, 1) = 3.0;
    CHECK(max_abs(Matrix(matrix_sqrt(HermitianOperator(d)).matrix() - expected)) < 1e-14);

    Rng rng(9);
    const HermitianOperator rho(rng.hermitian(4));
    const auto same = matrix_function(rho, [](double x) { return x; });
    CHECK(max_abs(Matrix(same.matrix() - rho.matrix())) < 1e-12);
}

TEST_CASE("matrix_function: domain errors name the offending eigenvalue") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = -1e-6;
    d(1, 1) = 1.0;
    try {
        matrix_sqrt(HermitianOperator(d));
        FAIL("expected a domain error");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("1e-06") != std::string::npos);
    }

    // Eigenvalues in [-1e-12, 0) are clipped instead.
    Matrix tiny = Matrix::Zero(2, 2);
    tiny(0, 0) = -5e-13;
    tiny(1, 1) = 1.0;
    const auto root = matrix_sqrt(HermitianOperator(tiny));
    CHECK(root.matrix()(0, 0).real() == doctest::Approx(0.0));
}

TEST_CASE("fd_derivative: exact on linear fields, zero on constants") {
    const DifferentiationPlan plan = DifferentiationPlan::central2(1e-4);
    auto linear = [](const ParamPoint& r) -> Matrix { return r[0] * pauli_x(); };
    ParamPoint at(2);
    at << 0.3, -0.8;
    CHECK(max_abs(Matrix(fd_derivative(linear, at, 0, plan) - pauli_x())) < 1e-12);
    CHECK(max_abs(fd_derivative(linear, at, 1, plan)) < 1e-12);

    auto constant = [](const ParamPoint&) -> Matrix { return pauli_z(); };
    CHECK(max_abs(fd_derivative(constant, at, 0, plan)) == 0.0);
}

TEST_CASE("fd_derivative: sin field at origin within the Taylor bound") {
    auto field = [](const ParamPoint& r) -> Matrix { return std::sin(r[0]) * pauli_z(); };
    ParamPoint origin(1);
    origin << 0.0;
    const Matrix d = fd_derivative(field, origin, 0, DifferentiationPlan::central2(1e-4));
    CHECK(max_abs(Matrix(d - pauli_z())) < 1e-8);  // |error| <= h^2/6 ~ 1.7e-9
}

TEST_CASE("fd_derivative: halving h cuts the central-2 error by ~4") {
    auto field = [](const ParamPoint& r) -> Matrix {
        return std::exp(std::sin(r[0])) * pauli_x() + std::cos(2.0 * r[0]) * pauli_z();
    };
    ParamPoint at(1);
    at << 0.7;
    // Exact derivative.
    const Matrix exact = std::cos(0.7) * std::exp(std::sin(0.7)) * pauli_x() -
                         2.0 * std::sin(1.4) * pauli_z();
    const double e1 =
        max_abs(Matrix(fd_derivative(field, at, 0, DifferentiationPlan::central2(1e-3)) - exact));
    const double e2 =
        max_abs(Matrix(fd_derivative(field, at, 0, DifferentiationPlan::central2(5e-4)) - exact));
    const double factor = e1 / e2;
    CHECK(factor > 3.2);
    CHECK(factor < 4.8);
}

TEST_CASE("fd_derivative: central-4 is exact on cubics") {
    auto cubic = [](const ParamPoint& r) -> Matrix {
        const double x = r[0];
        return (x * x * x - 2.0 * x) * pauli_y();
    };
    ParamPoint at(1);
    at << 0.5;
    const Matrix expected = (3.0 * 0.25 - 2.0) * pauli_y();
    const Matrix d = fd_derivative(cubic, at, 0, DifferentiationPlan::central4(1e-3));
    CHECK(max_abs(Matrix(d - expected)) < 1e-10);
}

TEST_CASE("DifferentiationPlan validation") {
    CHECK_THROWS_AS(DifferentiationPlan{-1e-5}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(DifferentiationPlan{0.5}.validate(), std::invalid_argument);
    CHECK_NOTHROW(DifferentiationPlan::central4().validate());
    auto field = [](const ParamPoint& r) -> Matrix { return r[0] * pauli_x(); };
    ParamPoint at(1);
    at << 0.0;
    CHECK_THROWS_AS(fd_derivative(field, at, 2, DifferentiationPlan::central2()),
                    std::invalid_argument);
}

TEST_CASE("unitary_exp produces unitaries and matches scalar rotation") {
    Rng rng(11);
    const Matrix x = rng.anti_hermitian(4, 1.0);
    const Matrix u = unitary_exp(x);
    CHECK(max_abs(Matrix(u.adjoint() * u - Matrix::Identity(4, 4))) < 1e-13);

    // exp(i phi sigma_z) is diagonal with phases e^{+-i phi}.
    const double phi = 0.37;
    const Matrix r = unitary_exp(Matrix(Complex(0, phi) * pauli_z()));
    CHECK(std::abs(r(0, 0) - std::polar(1.0, phi)) < 1e-14);
    CHECK(std::abs(r(1, 1) - std::polar(1.0, -phi)) < 1e-14);
}
