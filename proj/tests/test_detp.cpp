#include "doctest.h"

#include <cmath>
#include <random>

#include "flab/detp.hpp"
#include "flab/harness.hpp"
#include "flab/zerofind.hpp"

using namespace flab;

namespace {

ComplexMatrix diag1(Complex a) {
    std::vector<Complex> d{a};
    return ComplexMatrix::diagonal(d);
}

// Similarity transform planting the given eigenvalues: S diag(plant) S^{-1}
// with a well-conditioned random S.
ComplexMatrix plant_eigs(std::mt19937_64& rng, const std::vector<Complex>& plant) {
    int n = static_cast<int>(plant.size());
    ComplexMatrix S = ComplexMatrix::identity(n) + random_matrix(rng, n, 0.2);
    ComplexMatrix D = ComplexMatrix::diagonal(plant);
    return S * D * lu_solve(S, ComplexMatrix::identity(n));
}

} // namespace

TEST_CASE("det_p scalar reference values") {
    CHECK(std::abs(det_p(diag1(Complex(1, 0)), 1) - Complex(2, 0)) < 1e-14);

    // (1+a) e^{-a} at a = 1
    CHECK(std::abs(det_p(diag1(Complex(1, 0)), 2) -
                   Complex(0.735758882342885, 0)) < 1e-14);

    // nilpotent: (I+A) exp(-A) = (I+A)(I-A) = I
    ComplexMatrix N(2, {Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0)});
    CHECK(std::abs(det_p(N, 2) - Complex(1, 0)) < 1e-14);

    CHECK_THROWS_AS(det_p(diag1(Complex(1, 0)), 0), ConfigError);
}

TEST_CASE("eigen oracle reference values") {
    // (1+a) exp(-a + a^2/2) at a = 1
    CHECK(std::abs(det_p_eigen_oracle(diag1(Complex(1, 0)), 3) -
                   Complex(2.0 * std::exp(-0.5), 0)) < 1e-13);

    std::mt19937_64 rng(17);
    ComplexMatrix A = random_matrix(rng, 5);
    CHECK(std::abs(det_p_eigen_oracle(A, 1) -
                   lu_det(ComplexMatrix::identity(5) + A)) <
          1e-10 * (1.0 + std::abs(lu_det(ComplexMatrix::identity(5) + A))));

    std::vector<Complex> d{Complex(-1, 0), Complex(0, 0)};
    CHECK(std::abs(det_p_eigen_oracle(ComplexMatrix::diagonal(d), 2)) < 1e-14);
}

TEST_CASE("det_p agrees with the eigenvalue oracle") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        ComplexMatrix A = random_matrix(rng, n);
        double norm = schatten_norm(A, 2.0);
        if (norm > 3.0) A *= Complex(3.0 / norm, 0);
        for (int p : {1, 2, 3}) {
            Complex lhs = det_p(A, p);
            Complex rhs = det_p_eigen_oracle(A, p);
            CHECK(std::abs(lhs - rhs) <= 1e-8 * (1.0 + std::abs(lhs)));
        }
    }
}

TEST_CASE("det_p vanishes on planted eigenvalue -1") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        std::vector<Complex> plant(n);
        plant[0] = Complex(-1, 0);
        for (int i = 1; i < n; ++i)
            plant[i] = Complex(std::uniform_real_distribution<double>(-0.5, 0.5)(rng),
                               std::uniform_real_distribution<double>(-0.5, 0.5)(rng));
        ComplexMatrix A = plant_eigs(rng, plant);
        for (int p : {1, 2, 3}) CHECK(std::abs(det_p(A, p)) <= 1e-8);
    }
}

TEST_CASE("upper bound reference cases") {
    auto r0 = check_upper_bound(ComplexMatrix(2), 1);
    CHECK(r0.lhs == doctest::Approx(0));
    CHECK(r0.rhs == doctest::Approx(0));
    CHECK(r0.holds);

    // p=1, A=diag(t): log(1+t) <= t
    auto r1 = check_upper_bound(diag1(Complex(1.7, 0)), 1);
    CHECK(r1.lhs == doctest::Approx(std::log(2.7)).epsilon(1e-13));
    CHECK(r1.rhs == doctest::Approx(1.7).epsilon(1e-13));
    CHECK(r1.holds);

    auto r2 = check_upper_bound(diag1(Complex(1, 0)), 2);
    CHECK(r2.lhs == doctest::Approx(std::log(2.0 / std::exp(1.0))).epsilon(1e-13));
    CHECK(r2.rhs == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(r2.holds);

    // det_p = 0 gives lhs = -inf, which holds vacuously
    std::vector<Complex> d{Complex(-1, 0)};
    auto r3 = check_upper_bound(ComplexMatrix::diagonal(d), 1);
    CHECK(r3.lhs == -std::numeric_limits<double>::infinity());
    CHECK(r3.holds);
}

TEST_CASE("perturbation bound reference cases") {
    auto r0 = check_perturbation_bound(ComplexMatrix(2), 1);
    CHECK(r0.lhs == doctest::Approx(0));
    CHECK(r0.rhs == doctest::Approx(0));
    CHECK(r0.holds);

    auto r1 = check_perturbation_bound(diag1(Complex(1, 0)), 1);
    CHECK(r1.lhs == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r1.rhs == doctest::Approx(std::exp(2.0)).epsilon(1e-13));
    CHECK(r1.holds);

    auto r2 = check_perturbation_bound(diag1(Complex(1, 0)), 2);
    CHECK(r2.lhs == doctest::Approx(1.0 - 2.0 / std::exp(1.0)).epsilon(1e-12));
    CHECK(r2.rhs == doctest::Approx(std::exp(2.0)).epsilon(1e-13));
    CHECK(r2.holds);
}

TEST_CASE("bound suites hold on 500 random matrices") {
    for (int p : {1, 2}) {
        auto result = run_detp_check(p, 500, 6, 2.0, 20250810 + p);
        CHECK(result.violations_upper == 0);
        CHECK(result.violations_perturbation == 0);
        CHECK(result.max_slack <= 1e-10);
        CHECK_FALSE(result.gamma_raised);
    }
}

TEST_CASE("determinant_function reference families") {
    // T = 0: f identically 1
    OperatorFamily zero = family_scalar(ComplexMatrix(2), named_phi("zero"),
                                        GrowthEnvelope{1.0, 1.0, -0.5, 1});
    auto f0 = determinant_function(zero, 1);
    CHECK(std::abs(f0(Complex(-2, 1)) - Complex(1, 0)) < 1e-15);

    // T(lambda) = diag(-i) lambda^{-1/2}: f(-1) = 1 - i(-i) = 0
    std::vector<Complex> d{Complex(0, -1)};
    OperatorFamily fam = family_inverse_sqrt(ComplexMatrix::diagonal(d), 1);
    auto f = determinant_function(fam, 1);
    CHECK(std::abs(f(Complex(-1, 0))) < 1e-14);
    CHECK(std::abs(f(Complex(-4, 0)) - (Complex(1, 0) - Complex(0, 1) / sqrt_cut(Complex(-4, 0)))) < 1e-14);

    // T(lambda) = diag(1) lambda^{-1/2}: no zero on the negative axis
    std::vector<Complex> e{Complex(1, 0)};
    OperatorFamily fam2 = family_inverse_sqrt(ComplexMatrix::diagonal(e), 1);
    auto f2 = determinant_function(fam2, 1);
    for (double t : {0.25, 1.0, 4.0, 64.0})
        CHECK(std::abs(f2(Complex(-t, 0))) >= 1.0); // |1 + 1/sqrt| >= 1 up the axis

    // guard-band rejection propagates
    CHECK_THROWS_AS(f(Complex(1.0, 0.0)), ConfigError);
}

TEST_CASE("select_anchor on dyadic grids") {
    auto inc = AnchorConfig::dyadic(AnchorConfig::Direction::increasing);
    ScalarFunction one = [](Complex) { return Complex(1, 0); };
    CHECK(select_anchor(one, inc) == 1.0);

    ScalarFunction f01 = [](Complex z) {
        return Complex(1, 0) + 0.1 / sqrt_cut(z);
    };
    CHECK(select_anchor(f01, inc) == 1.0);

    // |1 + 10 (-t)^{-1/2}|^2 = 1 + 100/t >= 1, so the first grid point wins.
    ScalarFunction f10 = [](Complex z) {
        return Complex(1, 0) + 10.0 / sqrt_cut(z);
    };
    CHECK(select_anchor(f10, inc) == 1.0);

    // A function pinned below threshold exhausts the grid.
    ScalarFunction tiny = [](Complex) { return Complex(0.1, 0); };
    CHECK_THROWS_AS(select_anchor(tiny, inc), NumericalError);

    auto dec = AnchorConfig::dyadic(AnchorConfig::Direction::decreasing);
    ScalarFunction vanishing = [](Complex z) {
        return sqrt_cut(z) + Complex(1, 0); // -> 1 as z -> 0 along R_-
    };
    // |f(-1)| = |i + 1| = sqrt(2) >= 1/2 already at t = 1
    CHECK(select_anchor(vanishing, dec) == 1.0);
}

TEST_CASE("normalize_h normalization and error path") {
    ScalarFunction c7 = [](Complex) { return Complex(7, 0.4); };
    auto h = normalize_h(c7, 2.0);
    CHECK(h(Complex(-1, 0)) == Complex(1, 0)); // exact
    CHECK(std::abs(h(Complex(3, 5)) - Complex(1, 0)) < 1e-15);

    ScalarFunction affine = [](Complex z) { return z + Complex(1, 0); };
    CHECK_THROWS_AS(normalize_h(affine, 1.0), ConfigError);

    // f(lambda) = 1 - i lambda^{-1/2}, anchor t = 4: h has its zero at -1/4.
    ScalarFunction f = [](Complex z) {
        return Complex(1, 0) - Complex(0, 1) / sqrt_cut(z);
    };
    auto h2 = normalize_h(f, 4.0);
    CHECK(h2(Complex(-1, 0)) == Complex(1, 0));
    CHECK(std::abs(h2(Complex(-0.25, 0))) < 1e-14);
}

TEST_CASE("normalize_h preserves winding multiplicities") {
    std::vector<Complex> d{Complex(0, -1), Complex(0, -1)};
    OperatorFamily fam = family_inverse_sqrt(ComplexMatrix::diagonal(d), 1);
    auto f = determinant_function(fam, 1); // double zero at -1
    double t = select_anchor(f, AnchorConfig::dyadic(AnchorConfig::Direction::increasing, 2.0, 30));
    auto h = normalize_h(f, t);

    Box around_f(-1.5, -0.5, -0.5, 0.5);
    Box around_h(-1.5 / t, -0.5 / t, -0.5 / t, 0.5 / t);
    CHECK(winding_count(f, around_f) == 2);
    CHECK(winding_count(h, around_h) == 2);
}

TEST_CASE("detp constants defaults") {
    CHECK(DetpConstants::defaults(1).gamma_p == 1.0);
    CHECK(DetpConstants::defaults(2).gamma_p == 0.5);
    CHECK(DetpConstants::defaults(3).gamma_p == 1.0);
    CHECK_THROWS_AS(DetpConstants::defaults(0), ConfigError);
}
