#include "flab/detp.hpp"

#include <cmath>
#include <utility>

#include "flab/complex_format.hpp"

namespace flab {

DetpConstants DetpConstants::defaults(int p) {
    if (p < 1) throw ConfigError("det_p requires integer p >= 1");
    if (p == 1) return {1, 1.0};
    if (p == 2) return {2, 0.5};
    return {p, 1.0};
}

Complex det_p(const ComplexMatrix& A, int p) {
    if (p < 1) throw ConfigError("det_p requires integer p >= 1");
    ComplexMatrix W = ComplexMatrix::identity(A.dim()) + A;
    if (p == 1) return lu_det(W);

    // S = sum_{k=1}^{p-1} (-1)^k A^k / k
    ComplexMatrix S(A.dim());
    ComplexMatrix Ak = A;
    double sign = -1.0;
    for (int k = 1; k <= p - 1; ++k) {
        S += Ak * Complex(sign / k, 0.0);
        if (k < p - 1) Ak = Ak * A;
        sign = -sign;
    }
    return lu_det(W * matrix_exp(S));
}

Complex det_p_eigen_oracle(const ComplexMatrix& A, int p) {
    if (p < 1) throw ConfigError("det_p requires integer p >= 1");
    Complex product(1.0, 0.0);
    for (Complex mu : eigenvalues(A)) {
        Complex expo(0.0, 0.0);
        Complex muk = mu;
        double sign = -1.0;
        for (int k = 1; k <= p - 1; ++k) {
            expo += muk * Complex(sign / k, 0.0);
            muk *= mu;
            sign = -sign;
        }
        product *= (1.0 + mu) * std::exp(expo);
    }
    return product;
}

namespace {
constexpr double kBoundTol = 1e-10;
}

BoundReport check_upper_bound(const ComplexMatrix& A, int p,
                              const DetpConstants& constants) {
    double norm = schatten_norm(A, static_cast<double>(p));
    double lhs = std::log(std::abs(det_p(A, p))); // det_p = 0 -> lhs = -inf
    double rhs = constants.gamma_p * std::pow(norm, static_cast<double>(p));
    return {lhs, rhs, lhs <= rhs + kBoundTol};
}

BoundReport check_upper_bound(const ComplexMatrix& A, int p) {
    return check_upper_bound(A, p, DetpConstants::defaults(p));
}

BoundReport check_perturbation_bound(const ComplexMatrix& A, int p,
                                     const DetpConstants& constants) {
    double t = schatten_norm(A, static_cast<double>(p));
    double lhs = std::abs(det_p(A, p) - Complex(1.0, 0.0));
    double rhs = t * std::exp(constants.gamma_p *
                              std::pow(t + 1.0, static_cast<double>(p)));
    return {lhs, rhs, lhs <= rhs + kBoundTol};
}

BoundReport check_perturbation_bound(const ComplexMatrix& A, int p) {
    return check_perturbation_bound(A, p, DetpConstants::defaults(p));
}

ScalarFunction determinant_function(const OperatorFamily& family, int p) {
    if (p < 1) throw ConfigError("det_p requires integer p >= 1");
    auto evaluator = family.evaluator;
    return [evaluator, p](Complex lambda) {
        return det_p(evaluator(lambda), p);
    };
}

AnchorConfig AnchorConfig::dyadic(Direction direction, double t_start, int steps) {
    if (!(t_start > 0.0)) throw ConfigError("anchor grid must start positive");
    if (steps < 1) throw ConfigError("anchor grid needs at least one step");
    AnchorConfig cfg;
    cfg.direction = direction;
    cfg.t_grid.reserve(static_cast<std::size_t>(steps));
    double t = t_start;
    for (int k = 0; k < steps; ++k) {
        cfg.t_grid.push_back(t);
        t = direction == Direction::increasing ? 2.0 * t : t / 2.0;
    }
    return cfg;
}

void AnchorConfig::validate() const {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw ConfigError("anchor threshold must lie in (0, 1)");
    if (t_grid.empty()) throw ConfigError("anchor grid is empty");
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        if (!(t_grid[k] > 0.0))
            throw ConfigError("anchor grid values must be positive");
        if (k > 0) {
            bool ok = direction == Direction::increasing
                          ? t_grid[k] > t_grid[k - 1]
                          : t_grid[k] < t_grid[k - 1];
            if (!ok) throw ConfigError("anchor grid must be strictly monotone");
        }
    }
}

double select_anchor(const ScalarFunction& f, const AnchorConfig& config) {
    config.validate();
    for (double t : config.t_grid) {
        if (std::abs(f(Complex(-t, 0.0))) >= config.threshold) return t;
    }
    throw NumericalError(
        "anchor not found: |f(-t)| stayed below the threshold over the whole "
        "grid (the growth-envelope hypothesis likely fails)");
}

namespace {

// Power-of-two scaled textbook division: dividing a value by itself yields
// exactly 1 + 0i, which keeps h(-1) = 1 exact.
Complex exact_ratio(Complex z, Complex w) {
    double m = std::max(std::abs(w.real()), std::abs(w.imag()));
    int e = 0;
    std::frexp(m, &e);
    double scale = std::ldexp(1.0, -e);
    double a = z.real() * scale, b = z.imag() * scale;
    double c = w.real() * scale, d = w.imag() * scale;
    double denom = c * c + d * d;
    return Complex((a * c + b * d) / denom, (b * c - a * d) / denom);
}

} // namespace

ScalarFunction normalize_h(ScalarFunction f, double t) {
    if (!(t > 0.0)) throw ConfigError("anchor t must be positive");
    Complex f0 = f(Complex(-t, 0.0));
    if (f0 == Complex(0.0, 0.0))
        throw ConfigError("cannot normalize: f(-t) = 0 at t = " + format_real(t));
    return [f = std::move(f), t, f0](Complex lambda) {
        return exact_ratio(f(t * lambda), f0);
    };
}

} // namespace flab
