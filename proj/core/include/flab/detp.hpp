#ifndef FLAB_DETP_HPP
#define FLAB_DETP_HPP

#include <vector>

#include "flab/families.hpp"
#include "flab/linalg.hpp"

namespace flab {

// Constants of the determinant growth/perturbation bounds. The sharp
// gamma_p for p >= 3 is not pinned by the theory used here; it stays a
// configurable value validated empirically.
struct DetpConstants {
    int p;
    double gamma_p;

    static DetpConstants defaults(int p); // gamma_1 = 1, gamma_2 = 1/2, else 1
};

// Regularized determinant det_p(I + A):
//   p = 1: det(I + A)
//   p >= 2: det((I + A) exp(sum_{k=1}^{p-1} (-1)^k A^k / k))
// Vanishes exactly when -1 is an eigenvalue of A.
Complex det_p(const ComplexMatrix& A, int p);

// Independent route: product over eigenvalues mu_j of A of
// (1 + mu_j) exp(sum_{k=1}^{p-1} (-1)^k mu_j^k / k). Test oracle for det_p.
Complex det_p_eigen_oracle(const ComplexMatrix& A, int p);

struct BoundReport {
    double lhs;
    double rhs;
    bool holds;
};

// log|det_p(I+A)| <= gamma_p ||A||_p^p.
BoundReport check_upper_bound(const ComplexMatrix& A, int p,
                              const DetpConstants& constants);
BoundReport check_upper_bound(const ComplexMatrix& A, int p);

// |det_p(I+A) - 1| <= phi(||A||_p) with phi(t) = t exp(gamma_p (t+1)^p).
BoundReport check_perturbation_bound(const ComplexMatrix& A, int p,
                                     const DetpConstants& constants);
BoundReport check_perturbation_bound(const ComplexMatrix& A, int p);

// The scalar function f(lambda) = det_p(I + T(lambda)); its zeros in the
// cut plane are exactly the eigenvalues of finite type of I + T.
ScalarFunction determinant_function(const OperatorFamily& family, int p);

// Dyadic anchor search on the negative semi-axis.
struct AnchorConfig {
    enum class Direction { increasing, decreasing };

    Direction direction = Direction::increasing;
    double threshold = 0.5;       // in (0, 1)
    std::vector<double> t_grid;   // strictly monotone positive, search order

    static AnchorConfig dyadic(Direction direction, double t_start = 1.0,
                               int steps = 60);
    void validate() const;
};

// First grid point t with |f(-t)| >= threshold. Increasing grids suit
// rho+sigma > 0 (T decays along R_-), decreasing grids suit rho+sigma < 0.
// Throws NumericalError when the grid is exhausted.
double select_anchor(const ScalarFunction& f, const AnchorConfig& config);

// h(lambda) = f(t lambda) / f(-t), so h(-1) = 1 exactly; zeros of h are
// zeros of f scaled by 1/t with identical multiplicities.
ScalarFunction normalize_h(ScalarFunction f, double t);

} // namespace flab

#endif
