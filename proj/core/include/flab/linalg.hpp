#ifndef FLAB_LINALG_HPP
#define FLAB_LINALG_HPP

#include <span>
#include <vector>

#include "flab/errors.hpp"
#include "flab/types.hpp"

namespace flab {

// Dense square complex matrix, row-major. The finite-rank stand-in for a
// Schatten-class operator; desk scale caps the dimension at 64.
class ComplexMatrix {
public:
    static constexpr int kMaxDim = 64;

    explicit ComplexMatrix(int n);                       // zero-filled
    ComplexMatrix(int n, std::vector<Complex> entries);  // row-major, validated

    static ComplexMatrix identity(int n);
    static ComplexMatrix diagonal(std::span<const Complex> d);

    int dim() const noexcept { return n_; }
    Complex& operator()(int i, int j) noexcept { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const Complex& operator()(int i, int j) const noexcept { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    std::span<const Complex> entries() const noexcept { return a_; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex scalar);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scalar) { return lhs *= scalar; }
    friend ComplexMatrix operator*(Complex scalar, ComplexMatrix rhs) { return rhs *= scalar; }
    friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

private:
    int n_;
    std::vector<Complex> a_;
};

// det(A) via partially pivoted triangular factorization. Singular input
// returns 0 within rounding.
Complex lu_det(const ComplexMatrix& A);

// Solves A X = B; throws NumericalError on an exactly singular pivot.
ComplexMatrix lu_solve(const ComplexMatrix& A, const ComplexMatrix& B);

// Singular values in nonincreasing order, by one-sided Jacobi
// orthogonalization (values only, no vectors).
std::vector<double> singular_values(const ComplexMatrix& A);

// (sum_k s_k^p)^{1/p} for real p >= 1.
double schatten_norm(const ComplexMatrix& A, double p);

// e^A by scaling-and-squaring with a diagonal Pade kernel.
ComplexMatrix matrix_exp(const ComplexMatrix& A);

// Eigenvalues of a general complex matrix via Hessenberg reduction and
// shifted QR iteration, sorted by (Re, Im).
std::vector<Complex> eigenvalues(const ComplexMatrix& A);

} // namespace flab

#endif
