#include "flab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace flab {

namespace {

void check_dim(int n) {
    if (n < 1 || n > ComplexMatrix::kMaxDim)
        throw ConfigError("matrix dimension " + std::to_string(n) +
                          " outside [1, " + std::to_string(ComplexMatrix::kMaxDim) + "]");
}

bool finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

} // namespace

ComplexMatrix::ComplexMatrix(int n) : n_(n) {
    check_dim(n);
    a_.assign(static_cast<std::size_t>(n) * n, Complex(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(int n, std::vector<Complex> entries)
    : n_(n), a_(std::move(entries)) {
    check_dim(n);
    if (a_.size() != static_cast<std::size_t>(n) * n)
        throw ConfigError("entry count does not match dimension");
    for (const Complex& z : a_)
        if (!finite(z)) throw ConfigError("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> d) {
    ComplexMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (n_ != rhs.n_) throw ConfigError("dimension mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (n_ != rhs.n_) throw ConfigError("dimension mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (Complex& z : a_) z *= scalar;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.n_ != rhs.n_) throw ConfigError("dimension mismatch");
    int n = lhs.n_;
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            Complex aik = lhs(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) out(i, j) += aik * rhs(k, j);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// LU with partial pivoting

namespace {

struct Lu {
    ComplexMatrix lu;
    std::vector<int> perm;
    int sign;      // permutation parity
    bool singular; // exact zero pivot encountered

    explicit Lu(const ComplexMatrix& A)
        : lu(A), perm(static_cast<std::size_t>(A.dim())), sign(1), singular(false) {
        int n = lu.dim();
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        for (int k = 0; k < n; ++k) {
            int piv = k;
            double best = std::abs(lu(k, k));
            for (int i = k + 1; i < n; ++i) {
                double v = std::abs(lu(i, k));
                if (v > best) { best = v; piv = i; }
            }
            if (best == 0.0) { singular = true; continue; }
            if (piv != k) {
                for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
                std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(piv)]);
                sign = -sign;
            }
            Complex pivot = lu(k, k);
            for (int i = k + 1; i < n; ++i) {
                Complex m = lu(i, k) / pivot;
                lu(i, k) = m;
                for (int j = k + 1; j < n; ++j) lu(i, j) -= m * lu(k, j);
            }
        }
    }

    Complex det() const {
        if (singular) return Complex(0.0, 0.0);
        Complex d(static_cast<double>(sign), 0.0);
        for (int k = 0; k < lu.dim(); ++k) d *= lu(k, k);
        return d;
    }
};

} // namespace

Complex lu_det(const ComplexMatrix& A) {
    return Lu(A).det();
}

ComplexMatrix lu_solve(const ComplexMatrix& A, const ComplexMatrix& B) {
    if (A.dim() != B.dim()) throw ConfigError("dimension mismatch");
    Lu f(A);
    if (f.singular) throw NumericalError("singular matrix in lu_solve");
    int n = A.dim();
    ComplexMatrix X(n);
    // Forward/back substitution per column of PB.
    for (int j = 0; j < n; ++j) {
        std::vector<Complex> y(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            Complex s = B(f.perm[static_cast<std::size_t>(i)], j);
            for (int k = 0; k < i; ++k) s -= f.lu(i, k) * y[static_cast<std::size_t>(k)];
            y[static_cast<std::size_t>(i)] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
            Complex s = y[static_cast<std::size_t>(i)];
            for (int k = i + 1; k < n; ++k) s -= f.lu(i, k) * X(k, j);
            X(i, j) = s / f.lu(i, i);
        }
    }
    return X;
}

// ---------------------------------------------------------------------------
// Singular values: one-sided Jacobi on the columns

std::vector<double> singular_values(const ComplexMatrix& A) {
    int n = A.dim();
    ComplexMatrix V(A);
    const double tol = 1e-15;
    const int max_sweeps = 40;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0;
                Complex gamma(0.0, 0.0);
                for (int i = 0; i < n; ++i) {
                    alpha += std::norm(V(i, p));
                    beta += std::norm(V(i, q));
                    gamma += std::conj(V(i, p)) * V(i, q);
                }
                double g = std::abs(gamma);
                if (g <= tol * std::sqrt(alpha * beta) || g == 0.0) continue;
                rotated = true;
                // Remove the phase of gamma, then a real Jacobi rotation.
                Complex phase = gamma / g;
                double tau = (beta - alpha) / (2.0 * g);
                double t = (tau >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (int i = 0; i < n; ++i) {
                    // Absorb the phase into column q so the pair's cross-
                    // correlation becomes real; column phases leave singular
                    // values intact.
                    Complex vq = std::conj(phase) * V(i, q);
                    Complex vp = V(i, p);
                    V(i, p) = c * vp - s * vq;
                    V(i, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += std::norm(V(i, j));
        sv[static_cast<std::size_t>(j)] = std::sqrt(sum);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

double schatten_norm(const ComplexMatrix& A, double p) {
    if (!(p >= 1.0)) throw ConfigError("Schatten norm requires p >= 1");
    std::vector<double> sv = singular_values(A);
    if (p == 1.0) {
        double sum = 0.0;
        for (double s : sv) sum += s;
        return sum;
    }
    double top = sv.empty() ? 0.0 : sv.front();
    if (top == 0.0) return 0.0;
    double sum = 0.0;
    for (double s : sv) sum += std::pow(s / top, p); // scaled to dodge overflow
    return top * std::pow(sum, 1.0 / p);
}

// ---------------------------------------------------------------------------
// Matrix exponential: scaling and squaring with the degree-13 Pade kernel

namespace {

double one_norm(const ComplexMatrix& A) {
    double best = 0.0;
    for (int j = 0; j < A.dim(); ++j) {
        double col = 0.0;
        for (int i = 0; i < A.dim(); ++i) col += std::abs(A(i, j));
        best = std::max(best, col);
    }
    return best;
}

} // namespace

ComplexMatrix matrix_exp(const ComplexMatrix& A) {
    static const double b[] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    const double theta13 = 5.371920351148152;

    int n = A.dim();
    double mu = one_norm(A);
    int squarings = 0;
    ComplexMatrix As(A);
    if (mu > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(mu / theta13)));
        As *= Complex(std::ldexp(1.0, -squarings), 0.0);
    }

    ComplexMatrix I = ComplexMatrix::identity(n);
    ComplexMatrix A2 = As * As;
    ComplexMatrix A4 = A2 * A2;
    ComplexMatrix A6 = A2 * A4;

    ComplexMatrix U = As * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) +
                            b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
    ComplexMatrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) +
                      b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;

    ComplexMatrix E = lu_solve(V - U, V + U);
    for (int k = 0; k < squarings; ++k) E = E * E;
    return E;
}

// ---------------------------------------------------------------------------
// Eigenvalues: Hessenberg reduction + shifted QR (values only)

namespace {

void hessenberg_reduce(ComplexMatrix& H) {
    int n = H.dim();
    for (int k = 0; k < n - 2; ++k) {
        // Householder vector annihilating H(k+2..n-1, k).
        double scale = 0.0;
        for (int i = k + 1; i < n; ++i) scale += std::norm(H(i, k));
        scale = std::sqrt(scale);
        if (scale == 0.0) continue;
        Complex x0 = H(k + 1, k);
        Complex alpha = (x0 == Complex(0.0, 0.0)) ? Complex(-scale, 0.0)
                                                  : -(x0 / std::abs(x0)) * scale;
        std::vector<Complex> v(static_cast<std::size_t>(n), Complex(0.0, 0.0));
        v[static_cast<std::size_t>(k + 1)] = x0 - alpha;
        for (int i = k + 2; i < n; ++i) v[static_cast<std::size_t>(i)] = H(i, k);
        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) vnorm2 += std::norm(v[static_cast<std::size_t>(i)]);
        if (vnorm2 == 0.0) continue;

        // H <- (I - 2 v v^H / |v|^2) H (I - 2 v v^H / |v|^2)
        for (int j = 0; j < n; ++j) {
            Complex s(0.0, 0.0);
            for (int i = k + 1; i < n; ++i) s += std::conj(v[static_cast<std::size_t>(i)]) * H(i, j);
            s *= 2.0 / vnorm2;
            for (int i = k + 1; i < n; ++i) H(i, j) -= s * v[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < n; ++i) {
            Complex s(0.0, 0.0);
            for (int j = k + 1; j < n; ++j) s += H(i, j) * v[static_cast<std::size_t>(j)];
            s *= 2.0 / vnorm2;
            for (int j = k + 1; j < n; ++j) H(i, j) -= s * std::conj(v[static_cast<std::size_t>(j)]);
        }
        for (int i = k + 2; i < n; ++i) H(i, k) = 0.0;
    }
}

// One explicit shifted QR step on the active block [lo, hi] of a Hessenberg
// matrix, via Givens rotations.
void qr_step(ComplexMatrix& H, int lo, int hi, Complex shift) {
    int m = hi - lo + 1;
    std::vector<Complex> cs(static_cast<std::size_t>(m - 1));
    std::vector<Complex> sn(static_cast<std::size_t>(m - 1));

    for (int k = lo; k <= hi; ++k) H(k, k) -= shift;

    // Left: G_k annihilates H(k+1, k).
    for (int k = lo; k < hi; ++k) {
        Complex a = H(k, k);
        Complex bb = H(k + 1, k);
        double r = std::sqrt(std::norm(a) + std::norm(bb));
        Complex c, s;
        if (r == 0.0) { c = 1.0; s = 0.0; }
        else { c = std::conj(a) / r; s = std::conj(bb) / r; }
        cs[static_cast<std::size_t>(k - lo)] = c;
        sn[static_cast<std::size_t>(k - lo)] = s;
        for (int j = k; j <= hi; ++j) {
            Complex x = H(k, j), y = H(k + 1, j);
            H(k, j) = c * x + s * y;
            H(k + 1, j) = -std::conj(s) * x + std::conj(c) * y;
        }
    }
    // Right: multiply by G_k^H.
    for (int k = lo; k < hi; ++k) {
        Complex c = cs[static_cast<std::size_t>(k - lo)];
        Complex s = sn[static_cast<std::size_t>(k - lo)];
        int top = std::min(k + 1, hi);
        for (int i = lo; i <= top; ++i) {
            Complex x = H(i, k), y = H(i, k + 1);
            H(i, k) = std::conj(c) * x + std::conj(s) * y;
            H(i, k + 1) = -s * x + c * y;
        }
    }

    for (int k = lo; k <= hi; ++k) H(k, k) += shift;
}

std::pair<Complex, Complex> eig2x2(Complex a, Complex b, Complex c, Complex d) {
    Complex tr = a + d;
    Complex disc = std::sqrt((a - d) * (a - d) + 4.0 * b * c);
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

} // namespace

std::vector<Complex> eigenvalues(const ComplexMatrix& A) {
    int n = A.dim();
    ComplexMatrix H(A);
    hessenberg_reduce(H);

    std::vector<Complex> eig;
    eig.reserve(static_cast<std::size_t>(n));

    int hi = n - 1;
    int iter_on_block = 0;
    const int max_iter_per_eig = 60;
    const double eps = 1e-15;

    while (hi >= 0) {
        // Deflate negligible subdiagonals.
        int lo = hi;
        while (lo > 0) {
            double sub = std::abs(H(lo, lo - 1));
            double diag = std::abs(H(lo - 1, lo - 1)) + std::abs(H(lo, lo));
            if (sub <= eps * (diag > 0.0 ? diag : 1.0)) {
                H(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }

        if (lo == hi) {
            eig.push_back(H(hi, hi));
            --hi;
            iter_on_block = 0;
            continue;
        }
        if (lo == hi - 1) {
            auto [e1, e2] = eig2x2(H(lo, lo), H(lo, hi), H(hi, lo), H(hi, hi));
            eig.push_back(e1);
            eig.push_back(e2);
            hi -= 2;
            iter_on_block = 0;
            continue;
        }

        if (++iter_on_block > max_iter_per_eig)
            throw NumericalError("eigenvalue QR iteration failed to converge");

        // Wilkinson shift: the trailing 2x2 eigenvalue closest to H(hi,hi).
        auto [w1, w2] = eig2x2(H(hi - 1, hi - 1), H(hi - 1, hi), H(hi, hi - 1), H(hi, hi));
        Complex shift = (std::abs(w1 - H(hi, hi)) < std::abs(w2 - H(hi, hi))) ? w1 : w2;
        if (iter_on_block % 20 == 0) {
            // Exceptional shift to break symmetry stalls.
            shift = H(hi, hi) + Complex(std::abs(H(hi, hi - 1)), std::abs(H(hi - 1, hi - 2)));
        }
        qr_step(H, lo, hi, shift);
    }

    std::sort(eig.begin(), eig.end(), [](Complex x, Complex y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return eig;
}

} // namespace flab
