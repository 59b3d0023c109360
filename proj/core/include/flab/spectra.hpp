#ifndef FLAB_SPECTRA_HPP
#define FLAB_SPECTRA_HPP

#include <string>

#include "flab/errors.hpp"
#include "flab/zeroset.hpp"

namespace flab {

// ---------------------------------------------------------------------------
// Exponent calculus for the weighted zero-sum inequalities.

// Arguments of the bracket {u}_{c,eps} = (u_- - 1 + eps)_+ - min(c, u_+).
struct BracketArgs {
    double u;
    double c;   // >= 0
    double eps; // > 0
};

double bracket(const BracketArgs& args);

// Growth data log|h(lambda)| <= K (1+|lambda|)^b / (|lambda|^r dist^a).
struct ScalarGrowthBound {
    double K;
    double a;
    double b;
    double r;
};

struct TheoremBExponents {
    double s;  // 3a - 2b + 2r
    double s1; // ({-2r-a}_{a,eps} - a - 1 - eps)/2
    double s2; // a + 1 + eps + ({-2r-a}_{a,eps} + {s}_{a,eps})/2
};

TheoremBExponents theoremB_exponents(double a, double b, double r, double eps);

// Envelope ||T(lambda)||_p <= M / (dist^rho(lambda, R+) |lambda|^sigma).
struct GrowthEnvelope {
    double M;
    double rho;   // >= 0
    double sigma;
    int p;        // >= 1

    void validate() const;
    double rho_plus_sigma() const noexcept { return rho + sigma; }
};

enum class Regime {
    Thm1Range1, // 0 < rho+sigma <= rho/2
    Thm2Case1,  // -rho/2 <= rho+sigma < 0
    Thm2Case2,  // rho+sigma < -rho/2
    ThmAOther,  // rho+sigma > rho/2
};

const char* regime_name(Regime r) noexcept;

// Rejects rho+sigma = 0 (no regime applies there).
Regime regime_classify(const GrowthEnvelope& envelope);

// All derived exponents for given (p, rho, sigma, eps) plus the auxiliary
// sum parameters. Every field is recomputable from its defining formula.
struct ExponentBundle {
    Regime regime;
    double a, b, r;        // Theorem B parameters for the regime
    double bracket_m2ra;   // {-2r-a}_{a,eps}
    double bracket_s;      // {s}_{a,eps}
    double s, s1, s2;
    double q;              // (p rho + 2 p sigma - 1 + eps)_+
    double l;              // (-3 p rho - 2 p sigma - 1 + eps)_+
    double eps;
    double eps_prime;
    double tail_cutoff_factor; // >= 1, the tail-sum cutoff multiplier
    double mu_radius_factor;   // in (0, 1], the small-disc cutoff multiplier
};

ExponentBundle derive_bundle(const GrowthEnvelope& envelope, double eps,
                             double eps_prime, double tail_cutoff_factor = 1.0,
                             double mu_radius_factor = 1.0);

// sum over zeros of dist^{a+1+eps}(z, R+) |z|^{s1} / (1+|z|)^{s2}.
double blaschke_sum_B(const ZeroSet& zeros, double a, double eps, double s1,
                      double s2);

enum class InequalityId { freq1, freq2, gkeq1, gkeq2, gkeq3, gkeq4 };

const char* inequality_name(InequalityId id) noexcept;
InequalityId parse_inequality(const std::string& name);

struct SumReport {
    double lhs;
    double rhs_power_of_M;
    double rhs_without_C; // M-power times the nu/mu factor, constant C omitted
};

// Evaluates the weighted eigenvalue sum of the chosen inequality with its
// exact cutoff and exponents; throws ConfigError naming the applicable
// theorem when the bundle's regime does not match.
SumReport sum_inequality(const ZeroSet& zeros, const ExponentBundle& bundle,
                         const GrowthEnvelope& envelope, InequalityId which);

struct WeightComparison {
    double lhs_exp;
    double rhs_exp;
    bool stronger; // lhs_exp <= rhs_exp: larger weight on |zeta| <= 1
};

// Compares the small-|zeta| weight exponents of the refined inequality
// against the baseline one (Thm1Range1 regime only).
WeightComparison weight_comparison_exponents(int p, double rho, double sigma,
                                             double eps);

} // namespace flab

#endif
