#include "flab/families.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "flab/cutplane.hpp"

namespace flab {

namespace {

// Eligibility of an eigenvalue of B depends on its half-plane; values this
// close to the real axis are treated as real (ineligible) rather than
// resolved by an arbitrary sign.
bool strictly_below_axis(Complex beta) {
    return beta.imag() < -1e-12 * (1.0 + std::abs(beta));
}
bool strictly_above_axis(Complex beta) {
    return beta.imag() > 1e-12 * (1.0 + std::abs(beta));
}

ZeroSet spectrum_from_eigenvalues(const std::vector<Complex>& betas,
                                  bool lower_half, bool invert) {
    ZeroSet zs;
    for (Complex beta : betas) {
        if (lower_half ? !strictly_below_axis(beta) : !strictly_above_axis(beta))
            continue;
        Complex lambda = invert ? 1.0 / (beta * beta) : beta * beta;
        zs.add(lambda, 1, 1e-8 * (1.0 + std::abs(lambda)));
    }
    return zs;
}

} // namespace

OperatorFamily family_inverse_sqrt(const ComplexMatrix& B, int p) {
    GrowthEnvelope env{schatten_norm(B, static_cast<double>(p)), 1.0, -0.5, p};
    if (env.M == 0.0) env.M = 1.0; // zero family: any envelope holds
    std::vector<Complex> betas = eigenvalues(B);

    OperatorFamily fam;
    fam.evaluator = [B](Complex lambda) {
        return B * (1.0 / sqrt_cut(lambda));
    };
    fam.envelope = env;
    fam.closed_form_spectrum = [betas]() {
        return spectrum_from_eigenvalues(betas, /*lower_half=*/true, /*invert=*/false);
    };
    fam.label = "inv-sqrt";
    return fam;
}

OperatorFamily family_sqrt(const ComplexMatrix& B, int p, double rho) {
    if (!(rho > 0.0)) throw ConfigError("family_sqrt requires rho > 0");
    GrowthEnvelope env{schatten_norm(B, static_cast<double>(p)), rho, -0.5 - rho, p};
    if (env.M == 0.0) env.M = 1.0;
    std::vector<Complex> betas = eigenvalues(B);

    OperatorFamily fam;
    fam.evaluator = [B](Complex lambda) {
        return B * sqrt_cut(lambda);
    };
    fam.envelope = env;
    fam.closed_form_spectrum = [betas]() {
        return spectrum_from_eigenvalues(betas, /*lower_half=*/false, /*invert=*/true);
    };
    fam.label = "sqrt";
    return fam;
}

OperatorFamily family_scalar(const ComplexMatrix& B, ScalarFunction phi,
                             const GrowthEnvelope& envelope, std::string label) {
    envelope.validate();
    OperatorFamily fam;
    fam.evaluator = [B, phi = std::move(phi)](Complex lambda) {
        CutPoint pt(lambda); // guard-band rejection before phi sees the point
        return B * phi(pt.value());
    };
    fam.envelope = envelope;
    fam.label = std::move(label);
    return fam;
}

EnvelopeReport verify_envelope(const OperatorFamily& family,
                               const EnvelopeGrid& grid) {
    if (grid.n_mod < 1 || grid.n_arg < 1)
        throw ConfigError("envelope grid must have at least one sample");
    if (!(grid.mod_min > 0.0) || !(grid.mod_max >= grid.mod_min))
        throw ConfigError("envelope grid moduli must satisfy 0 < min <= max");
    family.envelope.validate();

    double p = static_cast<double>(family.envelope.p);
    EnvelopeReport rep{0.0, Complex(0.0, 0.0), true, 0};

    for (int k = 0; k < grid.n_mod; ++k) {
        double frac = grid.n_mod == 1 ? 0.0
                                      : static_cast<double>(k) / (grid.n_mod - 1);
        double mod = grid.mod_min *
                     std::pow(grid.mod_max / grid.mod_min, frac);
        for (int j = 1; j <= grid.n_arg; ++j) {
            double theta = 2.0 * std::numbers::pi * j / (grid.n_arg + 1);
            Complex lambda = std::polar(mod, theta);
            double norm_p = schatten_norm(family.evaluator(lambda), p);
            double ratio = norm_p * std::pow(dist_to_cut(lambda), family.envelope.rho) *
                           std::pow(std::abs(lambda), family.envelope.sigma) /
                           family.envelope.M;
            ++rep.samples;
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.worst_point = lambda;
            }
        }
    }
    rep.pass = rep.max_ratio <= 1.0 + 1e-9;
    return rep;
}

} // namespace flab
