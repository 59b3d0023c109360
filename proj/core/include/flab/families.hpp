#ifndef FLAB_FAMILIES_HPP
#define FLAB_FAMILIES_HPP

#include <functional>
#include <string>

#include "flab/linalg.hpp"
#include "flab/spectra.hpp"
#include "flab/zeroset.hpp"

namespace flab {

// Analytic operator-valued function on the cut plane with a certified
// growth envelope and, when available, a closed-form spectrum of its
// eigenvalues of finite type.
struct OperatorFamily {
    std::function<ComplexMatrix(Complex)> evaluator; // rejects points near the cut
    GrowthEnvelope envelope;
    std::function<ZeroSet()> closed_form_spectrum;   // may be empty
    std::string label;

    bool has_closed_form() const { return static_cast<bool>(closed_form_spectrum); }
};

// T(lambda) = B / sqrt_cut(lambda). Envelope (M = ||B||_p, rho = 1,
// sigma = -1/2); spectrum { beta^2 : beta eigenvalue of B, Im beta < 0 }.
OperatorFamily family_inverse_sqrt(const ComplexMatrix& B, int p);

// T(lambda) = B * sqrt_cut(lambda). Envelope (M = ||B||_p, rho,
// sigma = -1/2 - rho) for any rho > 0; spectrum
// { 1/beta^2 : beta eigenvalue of B, Im beta > 0 }.
OperatorFamily family_sqrt(const ComplexMatrix& B, int p, double rho);

// T(lambda) = B * phi(lambda) for a user-supplied scalar phi, analytic on
// the cut plane (caller's responsibility), with a claimed envelope to be
// checked by verify_envelope. No closed-form spectrum.
OperatorFamily family_scalar(const ComplexMatrix& B, ScalarFunction phi,
                             const GrowthEnvelope& envelope,
                             std::string label = "scalar");

struct EnvelopeGrid {
    double mod_min = 1e-3;
    double mod_max = 1e3;
    int n_mod = 64; // log-spaced moduli
    int n_arg = 63; // angles 2*pi*j/(n_arg+1), j = 1..n_arg
};

struct EnvelopeReport {
    double max_ratio;
    Complex worst_point;
    bool pass; // max_ratio <= 1 + 1e-9
    long samples;
};

// Samples ||T(lambda)||_p dist^rho(lambda) |lambda|^sigma / M over the grid.
// Sampling-based check, not a proof.
EnvelopeReport verify_envelope(const OperatorFamily& family,
                               const EnvelopeGrid& grid = {});

} // namespace flab

#endif
