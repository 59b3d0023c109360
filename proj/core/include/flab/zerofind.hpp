#ifndef FLAB_ZEROFIND_HPP
#define FLAB_ZEROFIND_HPP

#include "flab/cutplane.hpp"
#include "flab/families.hpp"
#include "flab/zeroset.hpp"

namespace flab {

struct WindingOptions {
    int initial_samples_per_edge = 16;
    long max_evals = 200000;      // refinement budget per contour
    double snap_tol = 0.05;       // winding must land this close to an integer
    double boundary_floor = 1e-13; // |f| <= floor * scale flags a boundary zero
    // Segments are also refined while |f| jumps by more than this factor
    // between consecutive samples; fast hidden phase turns ride on fast
    // modulus action, which the pi/2 test alone cannot see.
    double max_modulus_ratio = 4.0;
};

// Counters asserted by the acceptance suite: every winding must snap, and
// quadrisection children must sum to their parent.
struct WindingStats {
    long long windings = 0;
    double max_snap_deviation = 0.0;
    long long additivity_checks = 0;
    long long evals = 0;
};

// Argument-principle count of zeros inside the box (with multiplicity),
// by adaptive phase tracking along the boundary: consecutive phase
// increments are kept below pi/2, refining where they are not.
// Throws BoundaryZeroError when |f| vanishes on a boundary sample and
// NumericalError when refinement exhausts its budget or the total fails
// to snap to an integer.
int winding_count(const ScalarFunction& f, const Box& box,
                  const WindingOptions& options = {},
                  WindingStats* stats = nullptr);

struct LocalizeOptions {
    WindingOptions winding;
    int max_depth = 60;
    bool polish = true; // Newton step with numerically differenced f on simple zeros
};

// Recursive quadrisection: boxes with winding 0 are discarded; boxes with
// winding N >= 1 and diameter <= tol yield a zero of multiplicity N.
// Boundary zeros trigger a deterministic retry that jitters the split
// lines (or the outer edges) by a fixed multiplier sequence on tol.
ZeroSet localize_zeros(const ScalarFunction& f, const Box& region, double tol,
                       const LocalizeOptions& options = {},
                       WindingStats* stats = nullptr);

// Zeros of det_p(I + T(lambda)) in the region: the eigenvalues of finite
// type of I + T, with algebraic multiplicities.
ZeroSet eigenvalues_of_finite_type(const OperatorFamily& family, int p,
                                   const Box& region, double tol,
                                   const LocalizeOptions& options = {},
                                   WindingStats* stats = nullptr);

} // namespace flab

#endif
