#ifndef FLAB_TYPES_HPP
#define FLAB_TYPES_HPP

#include <complex>
#include <functional>

namespace flab {

using Complex = std::complex<double>;

// Scalar analytic function on the cut plane, evaluated pointwise.
// Evaluators are pure and safe to call from concurrent workers.
using ScalarFunction = std::function<Complex(Complex)>;

} // namespace flab

#endif
