#ifndef FLAB_COMPLEX_FORMAT_HPP
#define FLAB_COMPLEX_FORMAT_HPP

#include <string>
#include <string_view>

#include "flab/types.hpp"

namespace flab {

// All text I/O renders doubles at 17 significant digits, which round-trips
// the full double precision.
std::string format_real(double x);
std::string format_complex(Complex z); // "a+bi" / "a-bi"

double parse_real(std::string_view s);      // throws ConfigError on junk
Complex parse_complex(std::string_view s);  // accepts "a+bi", "a-bi", "a", "bi"

} // namespace flab

#endif
