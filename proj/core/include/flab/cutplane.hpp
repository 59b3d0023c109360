#ifndef FLAB_CUTPLANE_HPP
#define FLAB_CUTPLANE_HPP

#include <vector>

#include "flab/errors.hpp"
#include "flab/types.hpp"

namespace flab {

// Geometry of the slit domain C \ R+ (the cut runs along {x >= 0, y = 0}).
//
// The domain is open; numerics need an explicit exclusion zone near the
// slit, so points with dist(z, R+) <= guard_width(z) are rejected wherever
// an off-cut point is required.

inline constexpr double kGuardScale = 1e-9;

// Euclidean distance from lambda to the positive semi-axis. Defined for
// every complex lambda; equals 0 exactly on R+.
double dist_to_cut(Complex lambda) noexcept;

double guard_width(Complex lambda, double guard_scale = kGuardScale) noexcept;
bool off_cut(Complex lambda, double guard_scale = kGuardScale) noexcept;

// A point of the slit domain, validated at construction.
class CutPoint {
public:
    explicit CutPoint(Complex value, double guard_scale = kGuardScale);
    Complex value() const noexcept { return value_; }

private:
    Complex value_;
};

// Branch of the square root mapping the slit domain onto the open upper
// half-plane: |lambda|^{1/2} e^{i theta/2} with theta = arg lambda in (0, 2pi).
Complex sqrt_cut(const CutPoint& lambda);
Complex sqrt_cut(Complex lambda, double guard_scale = kGuardScale);

// 1/lambda; satisfies dist_to_cut(1/lambda) = dist_to_cut(lambda)/|lambda|^2.
CutPoint invert_point(const CutPoint& lambda);

// M^{1/(rho+sigma)} * lambda. Rejects rho+sigma = 0.
CutPoint scale_point(const CutPoint& lambda, double M, double rho, double sigma);

// Unvalidated axis-aligned rectangle (may straddle the cut); raw input for
// region configuration before splitting.
struct Rect {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
};

// Axis-aligned closed rectangle that keeps clear of the cut's guard band.
struct Box {
    double xmin, xmax, ymin, ymax;

    Box(double xmin, double xmax, double ymin, double ymax);

    double width() const noexcept { return xmax - xmin; }
    double height() const noexcept { return ymax - ymin; }
    double diameter() const noexcept;
    Complex center() const noexcept;
    bool contains(Complex z) const noexcept;
};

// Minimal dist_to_cut over the closed rectangle (no guard validation).
double rect_dist_to_cut(const Rect& r) noexcept;

// Splits a raw rectangle into at most three boxes clear of the cut: one
// above the real axis, one below, and a thin strip along the negative axis.
// Returns an empty list when nothing of the rectangle survives the margin.
std::vector<Box> split_around_cut(const Rect& r, double margin = 0.0);

} // namespace flab

#endif
