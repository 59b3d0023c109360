#include "flab/cutplane.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flab/complex_format.hpp"

namespace flab {

double dist_to_cut(Complex lambda) noexcept {
    if (lambda.real() >= 0.0) return std::abs(lambda.imag());
    return std::abs(lambda);
}

double guard_width(Complex lambda, double guard_scale) noexcept {
    return guard_scale * (1.0 + std::abs(lambda));
}

bool off_cut(Complex lambda, double guard_scale) noexcept {
    return dist_to_cut(lambda) > guard_width(lambda, guard_scale);
}

CutPoint::CutPoint(Complex value, double guard_scale) : value_(value) {
    if (!off_cut(value, guard_scale))
        throw ConfigError("point " + format_complex(value) +
                          " lies on the cut or inside its guard band");
}

Complex sqrt_cut(const CutPoint& lambda) {
    Complex z = lambda.value();
    double theta = std::arg(z); // (-pi, pi]
    if (theta <= 0.0) theta += 2.0 * std::numbers::pi;
    double r = std::sqrt(std::abs(z));
    return Complex(r * std::cos(theta / 2.0), r * std::sin(theta / 2.0));
}

Complex sqrt_cut(Complex lambda, double guard_scale) {
    return sqrt_cut(CutPoint(lambda, guard_scale));
}

CutPoint invert_point(const CutPoint& lambda) {
    Complex z = lambda.value();
    if (z == Complex(0.0, 0.0)) throw ConfigError("cannot invert lambda = 0");
    return CutPoint(1.0 / z);
}

CutPoint scale_point(const CutPoint& lambda, double M, double rho, double sigma) {
    if (M <= 0.0) throw ConfigError("scale_point requires M > 0");
    if (rho + sigma == 0.0)
        throw ConfigError("scale_point is undefined for rho + sigma = 0 "
                          "(no scaling regime applies)");
    double factor = std::pow(M, 1.0 / (rho + sigma));
    return CutPoint(factor * lambda.value());
}

double rect_dist_to_cut(const Rect& r) noexcept {
    if (r.ymin <= 0.0 && r.ymax >= 0.0)
        return r.xmax >= 0.0 ? 0.0 : -r.xmax;
    double y = r.ymin > 0.0 ? r.ymin : -r.ymax; // min |Im| over the rectangle
    return r.xmax >= 0.0 ? y : std::hypot(r.xmax, y);
}

namespace {

double rect_max_abs(const Rect& r) noexcept {
    return std::max(std::max(std::abs(r.xmin), std::abs(r.xmax)),
                    std::max(std::abs(r.ymin), std::abs(r.ymax)));
}

} // namespace

Box::Box(double xmin_, double xmax_, double ymin_, double ymax_)
    : xmin(xmin_), xmax(xmax_), ymin(ymin_), ymax(ymax_) {
    if (!(xmin < xmax) || !(ymin < ymax))
        throw ConfigError("degenerate box [" + format_real(xmin) + "," +
                          format_real(xmax) + "]x[" + format_real(ymin) + "," +
                          format_real(ymax) + "]");
    Rect r{xmin, xmax, ymin, ymax};
    double d = rect_dist_to_cut(r);
    if (d <= kGuardScale * (1.0 + rect_max_abs(r)))
        throw ConfigError("box [" + format_real(xmin) + "," + format_real(xmax) +
                          "]x[" + format_real(ymin) + "," + format_real(ymax) +
                          "] intersects the guard band of the cut");
}

double Box::diameter() const noexcept {
    return std::hypot(width(), height());
}

Complex Box::center() const noexcept {
    return Complex((xmin + xmax) / 2.0, (ymin + ymax) / 2.0);
}

bool Box::contains(Complex z) const noexcept {
    return z.real() >= xmin && z.real() <= xmax &&
           z.imag() >= ymin && z.imag() <= ymax;
}

std::vector<Box> split_around_cut(const Rect& r, double margin) {
    if (!(r.xmin < r.xmax) || !(r.ymin < r.ymax))
        throw ConfigError("degenerate region rectangle");
    double g = margin > 0.0 ? margin : 1e-6 * (1.0 + rect_max_abs(r));

    std::vector<Box> out;
    if (rect_dist_to_cut(r) > g) {
        out.emplace_back(r.xmin, r.xmax, r.ymin, r.ymax);
        return out;
    }
    if (r.ymax > g)
        out.emplace_back(r.xmin, r.xmax, std::max(r.ymin, g), r.ymax);
    if (r.ymin < -g)
        out.emplace_back(r.xmin, r.xmax, r.ymin, std::min(r.ymax, -g));
    // Strip along the negative axis: legal domain, kept clear of the origin.
    if (r.xmin < -g) {
        double lo = std::max(r.ymin, -g);
        double hi = std::min(r.ymax, g);
        if (lo < hi) out.emplace_back(r.xmin, std::min(r.xmax, -g), lo, hi);
    }
    return out;
}

} // namespace flab
