#include "flab/zerofind.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "flab/detp.hpp"

namespace flab {

namespace {

constexpr double kPi = std::numbers::pi;

// Boundary of the box as a closed path, parametrized by t in [0, 4):
// edge k = floor(t), local fraction t - k, counterclockwise from (xmin, ymin).
Complex boundary_point(const Box& b, double t) {
    int edge = static_cast<int>(t);
    double s = t - edge;
    switch (edge) {
        case 0: return Complex(b.xmin + s * (b.xmax - b.xmin), b.ymin);
        case 1: return Complex(b.xmax, b.ymin + s * (b.ymax - b.ymin));
        case 2: return Complex(b.xmax - s * (b.xmax - b.xmin), b.ymax);
        default: return Complex(b.xmin, b.ymax - s * (b.ymax - b.ymin));
    }
}

struct Sample {
    double t;
    Complex z;
    Complex fz;
};

double phase_increment(Complex f1, Complex f2) {
    double d = std::arg(f2) - std::arg(f1);
    if (d > kPi) d -= 2.0 * kPi;
    if (d <= -kPi) d += 2.0 * kPi;
    return d;
}

} // namespace

int winding_count(const ScalarFunction& f, const Box& box,
                  const WindingOptions& options, WindingStats* stats) {
    const int per_edge = std::max(options.initial_samples_per_edge, 4);
    long evals = 0;

    auto evaluate = [&](double t) -> Sample {
        if (++evals > options.max_evals)
            throw NumericalError("winding refinement budget exhausted");
        Complex z = boundary_point(box, t);
        Complex fz = f(z);
        double mag = std::abs(fz);
        if (!std::isfinite(mag))
            throw NumericalError("non-finite function value on contour");
        if (mag == 0.0)
            throw BoundaryZeroError("function value vanishes on the contour");
        return Sample{t, z, fz};
    };

    std::vector<Sample> initial;
    initial.reserve(static_cast<std::size_t>(4 * per_edge) + 1);
    for (int k = 0; k < 4 * per_edge; ++k)
        initial.push_back(evaluate(4.0 * k / (4 * per_edge)));
    initial.push_back(initial.front()); // close the loop
    initial.back().t = 4.0;

    // Depth-first refinement. A segment is accepted only after its midpoint
    // confirms that both half-increments stay below pi/2 with bounded
    // modulus jumps; a fast full turn hidden between two samples (phases
    // realigned, moduli comparable) is exposed by the midpoint. The
    // vanishing test is local to the segment, since |f| may legitimately
    // span many orders of magnitude along one contour.
    auto tame = [&](const Sample& a, const Sample& b, double& inc) {
        inc = phase_increment(a.fz, b.fz);
        double ra = std::abs(a.fz), rb = std::abs(b.fz);
        return std::abs(inc) < kPi / 2.0 &&
               std::max(ra, rb) <= options.max_modulus_ratio * std::min(ra, rb);
    };

    double total = 0.0;
    std::vector<std::pair<Sample, Sample>> work;
    for (std::size_t k = initial.size() - 1; k-- > 0;)
        work.emplace_back(initial[k], initial[k + 1]);

    while (!work.empty()) {
        auto [a, b] = work.back();
        work.pop_back();
        double tm = (a.t + b.t) / 2.0;
        if (!(tm > a.t && tm < b.t))
            throw BoundaryZeroError("contour segment collapsed before the "
                                    "phase increment dropped below pi/2 "
                                    "(zero on or numerically near the "
                                    "boundary)");
        Sample m = evaluate(tm);
        if (std::abs(m.fz) <=
            options.boundary_floor * std::max(std::abs(a.fz), std::abs(b.fz)))
            throw BoundaryZeroError("function value vanishes on the contour");
        double d1 = 0.0, d2 = 0.0;
        if (tame(a, m, d1) && tame(m, b, d2)) {
            total += d1 + d2;
            continue;
        }
        work.emplace_back(m, b);
        work.emplace_back(a, m);
    }

    double w = total / (2.0 * kPi);
    double snapped = std::round(w);
    double dev = std::abs(w - snapped);
    if (stats) {
        ++stats->windings;
        stats->max_snap_deviation = std::max(stats->max_snap_deviation, dev);
        stats->evals += evals;
    }
    if (dev > options.snap_tol)
        throw NumericalError("winding total did not snap to an integer "
                             "(accumulated " + std::to_string(w) + ")");
    return static_cast<int>(snapped);
}

namespace {

// Fixed multiplier sequence on tol for deterministic boundary-zero retries.
constexpr double kJitterSeq[] = {0.0, 1.0, -1.0, 4.0, -4.0, 16.0, -16.0, 64.0, -64.0};
constexpr int kJitterCount = static_cast<int>(std::size(kJitterSeq));

struct Localizer {
    const ScalarFunction& f;
    double tol;
    const LocalizeOptions& opt;
    WindingStats* stats;
    ZeroSet found;

    int winding_or_retry_outer(Box& box) {
        // Outer boundary zeros are resolved by growing the region edges a
        // few tol at a time.
        for (int k = 0; k < kJitterCount; ++k) {
            double d = std::abs(kJitterSeq[k]) * tol;
            try {
                Box attempt(box.xmin - d, box.xmax + d, box.ymin - d, box.ymax + d);
                int w = winding_count(f, attempt, opt.winding, stats);
                box = attempt;
                return w;
            } catch (const BoundaryZeroError&) {
                if (k + 1 == kJitterCount) throw;
            } catch (const ConfigError&) {
                // grown box touched the guard band; try the next offset
                if (k + 1 == kJitterCount) throw;
            }
        }
        throw BoundaryZeroError("unreachable");
    }

    void emit(const Box& box, int w) {
        Complex z = box.center();
        if (w == 1 && opt.polish) z = polish_simple(box, z);
        found.add(z, w, tol);
    }

    Complex polish_simple(const Box& box, Complex z0) {
        Complex z = z0;
        double h = std::max(1e-8 * (1.0 + std::abs(z)), 0.01 * tol);
        try {
            for (int it = 0; it < 6; ++it) {
                Complex fz = f(z);
                if (fz == Complex(0.0, 0.0)) return z;
                Complex fp = (f(z + Complex(h, 0)) - f(z - Complex(h, 0))) / (2.0 * h);
                if (fp == Complex(0.0, 0.0)) break;
                Complex step = fz / fp;
                if (std::abs(step) > 4.0 * tol + 4.0 * h) break; // reject runaways
                Complex next = z - step;
                if (!off_cut(next)) break;
                z = next;
                if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
            }
        } catch (const Error&) {
            return z0; // polishing is optional; the box center is certified
        }
        // Keep the polished point close to the certified box.
        if (std::abs(z - z0) > 2.0 * box.diameter() + 4.0 * h) return z0;
        return z;
    }

    void subdivide(const Box& box, int w, int depth) {
        if (w == 0) return;
        if (box.diameter() <= tol) {
            emit(box, w);
            return;
        }
        if (depth >= opt.max_depth)
            throw NumericalError("subdivision budget exceeded at depth " +
                                 std::to_string(depth));

        double xm = (box.xmin + box.xmax) / 2.0;
        double ym = (box.ymin + box.ymax) / 2.0;
        double cap_x = 0.25 * box.width();
        double cap_y = 0.25 * box.height();

        for (int k = 0; k < kJitterCount; ++k) {
            double dx = std::clamp(kJitterSeq[k] * tol, -cap_x, cap_x);
            double dy = std::clamp(kJitterSeq[k] * tol, -cap_y, cap_y);
            double xc = xm + dx;
            double yc = ym + dy;
            Box children[4] = {
                Box(box.xmin, xc, box.ymin, yc),
                Box(xc, box.xmax, box.ymin, yc),
                Box(box.xmin, xc, yc, box.ymax),
                Box(xc, box.xmax, yc, box.ymax),
            };
            int cw[4];
            try {
                for (int c = 0; c < 4; ++c)
                    cw[c] = winding_count(f, children[c], opt.winding, stats);
            } catch (const BoundaryZeroError&) {
                if (k + 1 == kJitterCount) throw;
                continue;
            }
            int sum = cw[0] + cw[1] + cw[2] + cw[3];
            if (stats) ++stats->additivity_checks;
            if (sum != w)
                throw NumericalError(
                    "winding additivity violated: children sum to " +
                    std::to_string(sum) + ", parent is " + std::to_string(w));
            for (int c = 0; c < 4; ++c) subdivide(children[c], cw[c], depth + 1);
            return;
        }
    }
};

} // namespace

ZeroSet localize_zeros(const ScalarFunction& f, const Box& region, double tol,
                       const LocalizeOptions& options, WindingStats* stats) {
    if (!(tol > 0.0)) throw ConfigError("localization tolerance must be positive");
    Localizer loc{f, tol, options, stats, ZeroSet{}};
    Box top = region;
    int w = loc.winding_or_retry_outer(top);
    loc.subdivide(top, w, 0);
    if (loc.found.total_multiplicity() != w)
        throw NumericalError("zero multiplicities do not sum to the region "
                             "winding count");
    return std::move(loc.found);
}

ZeroSet eigenvalues_of_finite_type(const OperatorFamily& family, int p,
                                   const Box& region, double tol,
                                   const LocalizeOptions& options,
                                   WindingStats* stats) {
    return localize_zeros(determinant_function(family, p), region, tol, options,
                          stats);
}

} // namespace flab
