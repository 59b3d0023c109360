#include "flab/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "flab/complex_format.hpp"

namespace flab {

// ---------------------------------------------------------------------------
// Matrix CSV

ComplexMatrix load_matrix_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw ConfigError("matrix CSV is empty");
    if (line.rfind("# n=", 0) != 0)
        throw ConfigError("matrix CSV line 1: expected header \"# n=<dim>\"");
    int n = 0;
    try {
        n = std::stoi(line.substr(4));
    } catch (const std::exception&) {
        throw ConfigError("matrix CSV line 1: malformed dimension");
    }
    std::vector<Complex> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    int rows = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        ++rows;
        std::istringstream ss(line);
        std::string cell;
        int cols = 0;
        while (std::getline(ss, cell, ',')) {
            entries.push_back(parse_complex(cell));
            ++cols;
        }
        if (cols != n)
            throw ConfigError("matrix CSV row " + std::to_string(rows) + " has " +
                              std::to_string(cols) + " entries, expected " +
                              std::to_string(n));
    }
    if (rows != n)
        throw ConfigError("matrix CSV has " + std::to_string(rows) +
                          " rows, expected " + std::to_string(n));
    return ComplexMatrix(n, std::move(entries));
}

ComplexMatrix load_matrix_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open matrix file: " + path);
    return load_matrix_csv(is);
}

void save_matrix_csv(const ComplexMatrix& m, std::ostream& os) {
    os << "# n=" << m.dim() << '\n';
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            if (j) os << ',';
            os << format_complex(m(i, j));
        }
        os << '\n';
    }
}

void save_matrix_file(const ComplexMatrix& m, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open output file: " + path);
    save_matrix_csv(m, os);
}

// ---------------------------------------------------------------------------
// Families

FamilySpec::Kind parse_family_kind(const std::string& name) {
    if (name == "inv-sqrt") return FamilySpec::Kind::InvSqrt;
    if (name == "sqrt") return FamilySpec::Kind::Sqrt;
    if (name == "scalar") return FamilySpec::Kind::Scalar;
    throw ConfigError("unknown family '" + name +
                      "' (expected inv-sqrt|sqrt|scalar)");
}

ScalarFunction named_phi(const std::string& name) {
    if (name == "zero")
        return [](Complex) { return Complex(0.0, 0.0); };
    if (name == "inv-sqrt")
        return [](Complex z) { return 1.0 / sqrt_cut(z); };
    if (name == "sqrt")
        return [](Complex z) { return sqrt_cut(z); };
    if (name == "inv")
        return [](Complex z) { return 1.0 / CutPoint(z).value(); };
    if (name == "inv-sqrt+inv")
        return [](Complex z) {
            CutPoint pt(z);
            return 1.0 / sqrt_cut(pt) + 1.0 / pt.value();
        };
    throw ConfigError("unknown scalar shape '" + name +
                      "' (expected zero|inv-sqrt|sqrt|inv|inv-sqrt+inv)");
}

OperatorFamily build_family(const FamilySpec& spec, const ComplexMatrix& B) {
    switch (spec.kind) {
        case FamilySpec::Kind::InvSqrt:
            return family_inverse_sqrt(B, spec.p);
        case FamilySpec::Kind::Sqrt:
            return family_sqrt(B, spec.p, spec.rho);
        case FamilySpec::Kind::Scalar: {
            GrowthEnvelope env{spec.scalar_M, spec.scalar_rho, spec.scalar_sigma,
                               spec.p};
            return family_scalar(B, named_phi(spec.phi_name), env,
                                 "scalar:" + spec.phi_name);
        }
    }
    throw ConfigError("unreachable family kind");
}

// ---------------------------------------------------------------------------
// Experiment configuration

void ExperimentConfig::validate() const {
    if (kappa.empty()) throw ConfigError("kappa list is empty");
    for (std::size_t k = 0; k < kappa.size(); ++k) {
        if (!(kappa[k] > 0.0)) throw ConfigError("kappa values must be positive");
        if (k > 0 && !(kappa[k] > kappa[k - 1]))
            throw ConfigError("kappa list must be strictly increasing");
    }
    if (!(tol > 0.0)) throw ConfigError("tol must be positive");
    if (!(eps > 0.0)) throw ConfigError("eps must be positive");
    if (!(eps_prime > 0.0)) throw ConfigError("eps-prime must be positive");
    if (!(nu >= 1.0)) throw ConfigError("nu-factor must be >= 1");
    if (!(mu > 0.0 && mu <= 1.0)) throw ConfigError("mu must lie in (0, 1]");
}

// ---------------------------------------------------------------------------
// Regions

std::vector<Box> derive_regions(const OperatorFamily& family,
                                const std::vector<Rect>& user_regions) {
    std::vector<Box> out;
    if (!user_regions.empty()) {
        for (const Rect& r : user_regions) {
            std::vector<Box> parts = split_around_cut(r);
            if (parts.empty())
                throw ConfigError("region [" + format_real(r.xmin) + "," +
                                  format_real(r.xmax) + "]x[" + format_real(r.ymin) +
                                  "," + format_real(r.ymax) +
                                  "] lies entirely inside the cut's guard band");
            out.insert(out.end(), parts.begin(), parts.end());
        }
        return out;
    }
    if (!family.has_closed_form())
        throw ConfigError("family '" + family.label +
                          "' has no closed-form spectrum; explicit regions "
                          "are required");
    ZeroSet zeros = family.closed_form_spectrum();
    if (zeros.empty()) return out; // nothing to search for
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const Zero& z : zeros.entries()) {
        double re = z.location.real(), im = z.location.imag();
        if (first) {
            xmin = xmax = re;
            ymin = ymax = im;
            first = false;
        } else {
            xmin = std::min(xmin, re);
            xmax = std::max(xmax, re);
            ymin = std::min(ymin, im);
            ymax = std::max(ymax, im);
        }
    }
    double pad = 0.1 * std::max({xmax - xmin, ymax - ymin, 1.0}) + 0.5;
    Rect r{xmin - pad, xmax + pad, ymin - pad, ymax + pad};
    return split_around_cut(r);
}

ZeroSet run_zeros(const OperatorFamily& family, int p,
                  const std::vector<Rect>& regions, double tol,
                  WindingStats* stats) {
    std::vector<Box> boxes = derive_regions(family, regions);
    ZeroSet all;
    for (const Box& box : boxes) {
        ZeroSet part = localize_zeros(determinant_function(family, p), box, tol,
                                      LocalizeOptions{}, stats);
        for (const Zero& z : part.entries())
            all.add(z.location, z.multiplicity, tol);
    }
    return all;
}

// ---------------------------------------------------------------------------
// Experiments

SumRun run_sum(const ZeroSet& zeros, const GrowthEnvelope& envelope,
               double eps, double eps_prime, double nu, double mu,
               InequalityId which) {
    ExponentBundle bundle = derive_bundle(envelope, eps, eps_prime, nu, mu);
    SumReport rep = sum_inequality(zeros, bundle, envelope, which);
    return SumRun{rep, rep.lhs / rep.rhs_without_C, bundle};
}

ExperimentReport run_scaling_experiment(const ExperimentConfig& config,
                                        const ComplexMatrix& B,
                                        WindingStats* stats) {
    config.validate();

    ExperimentReport report;
    report.inequality = config.inequality;

    bool first = true;
    for (double kappa : config.kappa) {
        auto t0 = std::chrono::steady_clock::now();
        ExperimentRow row;
        row.kappa = kappa;

        OperatorFamily family = build_family(config.family, B * Complex(kappa, 0.0));
        row.M = family.envelope.M;
        if (first) {
            report.bundle = derive_bundle(family.envelope, config.eps,
                                          config.eps_prime, config.nu, config.mu);
            report.base_envelope = family.envelope;
            report.family_label = family.label;
            first = false;
        }

        try {
            bool use_closed_form =
                config.spectrum == ExperimentConfig::SpectrumSource::ClosedForm ||
                (config.spectrum == ExperimentConfig::SpectrumSource::Auto &&
                 family.has_closed_form() && config.regions.empty());
            ZeroSet zeros;
            if (use_closed_form) {
                if (!family.has_closed_form())
                    throw ConfigError("family '" + family.label +
                                      "' has no closed-form spectrum");
                zeros = family.closed_form_spectrum();
            } else {
                zeros = run_zeros(family, config.family.p, config.regions,
                                  config.tol, stats);
            }
            row.zero_count = static_cast<int>(zeros.size());
            row.total_multiplicity = zeros.total_multiplicity();

            SumRun sum = run_sum(zeros, family.envelope, config.eps,
                                 config.eps_prime, config.nu, config.mu,
                                 config.inequality);
            row.lhs = sum.report.lhs;
            row.rhs_without_C = sum.report.rhs_without_C;
            row.ratio = sum.ratio;
        } catch (const NumericalError& e) {
            row.status = "failed";
            row.message = e.what();
        }

        row.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        report.rows.push_back(std::move(row));
    }
    return report;
}

void emit_plot_data(const ExperimentReport& report, std::ostream& os) {
    os << "kappa,M,lhs,rhs_without_C,ratio,status\n";
    for (const ExperimentRow& row : report.rows) {
        os << format_real(row.kappa) << ',' << format_real(row.M) << ',';
        if (row.status == "ok") {
            os << format_real(row.lhs) << ',' << format_real(row.rhs_without_C)
               << ',' << format_real(row.ratio);
        } else {
            os << ",,";
        }
        os << ',' << row.status << '\n';
    }
}

// ---------------------------------------------------------------------------
// detp-check

ComplexMatrix random_matrix(std::mt19937_64& rng, int n, double scale) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<Complex> entries(static_cast<std::size_t>(n) * n);
    for (Complex& z : entries) {
        double re = unit(rng);
        double im = unit(rng);
        z = Complex(scale * re, scale * im);
    }
    return ComplexMatrix(n, std::move(entries));
}

DetpCheckResult run_detp_check(int p, int trials, int dim, double norm_cap,
                               std::uint64_t seed) {
    if (p < 1) throw ConfigError("detp-check requires p >= 1");
    if (trials < 1) throw ConfigError("detp-check requires at least one trial");
    if (dim < 1 || dim > ComplexMatrix::kMaxDim)
        throw ConfigError("detp-check dimension out of range");
    if (!(norm_cap > 0.0)) throw ConfigError("norm cap must be positive");

    DetpConstants constants = DetpConstants::defaults(p);
    DetpCheckResult result;
    result.trials = trials;

    // For p >= 3 the constant is configurable, not asserted; a violation
    // doubles it and re-runs the suite.
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit01(0.0, 1.0);
        result.violations_upper = 0;
        result.violations_perturbation = 0;
        result.max_slack = -std::numeric_limits<double>::infinity();

        for (int t = 0; t < trials; ++t) {
            ComplexMatrix A = random_matrix(rng, dim);
            double norm = schatten_norm(A, static_cast<double>(p));
            double target = norm_cap * unit01(rng);
            if (norm > 0.0) A *= Complex(target / norm, 0.0);

            BoundReport upper = check_upper_bound(A, p, constants);
            BoundReport pert = check_perturbation_bound(A, p, constants);
            if (!upper.holds) ++result.violations_upper;
            if (!pert.holds) ++result.violations_perturbation;
            if (std::isfinite(upper.lhs))
                result.max_slack = std::max(result.max_slack, upper.lhs - upper.rhs);
            result.max_slack = std::max(result.max_slack, pert.lhs - pert.rhs);
        }

        bool clean = result.violations_upper == 0 && result.violations_perturbation == 0;
        if (clean || p < 3) break;
        constants.gamma_p *= 2.0;
        result.gamma_raised = true;
    }
    result.gamma_used = constants.gamma_p;
    return result;
}

// ---------------------------------------------------------------------------
// Config files

std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto notspace = [](unsigned char c) { return !std::isspace(c); };
        line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
        line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(),
                   line.end());
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        key.erase(std::find_if(key.rbegin(), key.rend(), notspace).base(), key.end());
        value.erase(value.begin(),
                    std::find_if(value.begin(), value.end(), notspace));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key");
        // region may repeat; keep repeated keys indexed
        if (kv.count(key)) {
            int suffix = 2;
            while (kv.count(key + "#" + std::to_string(suffix))) ++suffix;
            key += "#" + std::to_string(suffix);
        }
        kv[key] = value;
    }
    return kv;
}

} // namespace flab
