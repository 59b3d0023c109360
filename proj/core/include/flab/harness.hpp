#ifndef FLAB_HARNESS_HPP
#define FLAB_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "flab/cutplane.hpp"
#include "flab/detp.hpp"
#include "flab/families.hpp"
#include "flab/spectra.hpp"
#include "flab/zerofind.hpp"
#include "flab/zeroset.hpp"

namespace flab {

// --------------------------------------------------------------------------
// Matrix CSV: header "# n=<dim>", then one row per matrix row, entries
// rendered as "a+bi".

ComplexMatrix load_matrix_csv(std::istream& is);
ComplexMatrix load_matrix_file(const std::string& path);
void save_matrix_csv(const ComplexMatrix& m, std::ostream& os);
void save_matrix_file(const ComplexMatrix& m, const std::string& path);

// --------------------------------------------------------------------------
// Family and experiment configuration

struct FamilySpec {
    enum class Kind { InvSqrt, Sqrt, Scalar };

    Kind kind = Kind::InvSqrt;
    int p = 1;
    double rho = 1.0;          // sqrt family only
    // Scalar families: a named shape plus the claimed envelope.
    std::string phi_name;      // zero | inv-sqrt | sqrt | inv | inv-sqrt+inv
    double scalar_M = 0.0;
    double scalar_rho = 0.0;
    double scalar_sigma = 0.0;
};

FamilySpec::Kind parse_family_kind(const std::string& name);
OperatorFamily build_family(const FamilySpec& spec, const ComplexMatrix& B);

// Named scalar shapes available to scalar family specs.
ScalarFunction named_phi(const std::string& name);

struct ExperimentConfig {
    FamilySpec family;
    InequalityId inequality = InequalityId::gkeq1;
    double eps = 0.1;
    double eps_prime = 0.1;
    double mu = 1.0;
    double nu = 1.0;
    std::vector<double> kappa = {1.0};
    std::vector<Rect> regions;    // raw; split around the cut at use
    double tol = 1e-9;
    std::uint64_t seed = 0;

    enum class SpectrumSource { Auto, ClosedForm, ZeroFind };
    SpectrumSource spectrum = SpectrumSource::Auto;

    void validate() const; // kappa strictly increasing, tol > 0
};

// --------------------------------------------------------------------------
// Experiments

struct ExperimentRow {
    double kappa = 0.0;
    double M = 0.0;
    double lhs = 0.0;
    double rhs_without_C = 0.0;
    double ratio = 0.0;
    std::string status = "ok"; // "failed" rows keep kappa/M, empty numerics
    std::string message;
    int zero_count = 0;
    int total_multiplicity = 0;
    double seconds = 0.0;
};

struct ExperimentReport {
    std::vector<ExperimentRow> rows; // ordered by kappa
    ExponentBundle bundle;           // exponents are kappa-independent
    GrowthEnvelope base_envelope;    // at kappa = 1
    std::string family_label;
    InequalityId inequality = InequalityId::gkeq1;
};

// Scales B by each kappa (so M scales by kappa), computes the zero set
// (closed form when available, zerofind otherwise), and evaluates the
// chosen sum. Zerofind failures are recorded per row; the run continues.
ExperimentReport run_scaling_experiment(const ExperimentConfig& config,
                                        const ComplexMatrix& B,
                                        WindingStats* stats = nullptr);

// Regions for zerofind: the user's rectangles split around the cut, or a
// padded bounding box of the closed-form spectrum when none are given.
std::vector<Box> derive_regions(const OperatorFamily& family,
                                const std::vector<Rect>& user_regions);

// Zero localization over the region list; entries merged across boxes.
ZeroSet run_zeros(const OperatorFamily& family, int p,
                  const std::vector<Rect>& regions, double tol,
                  WindingStats* stats = nullptr);

struct SumRun {
    SumReport report;
    double ratio;
    ExponentBundle bundle;
};

SumRun run_sum(const ZeroSet& zeros, const GrowthEnvelope& envelope,
               double eps, double eps_prime, double nu, double mu,
               InequalityId which);

// "kappa,M,lhs,rhs_without_C,ratio,status" CSV, doubles at 17 significant
// digits; failed rows carry empty numerics.
void emit_plot_data(const ExperimentReport& report, std::ostream& os);

// --------------------------------------------------------------------------
// Randomized determinant-bound check (CLI `detp-check`)

struct DetpCheckResult {
    int trials = 0;
    int violations_upper = 0;
    int violations_perturbation = 0;
    double max_slack = 0.0; // max of lhs - rhs over both bounds (<= 0 when clean)
    double gamma_used = 0.0;
    bool gamma_raised = false; // p >= 3 recalibration kicked in
};

DetpCheckResult run_detp_check(int p, int trials, int dim, double norm_cap,
                               std::uint64_t seed);

// Uniform complex entries in the unit square, then rescaled so that
// ||A||_p <= cap (deterministic for a given generator state).
ComplexMatrix random_matrix(std::mt19937_64& rng, int n, double scale = 1.0);

// --------------------------------------------------------------------------
// Flat key=value config files; '#' starts a comment.

std::map<std::string, std::string> load_config_file(const std::string& path);

} // namespace flab

#endif
