// flab: eigenvalues of finite type of analytic operator families on the
// cut plane, via regularized determinants and the argument principle.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "flab/complex_format.hpp"
#include "flab/harness.hpp"

using namespace flab;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Flat key=value config files; command-line flags take precedence. Repeated
// keys (regions) are stored as key, key#2, key#3, ...

struct ConfigLayer {
    std::map<std::string, std::string> kv;

    // applies `key` to `target` unless the flag appeared on the command line
    template <typename T>
    void fill(const CLI::App& cmd, const std::string& flag,
              const std::string& key, T& target) const {
        auto it = kv.find(key);
        if (it == kv.end()) return;
        const CLI::Option* opt = cmd.get_option_no_throw("--" + flag);
        if (opt != nullptr && opt->count() > 0) return;
        if constexpr (std::is_same_v<T, std::string>) {
            target = it->second;
        } else {
            std::istringstream ss(it->second);
            if (!(ss >> target) || !ss.eof())
                throw ConfigError("config key '" + key + "': cannot parse '" +
                                  it->second + "'");
        }
    }

    std::vector<std::string> values_of(const std::string& key) const {
        std::vector<std::string> out;
        auto it = kv.find(key);
        if (it != kv.end()) out.push_back(it->second);
        for (int k = 2;; ++k) {
            auto more = kv.find(key + "#" + std::to_string(k));
            if (more == kv.end()) break;
            out.push_back(more->second);
        }
        return out;
    }
};

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(parse_real(cell));
    if (out.empty()) throw ConfigError("empty numeric list");
    return out;
}

Rect parse_region(const std::string& text) {
    std::vector<double> v = parse_double_list(text);
    if (v.size() != 4)
        throw ConfigError("region '" + text + "': expected x0,x1,y0,y1");
    return Rect{v[0], v[1], v[2], v[3]};
}

json bundle_json(const ExponentBundle& b) {
    return json{
        {"regime", regime_name(b.regime)},
        {"a", b.a},
        {"b", b.b},
        {"r", b.r},
        {"brackets",
         json{{"minus2r_minus_a", -2.0 * b.r - b.a},
              {"bracket_minus2r_minus_a", b.bracket_m2ra},
              {"bracket_s", b.bracket_s}}},
        {"s", b.s},
        {"s1", b.s1},
        {"s2", b.s2},
        {"q", b.q},
        {"l", b.l},
        {"eps", b.eps},
        {"eps_prime", b.eps_prime},
        {"nu_factor", b.tail_cutoff_factor},
        {"mu", b.mu_radius_factor},
    };
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file: " + out_path);
    os << text;
}

// Family options shared by zeros / scaling / verify-envelope.
struct FamilyCli {
    std::string family = "inv-sqrt";
    std::string matrix_path;
    std::string phi = "inv-sqrt+inv";
    int p = 1;
    double rho = 1.0;
    double M = 1.0;
    double sigma = -0.5;

    void add_options(CLI::App* cmd) {
        cmd->add_option("--family", family, "Family kind: inv-sqrt|sqrt|scalar");
        cmd->add_option("--matrix", matrix_path,
                        "Matrix CSV path (header \"# n=<dim>\")");
        cmd->add_option("--p", p, "Schatten order p (integer >= 1)");
        cmd->add_option("--rho", rho, "Envelope rho (sqrt and scalar families)");
        cmd->add_option("--phi", phi,
                        "Scalar shape: zero|inv-sqrt|sqrt|inv|inv-sqrt+inv");
        cmd->add_option("--M", M, "Claimed envelope M (scalar family)");
        cmd->add_option("--sigma", sigma, "Claimed envelope sigma (scalar family)");
    }

    void fill_from(const CLI::App& cmd, const ConfigLayer& cfg) {
        cfg.fill(cmd, "family", "family", family);
        cfg.fill(cmd, "matrix", "matrix", matrix_path);
        cfg.fill(cmd, "p", "p", p);
        cfg.fill(cmd, "rho", "rho", rho);
        cfg.fill(cmd, "phi", "phi", phi);
        cfg.fill(cmd, "M", "M", M);
        cfg.fill(cmd, "sigma", "sigma", sigma);
    }

    FamilySpec spec() const {
        FamilySpec s;
        s.kind = parse_family_kind(family);
        s.p = p;
        s.rho = rho;
        s.phi_name = phi;
        s.scalar_M = M;
        s.scalar_rho = rho;
        s.scalar_sigma = sigma;
        return s;
    }

    ComplexMatrix load_matrix() const {
        if (matrix_path.empty())
            throw ConfigError("--matrix is required for this command");
        return load_matrix_file(matrix_path);
    }
};

struct CommonNumerics {
    double eps = 0.1;
    double eps_prime = 0.1;
    double mu = 1.0;
    double nu = 1.0;

    void add_options(CLI::App* cmd) {
        cmd->add_option("--eps", eps, "Weight exponent eps (> 0)");
        cmd->add_option("--eps-prime", eps_prime, "Tail exponent eps' (> 0)");
        cmd->add_option("--mu", mu, "Small-disc cutoff factor mu in (0, 1]");
        cmd->add_option("--nu-factor", nu, "Tail cutoff factor nu >= 1");
    }

    void fill_from(const CLI::App& cmd, const ConfigLayer& cfg) {
        cfg.fill(cmd, "eps", "eps", eps);
        cfg.fill(cmd, "eps-prime", "eps-prime", eps_prime);
        cfg.fill(cmd, "mu", "mu", mu);
        cfg.fill(cmd, "nu-factor", "nu-factor", nu);
    }
};

std::vector<Rect> gather_regions(const std::vector<std::string>& cli_regions,
                                 const ConfigLayer& cfg) {
    std::vector<std::string> texts = cli_regions;
    if (texts.empty()) texts = cfg.values_of("region");
    std::vector<Rect> out;
    out.reserve(texts.size());
    for (const std::string& t : texts) out.push_back(parse_region(t));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"flab: spectral sums of analytic operator families on the cut plane"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path,
                   "Flat key=value config file; flags override file values");
    // let --config (a parent option) appear after the subcommand name
    app.fallthrough();

    // ---- exponents ----
    auto* cmd_exp = app.add_subcommand(
        "exponents", "Print the exponent bundle for (p, rho, sigma, eps)");
    int exp_p = 1;
    double exp_rho = 1.0, exp_sigma = -0.5, exp_M = 1.0;
    CommonNumerics exp_num;
    std::string exp_out;
    cmd_exp->add_option("--p", exp_p, "Schatten order p");
    cmd_exp->add_option("--rho", exp_rho, "Envelope rho");
    cmd_exp->add_option("--sigma", exp_sigma, "Envelope sigma");
    cmd_exp->add_option("--M", exp_M, "Envelope M (does not affect exponents)");
    exp_num.add_options(cmd_exp);
    cmd_exp->add_option("--out", exp_out, "Write JSON here instead of stdout");

    // ---- zeros ----
    auto* cmd_zeros = app.add_subcommand(
        "zeros", "Localize eigenvalues of finite type in given regions");
    FamilyCli zeros_family;
    zeros_family.add_options(cmd_zeros);
    std::vector<std::string> zeros_regions;
    double zeros_tol = 1e-9;
    std::string zeros_out;
    cmd_zeros->add_option("--region", zeros_regions,
                          "Search rectangle x0,x1,y0,y1 (repeatable; split "
                          "around the cut automatically)");
    cmd_zeros->add_option("--tol", zeros_tol, "Localization tolerance");
    cmd_zeros->add_option("--out", zeros_out, "Zeros CSV path (default stdout)");

    // ---- sum ----
    auto* cmd_sum = app.add_subcommand(
        "sum", "Evaluate one weighted zero-sum inequality over a zeros CSV");
    std::string sum_csv;
    std::string sum_inequality = "gkeq1";
    int sum_p = 1;
    double sum_rho = 1.0, sum_sigma = -0.5, sum_M = 1.0;
    CommonNumerics sum_num;
    std::string sum_out;
    cmd_sum->add_option("zeros_csv", sum_csv, "Zeros CSV (re,im,multiplicity)")
        ->required();
    cmd_sum->add_option("--inequality", sum_inequality,
                        "freq1|freq2|gkeq1|gkeq2|gkeq3|gkeq4");
    cmd_sum->add_option("--p", sum_p, "Schatten order p");
    cmd_sum->add_option("--rho", sum_rho, "Envelope rho");
    cmd_sum->add_option("--sigma", sum_sigma, "Envelope sigma");
    cmd_sum->add_option("--M", sum_M, "Envelope M");
    sum_num.add_options(cmd_sum);
    cmd_sum->add_option("--out", sum_out, "Write JSON here instead of stdout");

    // ---- scaling ----
    auto* cmd_scal = app.add_subcommand(
        "scaling", "Sweep kappa, scaling B by kappa, and report sum ratios");
    FamilyCli scal_family;
    scal_family.add_options(cmd_scal);
    std::string scal_inequality = "gkeq1";
    std::string scal_kappa = "1,2,4,8";
    std::vector<std::string> scal_regions;
    double scal_tol = 1e-9;
    std::uint64_t scal_seed = 0;
    std::string scal_spectrum = "auto";
    std::string scal_out;
    CommonNumerics scal_num;
    cmd_scal->add_option("--inequality", scal_inequality,
                         "freq1|freq2|gkeq1|gkeq2|gkeq3|gkeq4");
    cmd_scal->add_option("--kappa", scal_kappa, "Comma list, strictly increasing");
    cmd_scal->add_option("--region", scal_regions,
                         "Search rectangle x0,x1,y0,y1 (repeatable)");
    cmd_scal->add_option("--tol", scal_tol, "Zerofind tolerance");
    cmd_scal->add_option("--seed", scal_seed, "Seed echoed into the report");
    cmd_scal->add_option("--spectrum", scal_spectrum, "auto|closed-form|zerofind");
    scal_num.add_options(cmd_scal);
    cmd_scal->add_option("--out", scal_out, "Plot CSV path (default stdout)");

    // ---- verify-envelope ----
    auto* cmd_env = app.add_subcommand(
        "verify-envelope", "Sample the growth-envelope certificate on a grid");
    FamilyCli env_family;
    env_family.add_options(cmd_env);
    double env_mod_min = 1e-3, env_mod_max = 1e3;
    int env_n_mod = 64, env_n_arg = 63;
    std::string env_out;
    cmd_env->add_option("--mod-min", env_mod_min, "Smallest sampled |lambda|");
    cmd_env->add_option("--mod-max", env_mod_max, "Largest sampled |lambda|");
    cmd_env->add_option("--n-mod", env_n_mod, "Number of log-spaced moduli");
    cmd_env->add_option("--n-arg", env_n_arg, "Number of angles in (0, 2pi)");
    cmd_env->add_option("--out", env_out, "Write JSON here instead of stdout");

    // ---- detp-check ----
    auto* cmd_detp = app.add_subcommand(
        "detp-check", "Randomized determinant bound suite");
    int detp_p = 2, detp_trials = 500, detp_dim = 6;
    double detp_cap = 2.0;
    std::uint64_t detp_seed = 0;
    std::string detp_out;
    cmd_detp->add_option("--p", detp_p, "Schatten order p");
    cmd_detp->add_option("--trials", detp_trials, "Number of random matrices");
    cmd_detp->add_option("--dim", detp_dim, "Matrix dimension");
    cmd_detp->add_option("--norm-cap", detp_cap, "Upper bound on ||A||_p");
    cmd_detp->add_option("--seed", detp_seed, "RNG seed");
    cmd_detp->add_option("--out", detp_out, "Write JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ConfigLayer cfg;
        if (!config_path.empty()) cfg.kv = load_config_file(config_path);

        if (*cmd_exp) {
            cfg.fill(*cmd_exp, "p", "p", exp_p);
            cfg.fill(*cmd_exp, "rho", "rho", exp_rho);
            cfg.fill(*cmd_exp, "sigma", "sigma", exp_sigma);
            cfg.fill(*cmd_exp, "M", "M", exp_M);
            exp_num.fill_from(*cmd_exp, cfg);
            GrowthEnvelope env{exp_M, exp_rho, exp_sigma, exp_p};
            ExponentBundle bundle = derive_bundle(env, exp_num.eps,
                                                  exp_num.eps_prime, exp_num.nu,
                                                  exp_num.mu);
            json out = bundle_json(bundle);
            out["p"] = exp_p;
            out["rho"] = exp_rho;
            out["sigma"] = exp_sigma;
            write_text(exp_out, out.dump(2) + "\n");
        } else if (*cmd_zeros) {
            zeros_family.fill_from(*cmd_zeros, cfg);
            cfg.fill(*cmd_zeros, "tol", "tol", zeros_tol);
            cfg.fill(*cmd_zeros, "out", "out", zeros_out);
            std::vector<Rect> regions = gather_regions(zeros_regions, cfg);
            ComplexMatrix B = zeros_family.load_matrix();
            OperatorFamily fam = build_family(zeros_family.spec(), B);
            ZeroSet zeros = run_zeros(fam, zeros_family.p, regions, zeros_tol);
            std::ostringstream csv;
            zeros.to_csv(csv);
            write_text(zeros_out, csv.str());
            std::ostream& info = zeros_out.empty() ? std::cerr : std::cout;
            info << "zeros: " << zeros.size()
                 << ", total multiplicity: " << zeros.total_multiplicity() << "\n";
        } else if (*cmd_sum) {
            cfg.fill(*cmd_sum, "inequality", "inequality", sum_inequality);
            cfg.fill(*cmd_sum, "p", "p", sum_p);
            cfg.fill(*cmd_sum, "rho", "rho", sum_rho);
            cfg.fill(*cmd_sum, "sigma", "sigma", sum_sigma);
            cfg.fill(*cmd_sum, "M", "M", sum_M);
            sum_num.fill_from(*cmd_sum, cfg);
            std::ifstream is(sum_csv);
            if (!is) throw ConfigError("cannot open zeros CSV: " + sum_csv);
            ZeroSet zeros = ZeroSet::from_csv(is);
            GrowthEnvelope env{sum_M, sum_rho, sum_sigma, sum_p};
            SumRun run = run_sum(zeros, env, sum_num.eps, sum_num.eps_prime,
                                 sum_num.nu, sum_num.mu,
                                 parse_inequality(sum_inequality));
            json out{{"inequality", sum_inequality},
                     {"lhs", run.report.lhs},
                     {"rhs_power_of_M", run.report.rhs_power_of_M},
                     {"rhs_without_C", run.report.rhs_without_C},
                     {"ratio", run.ratio},
                     {"bundle", bundle_json(run.bundle)}};
            write_text(sum_out, out.dump(2) + "\n");
        } else if (*cmd_scal) {
            scal_family.fill_from(*cmd_scal, cfg);
            cfg.fill(*cmd_scal, "inequality", "inequality", scal_inequality);
            cfg.fill(*cmd_scal, "kappa", "kappa", scal_kappa);
            cfg.fill(*cmd_scal, "tol", "tol", scal_tol);
            cfg.fill(*cmd_scal, "seed", "seed", scal_seed);
            cfg.fill(*cmd_scal, "spectrum", "spectrum", scal_spectrum);
            cfg.fill(*cmd_scal, "out", "out", scal_out);
            scal_num.fill_from(*cmd_scal, cfg);

            ExperimentConfig config;
            config.family = scal_family.spec();
            config.inequality = parse_inequality(scal_inequality);
            config.eps = scal_num.eps;
            config.eps_prime = scal_num.eps_prime;
            config.mu = scal_num.mu;
            config.nu = scal_num.nu;
            config.kappa = parse_double_list(scal_kappa);
            config.regions = gather_regions(scal_regions, cfg);
            config.tol = scal_tol;
            config.seed = scal_seed;
            if (scal_spectrum == "auto")
                config.spectrum = ExperimentConfig::SpectrumSource::Auto;
            else if (scal_spectrum == "closed-form")
                config.spectrum = ExperimentConfig::SpectrumSource::ClosedForm;
            else if (scal_spectrum == "zerofind")
                config.spectrum = ExperimentConfig::SpectrumSource::ZeroFind;
            else
                throw ConfigError("unknown spectrum source '" + scal_spectrum + "'");

            ComplexMatrix B = scal_family.load_matrix();
            ExperimentReport report = run_scaling_experiment(config, B);

            std::ostringstream csv;
            emit_plot_data(report, csv);
            json rows = json::array();
            bool any_failed = false;
            for (const auto& row : report.rows) {
                json jr{{"kappa", row.kappa},   {"M", row.M},
                        {"status", row.status}, {"zeros", row.zero_count},
                        {"total_multiplicity", row.total_multiplicity},
                        {"seconds", row.seconds}};
                if (row.status == "ok") {
                    jr["lhs"] = row.lhs;
                    jr["rhs_without_C"] = row.rhs_without_C;
                    jr["ratio"] = row.ratio;
                } else {
                    jr["message"] = row.message;
                    any_failed = true;
                }
                rows.push_back(std::move(jr));
            }
            json out{{"family", report.family_label},
                     {"inequality", inequality_name(report.inequality)},
                     {"seed", scal_seed},
                     {"bundle", bundle_json(report.bundle)},
                     {"rows", std::move(rows)}};
            if (!scal_out.empty()) {
                write_text(scal_out, csv.str());
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << csv.str();
                std::cerr << out.dump(2) << "\n";
            }
            if (any_failed) return 3;
        } else if (*cmd_env) {
            env_family.fill_from(*cmd_env, cfg);
            cfg.fill(*cmd_env, "mod-min", "mod-min", env_mod_min);
            cfg.fill(*cmd_env, "mod-max", "mod-max", env_mod_max);
            cfg.fill(*cmd_env, "n-mod", "n-mod", env_n_mod);
            cfg.fill(*cmd_env, "n-arg", "n-arg", env_n_arg);
            cfg.fill(*cmd_env, "out", "out", env_out);
            ComplexMatrix B = env_family.load_matrix();
            OperatorFamily fam = build_family(env_family.spec(), B);
            EnvelopeGrid grid;
            grid.mod_min = env_mod_min;
            grid.mod_max = env_mod_max;
            grid.n_mod = env_n_mod;
            grid.n_arg = env_n_arg;
            EnvelopeReport rep = verify_envelope(fam, grid);
            json out{{"family", fam.label},
                     {"M", fam.envelope.M},
                     {"rho", fam.envelope.rho},
                     {"sigma", fam.envelope.sigma},
                     {"p", fam.envelope.p},
                     {"max_ratio", rep.max_ratio},
                     {"worst_point", format_complex(rep.worst_point)},
                     {"samples", rep.samples},
                     {"pass", rep.pass}};
            write_text(env_out, out.dump(2) + "\n");
            if (!rep.pass) return 3;
        } else if (*cmd_detp) {
            cfg.fill(*cmd_detp, "p", "p", detp_p);
            cfg.fill(*cmd_detp, "trials", "trials", detp_trials);
            cfg.fill(*cmd_detp, "dim", "dim", detp_dim);
            cfg.fill(*cmd_detp, "norm-cap", "norm-cap", detp_cap);
            cfg.fill(*cmd_detp, "seed", "seed", detp_seed);
            cfg.fill(*cmd_detp, "out", "out", detp_out);
            DetpCheckResult res =
                run_detp_check(detp_p, detp_trials, detp_dim, detp_cap, detp_seed);
            json out{{"trials", res.trials},
                     {"violations_upper", res.violations_upper},
                     {"violations_perturbation", res.violations_perturbation},
                     {"max_slack", res.max_slack},
                     {"gamma_used", res.gamma_used},
                     {"gamma_raised", res.gamma_raised}};
            write_text(detp_out, out.dump(2) + "\n");
            if (res.gamma_raised)
                std::cerr << "warning: gamma_p raised to " << res.gamma_used
                          << " after bound violations\n";
            if (res.violations_upper > 0 || res.violations_perturbation > 0)
                return 3;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
