#include "flab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flab/cutplane.hpp"

namespace flab {

namespace {

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

// Cutoff comparisons carry a small relative slack so that a zero recovered
// numerically on the cutoff circle is not dropped by rounding.
constexpr double kCutoffSlack = 1e-6;

} // namespace

double bracket(const BracketArgs& args) {
    if (args.c < 0.0) throw ConfigError("bracket requires c >= 0");
    if (!(args.eps > 0.0)) throw ConfigError("bracket requires eps > 0");
    double up = positive_part(args.u);
    double um = positive_part(-args.u);
    return positive_part(um - 1.0 + args.eps) - std::min(args.c, up);
}

TheoremBExponents theoremB_exponents(double a, double b, double r, double eps) {
    if (a < 0.0 || b < 0.0) throw ConfigError("growth exponents require a, b >= 0");
    if (!(eps > 0.0)) throw ConfigError("eps must be positive");
    double s = 3.0 * a - 2.0 * b + 2.0 * r;
    double m2ra = bracket({-2.0 * r - a, a, eps});
    double bs = bracket({s, a, eps});
    TheoremBExponents out;
    out.s = s;
    out.s1 = (m2ra - a - 1.0 - eps) / 2.0;
    out.s2 = a + 1.0 + eps + (m2ra + bs) / 2.0;
    return out;
}

void GrowthEnvelope::validate() const {
    if (!(M > 0.0)) throw ConfigError("envelope requires M > 0");
    if (rho < 0.0) throw ConfigError("envelope requires rho >= 0");
    if (p < 1) throw ConfigError("envelope requires integer p >= 1");
}

const char* regime_name(Regime r) noexcept {
    switch (r) {
        case Regime::Thm1Range1: return "THM1_RANGE1";
        case Regime::Thm2Case1: return "THM2_CASE1";
        case Regime::Thm2Case2: return "THM2_CASE2";
        case Regime::ThmAOther: return "THMA_OTHER";
    }
    return "?";
}

Regime regime_classify(const GrowthEnvelope& envelope) {
    envelope.validate();
    double rs = envelope.rho_plus_sigma();
    if (rs == 0.0)
        throw ConfigError("rho + sigma = 0 is outside every supported regime");
    if (rs > 0.0)
        return rs <= envelope.rho / 2.0 ? Regime::Thm1Range1 : Regime::ThmAOther;
    return rs >= -envelope.rho / 2.0 ? Regime::Thm2Case1 : Regime::Thm2Case2;
}

ExponentBundle derive_bundle(const GrowthEnvelope& envelope, double eps,
                             double eps_prime, double tail_cutoff_factor,
                             double mu_radius_factor) {
    if (!(eps > 0.0)) throw ConfigError("eps must be positive");
    if (!(eps_prime > 0.0)) throw ConfigError("eps' must be positive");
    if (!(tail_cutoff_factor >= 1.0))
        throw ConfigError("tail cutoff factor must be >= 1");
    if (!(mu_radius_factor > 0.0 && mu_radius_factor <= 1.0))
        throw ConfigError("mu radius factor must lie in (0, 1]");

    Regime regime = regime_classify(envelope);
    double p = static_cast<double>(envelope.p);
    double prho = p * envelope.rho;
    double psigma = p * envelope.sigma;

    ExponentBundle bundle;
    bundle.regime = regime;
    if (regime == Regime::Thm2Case1 || regime == Regime::Thm2Case2) {
        bundle.a = prho;
        bundle.r = -prho;
        bundle.b = -p * envelope.rho_plus_sigma();
    } else {
        bundle.a = prho;
        bundle.r = psigma;
        bundle.b = p * envelope.rho_plus_sigma();
    }
    TheoremBExponents tb = theoremB_exponents(bundle.a, bundle.b, bundle.r, eps);
    bundle.bracket_m2ra = bracket({-2.0 * bundle.r - bundle.a, bundle.a, eps});
    bundle.bracket_s = bracket({tb.s, bundle.a, eps});
    bundle.s = tb.s;
    bundle.s1 = tb.s1;
    bundle.s2 = tb.s2;
    bundle.q = positive_part(prho + 2.0 * psigma - 1.0 + eps);
    bundle.l = positive_part(-3.0 * prho - 2.0 * psigma - 1.0 + eps);
    bundle.eps = eps;
    bundle.eps_prime = eps_prime;
    bundle.tail_cutoff_factor = tail_cutoff_factor;
    bundle.mu_radius_factor = mu_radius_factor;
    return bundle;
}

double blaschke_sum_B(const ZeroSet& zeros, double a, double eps, double s1,
                      double s2) {
    double sum = 0.0;
    for (const Zero& z : zeros.entries()) {
        double mod = std::abs(z.location);
        double d = dist_to_cut(z.location);
        sum += z.multiplicity * std::pow(d, a + 1.0 + eps) * std::pow(mod, s1) /
               std::pow(1.0 + mod, s2);
    }
    return sum;
}

const char* inequality_name(InequalityId id) noexcept {
    switch (id) {
        case InequalityId::freq1: return "freq1";
        case InequalityId::freq2: return "freq2";
        case InequalityId::gkeq1: return "gkeq1";
        case InequalityId::gkeq2: return "gkeq2";
        case InequalityId::gkeq3: return "gkeq3";
        case InequalityId::gkeq4: return "gkeq4";
    }
    return "?";
}

InequalityId parse_inequality(const std::string& name) {
    if (name == "freq1") return InequalityId::freq1;
    if (name == "freq2") return InequalityId::freq2;
    if (name == "gkeq1") return InequalityId::gkeq1;
    if (name == "gkeq2") return InequalityId::gkeq2;
    if (name == "gkeq3") return InequalityId::gkeq3;
    if (name == "gkeq4") return InequalityId::gkeq4;
    throw ConfigError("unknown inequality '" + name +
                      "' (expected freq1|freq2|gkeq1|gkeq2|gkeq3|gkeq4)");
}

namespace {

void require_regime(InequalityId which, Regime regime) {
    auto fail = [&](const char* needs) {
        throw ConfigError(std::string(inequality_name(which)) + " requires " +
                          needs + "; envelope is in regime " +
                          regime_name(regime));
    };
    switch (which) {
        case InequalityId::freq1:
        case InequalityId::freq2:
            if (regime != Regime::Thm1Range1 && regime != Regime::ThmAOther)
                fail("rho + sigma > 0 (Theorem A)");
            break;
        case InequalityId::gkeq1:
            if (regime != Regime::Thm1Range1)
                fail("0 < rho + sigma <= rho/2 (Theorem 1)");
            break;
        case InequalityId::gkeq2:
            if (regime != Regime::Thm2Case1)
                fail("-rho/2 <= rho + sigma < 0 (Theorem 2, first case)");
            break;
        case InequalityId::gkeq4:
            if (regime != Regime::Thm2Case2)
                fail("rho + sigma < -rho/2 (Theorem 2, second case)");
            break;
        case InequalityId::gkeq3:
            if (regime != Regime::Thm2Case1 && regime != Regime::Thm2Case2)
                fail("rho + sigma < 0 (Theorem 2)");
            break;
    }
}

} // namespace

SumReport sum_inequality(const ZeroSet& zeros, const ExponentBundle& bundle,
                         const GrowthEnvelope& envelope, InequalityId which) {
    envelope.validate();
    require_regime(which, bundle.regime);
    if (which == InequalityId::gkeq1 && !(bundle.eps < 1.0))
        throw ConfigError("gkeq1 is stated for 0 < eps < 1");

    double p = static_cast<double>(envelope.p);
    double prho = p * envelope.rho;
    double psigma = p * envelope.sigma;
    double rs = envelope.rho_plus_sigma();
    double eps = bundle.eps;
    double epsp = bundle.eps_prime;
    double nu = bundle.tail_cutoff_factor;
    double mu = bundle.mu_radius_factor;

    double dist_exp = prho + 1.0 + eps;
    double mod_exp = 0.0;
    double cutoff = std::pow(envelope.M, 1.0 / rs);
    bool keep_small = true; // sum over |lambda| <= cutoff vs >= cutoff

    SumReport rep{};
    switch (which) {
        case InequalityId::freq2:
            mod_exp = (bundle.q - prho - 1.0 - eps) / 2.0;
            rep.rhs_power_of_M = (bundle.q + prho + 1.0 + eps) / (2.0 * rs);
            rep.rhs_without_C = std::pow(envelope.M, rep.rhs_power_of_M);
            break;
        case InequalityId::freq1:
            mod_exp = rs - prho - 1.0 - eps - epsp;
            cutoff *= nu;
            keep_small = false;
            rep.rhs_power_of_M = (rs - epsp) / rs;
            rep.rhs_without_C =
                std::pow(nu, -epsp) * std::pow(envelope.M, rep.rhs_power_of_M);
            break;
        case InequalityId::gkeq1:
            mod_exp = psigma - (1.0 + eps) / 2.0;
            rep.rhs_power_of_M = p + (1.0 + eps) / (2.0 * rs);
            rep.rhs_without_C = std::pow(envelope.M, rep.rhs_power_of_M);
            break;
        case InequalityId::gkeq2:
            mod_exp = psigma - 1.5 * (1.0 + eps);
            keep_small = false;
            rep.rhs_power_of_M = p - (1.0 + eps) / (2.0 * rs);
            rep.rhs_without_C = std::pow(envelope.M, rep.rhs_power_of_M);
            break;
        case InequalityId::gkeq3:
            mod_exp = rs - prho - 1.0 - eps + epsp;
            cutoff *= mu;
            rep.rhs_power_of_M = (rs + epsp) / rs;
            rep.rhs_without_C =
                std::pow(mu, epsp) * std::pow(envelope.M, rep.rhs_power_of_M);
            break;
        case InequalityId::gkeq4:
            mod_exp = -(bundle.l + 3.0 * (prho + 1.0 + eps)) / 2.0;
            keep_small = false;
            rep.rhs_power_of_M = -(bundle.l + prho + 1.0 + eps) / (2.0 * rs);
            rep.rhs_without_C = std::pow(envelope.M, rep.rhs_power_of_M);
            break;
    }

    double lhs = 0.0;
    for (const Zero& z : zeros.entries()) {
        double mod = std::abs(z.location);
        bool in_range = keep_small ? mod <= cutoff * (1.0 + kCutoffSlack)
                                   : mod >= cutoff * (1.0 - kCutoffSlack);
        if (!in_range) continue;
        double d = dist_to_cut(z.location);
        lhs += z.multiplicity * std::pow(d, dist_exp) * std::pow(mod, mod_exp);
    }
    rep.lhs = lhs;
    return rep;
}

WeightComparison weight_comparison_exponents(int p, double rho, double sigma,
                                             double eps) {
    GrowthEnvelope env{1.0, rho, sigma, p};
    Regime regime = regime_classify(env);
    if (regime != Regime::Thm1Range1)
        throw ConfigError("weight comparison applies in regime THM1_RANGE1 "
                          "only; envelope is in regime " +
                          std::string(regime_name(regime)));
    double pd = static_cast<double>(p);
    double q = std::max(pd * rho + 2.0 * pd * sigma - 1.0 + eps, 0.0);
    WeightComparison out;
    out.lhs_exp = pd * sigma - (1.0 + eps) / 2.0;
    out.rhs_exp = (q - pd * rho - 1.0 - eps) / 2.0;
    out.stronger = out.lhs_exp <= out.rhs_exp;
    return out;
}

} // namespace flab
