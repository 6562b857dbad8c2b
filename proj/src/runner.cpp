#include "sumident/combinatorics.hpp"
#include "sumident/identities.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace sumident {

namespace {

template <class T>
const T& need(const std::optional<T>& value, const char* flag, const std::string& identity) {
    if (!value) throw UsageError("identity '" + identity + "' requires --" + std::string(flag));
    return *value;
}

std::vector<double> as_doubles(const std::vector<Rational>& values) {
    std::vector<double> out;
    for (const auto& v : values) out.push_back(v.to_double());
    return out;
}

// Monte Carlo target: which sum to sample and the analytic E[S^m] to compare.
struct McTarget {
    SampleSpec spec;
    unsigned m = 0;
    double analytic = 0.0;
};

std::optional<McTarget> monte_carlo_target(const std::string& name, const IdentityArgs& args,
                                           const VerificationReport& report) {
    McTarget target;
    const double rhs = to_double(report.rhs);
    if (name == "symmetric-moment") {
        // E[S^m] = m! * sum over compositions of prod lambda^(-i).
        target.spec.family = Family::exponential;
        target.spec.first = as_doubles(*args.lambda);
        target.m = *args.m;
        target.analytic = factorial(target.m).get_d() * rhs;
    } else if (name == "gamma-mean" || name == "gamma-moment") {
        target.spec.family = Family::gamma;
        target.spec.first = as_doubles(*args.alpha);
        target.spec.second = as_doubles(*args.beta);
        target.m = name == "gamma-mean" ? 1 : *args.m;
        target.analytic = rhs;
    } else if (name == "iid-uniform-moment" || name == "stirling-link" || name == "truncated-power-integral") {
        // All three are E[(U_1 + ... + U_n)^m] for i.i.d. U[0,1].
        target.spec.family = Family::uniform;
        target.spec.first.assign(*args.n, 1.0);
        target.m = *args.m;
        target.analytic = name == "iid-uniform-moment" ? rhs : to_double(report.lhs);
    } else if (name == "general-uniform") {
        target.spec.family = Family::uniform;
        target.spec.first = as_doubles(*args.a);
        target.m = *args.m;
        target.analytic = rhs;
    } else {
        return std::nullopt;
    }
    return target;
}

void attach_monte_carlo(VerificationReport& report, const std::string& name, const IdentityArgs& args,
                        const MonteCarloOptions& mc) {
    if (mc.samples < kMinVerdictSamples) {
        throw UsageError("Monte Carlo checks need at least " + std::to_string(kMinVerdictSamples) + " samples");
    }
    auto target = monte_carlo_target(name, args, report);
    if (!target) {
        report.diagnostic = "no Monte Carlo target for this identity";
        return;
    }
    if (target->m > 12) {
        report.diagnostic = "Monte Carlo skipped: moment order above 12";
        return;
    }
    target->spec.sample_count = mc.samples;
    target->spec.seed = mc.seed;
    MonteCarloSummary summary;
    summary.analytic = target->analytic;
    summary.estimate = estimate_moment(target->spec, target->m);
    summary.z = mc.z;
    summary.agrees = mc_check(target->analytic, summary.estimate, mc.z);
    report.monte_carlo = summary;
    report.seed = mc.seed;
    if (!summary.agrees && report.ok()) {
        report.verdict = Verdict::fail;
        report.diagnostic = "Monte Carlo estimate outside the z threshold";
    }
}

using Verifier = std::function<VerificationReport(const std::string&, const IdentityArgs&, const VerifyOptions&)>;

const std::map<std::string, Verifier>& registry() {
    static const std::map<std::string, Verifier> table = {
        {"good", [](const std::string& id, const IdentityArgs& a, const VerifyOptions& o) {
             return verify_good(need(a.xs, "xs", id), o);
         }},
        {"symmetric-moment", [](const std::string& id, const IdentityArgs& a, const VerifyOptions& o) {
             return verify_symmetric_moment(RateParams(need(a.lambda, "lambda", id)), need(a.m, "m", id), o);
         }},
        {"homogeneous", [](const std::string& id, const IdentityArgs& a, const VerifyOptions& o) {
             return verify_homogeneous(need(a.xs, "xs", id), need(a.m, "m", id), o);
         }},
        {"vandermonde-zero", [](const std::string& id, const IdentityArgs& a, const VerifyOptions&) {
             return verify_vandermonde_zero(RateParams(need(a.lambda, "lambda", id)));
         }},
        {"chf-partial-fraction", [](const std::string& id, const IdentityArgs& a, const VerifyOptions& o) {
             return verify_chf_partial_fraction(RateParams(need(a.lambda, "lambda", id)), need(a.t, "t", id), o);
         }},
        {"gamma-mean", [](const std::string& id, const IdentityArgs& a, const VerifyOptions& o) {
             return verify_gamma_mean(GammaParams{need(a.alpha, "alpha", id), need(a.beta, "beta", id)}, o);
         }},
        {"gamma-moment", [](const std::string& id, const IdentityArgs& a, const VerifyOptions& o) {
             return verify_gamma_moment(GammaParams{need(a.alpha, "alpha", id), need(a.beta, "beta", id)},
                                        need(a.m, "m", id), o);
         }},
        {"iid-uniform-moment", [](const std::string& id, const IdentityArgs& a, const VerifyOptions& o) {
             return verify_iid_uniform_moment(need(a.n, "n", id), need(a.m, "m", id), o);
         }},
        {"stirling-link", [](const std::string& id, const IdentityArgs& a, const VerifyOptions&) {
             return verify_stirling_link(need(a.m, "m", id), need(a.n, "n", id));
         }},
        {"truncated-power-integral", [](const std::string& id, const IdentityArgs& a, const VerifyOptions&) {
             return verify_truncated_power_integral(need(a.m, "m", id), need(a.n, "n", id));
         }},
        {"stirling", [](const std::string& id, const IdentityArgs& a, const VerifyOptions&) {
             return verify_stirling_explicit(need(a.m, "m", id), need(a.n, "n", id));
         }},
        {"general-uniform", [](const std::string& id, const IdentityArgs& a, const VerifyOptions& o) {
             return verify_general_uniform(UniformParams(need(a.a, "a", id)), need(a.m, "m", id), o);
         }},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& identity_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

bool is_identity(const std::string& name) { return registry().contains(name); }

VerificationReport run_identity(const std::string& name, const IdentityArgs& args, const RunOptions& opts) {
    const auto it = registry().find(name);
    if (it == registry().end()) throw UsageError("unknown identity '" + name + "'");
    VerificationReport report;
    try {
        report = it->second(name, args, opts.verify);
    } catch (const ParameterError& e) {
        throw UsageError(e.what());
    }
    if (opts.perturb_rhs) {
        if (auto* exact = std::get_if<Rational>(&report.rhs)) {
            *exact += *opts.perturb_rhs;
        } else {
            report.rhs = std::get<double>(report.rhs) + opts.perturb_rhs->to_double();
        }
        judge(report);
    }
    if (opts.monte_carlo.enabled) attach_monte_carlo(report, name, args, opts.monte_carlo);
    return report;
}

}  // namespace sumident
