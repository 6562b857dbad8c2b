// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails. Gamma deficit traces go to gamma_deficit_trace.csv
// in the working directory.

#include "sumident/combinatorics.hpp"
#include "sumident/identities.hpp"
#include "sumident/moments.hpp"
#include "sumident/montecarlo.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace sumident;

namespace {

// Pinned parameters.
constexpr int kExactSetsPerIdentity = 200;
constexpr long kRationalBound = 50;
constexpr double kExactBudgetSeconds = 120.0;
constexpr int kGammaSets = 50;
constexpr double kGammaTolerance = 1e-8;
constexpr std::size_t kGammaMaxOrder = 500;
constexpr unsigned kGammaMaxMoment = 4;
constexpr std::uint64_t kExactSeed = 20240601;
constexpr std::uint64_t kGammaSeed = 20240601;
constexpr std::uint64_t kUniformSeed = 20240601;
constexpr std::size_t kMcSamples = 1'000'000;
constexpr double kMcZ = 5.0;
constexpr unsigned kStirlingMaxTotal = 14;
constexpr int kUniformVectors = 20;

using Clock = std::chrono::steady_clock;

bool report(int number, const std::string& title, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << number << ": " << title << " -- " << detail << std::endl;
    return ok;
}

Rational positive_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(1, kRationalBound);
    const long p = d(rng);
    return Rational(p, d(rng));
}

Rational nonzero_rational(std::mt19937_64& rng) {
    const auto q = positive_rational(rng);
    return std::bernoulli_distribution(0.5)(rng) ? q : -q;
}

std::vector<Rational> distinct(std::mt19937_64& rng, unsigned n, const std::function<Rational()>& draw) {
    std::set<Rational> seen;
    std::vector<Rational> out;
    while (out.size() < n) {
        auto q = draw();
        if (seen.insert(q).second) out.push_back(q);
    }
    return out;
}

bool exact_equal_pass(const VerificationReport& r) {
    return r.verdict == Verdict::pass && std::holds_alternative<Rational>(r.lhs) &&
           std::get<Rational>(r.lhs) == std::get<Rational>(r.rhs);
}

// Criterion 1 also hands its rate and length sets to criterion 3.
struct SuiteOneSets {
    std::vector<std::vector<Rational>> rates;
    std::vector<std::vector<Rational>> lengths;
};

bool criterion_exact_suite(SuiteOneSets& sets) {
    std::mt19937_64 rng(kExactSeed);
    std::uniform_int_distribution<unsigned> n_dist(2, 5), m_dist(0, 8), m_pos(1, 8);
    auto rate_draw = [&] { return positive_rational(rng); };

    struct Tally {
        std::string name;
        int passed = 0;
    };
    std::vector<Tally> tallies;
    std::string first_failure;
    auto run = [&](const std::string& name, const std::function<VerificationReport()>& make) {
        Tally t{name};
        for (int i = 0; i < kExactSetsPerIdentity; ++i) {
            const auto r = make();
            if (exact_equal_pass(r)) {
                ++t.passed;
            } else if (first_failure.empty()) {
                first_failure = to_json(r).dump();
            }
        }
        tallies.push_back(t);
    };

    const auto start = Clock::now();
    run("good", [&] {
        auto xs = distinct(rng, n_dist(rng), rate_draw);
        sets.rates.push_back(xs);
        return verify_good(xs);
    });
    run("symmetric-moment", [&] {
        auto rates = distinct(rng, n_dist(rng), rate_draw);
        sets.rates.push_back(rates);
        return verify_symmetric_moment(RateParams(rates), m_dist(rng));
    });
    run("homogeneous", [&] {
        const unsigned n = n_dist(rng);
        return verify_homogeneous(distinct(rng, n, [&] { return nonzero_rational(rng); }), m_dist(rng));
    });
    run("iid-uniform-moment", [&] { return verify_iid_uniform_moment(n_dist(rng), m_dist(rng)); });
    run("stirling-link", [&] {
        const unsigned n = n_dist(rng);
        return verify_stirling_link(m_dist(rng), n);
    });
    run("truncated-power-integral", [&] {
        const unsigned n = n_dist(rng);
        return verify_truncated_power_integral(m_pos(rng), n);
    });
    run("stirling", [&] {
        const unsigned n = n_dist(rng);
        return verify_stirling_explicit(m_dist(rng), n);
    });
    run("general-uniform", [&] {
        const unsigned n = n_dist(rng);
        std::vector<Rational> a;
        for (unsigned i = 0; i < n; ++i) a.push_back(positive_rational(rng));
        sets.lengths.push_back(a);
        return verify_general_uniform(UniformParams(a), m_dist(rng));
    });
    run("chf-partial-fraction", [&] {
        auto rates = distinct(rng, n_dist(rng), rate_draw);
        sets.rates.push_back(rates);
        const Rational t = *std::min_element(rates.begin(), rates.end()) - positive_rational(rng);
        return verify_chf_partial_fraction(RateParams(rates), t);
    });
    run("vandermonde-zero", [&] {
        auto rates = distinct(rng, n_dist(rng), rate_draw);
        sets.rates.push_back(rates);
        return verify_vandermonde_zero(RateParams(rates));
    });
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();

    bool ok = seconds < kExactBudgetSeconds;
    std::ostringstream detail;
    int total = 0;
    for (const auto& t : tallies) {
        ok = ok && t.passed == kExactSetsPerIdentity;
        total += t.passed;
        if (t.passed != kExactSetsPerIdentity) detail << t.name << " " << t.passed << "/" << kExactSetsPerIdentity << "; ";
    }
    detail << total << "/" << tallies.size() * kExactSetsPerIdentity << " exact passes in " << seconds << " s (budget "
           << kExactBudgetSeconds << " s)";
    if (!first_failure.empty()) detail << "; first failure " << first_failure;
    return report(1, "exact identity suite", ok, detail.str());
}

bool criterion_gamma_suite() {
    std::mt19937_64 rng(kGammaSeed);
    std::uniform_int_distribution<int> n_dist(1, 4), shape(1, 4), pq(1, 4);
    VerifyOptions opts;
    opts.tolerance = kGammaTolerance;
    opts.max_order = kGammaMaxOrder;

    std::ofstream trace("gamma_deficit_trace.csv");
    trace << "set,alpha,beta,J,deficit\n";
    int reports = 0;
    int passed = 0;
    bool monotone = true;
    std::size_t max_order_used = 0;
    std::vector<std::string> failures;
    for (int set = 0; set < kGammaSets; ++set) {
        GammaParams p;
        const int n = n_dist(rng);
        for (int i = 0; i < n; ++i) {
            p.shapes.emplace_back(shape(rng));
            p.scales.emplace_back(pq(rng), pq(rng));
        }
        std::vector<VerificationReport> rs{verify_gamma_mean(p, opts)};
        for (unsigned m = 1; m <= kGammaMaxMoment; ++m) rs.push_back(verify_gamma_moment(p, m, opts));
        for (const auto& r : rs) {
            ++reports;
            const bool ok = r.verdict == Verdict::pass_with_truncation && r.truncation &&
                            r.truncation->order <= kGammaMaxOrder;
            passed += ok ? 1 : 0;
            if (!ok) failures.push_back(r.params.dump() + (r.identity == "gamma-mean" ? " mean" : "") +
                                        " rel_gap=" + std::to_string(r.abs_gap / std::max(1.0, std::abs(to_double(r.rhs)))));
            if (r.truncation) max_order_used = std::max(max_order_used, r.truncation->order);
        }
        // The longest series of the set carries the full trace.
        const auto& longest = *std::max_element(rs.begin(), rs.end(), [](const auto& a, const auto& b) {
            return a.truncation->deficit_trace.size() < b.truncation->deficit_trace.size();
        });
        const auto& d = longest.truncation->deficit_trace;
        for (std::size_t j = 0; j < d.size(); ++j) {
            trace << set << ",\"" << longest.params["alpha"].dump() << "\",\"" << longest.params["beta"].dump() << "\","
                  << j << ',' << d[j] << '\n';
            if (j > 0 && d[j] > d[j - 1]) monotone = false;
        }
    }
    std::ostringstream detail;
    detail << passed << "/" << reports << " reports pass-with-truncation at relative tolerance " << kGammaTolerance
           << " with J <= " << kGammaMaxOrder << " (largest J " << max_order_used << "); deficit trace "
           << (monotone ? "nonincreasing" : "NOT monotone") << " (gamma_deficit_trace.csv)";
    for (std::size_t i = 0; i < failures.size() && i < 5; ++i) detail << "; failed " << failures[i];
    return report(2, "Gamma series suite", passed == reports && monotone, detail.str());
}

bool criterion_density_mass(const SuiteOneSets& sets) {
    int rate_ok = 0;
    for (const auto& rates : sets.rates) rate_ok += hypoexp_density(RateParams(rates)).mass() == Rational(1) ? 1 : 0;

    int piecewise_total = 0;
    int piecewise_ok = 0;
    for (const auto& a : sets.lengths) {
        ++piecewise_total;
        piecewise_ok += general_uniform_density(UniformParams(a)).integral() == Rational(1) ? 1 : 0;
    }
    std::mt19937_64 rng(kUniformSeed);
    for (unsigned n = 1; n <= 8; ++n) {
        for (int k = 0; k < 5; ++k) {
            ++piecewise_total;
            piecewise_ok += iid_uniform_density(n, positive_rational(rng)).integral() == Rational(1) ? 1 : 0;
        }
    }
    int equal_total = 0;
    int equal_ok = 0;
    for (unsigned n = 2; n <= 6; ++n) {
        for (int k = 0; k < 5; ++k) {
            const auto a = positive_rational(rng);
            ++equal_total;
            equal_ok += general_uniform_density(UniformParams(std::vector<Rational>(n, a))) == iid_uniform_density(n, a);
        }
    }
    std::ostringstream detail;
    detail << "mass exact for " << rate_ok << "/" << sets.rates.size() << " rate sets; integral exactly 1 for "
           << piecewise_ok << "/" << piecewise_total << " piecewise densities; equal-length equality " << equal_ok << "/"
           << equal_total;
    const bool ok = rate_ok == static_cast<int>(sets.rates.size()) && piecewise_ok == piecewise_total &&
                    equal_ok == equal_total && !sets.rates.empty();
    return report(3, "density mass and consistency", ok, detail.str());
}

bool criterion_stirling() {
    int checked = 0;
    int ok = 0;
    for (unsigned total = 1; total <= kStirlingMaxTotal; ++total) {
        for (unsigned n = 1; n <= total; ++n) {
            ++checked;
            ok += stirling2_explicit(total - n, n) == Rational(stirling2_recurrence(total, n)) ? 1 : 0;
        }
    }
    return report(4, "Stirling oracle equivalence", ok == checked,
                  std::to_string(ok) + "/" + std::to_string(checked) + " pairs with 1 <= n <= m+n <= " +
                      std::to_string(kStirlingMaxTotal));
}

bool criterion_three_way_uniform() {
    std::mt19937_64 rng(kUniformSeed + 1);
    std::uniform_int_distribution<unsigned> n_dist(2, 4);
    int checked = 0;
    int ok = 0;
    for (int v = 0; v < kUniformVectors; ++v) {
        std::vector<Rational> a;
        const unsigned n = n_dist(rng);
        for (unsigned i = 0; i < n; ++i) a.push_back(positive_rational(rng));
        const UniformParams params(a);
        const auto density = general_uniform_density(params);
        for (unsigned m = 1; m <= 6; ++m) {
            ++checked;
            const auto formula = general_uniform_moment_formula(params, m);
            ok += formula == moment_by_expansion(params, m) && formula == piecewise_moment(density, m) ? 1 : 0;
        }
    }
    return report(5, "three-way uniform agreement", ok == checked,
                  std::to_string(ok) + "/" + std::to_string(checked) +
                      " (vector, m) pairs identical across closed form, expansion and density integration");
}

std::string estimate_text(const MomentEstimate& e) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%u %.17g %.17g %zu", e.m, e.mean_of_powers, e.std_error, e.sample_count);
    return buf;
}

bool criterion_monte_carlo() {
    struct Case {
        SampleSpec spec;
        std::function<Rational(unsigned)> analytic;
    };
    std::vector<Case> cases(3);
    cases[0].spec.family = Family::exponential;
    cases[0].spec.first = {1.0, 2.0, 3.0};
    cases[0].spec.seed = 20240601;
    cases[0].analytic = [](unsigned m) { return moment_by_expansion(RateParams({1, 2, 3}), m); };
    cases[1].spec.family = Family::gamma;
    cases[1].spec.first = {2.5, 1.0};
    cases[1].spec.second = {0.5, 2.0};
    cases[1].spec.seed = 20240602;
    cases[1].analytic = [](unsigned m) {
        return moment_by_expansion(GammaParams{{Rational(5, 2), Rational(1)}, {Rational(1, 2), Rational(2)}}, m);
    };
    cases[2].spec.family = Family::uniform;
    cases[2].spec.first = {1.0, 2.0, 0.5};
    cases[2].spec.seed = 20240603;
    cases[2].analytic = [](unsigned m) { return moment_by_expansion(UniformParams({1, 2, Rational(1, 2)}), m); };

    bool ok = true;
    std::ostringstream detail;
    for (auto& c : cases) {
        c.spec.sample_count = kMcSamples;
        detail << to_string(c.spec.family) << " seed " << c.spec.seed << ":";
        for (unsigned m = 1; m <= 4; ++m) {
            const auto first = estimate_moment(c.spec, m);
            const auto again = estimate_moment(c.spec, m);
            const auto serial = estimate_moment_serial(c.spec, m);
            const bool reproducible = estimate_text(first) == estimate_text(again) &&
                                      estimate_text(first) == estimate_text(serial);
            const double analytic = c.analytic(m).to_double();
            const double z = std::abs(first.mean_of_powers - analytic) / first.std_error;
            const bool agrees = mc_check(analytic, first, kMcZ);
            ok = ok && reproducible && agrees;
            char buf[64];
            std::snprintf(buf, sizeof(buf), " m%u z=%.2f%s", m, z, reproducible ? "" : " (NOT reproducible)");
            detail << buf;
        }
        detail << "; ";
    }
    detail << kMcSamples << " samples, threshold " << kMcZ << " standard errors, reruns byte-identical";
    return report(6, "Monte Carlo concordance", ok, detail.str());
}

int exit_status(const std::string& args) {
    const std::string command = std::string(SUMIDENT_CLI) + " " + args + " > /dev/null 2>&1";
    const int raw = std::system(command.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

bool criterion_cli() {
    const std::string src = SUMIDENT_SOURCE_DIR;
    const int default_status = exit_status("sweep " + src + "/configs/default_sweep.json --out default_sweep_reports.json");
    const int perturbed_status = exit_status("sweep " + src + "/tests/fixtures/perturbed_sweep.json");
    const std::vector<std::string> malformed = {
        "verify good --xs 1,two,3",
        "verify nope --m 1",
        "sweep " + src + "/tests/fixtures/empty_grid.json",
        "density uniform --a 1,1 --grid 2,0,5",
    };
    int malformed_ok = 0;
    for (const auto& args : malformed) malformed_ok += exit_status(args) == 2 ? 1 : 0;
    std::ostringstream detail;
    detail << "default sweep exit " << default_status << " (want 0); perturbed fixture exit " << perturbed_status
           << " (want 1); malformed inputs exit 2 in " << malformed_ok << "/" << malformed.size();
    const bool ok = default_status == 0 && perturbed_status == 1 &&
                    malformed_ok == static_cast<int>(malformed.size());
    return report(7, "CLI contract", ok, detail.str());
}

}  // namespace

int main() {
    SuiteOneSets sets;
    bool ok = true;
    ok = criterion_exact_suite(sets) && ok;
    ok = criterion_gamma_suite() && ok;
    ok = criterion_density_mass(sets) && ok;
    ok = criterion_stirling() && ok;
    ok = criterion_three_way_uniform() && ok;
    ok = criterion_monte_carlo() && ok;
    ok = criterion_cli() && ok;
    std::cout << (ok ? "all criteria pass" : "some criteria fail") << std::endl;
    return ok ? 0 : 1;
}
