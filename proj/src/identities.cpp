#include "sumident/identities.hpp"

#include "sumident/combinatorics.hpp"
#include "sumident/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sumident {

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::pass_with_truncation: return "pass-with-truncation";
    }
    return "fail";
}

double to_double(const Scalar& s) {
    return std::visit([](const auto& v) { return sumident::to_double(v); }, s);
}

namespace {

Json scalar_json(const Scalar& s) {
    if (const auto* r = std::get_if<Rational>(&s)) return r->str();
    return std::get<double>(s);
}

Json rational_list(const std::vector<Rational>& values) {
    Json out = Json::array();
    for (const auto& v : values) out.push_back(v.str());
    return out;
}

std::vector<double> to_doubles(const std::vector<Rational>& values) {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(v.to_double());
    return out;
}

void require_distinct(const std::vector<Rational>& xs, const char* what) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            if (xs[i] == xs[j]) throw ParameterError(std::string(what) + " must be distinct, " + xs[i].str() + " repeats");
        }
    }
}

VerificationReport make_report(std::string identity, Json params, Mode mode, double tolerance) {
    VerificationReport r;
    r.identity = std::move(identity);
    r.params = std::move(params);
    r.mode = mode;
    r.tolerance = mode == Mode::exact ? 0.0 : tolerance;
    return r;
}

template <class T>
VerificationReport finish(VerificationReport r, T lhs, T rhs) {
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    judge(r);
    return r;
}

//--------------------------------------------------------------------------
// Exponential-family sides, shared by the exact and float paths.
//--------------------------------------------------------------------------

template <class T>
T good_lhs(const std::vector<T>& xs) {
    T sum{0};
    for (std::size_t j = 0; j < xs.size(); ++j) {
        T prod{1};
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i != j) prod *= T{1} - xs[j] / xs[i];
        }
        sum += T{1} / prod;
    }
    return sum;
}

// sum_k w(lambda_k) prod_{l != k} lambda_l / (lambda_l - lambda_k)
template <class T, class Weight>
T partial_fraction_sum(const std::vector<T>& lambdas, Weight&& weight) {
    T sum{0};
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        T term = weight(lambdas[k]);
        for (std::size_t l = 0; l < lambdas.size(); ++l) {
            if (l != k) term *= lambdas[l] / (lambdas[l] - lambdas[k]);
        }
        sum += term;
    }
    return sum;
}

template <class T>
T inverse_power_composition_sum(const std::vector<T>& lambdas, unsigned m) {
    T sum{0};
    for_each_composition(m, static_cast<unsigned>(lambdas.size()), [&](const Composition& c) {
        T term{1};
        for (std::size_t k = 0; k < lambdas.size(); ++k) term /= power(lambdas[k], c.parts[k]);
        sum += term;
    });
    return sum;
}

template <class T>
T homogeneous_lhs(const std::vector<T>& xs, unsigned m) {
    T sum{0};
    for (std::size_t j = 0; j < xs.size(); ++j) {
        T term = power(xs[j], m);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i != j) term /= xs[j] - xs[i];
        }
        sum += term;
    }
    return sum;
}

double homogeneous_float(int r, const std::vector<double>& xs) {
    if (r < 0) return 0.0;
    std::vector<double> h(static_cast<std::size_t>(r) + 1, 0.0);
    h[0] = 1.0;
    for (double x : xs) {
        for (std::size_t d = 1; d < h.size(); ++d) h[d] += x * h[d - 1];
    }
    return h.back();
}

//--------------------------------------------------------------------------
// Uniform-family closed forms.
//--------------------------------------------------------------------------

template <class T>
T from_integer(const BigInt& v) {
    if constexpr (std::is_same_v<T, Rational>) {
        return Rational(v);
    } else {
        return v.get_d();
    }
}

template <class T>
T iid_formula(unsigned n, unsigned m) {
    const T nn = T(static_cast<int>(n));
    T braces = power(nn, m + n) / T(static_cast<int>(m + n));
    for (unsigned i = 1; i <= n; ++i) {
        const T ii = T(static_cast<int>(i));
        T inner{0};
        for (unsigned j = 0; j < n; ++j) {
            const unsigned e = m + j + 1;
            inner += from_integer<T>(binomial(n - 1, j)) * power(-ii, n - j - 1) * (power(nn, e) - power(ii, e)) /
                     T(static_cast<int>(e));
        }
        const T signed_binom = from_integer<T>(binomial(n, i)) * T(i % 2 == 0 ? 1 : -1);
        braces += signed_binom * inner;
    }
    return braces / from_integer<T>(factorial(n - 1));
}

template <class T>
T general_formula(const std::vector<T>& a, unsigned m) {
    const std::size_t n = a.size();
    T total{0};
    T product{1};
    for (const auto& ai : a) {
        total += ai;
        product *= ai;
    }
    const auto nu = static_cast<unsigned>(n);
    // B(n): alternating sum over nonempty subsets of the integrated truncated power.
    T b{0};
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        T s{0};
        int size = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) {
                s += a[i];
                ++size;
            }
        }
        T inner{0};
        for (unsigned k = 0; k < nu; ++k) {
            const unsigned e = k + m + 1;
            inner += from_integer<T>(binomial(nu - 1, k)) * power(-s, nu - 1 - k) * (power(total, e) - power(s, e)) /
                     T(static_cast<int>(e));
        }
        b += size % 2 == 0 ? inner : -inner;
    }
    const T bracket = power(total, m + nu) / T(static_cast<int>(m + nu)) + b;
    return bracket / (from_integer<T>(factorial(nu - 1)) * product);
}

//--------------------------------------------------------------------------
// Gamma series against a known right side.
//--------------------------------------------------------------------------

VerificationReport gamma_series_check(std::string identity, const GammaParams& params, unsigned m,
                                      const Rational& rhs_exact, const VerifyOptions& opts) {
    params.validate();
    if (m == 0) throw ParameterError("gamma moment order must be positive");
    if (!(opts.tolerance > 0.0)) throw ParameterError("tolerance must be positive");
    const Mode mode = (opts.mode == Mode::exact && params.integer_shapes()) ? Mode::exact : Mode::floating;

    Json p = Json::object();
    p["alpha"] = rational_list(params.shapes);
    p["beta"] = rational_list(params.scales);
    if (identity != "gamma-mean") p["m"] = m;
    VerificationReport r = make_report(std::move(identity), std::move(p), mode, opts.tolerance);
    r.tolerance = opts.tolerance;

    GammaSeries series(params, mode);
    series.extend_until(opts.tolerance, opts.max_order);
    SeriesMomentSum sum(m);
    sum.update(series);

    const double rhs_value = rhs_exact.to_double();
    const double allowed = opts.tolerance * std::max(1.0, std::fabs(rhs_value));
    auto gap = [&]() {
        if (mode == Mode::exact) return std::fabs((rhs_exact - sum.exact(series)).to_double());
        return std::fabs(rhs_value - sum.value(series));
    };
    // All series terms are nonnegative, so the partial sums approach the
    // moment from below; keep adding orders until the gap is inside tolerance.
    while (gap() > allowed && series.order() < opts.max_order) {
        series.extend_to(series.order() + 1);
        sum.update(series);
    }

    Truncation trunc;
    trunc.order = series.order();
    trunc.deficit = series.tail_estimate();
    trunc.deficit_trace = series.deficit_trace();
    r.truncation = std::move(trunc);
    if (mode == Mode::exact) {
        r.lhs = sum.exact(series);
        r.rhs = rhs_exact;
    } else {
        r.lhs = sum.value(series);
        r.rhs = rhs_value;
    }
    judge(r);
    if (!r.ok()) {
        r.diagnostic = "series order cap " + std::to_string(opts.max_order) + " reached before the moment gap fell below tolerance";
    }
    return r;
}

}  // namespace

void judge(VerificationReport& r) {
    const bool both_exact = std::holds_alternative<Rational>(r.lhs) && std::holds_alternative<Rational>(r.rhs);
    if (both_exact) {
        const Rational diff = std::get<Rational>(r.lhs) - std::get<Rational>(r.rhs);
        r.abs_gap = abs(diff).to_double();
    } else {
        r.abs_gap = std::fabs(to_double(r.lhs) - to_double(r.rhs));
    }
    if (r.mode == Mode::exact && both_exact && !r.truncation) {
        r.verdict = std::get<Rational>(r.lhs) == std::get<Rational>(r.rhs) ? Verdict::pass : Verdict::fail;
        return;
    }
    const double allowed = r.tolerance * std::max(1.0, std::fabs(to_double(r.rhs)));
    if (!(r.abs_gap <= allowed)) {
        r.verdict = Verdict::fail;
    } else {
        r.verdict = r.truncation ? Verdict::pass_with_truncation : Verdict::pass;
    }
}

Json to_json(const VerificationReport& r) {
    Json j = Json::object();
    j["identity"] = r.identity;
    j["params"] = r.params;
    j["lhs"] = scalar_json(r.lhs);
    j["rhs"] = scalar_json(r.rhs);
    j["mode"] = to_string(r.mode);
    j["verdict"] = to_string(r.verdict);
    j["abs_gap"] = r.abs_gap;
    j["tolerance"] = r.tolerance;
    if (r.truncation) {
        j["truncation"] = Json{{"J", r.truncation->order}, {"deficit", r.truncation->deficit}};
    } else {
        j["truncation"] = nullptr;
    }
    if (r.seed) {
        j["seed"] = *r.seed;
    } else {
        j["seed"] = nullptr;
    }
    if (r.cross_check) j["cross_check"] = scalar_json(*r.cross_check);
    if (r.monte_carlo) {
        const auto& mc = *r.monte_carlo;
        j["monte_carlo"] = Json{{"analytic", mc.analytic},
                                {"estimate", mc.estimate.mean_of_powers},
                                {"std_error", mc.estimate.std_error},
                                {"samples", mc.estimate.sample_count},
                                {"m", mc.estimate.m},
                                {"z", mc.z},
                                {"agrees", mc.agrees}};
    }
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    return j;
}

VerificationReport verify_good(const std::vector<Rational>& xs, const VerifyOptions& opts) {
    if (xs.size() < 2) throw ParameterError("Good's identity needs at least two values");
    for (const auto& x : xs) {
        if (x.sign() <= 0) throw ParameterError("values must be positive, got " + x.str());
    }
    require_distinct(xs, "values");
    auto r = make_report("good", Json{{"xs", rational_list(xs)}}, opts.mode, opts.tolerance);
    if (opts.mode == Mode::exact) return finish<Rational>(std::move(r), good_lhs(xs), Rational(1));
    return finish<double>(std::move(r), good_lhs(to_doubles(xs)), 1.0);
}

VerificationReport verify_symmetric_moment(const RateParams& lambdas, unsigned m, const VerifyOptions& opts) {
    auto r = make_report("symmetric-moment", Json{{"lambda", rational_list(lambdas.rates())}, {"m", m}}, opts.mode,
                         opts.tolerance);
    auto sides = [m]<class T>(const std::vector<T>& lam) {
        const T lhs = partial_fraction_sum(lam, [m](const T& l) { return T{1} / power(l, m); });
        return std::pair<T, T>{lhs, inverse_power_composition_sum(lam, m)};
    };
    if (opts.mode == Mode::exact) {
        auto [lhs, rhs] = sides(lambdas.rates());
        return finish<Rational>(std::move(r), lhs, rhs);
    }
    auto [lhs, rhs] = sides(lambdas.as_doubles());
    return finish<double>(std::move(r), lhs, rhs);
}

VerificationReport verify_homogeneous(const std::vector<Rational>& xs, unsigned m, const VerifyOptions& opts) {
    if (xs.size() < 2) throw ParameterError("the homogeneous-symmetric identity needs at least two values");
    for (const auto& x : xs) {
        if (x.is_zero()) throw ParameterError("values must be nonzero");
    }
    require_distinct(xs, "values");
    auto r = make_report("homogeneous", Json{{"xs", rational_list(xs)}, {"m", m}}, opts.mode, opts.tolerance);
    const int degree = static_cast<int>(m) - static_cast<int>(xs.size()) + 1;
    if (opts.mode == Mode::exact) {
        return finish<Rational>(std::move(r), homogeneous_lhs(xs, m), homogeneous_symmetric(degree, xs));
    }
    const auto xd = to_doubles(xs);
    return finish<double>(std::move(r), homogeneous_lhs(xd, m), homogeneous_float(degree, xd));
}

VerificationReport verify_vandermonde_zero(const RateParams& lambdas) {
    auto r = make_report("vandermonde-zero", Json{{"lambda", rational_list(lambdas.rates())}}, Mode::exact, 0.0);
    return finish<Rational>(std::move(r), vandermonde_zero(lambdas), Rational(0));
}

VerificationReport verify_chf_partial_fraction(const RateParams& lambdas, const Rational& t, const VerifyOptions& opts) {
    const auto& rates = lambdas.rates();
    const Rational min_rate = *std::min_element(rates.begin(), rates.end());
    if (!(t < min_rate)) {
        throw ParameterError("t must be below the smallest rate " + min_rate.str() + ", got " + t.str());
    }
    auto r = make_report("chf-partial-fraction", Json{{"lambda", rational_list(rates)}, {"t", t.str()}}, opts.mode,
                         opts.tolerance);
    auto sides = []<class T>(const std::vector<T>& lam, const T& tt) {
        const T lhs = partial_fraction_sum(lam, [&tt](const T& l) { return T{1} / (T{1} - tt / l); });
        T rhs{1};
        for (const auto& l : lam) rhs /= T{1} - tt / l;
        return std::pair<T, T>{lhs, rhs};
    };
    if (opts.mode == Mode::exact) {
        auto [lhs, rhs] = sides(rates, t);
        return finish<Rational>(std::move(r), lhs, rhs);
    }
    auto [lhs, rhs] = sides(lambdas.as_doubles(), t.to_double());
    return finish<double>(std::move(r), lhs, rhs);
}

VerificationReport verify_gamma_mean(const GammaParams& params, const VerifyOptions& opts) {
    params.validate();
    Rational rhs = 0;
    for (std::size_t i = 0; i < params.shapes.size(); ++i) rhs += params.shapes[i] * params.scales[i];
    return gamma_series_check("gamma-mean", params, 1, rhs, opts);
}

VerificationReport verify_gamma_moment(const GammaParams& params, unsigned m, const VerifyOptions& opts) {
    params.validate();
    if (m == 0) throw ParameterError("gamma moment order must be positive");
    return gamma_series_check("gamma-moment", params, m, moment_by_expansion(params, m), opts);
}

Rational iid_uniform_moment_formula(unsigned n, unsigned m) {
    if (n == 0) throw ParameterError("need at least one uniform variable");
    return iid_formula<Rational>(n, m);
}

VerificationReport verify_iid_uniform_moment(unsigned n, unsigned m, const VerifyOptions& opts) {
    if (n == 0) throw ParameterError("need at least one uniform variable");
    auto r = make_report("iid-uniform-moment", Json{{"n", n}, {"m", m}}, opts.mode, opts.tolerance);
    const std::vector<Rational> ones(n, Rational(1));
    if (opts.mode == Mode::exact) {
        return finish<Rational>(std::move(r), iid_formula<Rational>(n, m),
                                expansion_moment(uniform_moment_table<Rational>(ones, m), m));
    }
    return finish<double>(std::move(r), iid_formula<double>(n, m),
                          expansion_moment(uniform_moment_table<double>(ones, m), m));
}

VerificationReport verify_stirling_link(unsigned m, unsigned n) {
    if (n == 0) throw ParameterError("n must be at least 1");
    auto r = make_report("stirling-link", Json{{"m", m}, {"n", n}}, Mode::exact, 0.0);
    const std::vector<Rational> ones(n, Rational(1));
    const Rational lhs = expansion_moment(uniform_moment_table<Rational>(ones, m), m);
    const Rational rhs = Rational(stirling2_recurrence(m + n, n), binomial(m + n, n));
    return finish<Rational>(std::move(r), lhs, rhs);
}

VerificationReport verify_truncated_power_integral(unsigned m, unsigned n) {
    if (n == 0) throw ParameterError("n must be at least 1");
    auto r = make_report("truncated-power-integral", Json{{"m", m}, {"n", n}}, Mode::exact, 0.0);
    const Rational upper(n);
    Rational lhs = 0;
    for (unsigned i = 0; i <= n; ++i) {
        const Rational term = Rational(binomial(n, i)) * truncated_power_integral(Rational(i), n, m, upper);
        lhs += i % 2 == 0 ? term : -term;
    }
    lhs /= Rational(factorial(n - 1));
    BigInt alternating = 0;
    for (unsigned i = 0; i <= n; ++i) {
        BigInt p;
        mpz_ui_pow_ui(p.get_mpz_t(), i, m + n);
        const BigInt term = binomial(n, i) * p;
        if ((n - i) % 2 == 0) {
            alternating += term;
        } else {
            alternating -= term;
        }
    }
    const Rational rhs = Rational(factorial(m), factorial(m + n)) * Rational(alternating);
    return finish<Rational>(std::move(r), lhs, rhs);
}

VerificationReport verify_stirling_explicit(unsigned m, unsigned n) {
    if (n == 0) throw ParameterError("n must be at least 1");
    auto r = make_report("stirling", Json{{"m", m}, {"n", n}}, Mode::exact, 0.0);
    return finish<Rational>(std::move(r), stirling2_explicit(m, n), Rational(stirling2_recurrence(m + n, n)));
}

Rational general_uniform_moment_formula(const UniformParams& params, unsigned m) {
    if (params.size() < 2) throw ParameterError("the general uniform identity needs at least two variables");
    return general_formula<Rational>(params.lengths(), m);
}

VerificationReport verify_general_uniform(const UniformParams& params, unsigned m, const VerifyOptions& opts) {
    if (params.size() < 2) throw ParameterError("the general uniform identity needs at least two variables");
    auto r = make_report("general-uniform", Json{{"a", rational_list(params.lengths())}, {"m", m}}, opts.mode,
                         opts.tolerance);
    const Rational by_density = piecewise_moment(general_uniform_density(params), m);
    r.cross_check = by_density;
    if (opts.mode == Mode::exact) {
        const Rational lhs = general_formula<Rational>(params.lengths(), m);
        const Rational rhs = expansion_moment(uniform_moment_table<Rational>(params.lengths(), m), m);
        r = finish<Rational>(std::move(r), lhs, rhs);
        if (r.ok() && by_density != rhs) {
            r.verdict = Verdict::fail;
            r.diagnostic = "density integration disagrees with both closed forms";
        }
        return r;
    }
    const double lhs = general_formula<double>(to_doubles(params.lengths()), m);
    const double rhs = expansion_moment(uniform_moment_table<double>(params.lengths(), m), m);
    r = finish<double>(std::move(r), lhs, rhs);
    const double allowed = opts.tolerance * std::max(1.0, std::fabs(rhs));
    if (r.ok() && !(std::fabs(by_density.to_double() - rhs) <= allowed)) {
        r.verdict = Verdict::fail;
        r.diagnostic = "density integration disagrees with both closed forms";
    }
    return r;
}

}  // namespace sumident
