// sumident: verify identities, run parameter sweeps, tabulate densities.
//
// Exit status: 0 pass (or pass-with-truncation), 1 fail, 2 usage error.

#include "sumident/densities.hpp"
#include "sumident/identities.hpp"
#include "sumident/io.hpp"
#include "sumident/sweep.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace sumident;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Composition enumeration grows like C(m+n-1, n-1); keep m at desk scale.
constexpr unsigned kMaxMomentOrder = 32;

struct GlobalFlags {
    std::string mode = "exact";
    double tol = 1e-9;
    bool json = false;
    bool mc = false;
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 20240601;
    double z = 5.0;
    std::string out;
    std::size_t max_order = 500;
};

struct ParamFlags {
    std::string xs, lambda, a, alpha, beta, t;
    std::optional<unsigned> m, n;
};

Mode parse_mode(const std::string& text) {
    if (text == "exact") return Mode::exact;
    if (text == "float") return Mode::floating;
    throw UsageError("--mode must be 'exact' or 'float', got '" + text + "'");
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + path + "'");
    file << text;
}

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot read '" + path + "'");
    std::ostringstream os;
    os << file.rdbuf();
    return os.str();
}

IdentityArgs to_args(const ParamFlags& p) {
    IdentityArgs args;
    auto list = [](const std::string& text, const char* flag) -> std::optional<std::vector<Rational>> {
        if (text.empty()) return std::nullopt;
        return parse_rational_list(text, flag);
    };
    args.xs = list(p.xs, "xs");
    args.lambda = list(p.lambda, "lambda");
    args.a = list(p.a, "a");
    args.alpha = list(p.alpha, "alpha");
    args.beta = list(p.beta, "beta");
    if (!p.t.empty()) args.t = parse_rational_arg(p.t, "t");
    args.m = p.m;
    args.n = p.n;
    if (args.m && *args.m > kMaxMomentOrder) {
        throw UsageError("--m " + std::to_string(*args.m) + " exceeds the cap of " + std::to_string(kMaxMomentOrder));
    }
    return args;
}

RunOptions run_options(const GlobalFlags& g) {
    RunOptions opts;
    opts.verify.mode = parse_mode(g.mode);
    opts.verify.tolerance = g.tol;
    opts.verify.max_order = g.max_order;
    if (!(g.tol > 0.0)) throw UsageError("--tol must be positive");
    if (!(g.z > 0.0)) throw UsageError("--z must be positive");
    opts.monte_carlo = MonteCarloOptions{g.mc, g.samples, g.seed, g.z};
    return opts;
}

std::string scalar_text(const Scalar& s) {
    if (const auto* q = std::get_if<Rational>(&s)) return q->str();
    return format_double(std::get<double>(s));
}

std::string report_table(const VerificationReport& r) {
    std::ostringstream os;
    auto row = [&os](const char* key, const std::string& value) {
        os << std::left << std::setw(12) << key << value << '\n';
    };
    row("identity", r.identity);
    row("params", r.params.dump());
    row("lhs", scalar_text(r.lhs));
    row("rhs", scalar_text(r.rhs));
    row("mode", to_string(r.mode));
    row("verdict", to_string(r.verdict));
    row("abs_gap", format_double(r.abs_gap));
    row("tolerance", format_double(r.tolerance));
    if (r.truncation) {
        row("J", std::to_string(r.truncation->order));
        row("deficit", format_double(r.truncation->deficit));
    }
    if (r.cross_check) row("cross_check", scalar_text(*r.cross_check));
    if (r.monte_carlo) {
        const auto& mc = *r.monte_carlo;
        row("mc_estimate", format_double(mc.estimate.mean_of_powers) + " +/- " + format_double(mc.estimate.std_error));
        row("mc_analytic", format_double(mc.analytic));
        row("mc_agrees", mc.agrees ? "yes" : "no");
    }
    if (r.seed) row("seed", std::to_string(*r.seed));
    if (!r.diagnostic.empty()) row("diagnostic", r.diagnostic);
    return os.str();
}

int cmd_verify(const std::string& identity, const ParamFlags& params, const GlobalFlags& g) {
    if (!is_identity(identity)) {
        std::string known;
        for (const auto& name : identity_names()) known += (known.empty() ? "" : ", ") + name;
        throw UsageError("unknown identity '" + identity + "' (known: " + known + ")");
    }
    const auto report = run_identity(identity, to_args(params), run_options(g));
    write_output(g.out, g.json ? to_json(report).dump(2) + "\n" : report_table(report));
    return report.ok() ? kExitPass : kExitFail;
}

int cmd_sweep(const std::string& config_path, const GlobalFlags& g, const CLI::App& app) {
    Json document;
    try {
        document = Json::parse(read_file(config_path));
    } catch (const Json::parse_error& e) {
        throw UsageError("'" + config_path + "' is not valid JSON: " + e.what());
    }
    auto config = parse_sweep_config(document);
    // Flags given on the command line override the file.
    if (app.count("--mode")) config.verify.mode = parse_mode(g.mode);
    if (app.count("--tol")) config.verify.tolerance = g.tol;
    if (app.count("--max-order")) config.verify.max_order = g.max_order;
    if (app.count("--mc")) config.monte_carlo.enabled = true;
    if (app.count("--samples")) config.monte_carlo.samples = g.samples;
    if (app.count("--seed")) config.monte_carlo.seed = g.seed;
    if (app.count("--z")) config.monte_carlo.z = g.z;
    if (!g.out.empty()) {
        config.json_path = g.out;
        config.csv_path = std::filesystem::path(g.out).replace_extension(".csv").string();
    }

    const auto reports = run_sweep(config);
    const auto json_text = reports_json(reports);
    if (config.json_path.empty() && config.csv_path.empty()) {
        std::cout << json_text;
    } else {
        if (!config.json_path.empty()) write_output(config.json_path, json_text);
        if (!config.csv_path.empty()) write_output(config.csv_path, reports_csv(reports));
    }

    std::size_t failed = 0;
    for (const auto& r : reports) failed += r.ok() ? 0 : 1;
    std::cerr << reports.size() << " grid points, " << failed << " failed\n";
    return failed == 0 ? kExitPass : kExitFail;
}

std::vector<double> grid_points(const std::string& text) {
    const auto fields = parse_rational_list(text, "grid");
    if (fields.size() != 3) throw UsageError("--grid needs start,stop,points; got '" + text + "'");
    const double start = fields[0].to_double();
    const double stop = fields[1].to_double();
    if (!fields[2].is_integer() || fields[2].sign() <= 0 || fields[2] > Rational(10'000'000)) {
        throw UsageError("--grid points must be an integer in 1..10000000; got '" + fields[2].str() + "'");
    }
    const auto points = static_cast<std::size_t>(fields[2].to_double());
    if (stop < start) throw UsageError("--grid stop must not be below start");
    if (points == 1 && stop != start) throw UsageError("--grid with one point needs start == stop");
    std::vector<double> xs(points);
    for (std::size_t i = 0; i < points; ++i) {
        xs[i] = points == 1 ? start
                            : start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return xs;
}

template <class Density>
std::string density_csv(const std::vector<double>& xs, const Density& density) {
    std::ostringstream os;
    os << "x,density\n";
    for (double x : xs) os << format_double(x) << ',' << format_double(density(x)) << '\n';
    return os.str();
}

int cmd_density(const std::string& family, const ParamFlags& params, const std::string& grid, bool symbolic,
                const GlobalFlags& g) {
    if (grid.empty()) throw UsageError("density needs --grid start,stop,points");
    const auto xs = grid_points(grid);
    const auto args = to_args(params);
    auto need = [&](const std::optional<std::vector<Rational>>& v, const char* flag) -> const std::vector<Rational>& {
        if (!v) throw UsageError("family '" + family + "' requires --" + std::string(flag));
        return *v;
    };

    std::string csv;
    Json doc;
    try {
        if (family == "exp") {
            const RateParams rates(need(args.lambda, "lambda"));
            const auto density = hypoexp_density(rates);
            csv = density_csv(xs, density);
            doc = density_json(rates, density);
        } else if (family == "gamma") {
            const GammaParams p{need(args.alpha, "alpha"), need(args.beta, "beta")};
            const auto series = gamma_series(p, std::min(g.tol, 1e-12), g.max_order, parse_mode(g.mode) == Mode::floating);
            csv = density_csv(xs, [&](double x) { return gamma_density_eval(series, x); });
            doc = density_json(p, series);
        } else if (family == "uniform") {
            const UniformParams p(need(args.a, "a"));
            const auto density = p.size() == 1 ? iid_uniform_density(1, p.lengths()[0]) : general_uniform_density(p);
            csv = density_csv(xs, [&](double x) { return density(x); });
            doc = density_json(p, density);
        } else {
            throw UsageError("unknown family '" + family + "' (known: exp, gamma, uniform)");
        }
    } catch (const ParameterError& e) {
        throw UsageError(e.what());
    }

    write_output(g.out, csv);
    if (symbolic) {
        if (g.out.empty()) std::cout << '\n';
        std::cout << doc.dump(2) << '\n';
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and numerical checks of moment identities for sums of random variables"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags g;
    app.add_option("--mode", g.mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--tol", g.tol, "relative tolerance for float and truncated comparisons");
    app.add_flag("--json", g.json, "print the report as JSON");
    app.add_flag("--mc", g.mc, "add a Monte Carlo check");
    app.add_option("--samples", g.samples, "Monte Carlo sample count");
    app.add_option("--seed", g.seed, "Monte Carlo seed");
    app.add_option("--z", g.z, "Monte Carlo z threshold");
    app.add_option("--out", g.out, "output path");
    app.add_option("--max-order", g.max_order, "cap on the Gamma series order");

    ParamFlags params;
    auto add_params = [&params](CLI::App* sub) {
        sub->add_option("--xs", params.xs, "comma-separated rationals");
        sub->add_option("--lambda", params.lambda, "exponential rates");
        sub->add_option("--a", params.a, "uniform interval lengths");
        sub->add_option("--alpha", params.alpha, "Gamma shapes");
        sub->add_option("--beta", params.beta, "Gamma scales");
        sub->add_option("--m", params.m, "moment order");
        sub->add_option("--n", params.n, "number of summands");
        sub->add_option("--t", params.t, "transform argument");
    };

    std::string identity;
    auto* verify = app.add_subcommand("verify", "check one identity");
    verify->add_option("identity", identity, "identity id")->required();
    add_params(verify);

    std::string config_path;
    auto* sweep = app.add_subcommand("sweep", "run a JSON-configured parameter grid");
    sweep->add_option("config", config_path, "sweep configuration file")->required();

    std::string family, grid;
    bool symbolic = false;
    auto* density = app.add_subcommand("density", "tabulate the density of a sum");
    density->add_option("family", family, "exp | gamma | uniform")->required();
    density->add_option("--grid", grid, "start,stop,points");
    density->add_flag("--symbolic", symbolic, "also print the exact density as JSON");
    add_params(density);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*verify) return cmd_verify(identity, params, g);
        if (*sweep) return cmd_sweep(config_path, g, app);
        if (*density) return cmd_density(family, params, grid, symbolic, g);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
