#include "sumident/sweep.hpp"

#include "sumident/io.hpp"

#include <exception>
#include <functional>

namespace sumident {

namespace {

using VectorAxis = std::optional<std::vector<Rational>> IdentityArgs::*;
using UnsignedAxis = std::optional<unsigned> IdentityArgs::*;

constexpr std::pair<const char*, VectorAxis> kVectorAxes[] = {
    {"xs", &IdentityArgs::xs},       {"lambda", &IdentityArgs::lambda}, {"a", &IdentityArgs::a},
    {"alpha", &IdentityArgs::alpha}, {"beta", &IdentityArgs::beta},
};
constexpr std::pair<const char*, UnsignedAxis> kUnsignedAxes[] = {
    {"m", &IdentityArgs::m},
    {"n", &IdentityArgs::n},
};

// One axis expanded to the setters of its values.
using Setter = std::function<void(IdentityArgs&)>;

std::vector<unsigned> unsigned_axis(const Json& value, const std::string& key) {
    std::vector<unsigned> out;
    auto checked = [&](const Json& v) {
        if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 100000) {
            throw UsageError("grid axis '" + key + "' needs non-negative integers, got " + v.dump());
        }
        return v.get<unsigned>();
    };
    if (value.is_object()) {
        if (!value.contains("from") || !value.contains("to")) {
            throw UsageError("range for grid axis '" + key + "' needs \"from\" and \"to\"");
        }
        const unsigned from = checked(value.at("from"));
        const unsigned to = checked(value.at("to"));
        for (unsigned v = from; v <= to; ++v) out.push_back(v);
    } else if (value.is_array()) {
        for (const auto& v : value) out.push_back(checked(v));
    } else {
        throw UsageError("grid axis '" + key + "' must be a list or a {\"from\", \"to\"} range");
    }
    return out;
}

std::vector<IdentityArgs> expand_grid(const Json& grid) {
    if (!grid.is_object()) throw UsageError("a grid must be an object of axes, got " + grid.dump());
    for (const auto& [key, value] : grid.items()) {
        bool known = key == "t";
        for (const auto& [name, member] : kVectorAxes) known = known || key == name;
        for (const auto& [name, member] : kUnsignedAxes) known = known || key == name;
        if (!known) throw UsageError("unknown grid axis '" + key + "'");
    }

    std::vector<std::vector<Setter>> axes;
    for (const auto& [name, member] : kVectorAxes) {
        if (!grid.contains(name)) continue;
        const Json& values = grid.at(name);
        if (!values.is_array()) throw UsageError(std::string("grid axis '") + name + "' must list vectors");
        std::vector<Setter> setters;
        for (const auto& v : values) {
            auto parsed = rational_list_from_json(v);
            setters.push_back([member, parsed](IdentityArgs& args) { args.*member = parsed; });
        }
        axes.push_back(std::move(setters));
    }
    if (grid.contains("t")) {
        const Json& values = grid.at("t");
        if (!values.is_array()) throw UsageError("grid axis 't' must be a list");
        std::vector<Setter> setters;
        for (const auto& v : values) {
            auto parsed = rational_from_json(v);
            setters.push_back([parsed](IdentityArgs& args) { args.t = parsed; });
        }
        axes.push_back(std::move(setters));
    }
    for (const auto& [name, member] : kUnsignedAxes) {
        if (!grid.contains(name)) continue;
        std::vector<Setter> setters;
        for (unsigned v : unsigned_axis(grid.at(name), name)) {
            setters.push_back([member, v](IdentityArgs& args) { args.*member = v; });
        }
        axes.push_back(std::move(setters));
    }

    if (axes.empty()) throw UsageError("grid has no axes");
    for (const auto& axis : axes) {
        if (axis.empty()) throw UsageError("grid has an empty axis");
    }

    // Odometer over the axes, last axis fastest.
    std::vector<IdentityArgs> points;
    std::vector<std::size_t> index(axes.size(), 0);
    while (true) {
        IdentityArgs args;
        for (std::size_t k = 0; k < axes.size(); ++k) axes[k][index[k]](args);
        points.push_back(std::move(args));
        std::size_t k = axes.size();
        while (k > 0) {
            --k;
            if (++index[k] < axes[k].size()) break;
            index[k] = 0;
            if (k == 0) return points;
        }
    }
}

}  // namespace

SweepConfig parse_sweep_config(const Json& document) {
    if (!document.is_object()) throw UsageError("sweep configuration must be a JSON object");
    SweepConfig config;
    try {
        if (document.contains("mode")) {
            const auto mode = document.at("mode").get<std::string>();
            if (mode == "exact") {
                config.verify.mode = Mode::exact;
            } else if (mode == "float") {
                config.verify.mode = Mode::floating;
            } else {
                throw UsageError("mode must be 'exact' or 'float', got '" + mode + "'");
            }
        }
        if (document.contains("tolerance")) config.verify.tolerance = document.at("tolerance").get<double>();
        if (document.contains("max_order")) config.verify.max_order = document.at("max_order").get<std::size_t>();
        if (!(config.verify.tolerance > 0.0)) throw UsageError("tolerance must be positive");
        if (document.contains("monte_carlo")) {
            const Json& mc = document.at("monte_carlo");
            config.monte_carlo.enabled = mc.value("enabled", false);
            config.monte_carlo.samples = mc.value("samples", config.monte_carlo.samples);
            config.monte_carlo.seed = mc.value("seed", config.monte_carlo.seed);
            config.monte_carlo.z = mc.value("z", config.monte_carlo.z);
        }
        if (document.contains("output")) {
            const Json& out = document.at("output");
            config.json_path = out.value("json", "");
            config.csv_path = out.value("csv", "");
        }
    } catch (const Json::exception& e) {
        throw UsageError(std::string("malformed sweep setting: ") + e.what());
    }

    if (!document.contains("runs") || !document.at("runs").is_array() || document.at("runs").empty()) {
        throw UsageError("sweep configuration needs a non-empty \"runs\" list");
    }
    for (const auto& run : document.at("runs")) {
        if (!run.is_object() || !run.contains("identity") || !run.at("identity").is_string()) {
            throw UsageError("each run needs an \"identity\" string");
        }
        const auto identity = run.at("identity").get<std::string>();
        if (!is_identity(identity)) throw UsageError("unknown identity '" + identity + "'");
        if (!run.contains("grid")) throw UsageError("run '" + identity + "' has no grid");
        std::optional<Rational> perturb;
        if (run.contains("perturb_rhs")) perturb = rational_from_json(run.at("perturb_rhs"));

        const Json& grid = run.at("grid");
        std::vector<IdentityArgs> points;
        if (grid.is_array()) {
            if (grid.empty()) throw UsageError("run '" + identity + "' has an empty grid");
            for (const auto& part : grid) {
                auto expanded = expand_grid(part);
                points.insert(points.end(), expanded.begin(), expanded.end());
            }
        } else {
            points = expand_grid(grid);
        }
        for (auto& args : points) config.points.push_back(SweepPoint{identity, std::move(args), perturb});
    }
    return config;
}

std::vector<VerificationReport> run_sweep(const SweepConfig& config) {
    const auto count = static_cast<std::ptrdiff_t>(config.points.size());
    std::vector<VerificationReport> reports(config.points.size());
    std::vector<std::exception_ptr> errors(config.points.size());

#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto& point = config.points[static_cast<std::size_t>(i)];
        try {
            RunOptions opts{config.verify, config.monte_carlo, point.perturb_rhs};
            reports[static_cast<std::size_t>(i)] = run_identity(point.identity, point.args, opts);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }

    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i]) continue;
        try {
            std::rethrow_exception(errors[i]);
        } catch (const std::exception& e) {
            throw UsageError("grid point " + std::to_string(i) + " (" + config.points[i].identity + "): " + e.what());
        }
    }
    return reports;
}

std::string reports_json(const std::vector<VerificationReport>& reports) {
    Json out = Json::array();
    for (const auto& r : reports) out.push_back(to_json(r));
    return out.dump(2) + "\n";
}

}  // namespace sumident
