#include "sumident/io.hpp"

#include <charconv>
#include <sstream>

namespace sumident {

Rational parse_rational_arg(std::string_view text, std::string_view flag) {
    try {
        return Rational::parse(text);
    } catch (const std::exception&) {
        throw UsageError("malformed value '" + std::string(text) + "' for --" + std::string(flag));
    }
}

std::vector<Rational> parse_rational_list(std::string_view text, std::string_view flag) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        const auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_rational_arg(token, flag));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

Rational rational_from_json(const Json& value) {
    if (value.is_string()) return Rational::parse(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long>());
    if (value.is_number_float()) return Rational::from_double(value.get<double>());
    throw UsageError("expected a rational (\"p/q\" string or number), got " + value.dump());
}

std::vector<Rational> rational_list_from_json(const Json& value) {
    if (!value.is_array()) throw UsageError("expected a list of rationals, got " + value.dump());
    std::vector<Rational> out;
    for (const auto& v : value) out.push_back(rational_from_json(v));
    return out;
}

namespace {

Json strings(const std::vector<Rational>& values) {
    Json out = Json::array();
    for (const auto& v : values) out.push_back(v.str());
    return out;
}

}  // namespace

Json density_json(const RateParams& params, const ExpMixDensity& density) {
    Json atoms = Json::array();
    for (const auto& a : density.atoms) atoms.push_back(Json{{"weight", a.weight.str()}, {"rate", a.rate.str()}});
    return Json{{"family", "exp"}, {"params", strings(params.rates())}, {"atoms", atoms}};
}

Json density_json(const GammaParams& params, const GammaSeries& series) {
    Json p = Json::array();
    for (std::size_t i = 0; i < params.shapes.size(); ++i) {
        p.push_back(Json{{"alpha", params.shapes[i].str()}, {"beta", params.scales[i].str()}});
    }
    Json s = Json::object();
    s["mode"] = to_string(series.mode());
    s["J"] = series.order();
    s["tail_estimate"] = series.tail_estimate();
    s["truncated"] = series.truncated();
    if (series.mode() == Mode::exact) {
        s["rho"] = series.rho_exact().str();
        s["A"] = series.shape_sum_exact().str();
        s["beta1"] = series.beta1_exact().str();
        s["deltas"] = strings(series.deltas_exact());
        s["gammas"] = strings(series.gammas_exact());
    } else {
        s["rho"] = series.rho();
        s["A"] = series.shape_sum();
        s["beta1"] = series.beta1();
        s["deltas"] = series.deltas();
        s["gammas"] = series.gammas();
    }
    return Json{{"family", "gamma"}, {"params", p}, {"series", s}};
}

Json density_json(const UniformParams& params, const PiecewisePoly& density) {
    Json pieces = Json::array();
    for (std::size_t k = 0; k < density.pieces.size(); ++k) {
        pieces.push_back(Json{{"from", density.knots[k].str()},
                              {"to", density.knots[k + 1].str()},
                              {"coefficients", strings(density.pieces[k].coefficients)}});
    }
    return Json{{"family", "uniform"}, {"params", strings(params.lengths())}, {"pieces", pieces}};
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string reports_csv(const std::vector<VerificationReport>& reports) {
    std::ostringstream os;
    os << "identity,params,verdict,abs_gap,J\n";
    for (const auto& r : reports) {
        os << csv_escape(r.identity) << ',' << csv_escape(r.params.dump()) << ',' << to_string(r.verdict) << ','
           << format_double(r.abs_gap) << ',';
        if (r.truncation) os << r.truncation->order;
        os << '\n';
    }
    return os.str();
}

}  // namespace sumident
