#include "sumident/densities.hpp"

#include <algorithm>
#include <cmath>

namespace sumident {

std::string to_string(Mode mode) { return mode == Mode::exact ? "exact" : "float"; }

RateParams::RateParams(std::vector<Rational> rates) : rates_(std::move(rates)) {
    if (rates_.size() < 2) throw ParameterError("at least two rates are required");
    for (const auto& r : rates_) {
        if (r.sign() <= 0) throw ParameterError("rates must be positive, got " + r.str());
    }
    for (std::size_t i = 0; i < rates_.size(); ++i) {
        for (std::size_t j = i + 1; j < rates_.size(); ++j) {
            if (rates_[i] == rates_[j]) throw ParameterError("rates must be distinct, " + rates_[i].str() + " repeats");
        }
    }
}

std::vector<double> RateParams::as_doubles() const {
    std::vector<double> out;
    out.reserve(rates_.size());
    for (const auto& r : rates_) out.push_back(r.to_double());
    return out;
}

namespace {

template <class T>
BasicExpMixDensity<T> build_hypoexp(std::span<const T> rates) {
    T product{1};
    for (const auto& r : rates) product *= r;
    BasicExpMixDensity<T> density;
    density.atoms.reserve(rates.size());
    for (std::size_t k = 0; k < rates.size(); ++k) {
        T denom{1};
        for (std::size_t l = 0; l < rates.size(); ++l) {
            if (l != k) denom *= rates[l] - rates[k];
        }
        density.atoms.push_back({product / denom, rates[k]});
    }
    return density;
}

}  // namespace

ExpMixDensity hypoexp_density(const RateParams& params) {
    return build_hypoexp<Rational>(params.rates());
}

FloatExpMixDensity hypoexp_density(std::span<const double> rates) {
    if (rates.size() < 2) throw ParameterError("at least two rates are required");
    double max_rate = 0.0;
    for (double r : rates) {
        if (!(r > 0.0) || !std::isfinite(r)) throw ParameterError("rates must be positive and finite");
        max_rate = std::max(max_rate, r);
    }
    double min_gap = INFINITY;
    for (std::size_t i = 0; i < rates.size(); ++i) {
        for (std::size_t j = i + 1; j < rates.size(); ++j) min_gap = std::min(min_gap, std::fabs(rates[i] - rates[j]));
    }
    if (min_gap == 0.0) throw ParameterError("rates must be distinct");
    if (min_gap / max_rate < 1e-6) {
        throw ParameterError("rates are too close for float evaluation (relative gap below 1e-6); use exact mode");
    }
    return build_hypoexp<double>(rates);
}

Rational vandermonde_zero(const RateParams& params) {
    const auto& lam = params.rates();
    const std::size_t n = lam.size();
    Rational sum = 0;
    for (std::size_t k = 0; k < n; ++k) {
        Rational prod = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k) continue;
            for (std::size_t l = j + 1; l < n; ++l) {
                if (l != k) prod *= lam[l] - lam[j];
            }
        }
        // The sign uses the 1-based index of the omitted rate.
        if ((k + 1) % 2 == 0) {
            sum += prod;
        } else {
            sum -= prod;
        }
    }
    return sum;
}

}  // namespace sumident
