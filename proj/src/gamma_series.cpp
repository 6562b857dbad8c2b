#include "sumident/densities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sumident {

namespace {

// log of a positive rational without overflowing through double conversion.
double log_rational(const Rational& r) {
    long num_exp = 0;
    long den_exp = 0;
    const double num = mpz_get_d_2exp(&num_exp, r.raw().get_num_mpz_t());
    const double den = mpz_get_d_2exp(&den_exp, r.raw().get_den_mpz_t());
    return std::log(num) - std::log(den) + static_cast<double>(num_exp - den_exp) * std::log(2.0);
}

}  // namespace

void GammaParams::validate() const {
    if (shapes.empty()) throw ParameterError("at least one Gamma variable is required");
    if (shapes.size() != scales.size()) throw ParameterError("shape and scale lists differ in length");
    for (const auto& a : shapes) {
        if (a.sign() <= 0) throw ParameterError("shapes must be positive, got " + a.str());
    }
    for (const auto& b : scales) {
        if (b.sign() <= 0) throw ParameterError("scales must be positive, got " + b.str());
    }
}

bool GammaParams::integer_shapes() const {
    return std::all_of(shapes.begin(), shapes.end(), [](const Rational& a) { return a.is_integer(); });
}

GammaParams GammaParams::normalized() const {
    validate();
    const auto first_min = std::min_element(scales.begin(), scales.end()) - scales.begin();
    GammaParams out;
    out.shapes.push_back(shapes[first_min]);
    out.scales.push_back(scales[first_min]);
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        if (static_cast<std::ptrdiff_t>(i) == first_min) continue;
        out.shapes.push_back(shapes[i]);
        out.scales.push_back(scales[i]);
    }
    return out;
}

GammaSeries::GammaSeries(const GammaParams& params, Mode mode) : mode_(mode) {
    const GammaParams p = params.normalized();
    const std::size_t n = p.shapes.size();
    beta1_ = p.scales[0].to_double();
    for (std::size_t i = 0; i < n; ++i) {
        float_shapes_.push_back(p.shapes[i].to_double());
        float_ratios_.push_back(1.0 - beta1_ / p.scales[i].to_double());
    }

    if (mode_ == Mode::exact) {
        if (!p.integer_shapes()) throw ParameterError("exact Gamma series requires integer shapes");
        beta1_exact_ = p.scales[0];
        shape_sum_exact_ = 0;
        rho_exact_ = 1;
        std::vector<Rational> ratios;
        common_den_ = 1;
        for (std::size_t i = 0; i < n; ++i) {
            const Rational scale_ratio = p.scales[0] / p.scales[i];
            const unsigned long alpha = p.shapes[i].numerator().get_ui();
            int_shapes_.push_back(alpha);
            shape_sum_exact_ += p.shapes[i];
            rho_exact_ *= pow(scale_ratio, alpha);
            ratios.push_back(Rational(1) - scale_ratio);
            mpz_lcm(common_den_.get_mpz_t(), common_den_.get_mpz_t(), ratios.back().raw().get_den_mpz_t());
        }
        for (const auto& c : ratios) ratio_numerators_.push_back(c.numerator() * (common_den_ / c.denominator()));
        shape_sum_ = shape_sum_exact_.to_double();
        rho_ = rho_exact_.to_double();
        log_rho_ = log_rational(rho_exact_);

        d_.push_back(1);
        deltas_exact_.push_back(1);
        delta_sum_exact_ = 1;
        deficit_exact_ = Rational(1) - rho_exact_;
        deficit_trace_.push_back(deficit_exact_.to_double());
    } else {
        log_rho_ = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double alpha = p.shapes[i].to_double();
            const double beta = p.scales[i].to_double();
            shape_sum_ += alpha;
            log_rho_ += alpha * (std::log(beta1_) - std::log(beta));
        }
        rho_ = std::exp(log_rho_);
        deficit_trace_.push_back(1.0 - rho_);
    }
    deltas_.push_back(1.0);
}

const BigInt& GammaSeries::scaled_gamma(std::size_t l) {
    while (g_.size() < l) {
        const auto power = static_cast<unsigned long>(g_.size() + 1);
        BigInt g = 0;
        BigInt term;
        for (std::size_t i = 0; i < ratio_numerators_.size(); ++i) {
            mpz_pow_ui(term.get_mpz_t(), ratio_numerators_[i].get_mpz_t(), power);
            g += term * int_shapes_[i];
        }
        g_.push_back(g);
        BigInt den;
        mpz_pow_ui(den.get_mpz_t(), common_den_.get_mpz_t(), power);
        gammas_exact_.push_back(Rational(g, den * power));
        gammas_.push_back(gammas_exact_.back().to_double());
    }
    return g_[l - 1];
}

void GammaSeries::extend_exact(std::size_t order) {
    // With delta_k = d_k / (D^k k!) and l gamma_l = g_l / D^l the recursion reads
    //   d_{j+1} = sum_{k=0}^{j} g_{j+1-k} d_k j!/k!,
    // which is evaluated Horner-style in k.
    for (std::size_t j = d_.size() - 1; j < order; ++j) {
        (void)scaled_gamma(j + 1);
        BigInt acc = g_[j] * d_[0];
        for (std::size_t k = 1; k <= j; ++k) {
            acc *= static_cast<unsigned long>(k);
            acc += g_[j - k] * d_[k];
        }
        d_.push_back(acc);

        den_power_ *= common_den_;
        order_factorial_ *= static_cast<unsigned long>(j + 1);
        deltas_exact_.emplace_back(acc, den_power_ * order_factorial_);
        deltas_.push_back(deltas_exact_.back().to_double());
        delta_sum_exact_ += deltas_exact_.back();
        deficit_exact_ = Rational(1) - rho_exact_ * delta_sum_exact_;
        deficit_trace_.push_back(deficit_exact_.to_double());
    }
}

void GammaSeries::extend_float(std::size_t order) {
    double mass = 0.0;
    for (double d : deltas_) mass += rho_ * d;
    for (std::size_t j = deltas_.size() - 1; j < order; ++j) {
        const std::size_t l = j + 1;
        double lg = 0.0;
        for (std::size_t i = 0; i < float_shapes_.size(); ++i) {
            lg += float_shapes_[i] * std::pow(float_ratios_[i], static_cast<double>(l));
        }
        l_gamma_.push_back(lg);
        gammas_.push_back(lg / static_cast<double>(l));

        double acc = 0.0;
        for (std::size_t k = 1; k <= j + 1; ++k) acc += l_gamma_[k - 1] * deltas_[j + 1 - k];
        deltas_.push_back(acc / static_cast<double>(j + 1));
        mass += rho_ * deltas_.back();
        deficit_trace_.push_back(1.0 - mass);
    }
}

void GammaSeries::extend_to(std::size_t order) {
    if (order <= this->order()) return;
    if (mode_ == Mode::exact) {
        extend_exact(order);
    } else {
        extend_float(order);
    }
}

void GammaSeries::extend_until(double tolerance, std::size_t max_order) {
    while (tail_estimate() >= tolerance && order() < max_order) extend_to(order() + 1);
    truncated_ = tail_estimate() >= tolerance;
}

GammaSeries gamma_series(const GammaParams& params, double tolerance, std::size_t max_order, bool force_float) {
    if (!(tolerance > 0.0)) throw ParameterError("series tolerance must be positive");
    const Mode mode = (!force_float && params.integer_shapes()) ? Mode::exact : Mode::floating;
    GammaSeries series(params, mode);
    series.extend_until(tolerance, max_order);
    return series;
}

double gamma_density_eval(const GammaSeries& series, double x) {
    if (x < 0.0) return 0.0;
    const double a = series.shape_sum();
    const double beta1 = series.beta1();
    const auto& deltas = series.deltas();
    double sum = 0.0;
    for (std::size_t j = 0; j < deltas.size(); ++j) {
        if (deltas[j] <= 0.0) continue;
        const double power = a + static_cast<double>(j);
        double log_term = series.log_rho() + std::log(deltas[j]) - std::lgamma(power) - power * std::log(beta1) - x / beta1;
        if (x == 0.0) {
            if (power > 1.0) continue;
            if (power < 1.0) return std::numeric_limits<double>::infinity();
        } else {
            log_term += (power - 1.0) * std::log(x);
        }
        sum += std::exp(log_term);
    }
    return sum;
}

}  // namespace sumident
