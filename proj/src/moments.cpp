#include "sumident/moments.hpp"

#include "sumident/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sumident {

namespace {

template <class T>
T from_big(const BigInt& v) {
    if constexpr (std::is_same_v<T, Rational>) {
        return Rational(v);
    } else {
        return v.get_d();
    }
}

template <class T>
T from_rational(const Rational& v) {
    if constexpr (std::is_same_v<T, Rational>) {
        return v;
    } else {
        return v.to_double();
    }
}

// Sum over compositions of `rest` into the variables [first, n), each term
// weighted by rest!/prod(i_k!) times the table entries.
template <class T>
T composition_sum(const MomentTable<T>& table, std::size_t first, unsigned rest) {
    const std::size_t parts = table.size() - first;
    T total{0};
    for_each_composition(rest, static_cast<unsigned>(parts), [&](const Composition& c) {
        T term = from_big<T>(multinomial(rest, c));
        for (std::size_t k = 0; k < parts; ++k) term *= table[first + k][c.parts[k]];
        total += term;
    });
    return total;
}

template <class T>
void check_table(const MomentTable<T>& table, unsigned m) {
    if (table.empty()) throw std::invalid_argument("moment table needs at least one variable");
    for (const auto& row : table) {
        if (row.size() < m + 1) throw std::invalid_argument("moment table rows must cover orders 0..m");
    }
}

// Splits on i_1: multinomial(m; i_1, rest) = C(m, i_1) multinomial(m - i_1; rest).
// Partials are combined in i_1 order whether or not they were computed in
// parallel, so floating-point results do not depend on the thread count.
template <class T>
T split_sum(const MomentTable<T>& table, unsigned m, bool parallel) {
    check_table(table, m);
    if (table.size() == 1) return table[0][m];
    std::vector<T> partial(m + 1, T{0});
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (int first = static_cast<int>(m); first >= 0; --first) {
        const auto i1 = static_cast<unsigned>(first);
        T value = composition_sum(table, 1, m - i1);
        value *= from_big<T>(binomial(m, i1)) * table[0][i1];
        partial[m - i1] = std::move(value);
    }
    T total{0};
    for (const auto& p : partial) total += p;
    return total;
}

}  // namespace

template <class T>
T expansion_moment_serial(const MomentTable<T>& table, unsigned m) {
    return split_sum(table, m, false);
}

template <class T>
T expansion_moment(const MomentTable<T>& table, unsigned m) {
    return split_sum(table, m, true);
}

template <class T>
MomentTable<T> exponential_moment_table(const std::vector<Rational>& rates, unsigned m) {
    MomentTable<T> table;
    for (const auto& lambda : rates) {
        std::vector<T> row;
        for (unsigned i = 0; i <= m; ++i) row.push_back(from_rational<T>(Rational(factorial(i)) / pow(lambda, i)));
        table.push_back(std::move(row));
    }
    return table;
}

template <class T>
MomentTable<T> gamma_moment_table(const GammaParams& params, unsigned m) {
    params.validate();
    MomentTable<T> table;
    for (std::size_t k = 0; k < params.shapes.size(); ++k) {
        std::vector<T> row;
        for (unsigned i = 0; i <= m; ++i) {
            Rational mu = pow(params.scales[k], i);
            if (params.shapes[k].is_integer()) {
                mu *= Rational(rising_factorial_ratio(static_cast<unsigned>(params.shapes[k].numerator().get_ui()), i));
            } else {
                mu *= rising_product(params.shapes[k], i);
            }
            row.push_back(from_rational<T>(mu));
        }
        table.push_back(std::move(row));
    }
    return table;
}

template <class T>
MomentTable<T> uniform_moment_table(const std::vector<Rational>& lengths, unsigned m) {
    MomentTable<T> table;
    for (const auto& a : lengths) {
        std::vector<T> row;
        for (unsigned i = 0; i <= m; ++i) row.push_back(from_rational<T>(pow(a, i) / Rational(i + 1)));
        table.push_back(std::move(row));
    }
    return table;
}

Rational moment_by_expansion(const RateParams& params, unsigned m) {
    return expansion_moment(exponential_moment_table<Rational>(params.rates(), m), m);
}

Rational moment_by_expansion(const GammaParams& params, unsigned m) {
    return expansion_moment(gamma_moment_table<Rational>(params, m), m);
}

Rational moment_by_expansion(const UniformParams& params, unsigned m) {
    return expansion_moment(uniform_moment_table<Rational>(params.lengths(), m), m);
}

template <class T>
T hypoexp_moment_closed(const std::vector<T>& rates, unsigned m) {
    const T m_factorial = from_big<T>(factorial(m));
    T total{0};
    for (std::size_t k = 0; k < rates.size(); ++k) {
        T term = m_factorial / power(rates[k], m);
        for (std::size_t l = 0; l < rates.size(); ++l) {
            if (l != k) term *= rates[l] / (rates[l] - rates[k]);
        }
        total += term;
    }
    return total;
}

Rational hypoexp_moment_closed(const RateParams& params, unsigned m) {
    return hypoexp_moment_closed<Rational>(params.rates(), m);
}

Rational piecewise_moment(const PiecewisePoly& density, unsigned m) {
    Rational sum = 0;
    for (std::size_t k = 0; k < density.pieces.size(); ++k) {
        sum += density.pieces[k].integrate_with_power(m, density.knots[k], density.knots[k + 1]);
    }
    return sum;
}

MomentPair<Rational> exponential_moment_pair(const RateParams& params, unsigned m) {
    return {moment_by_expansion(params, m), hypoexp_moment_closed(params, m), Mode::exact, m};
}

MomentPair<Rational> uniform_moment_pair(const UniformParams& params, unsigned m) {
    const PiecewisePoly density = params.size() == 1 ? iid_uniform_density(1, params.lengths()[0])
                                                     : general_uniform_density(params);
    return {moment_by_expansion(params, m), piecewise_moment(density, m), Mode::exact, m};
}

void SeriesMomentSum::update(const GammaSeries& series) {
    const std::size_t available = series.order() + 1;
    for (std::size_t j = terms_; j < available; ++j) {
        if (series.mode() == Mode::exact) {
            const Rational shift = series.shape_sum_exact() + Rational(j);
            exact_sum_ += series.deltas_exact()[j] * rising_product(shift, m_);
        } else {
            float_sum_ += series.deltas()[j] * rising_product(series.shape_sum() + static_cast<double>(j), m_);
        }
    }
    terms_ = available;
}

Rational SeriesMomentSum::exact(const GammaSeries& series) const {
    if (series.mode() != Mode::exact) throw std::logic_error("exact moment requested from a float series");
    return series.rho_exact() * pow(series.beta1_exact(), m_) * exact_sum_;
}

double SeriesMomentSum::value(const GammaSeries& series) const {
    if (series.mode() == Mode::exact) return exact(series).to_double();
    return std::exp(series.log_rho() + m_ * std::log(series.beta1())) * float_sum_;
}

double series_moment_tail_bound(const GammaSeries& series, unsigned m) {
    // The omitted part is rho beta_1^m sum_{j>J} delta_j (A+j)^(m) with
    // sum_j delta_j t^j = f(t) = prod_i (1 - c_i t)^(-alpha_i). Cauchy's estimate
    // delta_j <= f(t) t^-j holds for every 1 < t < 1/max c_i; take the best t
    // on a fixed grid.
    const auto& c = series.scale_ratios();
    const auto& alpha = series.shapes();
    const double r = *std::max_element(c.begin(), c.end());
    if (r <= 0.0) return 0.0;
    const double a = series.shape_sum();
    const double J = static_cast<double>(series.order());

    auto log_rising = [m](double x) {
        double out = 0.0;
        for (unsigned k = 0; k < m; ++k) out += std::log(x + k);
        return out;
    };
    double best = std::numeric_limits<double>::infinity();
    for (int step = 1; step < 64; ++step) {
        const double log_t = -std::log(r) * step / 64.0;
        const double t = std::exp(log_t);
        double log_f = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) log_f -= alpha[i] * std::log1p(-c[i] * t);
        // sum_{j>J} (A+j)^(m) t^-j, relative to its first term. The term ratio
        // (A+j+m)/(A+j)/t decreases in j, so once it is below 1 the rest is
        // bounded by a geometric series.
        double rel = 0.0;
        double term = 1.0;
        for (double j = J + 1;; j += 1) {
            rel += term;
            const double ratio = std::exp(log_rising(a + j + 1) - log_rising(a + j) - log_t);
            if (ratio < 0.9 || (ratio < 1.0 && j > J + 1000)) {
                rel += term * ratio / (1.0 - ratio);
                break;
            }
            term *= ratio;
        }
        const double log_bound = series.log_rho() + m * std::log(series.beta1()) + log_f + log_rising(a + J + 1) -
                                 (J + 1) * log_t + std::log(rel);
        best = std::min(best, log_bound);
    }
    return std::exp(best);
}

SeriesMoment gamma_moment_by_series(const GammaSeries& series, unsigned m) {
    if (m == 0) throw std::invalid_argument("gamma_moment_by_series needs m >= 1");
    SeriesMomentSum sum(m);
    sum.update(series);
    SeriesMoment out;
    out.mode = series.mode();
    if (out.mode == Mode::exact) {
        out.exact = sum.exact(series);
        out.value = out.exact.to_double();
    } else {
        out.value = sum.value(series);
    }
    out.order = series.order();
    out.truncated = series.truncated();
    out.envelope = series_moment_tail_bound(series, m);
    return out;
}

template Rational expansion_moment<Rational>(const MomentTable<Rational>&, unsigned);
template double expansion_moment<double>(const MomentTable<double>&, unsigned);
template Rational expansion_moment_serial<Rational>(const MomentTable<Rational>&, unsigned);
template double expansion_moment_serial<double>(const MomentTable<double>&, unsigned);
template MomentTable<Rational> exponential_moment_table<Rational>(const std::vector<Rational>&, unsigned);
template MomentTable<double> exponential_moment_table<double>(const std::vector<Rational>&, unsigned);
template MomentTable<Rational> gamma_moment_table<Rational>(const GammaParams&, unsigned);
template MomentTable<double> gamma_moment_table<double>(const GammaParams&, unsigned);
template MomentTable<Rational> uniform_moment_table<Rational>(const std::vector<Rational>&, unsigned);
template MomentTable<double> uniform_moment_table<double>(const std::vector<Rational>&, unsigned);
template Rational hypoexp_moment_closed<Rational>(const std::vector<Rational>&, unsigned);
template double hypoexp_moment_closed<double>(const std::vector<double>&, unsigned);

}  // namespace sumident
