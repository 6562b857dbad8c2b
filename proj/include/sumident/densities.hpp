#pragma once

// Closed-form densities for sums of independent exponential, Gamma and
// uniform random variables.

#include "sumident/rational.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumident {

enum class Mode { exact, floating };

std::string to_string(Mode mode);

/// Raised when distribution parameters violate their invariants.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

//--------------------------------------------------------------------------
// Exponential sums
//--------------------------------------------------------------------------

/// Distinct positive rates lambda_1..lambda_n, n >= 2.
class RateParams {
public:
    explicit RateParams(std::vector<Rational> rates);

    [[nodiscard]] const std::vector<Rational>& rates() const { return rates_; }
    [[nodiscard]] std::size_t size() const { return rates_.size(); }
    [[nodiscard]] std::vector<double> as_doubles() const;

private:
    std::vector<Rational> rates_;
};

template <class T>
struct ExpAtom {
    T weight;
    T rate;
};

/// density(x) = sum_k weight_k exp(-rate_k x) on [0, inf).
template <class T>
struct BasicExpMixDensity {
    std::vector<ExpAtom<T>> atoms;

    [[nodiscard]] double operator()(double x) const {
        if (x < 0.0) return 0.0;
        double sum = 0.0;
        for (const auto& a : atoms) sum += to_double(a.weight) * std::exp(-to_double(a.rate) * x);
        return sum;
    }

    /// sum_k weight_k / rate_k; equals 1 for a valid density.
    [[nodiscard]] T mass() const {
        T total{0};
        for (const auto& a : atoms) total += a.weight / a.rate;
        return total;
    }
};

using ExpMixDensity = BasicExpMixDensity<Rational>;
using FloatExpMixDensity = BasicExpMixDensity<double>;

/// Hypoexponential density with exact weights
/// c_k = (prod_j lambda_j) / prod_{l != k} (lambda_l - lambda_k).
ExpMixDensity hypoexp_density(const RateParams& params);

/// Double-precision counterpart. Refuses rate vectors whose minimum relative
/// separation min|l_i - l_j| / max l is below 1e-6, where the alternating
/// weights cancel catastrophically.
FloatExpMixDensity hypoexp_density(std::span<const double> rates);

/// sum_k (-1)^k prod_{j<l; j,l != k} (lambda_l - lambda_j). Always zero.
Rational vandermonde_zero(const RateParams& params);

//--------------------------------------------------------------------------
// Gamma sums
//--------------------------------------------------------------------------

/// Shapes alpha_i > 0 and scales beta_i > 0, given as exact rationals (decimal
/// input converts exactly). normalized() moves the first minimal scale to the
/// front; the remaining order is preserved.
struct GammaParams {
    std::vector<Rational> shapes;
    std::vector<Rational> scales;

    void validate() const;
    [[nodiscard]] bool integer_shapes() const;
    [[nodiscard]] GammaParams normalized() const;
};

/// Truncated single-kernel series for the density of a Gamma sum:
///   g(x) = rho sum_j delta_j x^(A+j-1) e^(-x/beta_1) / (Gamma(A+j) beta_1^(A+j))
/// with delta_0 = 1 and delta_{j+1} = (1/(j+1)) sum_{l=1}^{j+1} l gamma_l delta_{j+1-l},
/// gamma_l = sum_i alpha_i (1 - beta_1/beta_i)^l / l.
///
/// In exact mode (integer shapes) every coefficient is an exact rational and
/// the mass deficit 1 - rho sum_j delta_j is computed without rounding. The
/// recursion runs on integers scaled by D^j j!, where D is the common
/// denominator of the ratios (1 - beta_1/beta_i).
class GammaSeries {
public:
    GammaSeries(const GammaParams& params, Mode mode);

    /// Computes coefficients up to and including `order`.
    void extend_to(std::size_t order);

    /// Extends until the mass deficit drops below `tolerance` or `max_order`
    /// is reached; sets truncated() in the latter case.
    void extend_until(double tolerance, std::size_t max_order);

    [[nodiscard]] Mode mode() const { return mode_; }
    [[nodiscard]] std::size_t order() const { return deltas_.size() - 1; }
    [[nodiscard]] bool truncated() const { return truncated_; }

    [[nodiscard]] double rho() const { return rho_; }
    [[nodiscard]] double log_rho() const { return log_rho_; }
    [[nodiscard]] double shape_sum() const { return shape_sum_; }
    [[nodiscard]] double beta1() const { return beta1_; }
    [[nodiscard]] const std::vector<double>& deltas() const { return deltas_; }
    /// gammas()[l-1] is gamma_l.
    [[nodiscard]] const std::vector<double>& gammas() const { return gammas_; }
    /// deficit_trace()[j] = 1 - rho sum_{i<=j} delta_i.
    [[nodiscard]] const std::vector<double>& deficit_trace() const { return deficit_trace_; }
    [[nodiscard]] double tail_estimate() const { return deficit_trace_.back(); }
    /// Shapes and 1 - beta_1/beta_i, in series order (minimal scale first).
    [[nodiscard]] const std::vector<double>& shapes() const { return float_shapes_; }
    [[nodiscard]] const std::vector<double>& scale_ratios() const { return float_ratios_; }

    // Exact-mode views; empty/zero in float mode.
    [[nodiscard]] const Rational& rho_exact() const { return rho_exact_; }
    [[nodiscard]] const Rational& beta1_exact() const { return beta1_exact_; }
    [[nodiscard]] const Rational& shape_sum_exact() const { return shape_sum_exact_; }
    [[nodiscard]] const std::vector<Rational>& deltas_exact() const { return deltas_exact_; }
    [[nodiscard]] const std::vector<Rational>& gammas_exact() const { return gammas_exact_; }
    [[nodiscard]] const Rational& deficit_exact() const { return deficit_exact_; }

private:
    void extend_exact(std::size_t order);
    void extend_float(std::size_t order);
    [[nodiscard]] const BigInt& scaled_gamma(std::size_t l);

    Mode mode_;
    bool truncated_ = false;

    double rho_ = 1.0;
    double log_rho_ = 0.0;
    double shape_sum_ = 0.0;
    double beta1_ = 1.0;
    std::vector<double> deltas_;
    std::vector<double> gammas_;
    std::vector<double> deficit_trace_;

    // Float-mode recursion state.
    std::vector<double> float_shapes_;
    std::vector<double> float_ratios_;  // 1 - beta_1/beta_i
    std::vector<double> l_gamma_;       // l * gamma_l, index l-1

    // Exact-mode recursion state.
    std::vector<unsigned long> int_shapes_;
    std::vector<BigInt> ratio_numerators_;  // (1 - beta_1/beta_i) * D
    BigInt common_den_;                     // D
    std::vector<BigInt> g_;                 // l gamma_l D^l, index l-1
    std::vector<BigInt> d_;                 // delta_j D^j j!
    BigInt den_power_ = 1;                  // D^J
    BigInt order_factorial_ = 1;            // J!
    Rational rho_exact_;
    Rational beta1_exact_;
    Rational shape_sum_exact_;
    std::vector<Rational> deltas_exact_;
    std::vector<Rational> gammas_exact_;
    Rational delta_sum_exact_;
    Rational deficit_exact_;
};

/// Chooses exact mode when every shape is an integer (unless `force_float`),
/// then extends the series until the mass deficit is below `tolerance`.
GammaSeries gamma_series(const GammaParams& params, double tolerance, std::size_t max_order,
                         bool force_float = false);

/// Evaluates the truncated series at x; each term is formed in log space.
/// Returns 0 for x < 0.
double gamma_density_eval(const GammaSeries& series, double x);

//--------------------------------------------------------------------------
// Uniform sums
//--------------------------------------------------------------------------

/// Right endpoints a_i > 0 of the intervals [0, a_i].
class UniformParams {
public:
    explicit UniformParams(std::vector<Rational> lengths);

    [[nodiscard]] const std::vector<Rational>& lengths() const { return lengths_; }
    [[nodiscard]] std::size_t size() const { return lengths_.size(); }
    [[nodiscard]] Rational total() const;

private:
    std::vector<Rational> lengths_;
};

/// Polynomial with exact coefficients; coefficients[k] multiplies x^k.
struct Polynomial {
    std::vector<Rational> coefficients;

    [[nodiscard]] Rational operator()(const Rational& x) const;
    [[nodiscard]] double operator()(double x) const;
    /// Exact integral of x^m p(x) over [lo, hi].
    [[nodiscard]] Rational integrate_with_power(unsigned m, const Rational& lo, const Rational& hi) const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// Density that is polynomial between strictly increasing knots and zero
/// outside [knots.front(), knots.back()]. pieces[k] lives on [knots[k], knots[k+1]].
struct PiecewisePoly {
    std::vector<Rational> knots;
    std::vector<Polynomial> pieces;

    /// At an interior knot the right-hand piece is used.
    [[nodiscard]] Rational operator()(const Rational& x) const;
    [[nodiscard]] double operator()(double x) const;

    [[nodiscard]] Rational integral() const;
    /// Adjacent pieces agree at every interior knot.
    [[nodiscard]] bool is_continuous() const;
    /// Nonnegative at every knot and every piece midpoint.
    [[nodiscard]] bool sampled_nonnegative() const;

    friend bool operator==(const PiecewisePoly&, const PiecewisePoly&) = default;
};

/// Irwin-Hall type density of n i.i.d. uniform[0, a] variables:
///   (1 / (a^n (n-1)!)) sum_i (-1)^i C(n,i) (x - i a)_+^(n-1).
PiecewisePoly iid_uniform_density(unsigned n, const Rational& a);

/// Density of sum_i U[0, a_i], n >= 2:
///   (1 / ((n-1)! prod a_i)) [x^(n-1) + sum_{nonempty S} (-1)^|S| (x - sum_S a)_+^(n-1)].
/// Coincident subset sums are merged into a single knot.
PiecewisePoly general_uniform_density(const UniformParams& params);

/// Exact integral of (x - shift)^(n-1) x^m over [shift, upper]; 0 when shift > upper.
Rational truncated_power_integral(const Rational& shift, unsigned n, unsigned m, const Rational& upper);

}  // namespace sumident
