#pragma once

// Raw moments E[S^m] of the three summation families, by two independent
// routes: multinomial expansion over per-variable moments, and integration
// of the closed-form density.

#include "sumident/densities.hpp"
#include "sumident/rational.hpp"

#include <cstddef>
#include <vector>

namespace sumident {

/// table[k][i] holds E[X_k^i] for i = 0..m.
template <class T>
using MomentTable = std::vector<std::vector<T>>;

/// sum over weak compositions i of m of multinomial(m; i) prod_k table[k][i_k].
/// The parallel version splits on the first part and reduces in a fixed
/// order, so its result is identical to the serial one.
template <class T>
T expansion_moment(const MomentTable<T>& table, unsigned m);
template <class T>
T expansion_moment_serial(const MomentTable<T>& table, unsigned m);

template <class T>
MomentTable<T> exponential_moment_table(const std::vector<Rational>& rates, unsigned m);
template <class T>
MomentTable<T> gamma_moment_table(const GammaParams& params, unsigned m);
template <class T>
MomentTable<T> uniform_moment_table(const std::vector<Rational>& lengths, unsigned m);

/// Exponential rates lambda_i: per-variable moments i!/lambda^i.
Rational moment_by_expansion(const RateParams& params, unsigned m);
/// Gamma(alpha, beta): per-variable moments beta^i alpha (alpha+1) ... (alpha+i-1).
Rational moment_by_expansion(const GammaParams& params, unsigned m);
/// Uniform[0, a]: per-variable moments a^i / (i+1).
Rational moment_by_expansion(const UniformParams& params, unsigned m);

/// sum_k (m!/lambda_k^m) prod_{l != k} lambda_l / (lambda_l - lambda_k).
template <class T>
T hypoexp_moment_closed(const std::vector<T>& rates, unsigned m);
Rational hypoexp_moment_closed(const RateParams& params, unsigned m);

/// Exact integral of x^m against the piecewise density.
Rational piecewise_moment(const PiecewisePoly& density, unsigned m);

template <class T>
struct MomentPair {
    T by_expansion;
    T by_density;
    Mode mode;
    unsigned order;
};

MomentPair<Rational> exponential_moment_pair(const RateParams& params, unsigned m);
MomentPair<Rational> uniform_moment_pair(const UniformParams& params, unsigned m);

/// Running value of rho beta_1^m sum_{j<=J} delta_j (A+j)(A+j+1)...(A+j+m-1)
/// as a series grows. Exact in exact mode.
class SeriesMomentSum {
public:
    explicit SeriesMomentSum(unsigned m) : m_(m) {}

    /// Adds the terms of `series` not yet included.
    void update(const GammaSeries& series);

    [[nodiscard]] std::size_t terms() const { return terms_; }
    [[nodiscard]] Rational exact(const GammaSeries& series) const;
    [[nodiscard]] double value(const GammaSeries& series) const;

private:
    unsigned m_;
    std::size_t terms_ = 0;
    Rational exact_sum_ = 0;
    double float_sum_ = 0.0;
};

struct SeriesMoment {
    double value = 0.0;
    Rational exact = 0;  // meaningful in exact mode only
    Mode mode = Mode::floating;
    std::size_t order = 0;
    bool truncated = false;
    /// Upper bound on the omitted tail; see series_moment_tail_bound.
    double envelope = 0.0;
};

/// Moment of the Gamma sum from the truncated series. Throws for m == 0
/// (the zeroth moment is the mass, see GammaSeries::deficit_trace).
/// Upper bound on what the series omits beyond its current order for E[S^m].
double series_moment_tail_bound(const GammaSeries& series, unsigned m);

SeriesMoment gamma_moment_by_series(const GammaSeries& series, unsigned m);

}  // namespace sumident
