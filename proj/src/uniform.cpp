#include "sumident/combinatorics.hpp"
#include "sumident/densities.hpp"

#include <algorithm>
#include <map>

namespace sumident {

UniformParams::UniformParams(std::vector<Rational> lengths) : lengths_(std::move(lengths)) {
    if (lengths_.empty()) throw ParameterError("at least one interval length is required");
    for (const auto& a : lengths_) {
        if (a.sign() <= 0) throw ParameterError("interval lengths must be positive, got " + a.str());
    }
}

Rational UniformParams::total() const {
    Rational sum = 0;
    for (const auto& a : lengths_) sum += a;
    return sum;
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + it->to_double();
    return acc;
}

Rational Polynomial::integrate_with_power(unsigned m, const Rational& lo, const Rational& hi) const {
    Rational sum = 0;
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        if (coefficients[k].is_zero()) continue;
        const auto e = static_cast<unsigned long>(k + m + 1);
        sum += coefficients[k] * (pow(hi, e) - pow(lo, e)) / Rational(e);
    }
    return sum;
}

namespace {

std::size_t piece_index(const std::vector<Rational>& knots, const Rational& x) {
    // Last knot <= x, clamped so that x == knots.back() maps to the final piece.
    const auto it = std::upper_bound(knots.begin(), knots.end(), x);
    const auto idx = static_cast<std::size_t>(it - knots.begin()) - 1;
    return std::min(idx, knots.size() - 2);
}

// Expands scale * sum_s weight(s) (x - s)_+^degree into pieces on the knots
// given by the shifts, restricted to [shifts.front(), upper].
PiecewisePoly expand_truncated_powers(const std::map<Rational, BigInt>& weights, unsigned degree,
                                      const Rational& upper, const Rational& scale) {
    PiecewisePoly out;
    for (const auto& [shift, weight] : weights) {
        if (weight != 0 && shift <= upper) out.knots.push_back(shift);
    }
    if (out.knots.empty() || out.knots.back() != upper) out.knots.push_back(upper);

    std::vector<BigInt> binom_row(degree + 1);
    for (unsigned k = 0; k <= degree; ++k) binom_row[k] = binomial(degree, k);

    Polynomial running{std::vector<Rational>(degree + 1, Rational(0))};
    auto next = weights.begin();
    for (std::size_t piece = 0; piece + 1 < out.knots.size(); ++piece) {
        // Activate every truncated power whose shift is at or left of this piece.
        while (next != weights.end() && next->first <= out.knots[piece]) {
            const Rational& s = next->first;
            const Rational w = Rational(next->second) * scale;
            // (x - s)^degree = sum_k C(degree,k) x^k (-s)^(degree-k)
            for (unsigned k = 0; k <= degree; ++k) {
                running.coefficients[k] += w * Rational(binom_row[k]) * pow(-s, degree - k);
            }
            ++next;
        }
        out.pieces.push_back(running);
    }
    // Drop trailing zero coefficients for a canonical representation.
    for (auto& p : out.pieces) {
        while (p.coefficients.size() > 1 && p.coefficients.back().is_zero()) p.coefficients.pop_back();
    }
    return out;
}

}  // namespace

Rational PiecewisePoly::operator()(const Rational& x) const {
    if (x < knots.front() || x > knots.back()) return 0;
    return pieces[piece_index(knots, x)](x);
}

double PiecewisePoly::operator()(double x) const {
    if (x < knots.front().to_double() || x > knots.back().to_double()) return 0.0;
    const Rational rx = Rational::from_double(x);
    return pieces[piece_index(knots, rx)](x);
}

Rational PiecewisePoly::integral() const {
    Rational sum = 0;
    for (std::size_t k = 0; k < pieces.size(); ++k) sum += pieces[k].integrate_with_power(0, knots[k], knots[k + 1]);
    return sum;
}

bool PiecewisePoly::is_continuous() const {
    for (std::size_t k = 1; k < pieces.size(); ++k) {
        if (pieces[k - 1](knots[k]) != pieces[k](knots[k])) return false;
    }
    return true;
}

bool PiecewisePoly::sampled_nonnegative() const {
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const Rational mid = (knots[k] + knots[k + 1]) / Rational(2);
        if (pieces[k](knots[k]).sign() < 0 || pieces[k](knots[k + 1]).sign() < 0 || pieces[k](mid).sign() < 0) {
            return false;
        }
    }
    return true;
}

PiecewisePoly iid_uniform_density(unsigned n, const Rational& a) {
    if (n == 0) throw ParameterError("need at least one uniform variable");
    if (a.sign() <= 0) throw ParameterError("interval length must be positive, got " + a.str());
    std::map<Rational, BigInt> weights;
    for (unsigned i = 0; i <= n; ++i) {
        const BigInt c = binomial(n, i);
        weights.emplace(Rational(i) * a, i % 2 == 0 ? c : BigInt(-c));
    }
    const Rational scale = inverse(pow(a, n) * Rational(factorial(n - 1)));
    return expand_truncated_powers(weights, n - 1, Rational(n) * a, scale);
}

PiecewisePoly general_uniform_density(const UniformParams& params) {
    const auto& a = params.lengths();
    const std::size_t n = a.size();
    if (n < 2) throw ParameterError("the general uniform-sum density needs at least two variables");
    if (n > 24) throw ParameterError("too many uniform variables for subset enumeration");

    // Subsets with equal sums collapse onto one knot with the summed signs.
    std::map<Rational, BigInt> weights;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Rational shift = 0;
        int size = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) {
                shift += a[i];
                ++size;
            }
        }
        weights[shift] += size % 2 == 0 ? 1 : -1;
    }
    Rational product = 1;
    for (const auto& ai : a) product *= ai;
    const Rational scale = inverse(product * Rational(factorial(static_cast<unsigned>(n - 1))));
    return expand_truncated_powers(weights, static_cast<unsigned>(n - 1), params.total(), scale);
}

Rational truncated_power_integral(const Rational& shift, unsigned n, unsigned m, const Rational& upper) {
    if (n == 0) throw ParameterError("truncated power degree index n must be >= 1");
    if (shift > upper) return 0;
    // (x - s)^(n-1) x^m = sum_k C(n-1,k) (-s)^(n-1-k) x^(k+m)
    Rational sum = 0;
    for (unsigned k = 0; k < n; ++k) {
        const auto e = static_cast<unsigned long>(k + m + 1);
        sum += Rational(binomial(n - 1, k)) * pow(-shift, n - 1 - k) * (pow(upper, e) - pow(shift, e)) / Rational(e);
    }
    return sum;
}

}  // namespace sumident
