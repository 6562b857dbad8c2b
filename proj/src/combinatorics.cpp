#include "sumident/combinatorics.hpp"

#include <numeric>
#include <stdexcept>

namespace sumident {

BigInt factorial(unsigned k) {
    BigInt result = 1;
    for (unsigned i = 2; i <= k; ++i) result *= i;
    return result;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt result;
    mpz_bin_uiui(result.get_mpz_t(), n, k);
    return result;
}

BigInt multinomial(unsigned total, const Composition& parts) {
    const unsigned sum = std::accumulate(parts.parts.begin(), parts.parts.end(), 0U);
    if (sum != total || parts.total != total) {
        throw std::invalid_argument("multinomial: parts do not sum to the stated total");
    }
    // Product of binomials C(i_1, i_1) C(i_1+i_2, i_2) ...; each step stays integral.
    BigInt result = 1;
    unsigned running = 0;
    for (unsigned part : parts.parts) {
        running += part;
        result *= binomial(running, part);
    }
    return result;
}

BigInt rising_factorial_ratio(unsigned alpha, unsigned i) {
    if (alpha == 0) throw std::invalid_argument("rising_factorial_ratio: alpha must be >= 1");
    BigInt result = 1;
    for (unsigned k = 0; k < i; ++k) result *= alpha + k;
    return result;
}

CompositionGenerator::CompositionGenerator(unsigned m, unsigned n) {
    if (n == 0) throw std::invalid_argument("compositions need at least one part");
    current_.parts.assign(n, 0);
    current_.parts[0] = m;
    current_.total = m;
}

void CompositionGenerator::advance() {
    if (done_) return;
    auto& p = current_.parts;
    const std::size_t n = p.size();
    const unsigned tail = p[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) {
        if (p[k] > 0) {
            p[n - 1] = 0;
            --p[k];
            p[k + 1] = tail + 1;
            return;
        }
    }
    done_ = true;
}

std::vector<Composition> compositions(unsigned m, unsigned n) {
    std::vector<Composition> out;
    for_each_composition(m, n, [&](const Composition& c) { out.push_back(c); });
    return out;
}

BigInt stirling2_recurrence(unsigned k, unsigned j) {
    if (j > k) return 0;
    // Row-by-row DP; row[t] holds S(i, t).
    std::vector<BigInt> row(j + 1, BigInt(0));
    row[0] = 1;
    for (unsigned i = 1; i <= k; ++i) {
        const unsigned top = std::min(i, j);
        for (unsigned t = top; t >= 1; --t) row[t] = t * row[t] + row[t - 1];
        row[0] = 0;
    }
    return row[j];
}

Rational stirling2_explicit(unsigned m, unsigned n) {
    if (n == 0) throw std::invalid_argument("stirling2_explicit requires n >= 1");
    BigInt sum = 0;
    for (unsigned i = 0; i <= n; ++i) {
        BigInt term;
        mpz_ui_pow_ui(term.get_mpz_t(), i, m + n);
        term *= binomial(n, i);
        if ((n - i) % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return Rational(sum, factorial(n));
}

Rational homogeneous_symmetric_enumerate(int r, std::span<const Rational> xs) {
    if (xs.empty()) throw std::invalid_argument("homogeneous_symmetric needs at least one variable");
    if (r < 0) return 0;
    Rational total = 0;
    for_each_composition(static_cast<unsigned>(r), static_cast<unsigned>(xs.size()), [&](const Composition& c) {
        Rational term = 1;
        for (std::size_t k = 0; k < xs.size(); ++k) term *= pow(xs[k], c.parts[k]);
        total += term;
    });
    return total;
}

Rational homogeneous_symmetric_recurrence(int r, std::span<const Rational> xs) {
    if (xs.empty()) throw std::invalid_argument("homogeneous_symmetric needs at least one variable");
    if (r < 0) return 0;
    // h[d] = h_d over the variables consumed so far; starts as h_d() = [d == 0].
    std::vector<Rational> h(static_cast<std::size_t>(r) + 1, Rational(0));
    h[0] = 1;
    for (const Rational& x : xs) {
        for (std::size_t d = 1; d < h.size(); ++d) h[d] += x * h[d - 1];
    }
    return h.back();
}

Rational homogeneous_symmetric(int r, std::span<const Rational> xs) {
    return r > 8 ? homogeneous_symmetric_recurrence(r, xs) : homogeneous_symmetric_enumerate(r, xs);
}

}  // namespace sumident
