#pragma once

// Combinatorial primitives over exact integers: factorials, multinomials,
// weak compositions, Stirling numbers of the second kind and complete
// homogeneous symmetric functions.

#include "sumident/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace sumident {

/// Weak composition (i_1, ..., i_n) of `total`.
struct Composition {
    std::vector<unsigned> parts;
    unsigned total = 0;
};

BigInt factorial(unsigned k);
BigInt binomial(unsigned n, unsigned k);

/// total! / (i_1! ... i_n!). Throws std::invalid_argument if the parts do not
/// sum to `total`.
BigInt multinomial(unsigned total, const Composition& parts);

/// alpha (alpha+1) ... (alpha+i-1) = (alpha+i-1)! / (alpha-1)!; 1 when i == 0.
/// Requires alpha >= 1.
BigInt rising_factorial_ratio(unsigned alpha, unsigned i);

/// Rising product x (x+1) ... (x+i-1) for any scalar type.
template <class T>
T rising_product(const T& x, unsigned i) {
    T result{1};
    for (unsigned k = 0; k < i; ++k) result *= x + T(static_cast<int>(k));
    return result;
}

/// Enumerates the weak compositions of m into n parts in reverse
/// lexicographic order, starting at (m, 0, ..., 0) and ending at (0, ..., 0, m).
class CompositionGenerator {
public:
    CompositionGenerator(unsigned m, unsigned n);

    [[nodiscard]] const Composition& current() const { return current_; }
    [[nodiscard]] bool done() const { return done_; }
    void advance();

private:
    Composition current_;
    bool done_ = false;
};

/// Calls fn(const Composition&) once per weak composition of m into n parts.
template <class Fn>
void for_each_composition(unsigned m, unsigned n, Fn&& fn) {
    for (CompositionGenerator gen(m, n); !gen.done(); gen.advance()) fn(gen.current());
}

std::vector<Composition> compositions(unsigned m, unsigned n);

/// S(k, j) by the recurrence S(k,j) = j S(k-1,j) + S(k-1,j-1). Out-of-range
/// arguments follow the usual convention: S(0,0) = 1, S(k,0) = 0 for k > 0,
/// S(k,j) = 0 for j > k.
BigInt stirling2_recurrence(unsigned k, unsigned j);

/// S(m+n, n) by the alternating-sum formula
/// (1/n!) sum_i (-1)^(n-i) C(n,i) i^(m+n). Requires n >= 1.
Rational stirling2_explicit(unsigned m, unsigned n);

/// h_r(x_1..x_n) by summing every degree-r monomial. Slow; used as the oracle.
Rational homogeneous_symmetric_enumerate(int r, std::span<const Rational> xs);

/// h_r(x_1..x_n) by the recurrence h_r(x_1..x_k) = h_r(x_1..x_{k-1}) + x_k h_{r-1}(x_1..x_k).
Rational homogeneous_symmetric_recurrence(int r, std::span<const Rational> xs);

/// h_r with h_0 = 1 and h_r = 0 for r < 0. Enumerates for r <= 8, uses the
/// recurrence above that. Throws std::invalid_argument on empty xs.
Rational homogeneous_symmetric(int r, std::span<const Rational> xs);

}  // namespace sumident
