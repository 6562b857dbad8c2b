#pragma once

// Seeded Monte Carlo sampling of the three summation families, used as an
// independent statistical check of the analytic moments.
//
// Generator: xoshiro256** (Blackman & Vigna), seeded by expanding the 64-bit
// seed through four successive splitmix64 outputs.
//
// Stream splitting: samples are produced in consecutive chunks of
// kChunkSize. Chunk c draws from the base generator advanced by c calls of
// jump() (2^128 steps each), so the chunks never overlap and the output does
// not depend on the number of threads. Per-chunk statistics are merged in
// chunk order.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sumident {

class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed);

    std::uint64_t next();
    /// Advances by 2^128 steps.
    void jump();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    /// Uniform on (0, 1].
    double uniform_open0() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

private:
    std::array<std::uint64_t, 4> s_{};
};

std::uint64_t splitmix64(std::uint64_t& state);

enum class Family { exponential, gamma, uniform };

std::string to_string(Family family);

struct SampleSpec {
    Family family = Family::exponential;
    /// exponential: rates; gamma: shapes; uniform: right endpoints a_i.
    std::vector<double> first;
    /// gamma: scales; unused otherwise.
    std::vector<double> second;
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on inconsistent or non-positive parameters.
    void validate() const;
};

inline constexpr std::size_t kChunkSize = std::size_t{1} << 16;
inline constexpr std::size_t kMinVerdictSamples = 1000;

/// Draws one realisation of the sum per call from a single substream.
class SumSampler {
public:
    SumSampler(const SampleSpec& spec, Xoshiro256 rng);
    double operator()();

private:
    double gamma_variate(double shape, double scale);
    double standard_normal();

    const SampleSpec* spec_;
    Xoshiro256 rng_;
};

/// All sample_count realisations, chunked as described above.
std::vector<double> sample_sum(const SampleSpec& spec);

struct MomentEstimate {
    unsigned m = 0;
    double mean_of_powers = 0.0;
    double std_error = 0.0;
    std::size_t sample_count = 0;

    friend bool operator==(const MomentEstimate&, const MomentEstimate&) = default;
};

/// Empirical E[S^m] with standard error sd(S^m)/sqrt(N), chunks run under
/// OpenMP.
MomentEstimate estimate_moment(const SampleSpec& spec, unsigned m);
/// Single-threaded reference; bitwise identical to estimate_moment.
MomentEstimate estimate_moment_serial(const SampleSpec& spec, unsigned m);

/// |analytic - mean| <= z * std_error (exact equality when std_error is 0).
bool mc_check(double analytic, const MomentEstimate& estimate, double z = 5.0);

}  // namespace sumident
