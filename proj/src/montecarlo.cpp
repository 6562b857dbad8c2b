#include "sumident/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sumident {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

struct ChunkStats {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
};

// Chan et al. pairwise update.
void merge(ChunkStats& into, const ChunkStats& other) {
    if (other.count == 0) return;
    if (into.count == 0) {
        into = other;
        return;
    }
    const double total = static_cast<double>(into.count + other.count);
    const double delta = other.mean - into.mean;
    into.mean += delta * static_cast<double>(other.count) / total;
    into.m2 += other.m2 + delta * delta * static_cast<double>(into.count) * static_cast<double>(other.count) / total;
    into.count += other.count;
}

std::vector<Xoshiro256> chunk_generators(const SampleSpec& spec, std::size_t chunks) {
    std::vector<Xoshiro256> gens;
    gens.reserve(chunks);
    Xoshiro256 base(spec.seed);
    for (std::size_t c = 0; c < chunks; ++c) {
        gens.push_back(base);
        base.jump();
    }
    return gens;
}

std::size_t chunk_count(const SampleSpec& spec) { return (spec.sample_count + kChunkSize - 1) / kChunkSize; }

std::size_t chunk_length(const SampleSpec& spec, std::size_t c) {
    return std::min(kChunkSize, spec.sample_count - c * kChunkSize);
}

ChunkStats run_chunk(const SampleSpec& spec, const Xoshiro256& gen, std::size_t length, unsigned m) {
    SumSampler sampler(spec, gen);
    ChunkStats st;
    for (std::size_t i = 0; i < length; ++i) {
        const double y = std::pow(sampler(), static_cast<double>(m));
        ++st.count;
        const double delta = y - st.mean;
        st.mean += delta / static_cast<double>(st.count);
        st.m2 += delta * (y - st.mean);
    }
    return st;
}

MomentEstimate finish(const std::vector<ChunkStats>& stats, unsigned m) {
    ChunkStats total;
    for (const auto& s : stats) merge(total, s);
    MomentEstimate est;
    est.m = m;
    est.sample_count = total.count;
    est.mean_of_powers = total.mean;
    if (total.count > 1) {
        const double variance = total.m2 / static_cast<double>(total.count - 1);
        est.std_error = std::sqrt(variance / static_cast<double>(total.count));
    }
    return est;
}

MomentEstimate trivial_zeroth(const SampleSpec& spec) { return {0, 1.0, 0.0, spec.sample_count}; }

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (auto& word : s_) word = splitmix64(state);
}

std::uint64_t Xoshiro256::next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

void Xoshiro256::jump() {
    static constexpr std::array<std::uint64_t, 4> kJump = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL,
                                                           0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
    std::array<std::uint64_t, 4> acc{};
    for (const std::uint64_t word : kJump) {
        for (int b = 0; b < 64; ++b) {
            if (word & (std::uint64_t{1} << b)) {
                for (std::size_t i = 0; i < 4; ++i) acc[i] ^= s_[i];
            }
            next();
        }
    }
    s_ = acc;
}

std::string to_string(Family family) {
    switch (family) {
        case Family::exponential: return "exp";
        case Family::gamma: return "gamma";
        case Family::uniform: return "uniform";
    }
    return "unknown";
}

void SampleSpec::validate() const {
    if (first.empty()) throw std::invalid_argument("sample spec has no variables");
    if (sample_count < 2) throw std::invalid_argument("a standard error needs at least two samples");
    for (double v : first) {
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("sample parameters must be positive and finite");
    }
    if (family == Family::gamma) {
        if (second.size() != first.size()) throw std::invalid_argument("gamma sample spec needs one scale per shape");
        for (double v : second) {
            if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("gamma scales must be positive and finite");
        }
    }
}

SumSampler::SumSampler(const SampleSpec& spec, Xoshiro256 rng) : spec_(&spec), rng_(rng) {}

double SumSampler::standard_normal() {
    // Marsaglia polar method; the second variate is discarded.
    for (;;) {
        const double u = 2.0 * rng_.uniform01() - 1.0;
        const double v = 2.0 * rng_.uniform01() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

double SumSampler::gamma_variate(double shape, double scale) {
    if (shape == std::floor(shape) && shape <= 64.0) {
        double sum = 0.0;
        for (int k = 0; k < static_cast<int>(shape); ++k) sum -= std::log(rng_.uniform_open0());
        return sum * scale;
    }
    if (shape < 1.0) {
        // G(a) = G(a + 1) U^(1/a)
        const double boosted = gamma_variate(shape + 1.0, 1.0);
        return boosted * std::pow(rng_.uniform_open0(), 1.0 / shape) * scale;
    }
    // Marsaglia-Tsang: d = a - 1/3, c = 1/sqrt(9d).
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = standard_normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = rng_.uniform_open0();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v * scale;
    }
}

double SumSampler::operator()() {
    const auto& p = spec_->first;
    double sum = 0.0;
    switch (spec_->family) {
        case Family::exponential:
            for (double rate : p) sum += -std::log(rng_.uniform_open0()) / rate;
            break;
        case Family::uniform:
            for (double a : p) sum += a * rng_.uniform01();
            break;
        case Family::gamma:
            for (std::size_t i = 0; i < p.size(); ++i) sum += gamma_variate(p[i], spec_->second[i]);
            break;
    }
    return sum;
}

std::vector<double> sample_sum(const SampleSpec& spec) {
    spec.validate();
    const std::size_t chunks = chunk_count(spec);
    const auto gens = chunk_generators(spec, chunks);
    std::vector<double> out(spec.sample_count);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
        const auto chunk = static_cast<std::size_t>(c);
        SumSampler sampler(spec, gens[chunk]);
        const std::size_t len = chunk_length(spec, chunk);
        for (std::size_t i = 0; i < len; ++i) out[chunk * kChunkSize + i] = sampler();
    }
    return out;
}

MomentEstimate estimate_moment(const SampleSpec& spec, unsigned m) {
    spec.validate();
    if (m == 0) return trivial_zeroth(spec);
    const std::size_t chunks = chunk_count(spec);
    const auto gens = chunk_generators(spec, chunks);
    std::vector<ChunkStats> stats(chunks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
        const auto chunk = static_cast<std::size_t>(c);
        stats[chunk] = run_chunk(spec, gens[chunk], chunk_length(spec, chunk), m);
    }
    return finish(stats, m);
}

MomentEstimate estimate_moment_serial(const SampleSpec& spec, unsigned m) {
    spec.validate();
    if (m == 0) return trivial_zeroth(spec);
    const std::size_t chunks = chunk_count(spec);
    const auto gens = chunk_generators(spec, chunks);
    std::vector<ChunkStats> stats;
    stats.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) stats.push_back(run_chunk(spec, gens[c], chunk_length(spec, c), m));
    return finish(stats, m);
}

bool mc_check(double analytic, const MomentEstimate& estimate, double z) {
    if (!(z > 0.0)) throw std::invalid_argument("z threshold must be positive");
    if (estimate.std_error == 0.0) return analytic == estimate.mean_of_powers;
    return std::fabs(analytic - estimate.mean_of_powers) <= z * estimate.std_error;
}

}  // namespace sumident
