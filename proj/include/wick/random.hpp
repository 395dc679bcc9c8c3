#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace wick {

// All sampling goes through mt19937_64 plus hand-rolled transforms; the
// std::distribution classes are implementation-defined, which would break
// the byte-identical-output contract across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on (0, 1); never returns 0 or 1.
    double uniform();

    // Standard normal via Box-Muller (both values used).
    double normal();

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

    // Binomial(count, prob) as a Bernoulli sum; counts here are small.
    int binomial(int count, double prob);

    // Poisson(a) by inverse transform on the cumulative sums.
    int poisson(double a);

    // Index into a cumulative distribution table (strictly increasing,
    // back() == 1): smallest i with u <= cdf[i].
    std::size_t index_from_cdf(const std::vector<double>& cdf);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Deterministic sub-seed derivation (splitmix64 step) so concurrent batches
// stay reproducible.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

} // namespace wick
