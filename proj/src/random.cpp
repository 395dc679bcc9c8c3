#include "wick/random.hpp"

#include <cmath>
#include <stdexcept>

namespace wick {

double Rng::uniform() {
    // 53-bit mantissa, shifted into (0, 1).
    std::uint64_t bits = engine_() >> 11;
    double u = (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    return u;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586477 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("In wick::Rng::below: empty range");
    // Rejection to kill modulo bias.
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % n;
}

int Rng::binomial(int count, double prob) {
    if (count < 0)
        throw std::invalid_argument("In wick::Rng::binomial: negative count");
    if (!(prob >= 0.0 && prob <= 1.0))
        throw std::invalid_argument("In wick::Rng::binomial: prob outside [0,1]");
    int s = 0;
    for (int i = 0; i < count; ++i)
        if (uniform() < prob) ++s;
    return s;
}

int Rng::poisson(double a) {
    if (!(a > 0.0))
        throw std::invalid_argument("In wick::Rng::poisson: intensity must be positive");
    // Knuth product method; fine for the small intensities used here.
    double limit = std::exp(-a);
    int k = 0;
    double prod = uniform();
    while (prod > limit) {
        ++k;
        prod *= uniform();
    }
    return k;
}

std::size_t Rng::index_from_cdf(const std::vector<double>& cdf) {
    double u = uniform();
    std::size_t lo = 0, hi = cdf.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (u <= cdf[mid])
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace wick
