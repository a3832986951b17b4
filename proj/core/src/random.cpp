#include "ddl/random.hpp"

#include <bit>
#include <cmath>

namespace ddl {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> indices) {
    std::uint64_t state = seed;
    std::uint64_t h = splitmix64(state);
    for (std::uint64_t i : indices) {
        state = h ^ (i + 0x632be59bd9b4e019ULL);
        h = splitmix64(state);
    }
    return h;
}

Rng::Rng(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (auto& w : s_) w = splitmix64(state);
}

Rng::result_type Rng::operator()() {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double uniform_open(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double standard_normal(Rng& rng) {
    for (;;) {
        const double u = 2.0 * uniform_open(rng) - 1.0;
        const double v = 2.0 * uniform_open(rng) - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

namespace {

// Marsaglia & Tsang (2000), shape >= 1. Returns log of the variate.
double log_gamma_mt(Rng& rng, double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_open(rng);
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d) + std::log(v);
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return std::log(d) + std::log(v);
    }
}

}  // namespace

double log_gamma_variate(Rng& rng, double shape) {
    if (shape >= 1.0) return log_gamma_mt(rng, shape);
    const double lg = log_gamma_mt(rng, shape + 1.0);
    return lg + std::log(uniform_open(rng)) / shape;
}

BetaVariate beta_variate(Rng& rng, double a, double b) {
    const double lx = log_gamma_variate(rng, a);
    const double ly = log_gamma_variate(rng, b);
    // p = 1 / (1 + exp(ly - lx))
    const double d = ly - lx;
    BetaVariate out{};
    if (d > 0.0) {
        const double e = std::exp(-d);
        out.log_p = -d - std::log1p(e);
        out.log1m_p = -std::log1p(e);
        out.p = e / (1.0 + e);
    } else {
        const double e = std::exp(d);
        out.log_p = -std::log1p(e);
        out.log1m_p = d - std::log1p(e);
        out.p = 1.0 / (1.0 + e);
    }
    return out;
}

int binomial_variate(Rng& rng, int n, double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n;
    int k = 0;
    for (int i = 0; i < n; ++i) k += uniform_open(rng) < p ? 1 : 0;
    return k;
}

}  // namespace ddl
