#pragma once

// Deterministic random streams. Every stochastic result in the library is a
// function of (seed, index) so that outputs do not depend on thread count or
// scheduling: work item i always draws from Rng(derive_seed(seed, domain, i)).

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace ddl {

/// splitmix64 step; advances state and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

/// Hashes a root seed and a list of indices into an independent stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> indices);

// xoshiro256** (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Rng {
   public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

   private:
    std::uint64_t s_[4];
};

/// Uniform on the open interval (0, 1); never returns 0, so log() is safe.
double uniform_open(Rng& rng);

/// Standard normal via the Marsaglia polar method (spare discarded).
double standard_normal(Rng& rng);

/// log of a Gamma(shape, 1) variate. Exact for every shape > 0: Marsaglia-Tsang
/// for shape >= 1; for shape < 1 uses Gamma(shape + 1) * U^(1/shape), formed
/// in log space so tiny variates do not underflow.
double log_gamma_variate(Rng& rng, double shape);

struct BetaVariate {
    double p;
    double log_p;
    double log1m_p;  // log(1 - p)
};

/// Beta(a, b) as X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b), kept in log
/// space. a, b > 0 are not checked here.
BetaVariate beta_variate(Rng& rng, double a, double b);

/// Binomial(n, p) as a sum of n Bernoulli trials. Intended for per-arm sizes
/// of a dose-optimization cohort (tens to hundreds).
int binomial_variate(Rng& rng, int n, double p);

}  // namespace ddl
