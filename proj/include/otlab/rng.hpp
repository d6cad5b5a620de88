#pragma once

#include <cstdint>
#include <string_view>

namespace otlab {

/// Counter-based generator: each output is the SplitMix64 finalizer applied to
/// key + counter * golden ratio. Streams are derived by hashing a stream name
/// into the key, so every operation draws from its own independent stream and
/// results are reproducible across platforms and call orders.
class SplitRng {
public:
    explicit SplitRng(uint64_t seed) : key_(mix(seed ^ 0x853c49e6748fea9bULL)) {}

    SplitRng stream(std::string_view name) const;
    SplitRng stream(uint64_t index) const;

    uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }

    /// Uniform in [0,1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [a,b).
    double uniform(double a, double b) { return a + (b - a) * next_double(); }

    /// Exact Poisson sample (Knuth product method on chunks of lambda <= 32).
    uint64_t poisson(double lambda);

private:
    static uint64_t mix(uint64_t z);
    SplitRng(uint64_t key, int) : key_(key) {}

    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace otlab
