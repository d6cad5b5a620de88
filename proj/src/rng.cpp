#include "otlab/rng.hpp"

#include <cmath>

namespace otlab {

uint64_t SplitRng::mix(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

SplitRng SplitRng::stream(std::string_view name) const {
    // FNV-1a over the stream name, folded into the key.
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : name) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return SplitRng(mix(key_ ^ h), 0);
}

SplitRng SplitRng::stream(uint64_t index) const {
    return SplitRng(mix(key_ ^ (0x9E3779B97F4A7C15ULL * (index + 1))), 0);
}

uint64_t SplitRng::poisson(double lambda) {
    uint64_t total = 0;
    while (lambda > 0.0) {
        const double chunk = lambda > 32.0 ? 32.0 : lambda;
        lambda -= chunk;
        const double limit = std::exp(-chunk);
        double prod = next_double();
        uint64_t k = 0;
        while (prod > limit) {
            ++k;
            prod *= next_double();
        }
        total += k;
    }
    return total;
}

}  // namespace otlab
