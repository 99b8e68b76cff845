#ifndef VIZING_RNG_HPP
#define VIZING_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace vizing {

// Deterministic 64-bit generator (splitmix64). Hand-rolled instead of
// std::mt19937 + distributions so that outputs are bit-stable across
// platforms and standard libraries; bounded draws use rejection sampling,
// which keeps them exactly uniform.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, n). Rejection sampling over the top multiple of n.
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    // Uniform integer in [lo, hi] inclusive.
    int64_t between(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (next_u64() & 1ull) != 0; }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    uint64_t state_;
};

// Mixes a key list into a single substream seed. Used to hand out
// independent, reproducible streams per (seed, stage, edge, attempt).
inline uint64_t derive_seed(std::initializer_list<uint64_t> keys) {
    uint64_t h = 0x8f3c9a1d52e6b74full;
    for (uint64_t k : keys) {
        h ^= k + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        uint64_t z = h;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        h = z ^ (z >> 31);
    }
    return h;
}

}  // namespace vizing

#endif
