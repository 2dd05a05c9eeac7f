#ifndef CSENERGY_RNG_HPP
#define CSENERGY_RNG_HPP

#include <cstdint>
#include <cmath>

namespace csenergy {

// Counter-based splittable generator. Every draw is a pure function of
// (key, counter), so any trial can be replayed from its seed without
// regenerating the stream that preceded it. Substreams are derived with
// split(), which mixes a label into the key.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : key_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

    SplitRng split(std::uint64_t label) const {
        return SplitRng(mix(key_ + 0x9e3779b97f4a7c15ull * (label + 1)), 0);
    }

    std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ull * (++ctr_)); }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // uniform in [0, bound)
    std::uint64_t next_below(std::uint64_t bound) {
        // multiply-shift rejection-free mapping; bias < 2^-64 * bound, fine here
        __uint128_t wide = static_cast<__uint128_t>(next_u64()) * bound;
        return static_cast<std::uint64_t>(wide >> 64);
    }

private:
    SplitRng(std::uint64_t key, int) : key_(key) {}

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30; z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27; z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

} // namespace csenergy

#endif
