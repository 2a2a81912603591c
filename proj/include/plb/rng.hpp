// rng.hpp — counter-based random stream; results are independent of call
// ordering so parallel sweeps stay deterministic.
#pragma once

#include <cstdint>

namespace plb {

inline uint64_t splitmix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stateless stream: value is a pure function of (seed, stream, index).
class CounterRng {
public:
    CounterRng(uint64_t seed, uint64_t stream = 0) : seed_(seed), stream_(stream) {}

    uint64_t bits(uint64_t index) const {
        uint64_t h = splitmix64(seed_ ^ (0x632be59bd9b4e019ULL * (stream_ + 1)));
        return splitmix64(h ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    }
    // Uniform in [0, 1).
    double uniform(uint64_t index) const {
        return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
    }
    // Uniform in [lo, hi).
    double uniform(uint64_t index, double lo, double hi) const {
        return lo + (hi - lo) * uniform(index);
    }

private:
    uint64_t seed_;
    uint64_t stream_;
};

// Small stateful convenience wrapper for test code.
class SequenceRng {
public:
    explicit SequenceRng(uint64_t seed, uint64_t stream = 0) : rng_(seed, stream) {}
    double uniform() { return rng_.uniform(next_++); }
    double uniform(double lo, double hi) { return rng_.uniform(next_++, lo, hi); }

private:
    CounterRng rng_;
    uint64_t next_ = 0;
};

}  // namespace plb
