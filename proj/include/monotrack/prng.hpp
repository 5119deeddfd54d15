#pragma once

#include "monotrack/scalar.hpp"

#include <cstdint>

namespace monotrack {

// SplitMix64: tiny, seed-deterministic across platforms. Every randomized
// construction in the library draws from this so runs are reproducible from
// the recorded seed alone.
class Prng {
public:
    explicit Prng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [lo, hi], inclusive
    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // nonzero integer in [-b, b]
    long long nonzero_int(long long b) {
        long long v = 0;
        while (v == 0) v = int_in(-b, b);
        return v;
    }

    double uniform() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

    // rational p/q with q in [1, qmax], p in [lo*q, hi*q]; value in (lo, hi)
    Rat rational_in(long long lo, long long hi, long long qmax = 12) {
        long long q = int_in(1, qmax);
        long long p = int_in(lo * q + 1, hi * q - 1);
        return Rat(p, q);
    }

    // derives an independent stream for item `k` of a batch
    static std::uint64_t subseed(std::uint64_t master, std::uint64_t k) {
        Prng g(master ^ (0xa0761d6478bd642fULL + k * 0xe7037ed1a0b428dbULL));
        return g.next();
    }

private:
    std::uint64_t state_;
};

} // namespace monotrack
