#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace posvote {

// Deterministic bounded sampling on top of std::mt19937_64.  The standard
// <random> distributions are implementation-defined, so generators and tests
// use this thin wrapper to stay byte-reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // Uniform in [0, n), rejection-sampled to avoid modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        std::uint64_t limit = max - max % n;
        std::uint64_t r;
        do {
            r = eng_();
        } while (r >= limit);
        return r % n;
    }

    // Uniform in [lo, hi] inclusive.
    int range(int lo, int hi) { return lo + (int)below((std::uint64_t)(hi - lo + 1)); }

    bool coin() { return below(2) == 1; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = (size_t)below((std::uint64_t)i);
            std::swap(v[i - 1], v[j]);
        }
    }

    std::vector<int> permutation(int n) {
        std::vector<int> p((size_t)n);
        for (int i = 0; i < n; ++i) p[(size_t)i] = i;
        shuffle(p);
        return p;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace posvote
