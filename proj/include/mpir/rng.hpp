#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mpir {

// splitmix64 step; used to derive independent stream seeds from one master
// seed so that message content, interleavers, code permutations and query
// shuffles never share state.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
    return mix64(master ^ mix64(tag));
}

// Named randomness streams split off a single master seed.
enum class Stream : std::uint64_t {
    MessageContent = 1,
    Interleavers = 2,
    CodePermutations = 3,
    QueryShuffle = 4,
    Sampling = 5,
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    static Rng for_stream(std::uint64_t master, Stream s) {
        return Rng(derive_seed(master, static_cast<std::uint64_t>(s)));
    }

    std::uint64_t next() { return gen_(); }

    // Uniform integer in [0, bound). Rejection sampling keeps the result
    // identical across standard library implementations.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % bound;
    }

    // Fisher-Yates shuffle.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Uniform permutation of {0, 1, ..., n-1}.
    std::vector<int> permutation(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        shuffle(p);
        return p;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace mpir
