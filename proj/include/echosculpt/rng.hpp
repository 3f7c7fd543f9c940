#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <vector>

// Deterministic random utilities. std::uniform_*_distribution is
// implementation-defined, so every transform from raw engine output is
// spelled out here; identical seeds give identical streams on every
// platform and compiler.

namespace echosculpt {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Derive an independent stream seed from a master seed and a stream index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 0x632be59bd9b4e019ull));
}

// xoshiro256** by Blackman & Vigna (public domain reference implementation).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : state_) w = x = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Log-uniform over [lo, hi], lo > 0.
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    // Uniform integer in [0, bound) without modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool coin() { return (next_u64() >> 63) != 0; }

    // `count` distinct values from [0, space), ascending order.
    std::vector<std::uint64_t> sample_without_replacement(std::uint64_t space,
                                                          std::size_t count);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

inline std::vector<std::uint64_t> Rng::sample_without_replacement(std::uint64_t space,
                                                                  std::size_t count) {
    if (count > space)
        throw std::invalid_argument("sample_without_replacement: count exceeds space");
    std::vector<std::uint64_t> out;
    out.reserve(count);
    if (space <= 4 * static_cast<std::uint64_t>(count) && space <= (1ull << 24)) {
        std::vector<std::uint64_t> all(space);
        for (std::uint64_t i = 0; i < space; ++i) all[i] = i;
        for (std::size_t i = 0; i < count; ++i) {
            std::uint64_t j = i + below(space - i);
            std::swap(all[i], all[j]);
            out.push_back(all[i]);
        }
    } else {
        std::unordered_set<std::uint64_t> seen;
        while (out.size() < count) {
            std::uint64_t v = below(space);
            if (seen.insert(v).second) out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace echosculpt
