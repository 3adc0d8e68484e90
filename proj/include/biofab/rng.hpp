#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace biofab {

/// Deterministic 64-bit generator (splitmix64). Used instead of std::
/// distributions so generated corpora are byte-stable across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Unbiased integer in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: bound must be > 0");
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool coin() { return (next_u64() & 1ull) != 0; }

    /// Standard normal via Box-Muller (one value per call).
    double normal() {
        double u1 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// k distinct elements of pool, order randomized.
    template <typename T>
    std::vector<T> sample(const std::vector<T>& pool, std::size_t k) {
        if (k > pool.size())
            throw std::invalid_argument("Rng::sample: k exceeds pool size");
        std::vector<std::size_t> idx(pool.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(below(idx.size() - i));
            std::swap(idx[i], idx[j]);
        }
        std::vector<T> out;
        out.reserve(k);
        for (std::size_t i = 0; i < k; ++i) out.push_back(pool[idx[i]]);
        return out;
    }

private:
    std::uint64_t state_;
};

/// Stable seed derivation: one master knob, per-module/per-item streams.
/// FNV-1a over the tag, folded into the master seed through splitmix64.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ull;
    }
    Rng mix(master ^ h);
    return mix.next_u64();
}

}  // namespace biofab
