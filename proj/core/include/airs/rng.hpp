#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace airs {

// Thin wrapper over mt19937_64 with hand-rolled draw helpers.  The standard
// distributions are implementation-defined, so byte-reproducible output has to
// avoid them.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, n). Modulo bias is irrelevant at our n.
    std::uint64_t below(std::uint64_t n) { return n ? eng_() % n : 0; }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        if (hi <= lo) return lo;
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform in [0, 1).
    double real() { return (eng_() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return real() < p; }

    template <typename T>
    const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

    // Derive an independent stream, e.g. one per GA offspring slot.
    static Rng derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
        // splitmix-style scramble so nearby (seed, a, b) tuples decorrelate
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Rng(z ^ (z >> 31));
    }

private:
    std::mt19937_64 eng_;
};

} // namespace airs
