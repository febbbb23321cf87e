#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace flyra {

/**
 * Deterministic random stream built on std::mt19937_64.
 *
 * Streams are derived from a master seed plus a purpose label so that
 * adding draws in one place never perturbs another stream. The uniform
 * conversion is done by hand (53-bit mantissa) because the engine output
 * is fully specified by the standard while the distribution adaptors are
 * not; this keeps runs byte-reproducible across toolchains.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Named sub-stream of a master seed, e.g. substream(seed, "fen.direction").
    static Rng substream(std::uint64_t master_seed, std::string_view purpose)
    {
        std::uint64_t h = fnv1a(purpose);
        return Rng(splitmix(splitmix(master_seed ^ h) + h));
    }

    /// Uniform double in [0, 1).
    double uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }

    /// Uniform integer in [0, n). n must be > 0; n is tiny here so modulo bias is irrelevant.
    std::uint32_t uniform_int(std::uint32_t n)
    {
        return static_cast<std::uint32_t>(engine_() % n);
    }

private:
    static std::uint64_t fnv1a(std::string_view s)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    static std::uint64_t splitmix(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

} // namespace flyra
