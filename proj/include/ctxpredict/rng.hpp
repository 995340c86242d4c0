#ifndef CTXPREDICT_RNG_HPP
#define CTXPREDICT_RNG_HPP

#include <cstdint>
#include <random>

namespace ctxpredict {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stable per-task seed from (seed, index); used so parallel and sequential
/// evaluation draw identical streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return splitmix64(s);
}

/// Uniform double in [0,1) from the top 53 bits; identical on every platform.
inline double u01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}  // namespace ctxpredict

#endif
