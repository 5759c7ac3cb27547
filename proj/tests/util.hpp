#pragma once

#include <cstdint>
#include <random>

// fixed seeds keep every property test reproducible
inline std::mt19937_64 test_rng(std::uint64_t seed = 20240613) { return std::mt19937_64{seed}; }

inline double uniform(std::mt19937_64& g, double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(g);
}

inline int uniform_int(std::mt19937_64& g, int a, int b) {
    return std::uniform_int_distribution<int>(a, b)(g);
}
