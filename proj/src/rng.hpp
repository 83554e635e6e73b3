#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace commutclass {

// Deterministic uniform draws built directly on the mt19937_64 output so
// results do not depend on the standard library's distribution internals.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform_symmetric(std::mt19937_64& gen) {
    return 2.0 * uniform01(gen) - 1.0;
}

inline std::complex<double> uniform_complex(std::mt19937_64& gen) {
    const double re = uniform_symmetric(gen);
    const double im = uniform_symmetric(gen);
    return {re, im};
}

}  // namespace commutclass
