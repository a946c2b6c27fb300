// SPDX-License-Identifier: Apache-2.0

#ifndef TWRN_RNG_HPP
#define TWRN_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

#include "twrn/linalg.hpp"

namespace twrn {

using RandomStream = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Folds a list of words into one seed; order matters.
constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words) noexcept
{
    std::uint64_t h = 0x6a09e667f3bcc908ULL;
    for (auto w : words)
        h = mix64(h ^ mix64(w));
    return h;
}

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
inline cplx complex_normal(RandomStream& rng, double variance)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double s = std::sqrt(variance / 2.0);
    const double re = gauss(rng);
    const double im = gauss(rng);
    return {s * re, s * im};
}

inline ComplexVector complex_normal_vector(RandomStream& rng, std::size_t n, double variance)
{
    ComplexVector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = complex_normal(rng, variance);
    return v;
}

} // namespace twrn

#endif
