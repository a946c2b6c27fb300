// SPDX-License-Identifier: Apache-2.0
//
// K-sparse symbol-spaced multipath channels and the composite relay
// round-trip channels b = h1 * h1, c = h2 * h1.

#ifndef TWRN_CHANNEL_HPP
#define TWRN_CHANNEL_HPP

#include <cstddef>

#include "twrn/linalg.hpp"
#include "twrn/rng.hpp"

namespace twrn {

struct SparseChannel
{
    ComplexVector taps;   // length L, exact zeros off-support
    IndexSet support;     // ambient L
    std::size_t length = 0;
    std::size_t sparsity = 0;

    /// Sum of |h_l|^2.
    double energy() const { return taps.squaredNorm(); }
};

struct CompositeChannel
{
    ComplexVector b;      // h1 * h1, length 2L - 1
    ComplexVector c;      // h2 * h1, length 2L - 1
    ComplexVector theta;  // [b; c], length 4L - 2
    IndexSet support;     // exact nonzeros of theta
};

/// Support drawn uniformly without replacement from {0..L-1}; each
/// supported tap is CN(0, 1/K), so E[sum |h_l|^2] = 1.
SparseChannel gen_sparse_channel(std::size_t L, std::size_t K, RandomStream& rng);

/// Builds a SparseChannel from explicit taps; support is the exact nonzeros.
SparseChannel channel_from_taps(const ComplexVector& taps);

CompositeChannel compose_channels(const SparseChannel& h1, const SparseChannel& h2);

/// Ascending indices j with |v[j]| > tol.
IndexSet support_of(const ComplexVector& v, double tol);

/// Upper bound on |supp(theta)| for K-sparse h1, h2: K(K+1)/2 + K^2.
constexpr std::size_t composite_sparsity_bound(std::size_t K) noexcept
{
    return K * (K + 1) / 2 + K * K;
}

} // namespace twrn

#endif
