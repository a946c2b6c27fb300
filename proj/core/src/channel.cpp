// SPDX-License-Identifier: Apache-2.0

#include "twrn/channel.hpp"

#include <numeric>
#include <stdexcept>

namespace twrn {

SparseChannel gen_sparse_channel(std::size_t L, std::size_t K, RandomStream& rng)
{
    if (K == 0 || K > L)
        throw std::invalid_argument("gen_sparse_channel: require 1 <= K <= L");

    // Partial Fisher-Yates: first K slots are a uniform K-subset.
    std::vector<std::size_t> pool(L);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < K; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, L - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(K);

    SparseChannel h;
    h.length = L;
    h.sparsity = K;
    h.taps = ComplexVector::Zero(static_cast<Eigen::Index>(L));
    const double variance = 1.0 / static_cast<double>(K);
    for (auto pos : pool) {
        cplx g;
        do {
            g = complex_normal(rng, variance);
        } while (g == cplx{});
        h.taps(static_cast<Eigen::Index>(pos)) = g;
    }
    h.support = IndexSet::from_unsorted(std::move(pool), L);
    return h;
}

SparseChannel channel_from_taps(const ComplexVector& taps)
{
    if (taps.size() == 0)
        throw std::invalid_argument("channel_from_taps: empty tap vector");
    SparseChannel h;
    h.taps = taps;
    h.length = static_cast<std::size_t>(taps.size());
    h.support = support_of(taps, 0.0);
    h.sparsity = h.support.size();
    return h;
}

CompositeChannel compose_channels(const SparseChannel& h1, const SparseChannel& h2)
{
    if (h1.length != h2.length || h1.taps.size() != h2.taps.size())
        throw std::invalid_argument("compose_channels: channel lengths differ");

    CompositeChannel out;
    out.b = conv(h1.taps, h1.taps);
    out.c = conv(h2.taps, h1.taps);
    out.theta.resize(out.b.size() + out.c.size());
    out.theta << out.b, out.c;
    out.support = support_of(out.theta, 0.0);
    return out;
}

IndexSet support_of(const ComplexVector& v, double tol)
{
    if (tol < 0.0)
        throw std::invalid_argument("support_of: tolerance must be >= 0");
    std::vector<std::size_t> idx;
    for (Eigen::Index j = 0; j < v.size(); ++j)
        if (std::abs(v(j)) > tol)
            idx.push_back(static_cast<std::size_t>(j));
    return IndexSet(std::move(idx), static_cast<std::size_t>(v.size()));
}

} // namespace twrn
