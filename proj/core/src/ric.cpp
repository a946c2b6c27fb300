// SPDX-License-Identifier: Apache-2.0

#include "twrn/ric.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <vector>

namespace twrn {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const std::uint64_t num = n - k + i;
        // result * num / i is exact at every step; guard the product.
        if (result > std::numeric_limits<std::uint64_t>::max() / num)
            return std::numeric_limits<std::uint64_t>::max();
        result = result * num / i;
    }
    return result;
}

ComplexMatrix normalize_columns(const ComplexMatrix& A)
{
    ComplexMatrix out = A;
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
        const double n = A.col(j).norm();
        if (n == 0.0)
            throw std::invalid_argument("normalize_columns: zero column");
        out.col(j) /= n;
    }
    return out;
}

RicReport ric_bruteforce(const ComplexMatrix& A, std::size_t order_S)
{
    const auto cols = static_cast<std::size_t>(A.cols());
    if (order_S == 0 || order_S > cols)
        throw std::invalid_argument("ric_bruteforce: order must be in [1, cols]");
    const std::uint64_t total = binomial(cols, order_S);
    if (total > kMaxRicSubsets)
        throw EnumerationTooLargeError("ric_bruteforce: C(cols, S) exceeds the enumeration guard");

    const ComplexMatrix An = normalize_columns(A);
    const ComplexMatrix gram = An.adjoint() * An;

    RicReport report;
    report.order_S = order_S;
    report.delta = -1.0;

    const auto k = static_cast<Eigen::Index>(order_S);
    std::vector<std::size_t> subset(order_S);
    for (std::size_t i = 0; i < order_S; ++i)
        subset[i] = i;

    ComplexMatrix sub(k, k);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig;
    for (;;) {
        for (Eigen::Index a = 0; a < k; ++a)
            for (Eigen::Index b = 0; b < k; ++b)
                sub(a, b) = gram(static_cast<Eigen::Index>(subset[a]), static_cast<Eigen::Index>(subset[b]));
        eig.compute(sub);
        const auto& ev = eig.eigenvalues();  // ascending
        const double low = 1.0 - ev(0);
        const double high = ev(k - 1) - 1.0;
        ++report.subsets_examined;
        if (std::max(low, high) > report.delta) {
            report.delta = std::max(low, high);
            report.extremal_subset = IndexSet(subset, cols);
            const Eigen::Index pick = high >= low ? k - 1 : 0;
            report.extremal_eigenvalue = ev(pick);
            report.extremal_vector = eig.eigenvectors().col(pick);
        }

        // Next combination in lexicographic order.
        std::size_t i = order_S;
        while (i > 0 && subset[i - 1] == cols - order_S + (i - 1))
            --i;
        if (i == 0)
            break;
        ++subset[i - 1];
        for (std::size_t j = i; j < order_S; ++j)
            subset[j] = subset[j - 1] + 1;
    }
    return report;
}

double theorem2_bound(double delta_4S, double prev_error, double correlated_noise_norm)
{
    if (!(delta_4S >= 0.0) || !(delta_4S < 0.25))
        throw BoundInapplicableError("theorem2_bound: delta_4S must lie in [0, 0.25)");
    if (!(prev_error >= 0.0) || !(correlated_noise_norm >= 0.0))
        throw std::invalid_argument("theorem2_bound: error and noise norms must be nonnegative");
    const double denom = (1.0 - 4.0 * delta_4S) * (1.0 - 4.0 * delta_4S);
    return (4.0 * delta_4S / denom) * prev_error +
           ((14.0 - 6.0 * delta_4S) / denom) * correlated_noise_norm;
}

double max_correlated_noise_norm(const ComplexMatrix& A, const ComplexVector& n,
                                 std::size_t subset_size)
{
    const Eigen::VectorXd corr = hermitian_apply(A, n).cwiseAbs2();
    std::vector<double> sorted(corr.data(), corr.data() + corr.size());
    const std::size_t k = std::min(subset_size, sorted.size());
    std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), sorted.end(),
                      std::greater<>());
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        sum += sorted[i];
    return std::sqrt(sum);
}

RipSampleCheck sample_rip(const ComplexMatrix& A, const RicReport& report, std::size_t samples,
                          RandomStream& rng)
{
    const ComplexMatrix An = normalize_columns(A);
    const auto cols = static_cast<std::size_t>(A.cols());
    const std::size_t S = report.order_S;
    RipSampleCheck check;
    check.samples = samples;

    std::vector<std::size_t> pool(cols);
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < cols; ++i)
            pool[i] = i;
        ComplexVector x = ComplexVector::Zero(A.cols());
        for (std::size_t i = 0; i < S; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, cols - 1);
            std::swap(pool[i], pool[pick(rng)]);
            x(static_cast<Eigen::Index>(pool[i])) = complex_normal(rng, 1.0);
        }
        const double energy = x.squaredNorm();
        if (energy == 0.0)
            continue;
        const double image = (An * x).squaredNorm();
        const double ratio = image / energy;
        check.max_deviation = std::max(check.max_deviation, std::abs(ratio - 1.0));
        const double over = image - (1.0 + report.delta) * energy;
        const double under = (1.0 - report.delta) * energy - image;
        check.max_violation = std::max({check.max_violation, over / energy, under / energy});
    }
    return check;
}

} // namespace twrn
