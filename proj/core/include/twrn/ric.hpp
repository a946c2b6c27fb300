// SPDX-License-Identifier: Apache-2.0
//
// Restricted-isometry tooling: brute-force restricted isometry constants and
// the per-iteration CoSaMP error bound driven by delta_{4S}.

#ifndef TWRN_RIC_HPP
#define TWRN_RIC_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "twrn/linalg.hpp"
#include "twrn/rng.hpp"

namespace twrn {

struct RicReport
{
    std::size_t order_S = 0;
    double delta = 0.0;
    IndexSet extremal_subset;
    std::uint64_t subsets_examined = 0;
    /// Gram eigenvalue of the extremal subset that attains delta, and its
    /// unit eigenvector (coordinates of the unit-column matrix).
    double extremal_eigenvalue = 1.0;
    ComplexVector extremal_vector;
};

class EnumerationTooLargeError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class BoundInapplicableError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

inline constexpr std::uint64_t kMaxRicSubsets = 1'000'000;

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Scales every column to unit l2 norm. Throws on a zero column.
ComplexMatrix normalize_columns(const ComplexMatrix& A);

/// delta_S = max over |T| = S of max(lambda_max - 1, 1 - lambda_min) of
/// the Gram matrix of the unit-column submatrix A_T.
RicReport ric_bruteforce(const ComplexMatrix& A, std::size_t order_S);

/// (4 d / (1 - 4 d)^2) * prev_error + ((14 - 6 d) / (1 - 4 d)^2) * noise_norm
/// with d = delta_4S. Rejects d outside [0, 0.25).
double theorem2_bound(double delta_4S, double prev_error, double correlated_noise_norm);

/// max over |T| = subset_size of ||A_T^H n||_2, i.e. the root of the sum of
/// the subset_size largest |a_j^H n|^2.
double max_correlated_noise_norm(const ComplexMatrix& A, const ComplexVector& n,
                                 std::size_t subset_size);

struct RipSampleCheck
{
    std::size_t samples = 0;
    /// Largest amount by which ||A x||^2 left the band (1 +- delta)||x||^2.
    double max_violation = 0.0;
    /// Largest | ||A x||^2 / ||x||^2 - 1 | seen.
    double max_deviation = 0.0;
};

/// Draws `samples` random order_S-sparse vectors (uniform support, complex
/// Gaussian values) and measures them against the band of `report`.
RipSampleCheck sample_rip(const ComplexMatrix& A, const RicReport& report, std::size_t samples,
                          RandomStream& rng);

} // namespace twrn

#endif
