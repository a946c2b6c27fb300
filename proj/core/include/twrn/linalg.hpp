// SPDX-License-Identifier: Apache-2.0
//
// Complex linear-algebra substrate: convolution, Toeplitz convolution
// matrices, rank-revealing least squares and column selection.

#ifndef TWRN_LINALG_HPP
#define TWRN_LINALG_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace twrn {

using cplx = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Strictly increasing set of 0-based positions inside an ambient dimension.
class IndexSet
{
public:
    IndexSet() = default;

    /// Throws std::invalid_argument unless `indices` is strictly increasing
    /// and every entry is below `ambient`.
    IndexSet(std::vector<std::size_t> indices, std::size_t ambient);

    /// Sorts and deduplicates before validating.
    static IndexSet from_unsorted(std::vector<std::size_t> indices, std::size_t ambient);
    static IndexSet all(std::size_t ambient);

    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t operator[](std::size_t i) const { return indices_[i]; }
    bool contains(std::size_t index) const;

    const std::vector<std::size_t>& indices() const noexcept { return indices_; }
    auto begin() const noexcept { return indices_.begin(); }
    auto end() const noexcept { return indices_.end(); }

    IndexSet set_union(const IndexSet& other) const;

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    std::vector<std::size_t> indices_;
    std::size_t ambient_ = 0;
};

/// Raised by lstsq when the retained R-diagonal drops below the relative
/// rank threshold.
class RankDeficientError : public std::runtime_error
{
public:
    RankDeficientError(std::size_t rank, std::size_t cols);
    std::size_t rank() const noexcept { return rank_; }
    std::size_t cols() const noexcept { return cols_; }

private:
    std::size_t rank_;
    std::size_t cols_;
};

inline constexpr double kRankThreshold = 1e-10;

ComplexVector make_vector(std::initializer_list<cplx> values);

/// Full linear convolution, length len(a) + len(b) - 1.
ComplexVector conv(const ComplexVector& a, const ComplexVector& b);

/// (N + num_cols - 1) x num_cols matrix T with T * v == conv(x, v).
ComplexMatrix toeplitz_conv_matrix(const ComplexVector& x, std::size_t num_cols);

/// Minimum-norm-residual solution of A * theta = y via column-pivoted
/// Householder QR. Throws RankDeficientError when the smallest retained
/// |R_ii| is below kRankThreshold times the largest.
ComplexVector lstsq(const ComplexMatrix& A, const ComplexVector& y);

/// A^H * r.
ComplexVector hermitian_apply(const ComplexMatrix& A, const ComplexVector& r);

ComplexMatrix select_columns(const ComplexMatrix& A, const IndexSet& columns);

/// Returns false if any entry is NaN or infinite.
bool all_finite(const ComplexVector& v);
bool all_finite(const ComplexMatrix& A);

} // namespace twrn

#endif
