// SPDX-License-Identifier: Apache-2.0

#include "twrn/linalg.hpp"

#include <algorithm>
#include <string>

namespace twrn {

IndexSet::IndexSet(std::vector<std::size_t> indices, std::size_t ambient)
    : indices_(std::move(indices)), ambient_(ambient)
{
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i] >= ambient_)
            throw std::invalid_argument("IndexSet: index " + std::to_string(indices_[i]) +
                                        " out of range for dimension " + std::to_string(ambient_));
        if (i > 0 && indices_[i] <= indices_[i - 1])
            throw std::invalid_argument("IndexSet: indices must be strictly increasing");
    }
}

IndexSet IndexSet::from_unsorted(std::vector<std::size_t> indices, std::size_t ambient)
{
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    return IndexSet(std::move(indices), ambient);
}

IndexSet IndexSet::all(std::size_t ambient)
{
    std::vector<std::size_t> idx(ambient);
    for (std::size_t i = 0; i < ambient; ++i)
        idx[i] = i;
    return IndexSet(std::move(idx), ambient);
}

bool IndexSet::contains(std::size_t index) const
{
    return std::binary_search(indices_.begin(), indices_.end(), index);
}

IndexSet IndexSet::set_union(const IndexSet& other) const
{
    if (other.ambient_ != ambient_)
        throw std::invalid_argument("IndexSet::set_union: ambient dimensions differ");
    std::vector<std::size_t> out;
    out.reserve(indices_.size() + other.indices_.size());
    std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                   std::back_inserter(out));
    return IndexSet(std::move(out), ambient_);
}

RankDeficientError::RankDeficientError(std::size_t rank, std::size_t cols)
    : std::runtime_error("lstsq: matrix is rank deficient (numerical rank " + std::to_string(rank) +
                         " of " + std::to_string(cols) + " columns)"),
      rank_(rank), cols_(cols)
{
}

ComplexVector make_vector(std::initializer_list<cplx> values)
{
    ComplexVector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (const auto& x : values)
        v(i++) = x;
    return v;
}

ComplexVector conv(const ComplexVector& a, const ComplexVector& b)
{
    if (a.size() == 0 || b.size() == 0)
        throw std::invalid_argument("conv: inputs must be nonempty");
    ComplexVector out = ComplexVector::Zero(a.size() + b.size() - 1);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) == cplx{})
            continue;
        out.segment(i, b.size()) += a(i) * b;
    }
    return out;
}

ComplexMatrix toeplitz_conv_matrix(const ComplexVector& x, std::size_t num_cols)
{
    if (num_cols == 0)
        throw std::invalid_argument("toeplitz_conv_matrix: num_cols must be >= 1");
    if (x.size() == 0)
        throw std::invalid_argument("toeplitz_conv_matrix: sequence must be nonempty");
    const auto cols = static_cast<Eigen::Index>(num_cols);
    ComplexMatrix T = ComplexMatrix::Zero(x.size() + cols - 1, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        T.col(j).segment(j, x.size()) = x;
    return T;
}

ComplexVector lstsq(const ComplexMatrix& A, const ComplexVector& y)
{
    if (A.rows() != y.size())
        throw std::invalid_argument("lstsq: rows(A) != len(y)");
    if (A.cols() == 0)
        return ComplexVector(0);

    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(A);
    const auto& R = qr.matrixQR();
    const Eigen::Index diag = std::min(A.rows(), A.cols());
    const double largest = std::abs(R(0, 0));
    Eigen::Index rank = 0;
    if (largest > 0.0) {
        for (Eigen::Index i = 0; i < diag; ++i) {
            if (std::abs(R(i, i)) < kRankThreshold * largest)
                break;
            ++rank;
        }
    }
    if (rank < A.cols())
        throw RankDeficientError(static_cast<std::size_t>(rank), static_cast<std::size_t>(A.cols()));

    // Full column rank: solve R z = Q^H y on the leading block, then undo pivoting.
    ComplexVector qty = y;
    qty.applyOnTheLeft(qr.householderQ().adjoint());
    ComplexVector z = R.topLeftCorner(rank, rank).triangularView<Eigen::Upper>().solve(qty.head(rank));
    ComplexVector theta(A.cols());
    for (Eigen::Index i = 0; i < rank; ++i)
        theta(qr.colsPermutation().indices()(i)) = z(i);
    return theta;
}

ComplexVector hermitian_apply(const ComplexMatrix& A, const ComplexVector& r)
{
    if (A.rows() != r.size())
        throw std::invalid_argument("hermitian_apply: rows(A) != len(r)");
    return A.adjoint() * r;
}

ComplexMatrix select_columns(const ComplexMatrix& A, const IndexSet& columns)
{
    ComplexMatrix out(A.rows(), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t k = 0; k < columns.size(); ++k) {
        if (columns[k] >= static_cast<std::size_t>(A.cols()))
            throw std::invalid_argument("select_columns: column index out of range");
        out.col(static_cast<Eigen::Index>(k)) = A.col(static_cast<Eigen::Index>(columns[k]));
    }
    return out;
}

bool all_finite(const ComplexVector& v)
{
    return v.allFinite();
}

bool all_finite(const ComplexMatrix& A)
{
    return A.allFinite();
}

} // namespace twrn
