// SPDX-License-Identifier: Apache-2.0
//
// Channel estimators for the stacked relay model y = alpha X theta + n:
// plain least squares, least squares on a known support (oracle), and
// CoSaMP greedy sparse recovery.

#ifndef TWRN_ESTIMATORS_HPP
#define TWRN_ESTIMATORS_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string_view>

#include "twrn/link.hpp"
#include "twrn/linalg.hpp"

namespace twrn {

struct EstimatorOutput
{
    ComplexVector theta_hat;
    IndexSet support_hat;
    std::size_t iterations = 0;
    double residual_norm = 0.0;
    double elapsed_seconds = 0.0;
};

struct CosampSettings
{
    std::size_t sparsity_S = 7;
    std::size_t max_iterations = 28;
    /// Halt once ||r|| <= residual_tolerance * ||y||.
    double residual_tolerance = 1e-6;

    /// max_iterations = min(4S, 100).
    static CosampSettings for_sparsity(std::size_t S)
    {
        return {S, std::min<std::size_t>(4 * S, 100), 1e-6};
    }
};

/// CoSaMP could not form a solvable least-squares subproblem; carries the
/// last completed iterate.
class ConvergenceError : public std::runtime_error
{
public:
    ConvergenceError(const std::string& what, EstimatorOutput last)
        : std::runtime_error(what), last_(std::move(last))
    {
    }
    const EstimatorOutput& last_iterate() const noexcept { return last_; }

private:
    EstimatorOutput last_;
};

/// Called after every CoSaMP iteration with the 1-based iteration count
/// and the current estimate in the caller's (unnormalized) coordinates.
using IterationObserver = std::function<void(std::size_t, const ComplexVector&)>;

EstimatorOutput ls_estimate(const MeasurementModel& model, const ComplexVector& y);

EstimatorOutput oracle_estimate(const MeasurementModel& model, const ComplexVector& y,
                                const IndexSet& true_support);

EstimatorOutput cosamp(const MeasurementModel& model, const ComplexVector& y,
                       const CosampSettings& settings);

/// CoSaMP on an arbitrary sensing matrix. Columns are scaled to unit norm
/// internally; the estimate is returned in the original scaling.
EstimatorOutput cosamp_recover(const ComplexMatrix& A, const ComplexVector& y,
                               const CosampSettings& settings,
                               const IterationObserver& observer = {});

/// Positions of the `count` largest |v| entries, ascending. Ties go to the
/// lower index.
IndexSet largest_entries(const ComplexVector& v, std::size_t count);

enum class EstimatorKind { ls, oracle, cosamp };

std::string_view to_string(EstimatorKind kind);
EstimatorKind estimator_from_string(std::string_view name);

} // namespace twrn

#endif
