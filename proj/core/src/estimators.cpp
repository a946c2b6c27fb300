// SPDX-License-Identifier: Apache-2.0

#include "twrn/estimators.hpp"

#include <chrono>
#include <numeric>
#include <string>

namespace twrn {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

ComplexVector scatter(const ComplexVector& values, const IndexSet& at, Eigen::Index dim)
{
    ComplexVector out = ComplexVector::Zero(dim);
    for (std::size_t k = 0; k < at.size(); ++k)
        out(static_cast<Eigen::Index>(at[k])) = values(static_cast<Eigen::Index>(k));
    return out;
}

EstimatorOutput restricted_ls(const ComplexMatrix& A, const ComplexVector& y, const IndexSet& columns)
{
    EstimatorOutput out;
    const ComplexVector coef = lstsq(select_columns(A, columns), y);
    out.theta_hat = scatter(coef, columns, A.cols());
    out.support_hat = columns;
    out.iterations = 1;
    out.residual_norm = (y - A * out.theta_hat).norm();
    return out;
}

} // namespace

IndexSet largest_entries(const ComplexVector& v, std::size_t count)
{
    const auto n = static_cast<std::size_t>(v.size());
    count = std::min(count, n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(v(static_cast<Eigen::Index>(a))) > std::abs(v(static_cast<Eigen::Index>(b)));
    });
    order.resize(count);
    return IndexSet::from_unsorted(std::move(order), n);
}

EstimatorOutput ls_estimate(const MeasurementModel& model, const ComplexVector& y)
{
    const auto start = Clock::now();
    const ComplexMatrix A = model.sensing_matrix();
    if (A.rows() != y.size())
        throw std::invalid_argument("ls_estimate: observation length does not match the model");
    EstimatorOutput out;
    out.theta_hat = lstsq(A, y);
    out.support_hat = IndexSet::all(static_cast<std::size_t>(A.cols()));
    out.iterations = 1;
    out.residual_norm = (y - A * out.theta_hat).norm();
    out.elapsed_seconds = seconds_since(start);
    return out;
}

EstimatorOutput oracle_estimate(const MeasurementModel& model, const ComplexVector& y,
                                const IndexSet& true_support)
{
    const auto start = Clock::now();
    const ComplexMatrix A = model.sensing_matrix();
    if (A.rows() != y.size())
        throw std::invalid_argument("oracle_estimate: observation length does not match the model");
    if (true_support.ambient() != static_cast<std::size_t>(A.cols()))
        throw std::invalid_argument("oracle_estimate: support dimension does not match the model");
    if (true_support.size() > static_cast<std::size_t>(A.rows()))
        throw std::invalid_argument("oracle_estimate: support larger than the number of observations");
    EstimatorOutput out = restricted_ls(A, y, true_support);
    out.elapsed_seconds = seconds_since(start);
    return out;
}

EstimatorOutput cosamp(const MeasurementModel& model, const ComplexVector& y,
                       const CosampSettings& settings)
{
    const auto start = Clock::now();
    EstimatorOutput out = cosamp_recover(model.sensing_matrix(), y, settings);
    out.elapsed_seconds = seconds_since(start);
    return out;
}

EstimatorOutput cosamp_recover(const ComplexMatrix& A, const ComplexVector& y,
                               const CosampSettings& settings, const IterationObserver& observer)
{
    const auto start = Clock::now();
    const Eigen::Index cols = A.cols();
    const std::size_t S = settings.sparsity_S;
    if (A.rows() != y.size())
        throw std::invalid_argument("cosamp: observation length does not match the sensing matrix");
    if (S == 0 || settings.max_iterations == 0)
        throw std::invalid_argument("cosamp: sparsity and max_iterations must be >= 1");
    if (3 * S > static_cast<std::size_t>(cols) || 3 * S > static_cast<std::size_t>(A.rows()))
        throw std::invalid_argument("cosamp: 3S must not exceed the matrix dimensions");

    const Eigen::VectorXd norms = A.colwise().norm().transpose();
    if ((norms.array() == 0.0).any())
        throw std::invalid_argument("cosamp: sensing matrix has a zero column");
    const ComplexMatrix An = A * norms.cwiseInverse().asDiagonal();

    // z lives in the unit-column coordinates: theta = z ./ norms.
    auto to_theta = [&](const ComplexVector& z) -> ComplexVector {
        return (z.array() / norms.array().cast<cplx>()).matrix();
    };

    const double y_norm = y.norm();
    const double stop_at = settings.residual_tolerance * y_norm;
    const auto dim = static_cast<std::size_t>(cols);

    ComplexVector z = ComplexVector::Zero(cols);
    IndexSet support({}, dim);
    ComplexVector r = y;
    double r_norm = y_norm;
    std::size_t iter = 0;

    auto snapshot = [&]() {
        EstimatorOutput o;
        o.theta_hat = to_theta(z);
        o.support_hat = support;
        o.iterations = iter;
        o.residual_norm = r_norm;
        o.elapsed_seconds = seconds_since(start);
        return o;
    };

    while (r_norm > stop_at && iter < settings.max_iterations) {
        const ComplexVector proxy = hermitian_apply(An, r);
        IndexSet merged = largest_entries(proxy, 2 * S).set_union(support);

        ComplexVector coef;
        for (;;) {
            if (merged.empty())
                throw ConvergenceError("cosamp: no solvable column subset", snapshot());
            try {
                coef = lstsq(select_columns(An, merged), y);
                break;
            } catch (const RankDeficientError&) {
                // Drop the weakest-correlated column and retry.
                std::size_t weakest = 0;
                for (std::size_t k = 1; k < merged.size(); ++k) {
                    const auto a = static_cast<Eigen::Index>(merged[k]);
                    const auto b = static_cast<Eigen::Index>(merged[weakest]);
                    if (std::abs(proxy(a)) < std::abs(proxy(b)))
                        weakest = k;
                }
                std::vector<std::size_t> kept = merged.indices();
                kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(weakest));
                merged = IndexSet(std::move(kept), dim);
            }
        }

        const ComplexVector full = scatter(coef, merged, cols);
        support = largest_entries(full, S);
        z.setZero();
        for (auto j : support)
            z(static_cast<Eigen::Index>(j)) = full(static_cast<Eigen::Index>(j));

        r = y - An * z;
        r_norm = r.norm();
        ++iter;
        if (observer)
            observer(iter, to_theta(z));
    }

    return snapshot();
}

std::string_view to_string(EstimatorKind kind)
{
    switch (kind) {
    case EstimatorKind::ls: return "ls";
    case EstimatorKind::oracle: return "oracle";
    case EstimatorKind::cosamp: return "cosamp";
    }
    return "unknown";
}

EstimatorKind estimator_from_string(std::string_view name)
{
    if (name == "ls")
        return EstimatorKind::ls;
    if (name == "oracle")
        return EstimatorKind::oracle;
    if (name == "cosamp")
        return EstimatorKind::cosamp;
    throw std::invalid_argument("unknown estimator '" + std::string(name) + "'");
}

} // namespace twrn
