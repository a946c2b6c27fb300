// SPDX-License-Identifier: Apache-2.0

#include "twrn/link.hpp"

#include <cmath>
#include <stdexcept>

namespace twrn {

ComplexVector gen_training(std::size_t N, RandomStream& rng)
{
    if (N == 0)
        throw std::invalid_argument("gen_training: N must be >= 1");
    ComplexVector x;
    double energy = 0.0;
    do {
        x = complex_normal_vector(rng, N, 1.0);
        energy = x.squaredNorm();
    } while (energy == 0.0);
    x *= std::sqrt(static_cast<double>(N) / energy);
    return x;
}

TrainingPair gen_training_pair(std::size_t N, RandomStream& rng)
{
    TrainingPair p;
    p.x1 = gen_training(N, rng);
    p.x2 = gen_training(N, rng);
    return p;
}

double amplification_factor(double P1, double P2, double Pr, double var_h1, double var_h2,
                            double var_n)
{
    if (!(P1 > 0 && P2 > 0 && Pr > 0 && var_h1 > 0 && var_h2 > 0 && var_n > 0))
        throw std::invalid_argument("amplification_factor: all inputs must be positive");
    return std::sqrt(Pr / (var_h1 * P1 + var_h2 * P2 + var_n));
}

MeasurementModel build_measurement(const ComplexVector& x1, const ComplexVector& x2,
                                   std::size_t L, double alpha)
{
    if (x1.size() == 0 || x1.size() != x2.size())
        throw std::invalid_argument("build_measurement: training sequences must be nonempty and equal length");
    if (L == 0)
        throw std::invalid_argument("build_measurement: L must be >= 1");
    if (!(alpha > 0) || !std::isfinite(alpha))
        throw std::invalid_argument("build_measurement: alpha must be positive and finite");

    MeasurementModel m;
    m.N = static_cast<std::size_t>(x1.size());
    m.L = L;
    m.N_tilde = m.N + 2 * L - 2;
    m.alpha = alpha;
    m.X1 = toeplitz_conv_matrix(x1, 2 * L - 1);
    m.X2 = toeplitz_conv_matrix(x2, 2 * L - 1);
    m.X.resize(m.X1.rows(), m.X1.cols() + m.X2.cols());
    m.X << m.X1, m.X2;
    return m;
}

double noise_energy_factor(double alpha, double h1_energy, std::size_t N, std::size_t L)
{
    const double relay_len = static_cast<double>(N + L - 1);
    const double n_tilde = static_cast<double>(N + 2 * L - 2);
    return alpha * alpha * h1_energy * relay_len + n_tilde;
}

double noise_variance_for_snr(double noiseless_energy, double alpha, double h1_energy,
                              std::size_t N, std::size_t L, double snr_db)
{
    if (std::isinf(snr_db) && snr_db > 0)
        return 0.0;
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("noise_variance_for_snr: snr_db must be finite or +inf");
    const double snr = std::pow(10.0, snr_db / 10.0);
    return noiseless_energy / (snr * noise_energy_factor(alpha, h1_energy, N, L));
}

RelayOperatingPoint relay_operating_point(const RelayBudget& budget, double unit_gain_energy,
                                          double h1_energy, std::size_t N, std::size_t L,
                                          double snr_db)
{
    const double D = budget.var_h1 * budget.P1 + budget.var_h2 * budget.P2;
    if (!(D > 0) || !(budget.Pr > 0))
        throw std::invalid_argument("relay_operating_point: powers and variances must be positive");

    RelayOperatingPoint op;
    if (std::isinf(snr_db) && snr_db > 0) {
        op.alpha = std::sqrt(budget.Pr / D);
        return op;
    }
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("relay_operating_point: snr_db must be finite or +inf");

    // With a = alpha^2 = Pr / (D + u) and the T1 calibration
    //   u * snr * (a * c1 + N~) = E * a,   c1 = ||h1||^2 (N+L-1),
    // u solves  snr N~ u^2 + snr (Pr c1 + N~ D) u - E Pr = 0.
    const double snr = std::pow(10.0, snr_db / 10.0);
    const double c1 = h1_energy * static_cast<double>(N + L - 1);
    const double n_tilde = static_cast<double>(N + 2 * L - 2);
    const double qa = snr * n_tilde;
    const double qb = snr * (budget.Pr * c1 + n_tilde * D);
    const double qc = unit_gain_energy * budget.Pr;
    const double u = 2.0 * qc / (qb + std::sqrt(qb * qb + 4.0 * qa * qc));
    if (!(u > 0)) {
        op.alpha = std::sqrt(budget.Pr / D);
        return op;
    }
    op.noise_variance = u;
    op.alpha = amplification_factor(budget.P1, budget.P2, budget.Pr, budget.var_h1, budget.var_h2, u);
    return op;
}

ReceivedSignal synthesize_received(const MeasurementModel& model,
                                   const CompositeChannel& channels, const SparseChannel& h1,
                                   double snr_db, RandomStream& rng)
{
    const auto cols = static_cast<Eigen::Index>(4 * model.L - 2);
    if (channels.theta.size() != cols || h1.length != model.L ||
        model.X.rows() != static_cast<Eigen::Index>(model.N_tilde) || model.X.cols() != cols)
        throw std::invalid_argument("synthesize_received: model and channel dimensions disagree");

    ReceivedSignal out;
    out.snr_db = snr_db;
    out.noiseless = model.alpha * (model.X * channels.theta);
    out.noise_variance = noise_variance_for_snr(out.noiseless.squaredNorm(), model.alpha,
                                                h1.energy(), model.N, model.L, snr_db);

    const std::size_t relay_len = model.N + model.L - 1;
    if (out.noise_variance == 0.0) {
        out.relay_noise = ComplexVector::Zero(static_cast<Eigen::Index>(relay_len));
        out.terminal_noise = ComplexVector::Zero(static_cast<Eigen::Index>(model.N_tilde));
        out.noise = ComplexVector::Zero(static_cast<Eigen::Index>(model.N_tilde));
        out.y = out.noiseless;
        return out;
    }

    out.relay_noise = complex_normal_vector(rng, relay_len, out.noise_variance);
    out.terminal_noise = complex_normal_vector(rng, model.N_tilde, out.noise_variance);
    out.noise = model.alpha * conv(out.relay_noise, h1.taps) + out.terminal_noise;
    out.y = out.noiseless + out.noise;
    return out;
}

} // namespace twrn
