// SPDX-License-Identifier: Apache-2.0
//
// Training phase of the amplify-and-forward two-way relay link, seen from
// terminal T1:
//
//   y_r = x1 * h1 + x2 * h2 + n_r                      (relay, length N+L-1)
//   y   = alpha * y_r * h1 + n1
//       = alpha * (X1 b + X2 c) + alpha * n_r * h1 + n1  (T1, length N+2L-2)
//
// Training sequences carry unit power per symbol (||x||^2 = N). SNR is
// measured at T1 as ||alpha X theta||^2 / E||n||^2 with
// E||n||^2 = sigma^2 (alpha^2 ||h1||^2 (N+L-1) + N~).

#ifndef TWRN_LINK_HPP
#define TWRN_LINK_HPP

#include <cstddef>
#include <limits>

#include "twrn/channel.hpp"
#include "twrn/linalg.hpp"
#include "twrn/rng.hpp"

namespace twrn {

/// Pass as snr_db to synthesize a noiseless observation.
inline constexpr double kNoiseless = std::numeric_limits<double>::infinity();

struct TrainingPair
{
    ComplexVector x1;
    ComplexVector x2;
};

struct MeasurementModel
{
    ComplexMatrix X1;  // N~ x (2L-1)
    ComplexMatrix X2;  // N~ x (2L-1)
    ComplexMatrix X;   // [X1 | X2], N~ x (4L-2)
    double alpha = 1.0;
    std::size_t N = 0;
    std::size_t L = 0;
    std::size_t N_tilde = 0;

    /// alpha * X, the effective sensing matrix seen by the estimators.
    ComplexMatrix sensing_matrix() const { return alpha * X; }
};

struct ReceivedSignal
{
    ComplexVector y;
    ComplexVector noiseless;      // alpha X theta
    ComplexVector noise;          // alpha conv(n_r, h1) + n1
    ComplexVector relay_noise;    // n_r, length N+L-1
    ComplexVector terminal_noise; // n1, length N~
    double noise_variance = 0.0;  // sigma^2 per complex sample
    double snr_db = kNoiseless;
};

/// Relay power budget and channel variances feeding the amplification factor.
struct RelayBudget
{
    double P1 = 1.0;
    double P2 = 1.0;
    double Pr = 1.0;
    double var_h1 = 1.0;
    double var_h2 = 1.0;
};

/// N i.i.d. CN(0,1) entries rescaled so that ||x||^2 = N exactly.
ComplexVector gen_training(std::size_t N, RandomStream& rng);
TrainingPair gen_training_pair(std::size_t N, RandomStream& rng);

/// alpha = sqrt(Pr / (var_h1 P1 + var_h2 P2 + var_n)).
double amplification_factor(double P1, double P2, double Pr, double var_h1, double var_h2,
                            double var_n);

MeasurementModel build_measurement(const ComplexVector& x1, const ComplexVector& x2,
                                   std::size_t L, double alpha);

/// sigma^2 that puts the T1 receive SNR at snr_db for the given model and
/// h1 energy. Zero for kNoiseless.
double noise_variance_for_snr(double noiseless_energy, double alpha, double h1_energy,
                              std::size_t N, std::size_t L, double snr_db);

/// Analytic E||n||^2 / sigma^2 = alpha^2 ||h1||^2 (N+L-1) + N~.
double noise_energy_factor(double alpha, double h1_energy, std::size_t N, std::size_t L);

struct RelayOperatingPoint
{
    double alpha = 1.0;
    double noise_variance = 0.0;
};

/// Solves jointly for alpha and sigma^2 so that the relay normalization uses
/// the same sigma^2 (as var_n) that produces snr_db at T1. `unit_gain_energy`
/// is ||X theta||^2 (alpha excluded).
RelayOperatingPoint relay_operating_point(const RelayBudget& budget, double unit_gain_energy,
                                          double h1_energy, std::size_t N, std::size_t L,
                                          double snr_db);

ReceivedSignal synthesize_received(const MeasurementModel& model,
                                   const CompositeChannel& channels, const SparseChannel& h1,
                                   double snr_db, RandomStream& rng);

} // namespace twrn

#endif
