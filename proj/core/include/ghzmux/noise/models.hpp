#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "ghzmux/quantum/ops.hpp"
#include "ghzmux/quantum/state.hpp"

namespace ghzmux::noise
{

struct DecoherenceParams
{
    double T1_s = 10e-3;  // relaxation time
    double T2_s = 5e-3;   // dephasing time

    void validate() const;
};

struct DeviceParams
{
    double eta_os = 1.0;  // optical-switch efficiency
    double e_os   = 0.0;  // optical-switch error rate
    double eta_l  = 0.0;  // loss per interferometer fiber loop
    double x      = 0.0;  // interferometer phase-noise scale, lambda_d = exp(-x^2/2)

    void validate() const;
};

struct QuditNoiseParams
{
    double sigma_a = 0.0;  // amplitude fluctuation std
    double sigma_p = 0.0;  // phase fluctuation std (rad)

    bool enabled() const noexcept { return sigma_a > 0.0 || sigma_p > 0.0; }
    void validate() const;
};

/// Product Kraus set {A_i(t) B_j(t)}, i in {+,-}, j in 0..3, with
/// mu1 = exp(-t/T1), mu2 = exp(-t/T2):
///   B0 = (|0><0| + sqrt(mu1)|1><1|)/sqrt2,  B1 = (sqrt(mu1)|0><0| + |1><1|)/sqrt2,
///   B2 = B3^dag = sqrt((1-mu1)/2)|0><1|,    A+- = sqrt((1+-mu2)/2)(|0><0| +- |1><1|).
/// Coherences scale by sqrt(mu1)*mu2; populations relax toward 1/2 at rate mu1.
/// Throws std::invalid_argument for t < 0.
quantum::KrausChannel qubit_decoherence_channel(double t_s, const DecoherenceParams& p);

/// exp(-x^2/2)
double lambda_d(double x);

/// Lambda_D(rho) = lam rho + (1 - lam) sum_k P_k rho P_k with P_k projectors on
/// the time-bin subsystem: off-diagonals in the time-bin basis scale by lam.
quantum::DensityMatrix interferometer_dephasing(const quantum::DensityMatrix& rho, double lam,
                                                const quantum::Layout& layout, std::size_t time_bin_subsystem);

/// (1/sqrt(C_d)) sum_j (1 + a_j) exp(i t_j) |j>, a_j ~ N(0, sa^2), t_j ~ N(0, sp^2).
quantum::StateVector sample_noisy_qudit(std::size_t d, const QuditNoiseParams& q, std::mt19937_64& rng);

/// [eta_os (1 - e_os)]^(M (N + 1)). Switch errors cost efficiency only; the
/// erroneous output is removed by detection-time postselection.
double switch_efficiency_factor(int M, int N, const DeviceParams& dev);

/// Independent RNG stream for one Monte Carlo trial, a pure function of
/// (master seed, trial index).
std::mt19937_64 trial_stream(std::uint64_t master_seed, std::uint64_t trial);

}  // namespace ghzmux::noise
