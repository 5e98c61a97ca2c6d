#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "ghzmux/protocol/config.hpp"
#include "ghzmux/quantum/ops.hpp"
#include "ghzmux/quantum/state.hpp"

namespace ghzmux::protocol
{

/// bits[m] = i_m of the binary expansion of l; bit m set means the photon
/// enters the m-th cavity unit at every node in time bin l.
using RoutingBits = std::vector<std::uint8_t>;

/// Throws std::out_of_range unless 0 <= l < 2^M.
RoutingBits routing_bits(std::size_t l, int M);

/// Uniform time-bin superposition, or one noisy sample drawn from `rng` when
/// qudit noise is configured (rng must then be non-null).
quantum::StateVector prepare_qudit(const ProtocolConfig& config, std::mt19937_64* rng = nullptr);

/// Subsystems of the hybrid register: qubits 0..NM-1 (global index n*M + m,
/// least significant first), then the time bin as the slowest factor.
quantum::Layout hybrid_layout(int M, int N);

/// Scatters the qudit through every node with all stationary qubits in |0>.
/// Bin l applies the effective flip operator of unit (n, m) iff bit m of l is set;
/// other units are bypassed losslessly. Norm squared of the result is the
/// scattering survival probability.
quantum::StateVector interaction_pass(const quantum::StateVector& qudit, const ProtocolConfig& config);

struct Schedule
{
    double              t0_s = 0.0;
    std::vector<double> wait_s;                 // per node, index 0 = node 1
    double              protocol_duration_s = 0.0;  // 2 (N - 1) t0
};

Schedule decoherence_schedule(const ProtocolConfig& config);

/// Probability below which an outcome is treated as never heralded.
inline constexpr double kDegenerateProbability = 1e-14;

struct MeasurementOutcome
{
    std::size_t            k;
    double                 probability;
    quantum::DensityMatrix conditional_state;  // renormalized, over the NM qubits
    bool                   degenerate = false;     // probability ~ 0, state is the maximally mixed limit
};

/// Applies Lambda_D to the time-bin factor of `hybrid` and projects onto every
/// Fourier state <k| = d^(-1/2) sum_l theta^(-k l) <l|, theta = exp(2 pi i / d).
std::vector<MeasurementOutcome> x_basis_measure(const quantum::DensityMatrix& hybrid, double lam_d, int M,
                                                int N);

/// diag(1, theta^(2^m k)) on qubit m of node N for every group m.
MeasurementOutcome phase_correction(const MeasurementOutcome& outcome, int M, int N);

/// Product over groups m of (|0..0> + theta^(-2^m k) |1..1>)/sqrt2, or the
/// phase-corrected product of standard GHZ states when `corrected` is set.
quantum::StateVector ideal_target(int M, int N, std::size_t k, bool corrected = false);

}  // namespace ghzmux::protocol
