#pragma once

#include <span>
#include <vector>

#include "ghzmux/noise/models.hpp"
#include "ghzmux/protocol/config.hpp"
#include "ghzmux/quantum/state.hpp"

namespace ghzmux::metrics
{

struct EfficiencyBreakdown
{
    double eta1  = 1.0;  // CPF scattering, eta0^(NM/2)
    double eta2  = 1.0;  // interferometer loops, (1 - eta_l)^((d-1)/2)
    double eta3  = 1.0;  // optical switches, [eta_os (1 - e_os)]^(M(N+1))
    double eta4  = 1.0;  // fiber, exp(-alpha (N-1) L0)
    double total = 1.0;
};

EfficiencyBreakdown efficiency_breakdown(int M, int N, double L0_km, double eta0, const noise::DeviceParams& device,
                                         double alpha_per_km = protocol::kDefaultAlphaPerKm);

EfficiencyBreakdown efficiency_breakdown(const protocol::ProtocolConfig& config);

/// (1/d) sum_k <Psi_k| rho_k |Psi_k>^(1/M), conditional states renormalized
/// first. Throws std::invalid_argument on an unnormalized target or a size
/// mismatch.
double average_fidelity(std::span<const quantum::DensityMatrix> conditional,
                        std::span<const quantum::StateVector> targets, int M);

struct TimingReport
{
    double t0_s                        = 0.0;
    double protocol_duration_s         = 0.0;  // 2 (N-1) t0
    double avg_completion_time_s       = 0.0;  // protocol_duration / eta
    double min_coherence_time_s        = 0.0;  // ~ avg completion time
    double conventional_coherence_time_s = 0.0;  // 2 (N-1) L0 / (c eta4^M)

    /// conventional / multiplexed requirement; 0 when both vanish.
    double coherence_ratio() const
    {
        return min_coherence_time_s > 0.0 ? conventional_coherence_time_s / min_coherence_time_s : 0.0;
    }
};

/// Throws std::invalid_argument for avg_efficiency <= 0.
TimingReport timing_report(int N, double L0_km, double avg_efficiency, int M,
                           double alpha_per_km = protocol::kDefaultAlphaPerKm,
                           double c_m_per_s    = protocol::kDefaultSignalSpeed);

struct CurvePoint
{
    double L0_km;
    double fidelity;
};

/// Distance at which the fidelity curve first drops to the 0.5 witness
/// threshold, linearly interpolated; the last sampled distance if it never
/// does, 0 if it starts at or below. Throws on an empty or non-ascending grid.
double witness_threshold_distance(std::span<const CurvePoint> curve, double threshold = 0.5);

}  // namespace ghzmux::metrics
