#include "ghzmux/metrics/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "ghzmux/quantum/ops.hpp"

namespace ghzmux::metrics
{

EfficiencyBreakdown
efficiency_breakdown(int M, int N, double L0_km, double eta0, const noise::DeviceParams& device,
                     double alpha_per_km)
{
    if (M < 1 || N < 1)
        throw std::invalid_argument("efficiency_breakdown: M and N must be >= 1");
    if (!(eta0 >= 0.0 && eta0 <= 1.0))
        throw std::invalid_argument("efficiency_breakdown: eta0 must lie in [0, 1]");
    if (!(L0_km >= 0.0) || !(alpha_per_km >= 0.0))
        throw std::invalid_argument("efficiency_breakdown: L0 and alpha must be >= 0");
    device.validate();

    const double d = std::ldexp(1.0, M);
    EfficiencyBreakdown e;
    e.eta1  = std::pow(eta0, N * M / 2.0);
    e.eta2  = std::pow(1.0 - device.eta_l, (d - 1.0) / 2.0);
    e.eta3  = noise::switch_efficiency_factor(M, N, device);
    e.eta4  = std::exp(-alpha_per_km * (N - 1) * L0_km);
    e.total = e.eta1 * e.eta2 * e.eta3 * e.eta4;
    return e;
}

EfficiencyBreakdown
efficiency_breakdown(const protocol::ProtocolConfig& config)
{
    return efficiency_breakdown(config.M, config.N, config.L0_km, config.eta0, config.device, config.alpha_per_km);
}

double
average_fidelity(std::span<const quantum::DensityMatrix> conditional, std::span<const quantum::StateVector> targets,
                 int M)
{
    const std::size_t d = std::size_t{1} << M;
    if (conditional.size() != d || targets.size() != d)
        throw std::invalid_argument("average_fidelity: expected one state and one target per outcome");
    double sum = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        if (!targets[k].is_normalized(1e-10))
            throw std::invalid_argument("average_fidelity: target is not normalized");
        const double f = quantum::pure_fidelity(targets[k], conditional[k].normalized());
        sum += std::pow(std::min(f, 1.0), 1.0 / M);
    }
    return sum / static_cast<double>(d);
}

TimingReport
timing_report(int N, double L0_km, double avg_efficiency, int M, double alpha_per_km, double c_m_per_s)
{
    if (!(avg_efficiency > 0.0))
        throw std::invalid_argument("timing_report: average efficiency must be > 0");
    if (N < 2 || M < 1 || !(L0_km >= 0.0) || !(c_m_per_s > 0.0))
        throw std::invalid_argument("timing_report: invalid (N, M, L0, c)");

    TimingReport t;
    t.t0_s                  = L0_km * 1e3 / c_m_per_s;
    t.protocol_duration_s   = 2.0 * (N - 1) * t.t0_s;
    t.avg_completion_time_s = t.protocol_duration_s / avg_efficiency;
    t.min_coherence_time_s  = t.avg_completion_time_s;
    const double eta4       = std::exp(-alpha_per_km * (N - 1) * L0_km);
    t.conventional_coherence_time_s = t.protocol_duration_s / std::pow(eta4, M);
    return t;
}

double
witness_threshold_distance(std::span<const CurvePoint> curve, double threshold)
{
    if (curve.empty())
        throw std::invalid_argument("witness_threshold_distance: empty curve");
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (!(curve[i].L0_km > curve[i - 1].L0_km))
            throw std::invalid_argument("witness_threshold_distance: grid must be strictly ascending");

    if (!(curve.front().fidelity > threshold))
        return 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (!(curve[i].fidelity > threshold)) {
            const auto& a = curve[i - 1];
            const auto& b = curve[i];
            const double s = (a.fidelity - threshold) / (a.fidelity - b.fidelity);
            return a.L0_km + s * (b.L0_km - a.L0_km);
        }
    return curve.back().L0_km;
}

}  // namespace ghzmux::metrics
