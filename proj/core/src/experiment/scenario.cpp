#include "ghzmux/experiment/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "ghzmux/photon/interface.hpp"

namespace ghzmux::experiment
{

std::string_view
to_string(Preset p)
{
    switch (p) {
    case Preset::ideal:      return "ideal";
    case Preset::practical:  return "practical";
    case Preset::worst_case: return "worst-case";
    case Preset::custom:     return "custom";
    }
    return "unknown";
}

Preset
parse_preset(std::string_view name)
{
    if (name == "ideal")
        return Preset::ideal;
    if (name == "practical")
        return Preset::practical;
    if (name == "worst-case" || name == "worst_case")
        return Preset::worst_case;
    if (name == "custom")
        return Preset::custom;
    throw std::invalid_argument("preset: unknown preset '" + std::string(name) + "'");
}

void
apply_preset(protocol::ProtocolConfig& config, Preset preset)
{
    switch (preset) {
    case Preset::custom:
        return;
    case Preset::ideal:
        config.device      = {1.0, 0.0, 0.0, 0.0};
        config.qudit_noise = {0.0, 0.0};
        return;
    case Preset::practical:
    case Preset::worst_case:
        config.device      = {0.9, 0.01, 0.01, 0.1 * config.M};
        config.qudit_noise = {0.1, 0.1};
        if (config.trials < 2)
            config.trials = kDefaultTrials;
        if (preset == Preset::worst_case) {
            config.unit_cavities.clear();
            config.cavity = photon::worst_case_params(config.cavity).front();
        }
        return;
    }
}

Scenario
make_scenario(std::string name, int M, int N, Preset preset)
{
    Scenario s;
    s.name     = std::move(name);
    s.preset   = preset;
    s.config.M = M;
    s.config.N = N;
    apply_preset(s.config, preset);
    return s;
}

std::vector<protocol::ProtocolConfig>
evaluation_variants(const Scenario& s)
{
    if (s.preset != Preset::worst_case)
        return {s.config};
    std::vector<protocol::ProtocolConfig> out;
    for (const auto& cav : photon::worst_case_params(s.config.cavity)) {
        protocol::ProtocolConfig c = s.config;
        c.cavity                   = cav;
        out.push_back(std::move(c));
    }
    return out;
}

PointResult
evaluate_config(const protocol::ProtocolConfig& config, bool eta0_from_cavity, protocol::Backend backend)
{
    protocol::ProtocolConfig c = config;
    if (eta0_from_cavity) {
        double sum = 0.0;
        for (int n = 0; n < c.N; ++n)
            for (int m = 0; m < c.M; ++m)
                sum += photon::cpf_efficiency(c.reflection_for(n, m));
        c.eta0 = sum / static_cast<double>(c.qubit_count());
    }
    const protocol::RunResult run = protocol::run_protocol(c, backend);

    PointResult p;
    p.L0_km        = c.L0_km;
    p.avg_fidelity = run.average_fidelity;
    p.survival     = run.survival;
    p.trials       = run.trials;
    p.degenerate   = run.degenerate;
    p.efficiency   = metrics::efficiency_breakdown(c);
    if (!(p.efficiency.total > 0.0))
        throw std::invalid_argument("efficiency: closed-form average efficiency is zero, completion time undefined");
    p.timing = metrics::timing_report(c.N, c.L0_km, p.efficiency.total, c.M, c.alpha_per_km, c.c_m_per_s);
    return p;
}

PointResult
evaluate_point(const Scenario& s, double L0_km, protocol::Backend backend)
{
    bool        first = true;
    PointResult worst;
    for (auto c : evaluation_variants(s)) {
        c.L0_km             = L0_km;
        const PointResult p = evaluate_config(c, s.eta0_from_cavity, backend);
        if (first || p.avg_fidelity < worst.avg_fidelity) {
            const std::size_t degenerate = first ? 0 : worst.degenerate;
            worst = p;
            worst.degenerate += degenerate;
        } else {
            worst.degenerate += p.degenerate;
        }
        first = false;
    }
    return worst;
}

}  // namespace ghzmux::experiment
