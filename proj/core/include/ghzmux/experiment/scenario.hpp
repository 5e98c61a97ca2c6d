#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ghzmux/metrics/metrics.hpp"
#include "ghzmux/protocol/config.hpp"
#include "ghzmux/protocol/run.hpp"

namespace ghzmux::experiment
{

enum class Preset
{
    ideal,
    practical,
    worst_case,
    custom,
};

std::string_view to_string(Preset p);
Preset           parse_preset(std::string_view name);

/// Trials used by the noisy presets unless overridden.
inline constexpr std::size_t kDefaultTrials = 1000;

struct Scenario
{
    std::string              name = "default";
    protocol::ProtocolConfig config;
    Preset                   preset = Preset::custom;
    /// Recompute eta0 = |r0|^2 from the active cavity instead of the fixed value.
    bool eta0_from_cavity = false;
};

/// Overwrites the device and qudit-noise settings the preset owns (and the
/// cavity corner for worst-case). Depends on config.M, so set M first.
void apply_preset(protocol::ProtocolConfig& config, Preset preset);

/// Scenario built from defaults plus a preset.
Scenario make_scenario(std::string name, int M, int N, Preset preset);

/// Configurations evaluated for one scenario: one, or both detuning signs for
/// worst-case (the reported fidelity is the minimum over them).
std::vector<protocol::ProtocolConfig> evaluation_variants(const Scenario& s);

struct PointResult
{
    double                       L0_km            = 0.0;
    double                       avg_fidelity     = 0.0;
    double                       survival         = 0.0;
    metrics::EfficiencyBreakdown efficiency;
    metrics::TimingReport        timing;
    std::size_t                  trials     = 0;
    std::size_t                  degenerate = 0;
};

/// Runs every variant of `s` at distance L0 and takes the least favourable.
/// Throws std::invalid_argument when the closed-form efficiency is zero.
PointResult evaluate_point(const Scenario& s, double L0_km, protocol::Backend backend);

/// Same, for an already fixed configuration.
PointResult evaluate_config(const protocol::ProtocolConfig& config, bool eta0_from_cavity,
                            protocol::Backend backend);

}  // namespace ghzmux::experiment
