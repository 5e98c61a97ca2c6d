#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "ghzmux/experiment/scenario.hpp"
#include "ghzmux/photon/interface.hpp"

namespace ghzmux::experiment
{

enum class RobustnessMode
{
    corners,     // every corner of the box, all units identical
    random,      // `count` uniform samples, all units identical
    nonuniform,  // `count` samples, each unit drawn independently
};

std::string_view to_string(RobustnessMode m);
RobustnessMode   parse_robustness_mode(std::string_view name);

struct RobustnessOptions
{
    RobustnessMode     mode = RobustnessMode::corners;
    photon::ParamRanges ranges;
    std::size_t        count   = 100;
    std::uint64_t      seed    = 7;
    protocol::Backend  backend = protocol::Backend::factorized;
    unsigned           threads = 0;
};

struct RobustnessPoint
{
    double      L0_km = 0.0;
    double      min_fidelity = 0.0, max_fidelity = 0.0, mean_fidelity = 0.0;
    double      min_efficiency = 0.0, max_efficiency = 0.0, mean_efficiency = 0.0;
    std::size_t samples = 0;
};

/// Cavity configurations evaluated per distance (all share the scenario's
/// devices, noise, seed and trials).
std::vector<protocol::ProtocolConfig> robustness_configs(const Scenario& s, const RobustnessOptions& options);

std::vector<RobustnessPoint> run_robustness(const Scenario& s, const std::vector<double>& grid,
                                            const RobustnessOptions& options = {});

void write_robustness_csv(const std::vector<RobustnessPoint>& points, std::ostream& out);

}  // namespace ghzmux::experiment
