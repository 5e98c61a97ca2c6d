#include "ghzmux/experiment/robustness.hpp"

#include <algorithm>
#include <iomanip>
#include <locale>
#include <ostream>
#include <stdexcept>
#include <string>

#include "ghzmux/experiment/sweep.hpp"
#include "ghzmux/noise/models.hpp"

namespace ghzmux::experiment
{

std::string_view
to_string(RobustnessMode m)
{
    switch (m) {
    case RobustnessMode::corners:    return "corners";
    case RobustnessMode::random:     return "random";
    case RobustnessMode::nonuniform: return "nonuniform";
    }
    return "unknown";
}

RobustnessMode
parse_robustness_mode(std::string_view name)
{
    if (name == "corners")
        return RobustnessMode::corners;
    if (name == "random")
        return RobustnessMode::random;
    if (name == "nonuniform")
        return RobustnessMode::nonuniform;
    throw std::invalid_argument("mode: unknown robustness mode '" + std::string(name) + "'");
}

std::vector<protocol::ProtocolConfig>
robustness_configs(const Scenario& s, const RobustnessOptions& options)
{
    options.ranges.validate();
    std::vector<protocol::ProtocolConfig> out;
    protocol::ProtocolConfig base = s.config;
    base.unit_cavities.clear();

    switch (options.mode) {
    case RobustnessMode::corners:
    case RobustnessMode::random: {
        const auto mode = options.mode == RobustnessMode::corners ? photon::PerturbationMode::corners
                                                                  : photon::PerturbationMode::random;
        for (const auto& cav : photon::perturbed_param_sets(base.cavity, options.ranges, mode, options.count,
                                                            options.seed)) {
            protocol::ProtocolConfig c = base;
            c.cavity                   = cav;
            out.push_back(std::move(c));
        }
        break;
    }
    case RobustnessMode::nonuniform: {
        if (options.count == 0)
            throw std::invalid_argument("count: must be >= 1 for nonuniform mode");
        for (std::size_t i = 0; i < options.count; ++i) {
            protocol::ProtocolConfig c = base;
            // Distinct, reproducible stream per sample.
            const std::uint64_t sub = noise::trial_stream(options.seed, i)();
            c.unit_cavities = photon::perturbed_param_sets(base.cavity, options.ranges, photon::PerturbationMode::random,
                                                           c.qubit_count(), sub);
            out.push_back(std::move(c));
        }
        break;
    }
    }
    return out;
}

std::vector<RobustnessPoint>
run_robustness(const Scenario& s, const std::vector<double>& grid, const RobustnessOptions& options)
{
    if (grid.empty())
        throw std::invalid_argument("grid: must not be empty");
    const auto configs = robustness_configs(s, options);

    std::vector<PointResult> results(configs.size() * grid.size());
    parallel_for(results.size(), options.threads, [&](std::size_t i) {
        protocol::ProtocolConfig c = configs[i / grid.size()];
        c.L0_km                    = grid[i % grid.size()];
        results[i]                 = evaluate_config(c, s.eta0_from_cavity, options.backend);
    });

    std::vector<RobustnessPoint> out;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        RobustnessPoint p;
        p.L0_km   = grid[g];
        p.samples = configs.size();
        for (std::size_t k = 0; k < configs.size(); ++k) {
            const PointResult& r = results[k * grid.size() + g];
            const double       f = r.avg_fidelity;
            const double       e = r.efficiency.total;
            if (k == 0) {
                p.min_fidelity = p.max_fidelity = f;
                p.min_efficiency = p.max_efficiency = e;
            }
            p.min_fidelity = std::min(p.min_fidelity, f);
            p.max_fidelity = std::max(p.max_fidelity, f);
            p.min_efficiency = std::min(p.min_efficiency, e);
            p.max_efficiency = std::max(p.max_efficiency, e);
            p.mean_fidelity += f;
            p.mean_efficiency += e;
        }
        p.mean_fidelity /= static_cast<double>(configs.size());
        p.mean_efficiency /= static_cast<double>(configs.size());
        out.push_back(p);
    }
    return out;
}

void
write_robustness_csv(const std::vector<RobustnessPoint>& points, std::ostream& out)
{
    out.imbue(std::locale::classic());
    out << std::setprecision(12);
    out << "L0_km,min_fidelity,max_fidelity,mean_fidelity,min_efficiency,max_efficiency,mean_efficiency,samples\n";
    for (const auto& p : points)
        out << p.L0_km << ',' << p.min_fidelity << ',' << p.max_fidelity << ',' << p.mean_fidelity << ','
            << p.min_efficiency << ',' << p.max_efficiency << ',' << p.mean_efficiency << ',' << p.samples << '\n';
}

}  // namespace ghzmux::experiment
