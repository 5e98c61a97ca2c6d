#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghzmux/experiment/scenario.hpp"

namespace ghzmux::experiment
{

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// "start:stop:step", inclusive of stop when it lands on the grid. Throws
/// std::invalid_argument on malformed text, step <= 0 or stop < start.
std::vector<double> parse_grid(const std::string& text);

/// 0 to 50 km in 2.5 km steps.
std::vector<double> default_grid();

struct SweepRow
{
    double        L0_km = 0.0;
    int           M     = 0;
    int           N     = 0;
    double        avg_fidelity   = 0.0;
    double        avg_efficiency = 0.0;
    double        eta1 = 0.0, eta2 = 0.0, eta3 = 0.0, eta4 = 0.0;
    double        protocol_duration_s   = 0.0;
    double        avg_completion_time_s = 0.0;
    double        min_coherence_time_s  = 0.0;
    std::size_t   trials = 0;
    std::uint64_t seed   = 0;
    std::string   scenario;
};

struct SweepOptions
{
    protocol::Backend backend = protocol::Backend::factorized;
    unsigned          threads = 0;  // 0: hardware concurrency
};

/// Runs `task(i)` for i in [0, count) on at most `threads` workers. The first
/// exception by index is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

/// One row per (scenario, L0), scenario-major, independent of thread count.
std::vector<SweepRow> compute_sweep(const std::vector<Scenario>& scenarios, const std::vector<double>& grid,
                                    const SweepOptions& options = {});

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out);
std::string csv_header();

/// Writes results.csv, fidelity_<name>.dat, efficiency_<name>.dat and
/// summary.txt into `out_dir` (created if missing). Throws IoError when the
/// directory or a file cannot be written.
std::vector<SweepRow> run_sweep(const std::vector<Scenario>& scenarios, const std::vector<double>& grid,
                                const std::filesystem::path& out_dir, const SweepOptions& options = {});

}  // namespace ghzmux::experiment
