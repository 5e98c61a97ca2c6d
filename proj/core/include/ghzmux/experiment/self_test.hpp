#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ghzmux/metrics/metrics.hpp"
#include "ghzmux/protocol/config.hpp"

namespace ghzmux::experiment
{

using EfficiencyFn = std::function<metrics::EfficiencyBreakdown(int M, int N, double L0_km, double eta0,
                                                                const noise::DeviceParams& device,
                                                                double alpha_per_km)>;

struct SelfTestContext
{
    /// Closed-form efficiency under test; swap in a broken one for mutation checks.
    EfficiencyFn efficiency =
        [](int M, int N, double L0, double eta0, const noise::DeviceParams& dev, double alpha) {
            return metrics::efficiency_breakdown(M, N, L0, eta0, dev, alpha);
        };
    protocol::Backend backend = protocol::Backend::factorized;
    std::size_t       trials  = 1000;
    unsigned          threads = 0;
};

struct Check
{
    std::string label;
    double      measured = 0.0;
    std::string expectation;
    bool        passed = false;
};

struct CriterionResult
{
    std::string        id;
    std::string        name;
    std::vector<Check> checks;
    double             seconds = 0.0;
    std::string        error;  // exception text, if the run threw

    bool passed() const;
};

struct Criterion
{
    std::string id;
    std::string name;
    std::function<std::vector<Check>(const SelfTestContext&)> run;
};

const std::vector<Criterion>& acceptance_criteria();

/// True if `filter` is empty, equals the id, or is a substring of the name.
bool matches(const Criterion& c, const std::string& filter);

CriterionResult run_criterion(const Criterion& c, const SelfTestContext& ctx);

/// Runs and prints the matching criteria, one verdict line each followed by
/// its checks. Returns the results; throws std::invalid_argument when the
/// filter matches nothing.
std::vector<CriterionResult> run_self_test(const SelfTestContext& ctx, const std::string& filter, std::ostream& out);

void print_result(const CriterionResult& r, std::ostream& out);

}  // namespace ghzmux::experiment
