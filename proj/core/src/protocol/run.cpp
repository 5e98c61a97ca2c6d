#include "ghzmux/protocol/run.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "ghzmux/noise/models.hpp"
#include "ghzmux/protocol/factorized.hpp"
#include "ghzmux/quantum/ops.hpp"

namespace ghzmux::protocol
{

double
trial_average_fidelity(const std::vector<OutcomeResult>& outcomes, int M)
{
    if (outcomes.empty())
        return 0.0;
    double sum = 0.0;
    for (const auto& o : outcomes)
        sum += std::pow(o.fidelity, 1.0 / M);
    return sum / static_cast<double>(outcomes.size());
}

namespace
{

void
check_brute_capacity(const ProtocolConfig& config)
{
    // d * 2^(NM) = 2^(M (N + 1))
    const int bits = config.M * (config.N + 1);
    if (bits > 12 || (std::size_t{1} << bits) > kBruteCapacity)
        throw CapacityError("brute backend capacity exceeded: d*2^(NM) = 2^" + std::to_string(bits)
                            + " > " + std::to_string(kBruteCapacity) + " for (M, N) = (" + std::to_string(config.M)
                            + ", " + std::to_string(config.N) + ")");
}

TrialResult
evaluate_brute(const ProtocolConfig& config, const quantum::StateVector& qudit)
{
    check_brute_capacity(config);
    const quantum::Layout layout   = hybrid_layout(config.M, config.N);
    const Schedule        schedule = decoherence_schedule(config);

    const quantum::StateVector hybrid = interaction_pass(qudit, config);
    quantum::DensityMatrix     rho    = quantum::DensityMatrix::from_pure(hybrid);
    for (int n = 0; n < config.N; ++n) {
        const auto channel =
            noise::qubit_decoherence_channel(schedule.wait_s[static_cast<std::size_t>(n)], config.decoherence);
        for (int m = 0; m < config.M; ++m) {
            const std::size_t target[] = {global_qubit(n, m, config.M)};
            rho = quantum::apply_channel(channel, rho, target, layout);
        }
    }

    const auto outcomes = x_basis_measure(rho, noise::lambda_d(config.device.x), config.M, config.N);

    TrialResult result;
    for (const auto& raw : outcomes) {
        const MeasurementOutcome corrected = phase_correction(raw, config.M, config.N);
        OutcomeResult o;
        o.k           = raw.k;
        o.probability = raw.probability;
        o.degenerate  = raw.degenerate;
        o.fidelity    = quantum::pure_fidelity(ideal_target(config.M, config.N, raw.k, true),
                                               corrected.conditional_state);
        result.survival += o.probability;
        result.outcomes.push_back(o);
    }
    result.average_fidelity = trial_average_fidelity(result.outcomes, config.M);
    return result;
}

}  // namespace

TrialResult
evaluate_trial(const ProtocolConfig& config, const quantum::StateVector& qudit, Backend backend)
{
    config.validate();
    if (backend == Backend::brute)
        return evaluate_brute(config, qudit);
    return FactorizedModel(config).evaluate(qudit);
}

RunResult
run_protocol(const ProtocolConfig& config, Backend backend)
{
    config.validate();
    if (backend == Backend::brute)
        check_brute_capacity(config);

    std::optional<FactorizedModel> model;
    if (backend == Backend::factorized)
        model.emplace(config);

    RunResult run;
    run.schedule = decoherence_schedule(config);
    run.trials   = config.qudit_noise.enabled() ? config.trials : 1;
    const std::size_t d = config.d();
    run.outcomes.resize(d);
    for (std::size_t k = 0; k < d; ++k)
        run.outcomes[k].k = k;

    for (std::size_t t = 0; t < run.trials; ++t) {
        std::mt19937_64 rng = noise::trial_stream(config.seed, t);
        const quantum::StateVector qudit = prepare_qudit(config, &rng);
        const TrialResult trial = model ? model->evaluate(qudit) : evaluate_brute(config, qudit);
        for (std::size_t k = 0; k < d; ++k) {
            run.outcomes[k].probability += trial.outcomes[k].probability;
            run.outcomes[k].fidelity += trial.outcomes[k].fidelity;
            if (trial.outcomes[k].degenerate) {
                run.outcomes[k].degenerate = true;
                ++run.degenerate;
            }
        }
        run.average_fidelity += trial.average_fidelity;
        run.survival += trial.survival;
    }

    const double inv = 1.0 / static_cast<double>(run.trials);
    for (auto& o : run.outcomes) {
        o.probability *= inv;
        o.fidelity *= inv;
    }
    run.average_fidelity *= inv;
    run.survival *= inv;
    return run;
}

}  // namespace ghzmux::protocol
