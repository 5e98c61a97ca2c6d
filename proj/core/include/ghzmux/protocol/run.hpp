#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ghzmux/protocol/config.hpp"
#include "ghzmux/protocol/engine.hpp"
#include "ghzmux/quantum/state.hpp"

namespace ghzmux::protocol
{

/// Largest hybrid dimension d * 2^(NM) the brute-force backend accepts.
inline constexpr std::size_t kBruteCapacity = 4096;

class CapacityError : public std::length_error
{
public:
    using std::length_error::length_error;
};

struct OutcomeResult
{
    std::size_t k           = 0;
    double      probability = 0.0;  // herald probability for this k
    double      fidelity    = 0.0;  // <Psi_s^{(x)M}| corrected rho_k |Psi_s^{(x)M}>
    bool        degenerate  = false;
};

struct TrialResult
{
    std::vector<OutcomeResult> outcomes;
    double survival         = 0.0;  // sum_k probability
    double average_fidelity = 0.0;  // (1/d) sum_k fidelity^(1/M)
};

/// Average fidelity of one trial: (1/d) sum_k F_k^(1/M).
double trial_average_fidelity(const std::vector<OutcomeResult>& outcomes, int M);

/// One protocol execution for a fixed (possibly noisy) input qudit.
TrialResult evaluate_trial(const ProtocolConfig& config, const quantum::StateVector& qudit, Backend backend);

struct RunResult
{
    std::vector<OutcomeResult> outcomes;  // trial means
    double      average_fidelity = 0.0;   // trial mean of the per-trial average fidelity
    double      survival         = 0.0;   // trial mean of sum_k probability
    std::size_t trials           = 0;     // evaluated trials
    std::size_t degenerate       = 0;     // degenerate outcomes summed over trials
    Schedule    schedule;
};

/// Full pipeline, Monte Carlo averaged over noisy-qudit trials. Deterministic
/// in (config, backend). Throws CapacityError when the brute backend is asked
/// for more than kBruteCapacity.
RunResult run_protocol(const ProtocolConfig& config, Backend backend);

}  // namespace ghzmux::protocol
