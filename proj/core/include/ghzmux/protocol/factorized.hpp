#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ghzmux/protocol/config.hpp"
#include "ghzmux/protocol/run.hpp"
#include "ghzmux/quantum/state.hpp"

namespace ghzmux::protocol
{

/// Per-outcome reduced states of the M GHZ groups, each over 2^N qubits
/// (node n at local index n).
struct GroupFactorState
{
    std::size_t                         k = 0;
    std::vector<quantum::DensityMatrix> factors;
};

/// Fast path that never materializes the 2^(NM) register.
///
/// In time bin l every group m is in |phi_m^{b}> with b = bit m of l, where
/// |phi^0> = |0..0> and |phi^1> = (x)_n F_{n,m}|0>. Decoherence acts qubit-wise,
/// so E(|Q_l><Q_l'|) = (x)_m E_m(|phi_m^b><phi_m^b'|) and only the 2x2 table of
/// decohered group blocks is needed. Outcome statistics then follow from a
/// d x d contraction over branch pairs weighted by the qudit amplitudes, the
/// Fourier phases and Lambda_D; the result is exact, including noisy qudits
/// and nonuniform cavities.
class FactorizedModel
{
public:
    explicit FactorizedModel(const ProtocolConfig& config);

    TrialResult evaluate(const quantum::StateVector& qudit) const;

    /// Reduced group states for every outcome k (uncorrected, renormalized).
    std::vector<GroupFactorState> group_states(const quantum::StateVector& qudit) const;

private:
    struct GroupKernel
    {
        // blocks[b][b'] = E^{(x)N}(|phi^b><phi^b'|)
        std::array<std::array<quantum::Matrix, 2>, 2> blocks;
        std::array<std::array<quantum::Complex, 2>, 2> traces;
    };

    // c_l c_l'^* w_ll' for outcome k
    quantum::Matrix branch_weights(const quantum::StateVector& qudit, std::size_t k) const;

    int                      M_;
    int                      N_;
    double                   lambda_;
    std::vector<GroupKernel> groups_;
};

}  // namespace ghzmux::protocol
