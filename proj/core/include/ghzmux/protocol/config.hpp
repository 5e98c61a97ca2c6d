#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ghzmux/noise/models.hpp"
#include "ghzmux/photon/interface.hpp"

namespace ghzmux::protocol
{

inline constexpr double kDefaultAlphaPerKm = 1.0 / 20.0;
inline constexpr double kDefaultSignalSpeed = 2e8;  // m/s in fiber
/// r0 ~ 0.96 headline reflection, eta0 = r0^2 used by the closed-form efficiency.
inline constexpr double kHeadlineEta0 = 0.96 * 0.96;

/// Balanced lossless reflection r0 = -r1 = 1.
inline constexpr photon::ReflectionPair kUnitReflection{{1.0, 0.0}, {-1.0, 0.0}};

/// How long each node's qubits sit exposed to decoherence, in units of t0 = L0/c.
enum class SchedulePolicy
{
    herald_release,         // all nodes prepare at emission, node n released by the herald: (2N - n - 1) t0
    interaction_to_herald,  // from the photon's pass at node n until the herald returns: 2 (N - n) t0
    uniform,                // every node for the full duration 2 (N - 1) t0
};

std::string_view to_string(SchedulePolicy p);
SchedulePolicy   parse_schedule_policy(std::string_view name);

enum class Backend
{
    brute,
    factorized,
};

std::string_view to_string(Backend b);
Backend          parse_backend(std::string_view name);

struct ProtocolConfig
{
    int    M         = 2;             // qubits per node, one GHZ group per qubit position
    int    N         = 3;             // node count
    double L0_km     = 0.0;           // inter-node distance
    double alpha_per_km = kDefaultAlphaPerKm;
    double c_m_per_s = kDefaultSignalSpeed;

    photon::CavityParams cavity;
    /// Optional per-unit cavities indexed by global qubit n*M + m; empty means
    /// every unit uses `cavity`.
    std::vector<photon::CavityParams> unit_cavities;
    /// Fixed (r0, r1) for every unit in place of the cavity model.
    std::optional<photon::ReflectionPair> fixed_reflection;

    noise::DecoherenceParams decoherence;
    noise::DeviceParams      device;
    noise::QuditNoiseParams  qudit_noise;

    std::size_t    trials   = 1;
    std::uint64_t  seed     = 20240601;
    SchedulePolicy schedule = SchedulePolicy::herald_release;
    double         eta0     = kHeadlineEta0;  // CPF efficiency fed to the closed-form eta1

    std::size_t d() const { return std::size_t{1} << M; }
    std::size_t qubit_count() const { return static_cast<std::size_t>(N) * static_cast<std::size_t>(M); }
    double      t0_s() const { return L0_km * 1e3 / c_m_per_s; }

    const photon::CavityParams& cavity_for(int node, int qubit) const;
    photon::ReflectionPair      reflection_for(int node, int qubit) const;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Global qubit index for qubit position m at node n (both 0-based).
inline std::size_t
global_qubit(int node, int qubit, int M)
{
    return static_cast<std::size_t>(node) * static_cast<std::size_t>(M) + static_cast<std::size_t>(qubit);
}

}  // namespace ghzmux::protocol
