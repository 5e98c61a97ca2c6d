#include "ghzmux/protocol/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ghzmux::protocol
{

std::string_view
to_string(SchedulePolicy p)
{
    switch (p) {
    case SchedulePolicy::herald_release:        return "herald_release";
    case SchedulePolicy::interaction_to_herald: return "interaction_to_herald";
    case SchedulePolicy::uniform:               return "uniform";
    }
    return "unknown";
}

SchedulePolicy
parse_schedule_policy(std::string_view name)
{
    if (name == "herald_release")
        return SchedulePolicy::herald_release;
    if (name == "interaction_to_herald")
        return SchedulePolicy::interaction_to_herald;
    if (name == "uniform")
        return SchedulePolicy::uniform;
    throw std::invalid_argument("schedule: unknown policy '" + std::string(name) + "'");
}

std::string_view
to_string(Backend b)
{
    return b == Backend::brute ? "brute" : "factorized";
}

Backend
parse_backend(std::string_view name)
{
    if (name == "brute")
        return Backend::brute;
    if (name == "factorized")
        return Backend::factorized;
    throw std::invalid_argument("backend: unknown backend '" + std::string(name) + "'");
}

const photon::CavityParams&
ProtocolConfig::cavity_for(int node, int qubit) const
{
    if (unit_cavities.empty())
        return cavity;
    return unit_cavities.at(global_qubit(node, qubit, M));
}

photon::ReflectionPair
ProtocolConfig::reflection_for(int node, int qubit) const
{
    if (fixed_reflection)
        return *fixed_reflection;
    return photon::ReflectionPair::of(cavity_for(node, qubit));
}

void
ProtocolConfig::validate() const
{
    auto fail = [](const std::string& field, const std::string& why) {
        throw std::invalid_argument(field + ": " + why);
    };
    if (M < 1 || M > 8)
        fail("M", "must lie in [1, 8]");
    if (N < 2 || N > 16)
        fail("N", "must lie in [2, 16]");
    if (!std::isfinite(L0_km) || L0_km < 0.0)
        fail("L0_km", "must be >= 0");
    if (!std::isfinite(alpha_per_km) || alpha_per_km < 0.0)
        fail("alpha_per_km", "must be >= 0");
    if (!std::isfinite(c_m_per_s) || c_m_per_s <= 0.0)
        fail("c_m_per_s", "must be > 0");
    if (trials < 1)
        fail("trials", "must be >= 1");
    if (!std::isfinite(eta0) || eta0 < 0.0 || eta0 > 1.0)
        fail("eta0", "must lie in [0, 1]");
    if (!unit_cavities.empty() && unit_cavities.size() != qubit_count())
        fail("unit_cavities", "needs exactly N*M entries");

    if (fixed_reflection)
        fixed_reflection->validate();
    cavity.validate();
    for (const auto& c : unit_cavities)
        c.validate();
    decoherence.validate();
    device.validate();
    qudit_noise.validate();
}

}  // namespace ghzmux::protocol
