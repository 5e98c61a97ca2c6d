#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ghzmux/quantum/state.hpp"

namespace ghzmux::photon
{

using quantum::Complex;

/// Effective (dimensionless) parameters of one single-sided cavity with an
/// embedded two-ground-state emitter.
struct CavityParams
{
    double kappa_ratio = 0.98;   // kappa_a / kappa
    double C0          = 45.0;   // cooperativity seen by spin |0>
    double C1          = 45.0;   // cooperativity seen by spin |1>
    double delta_c     = 0.3;    // cavity detuning
    double delta_0     = 0.0;    // atomic detuning for |0>
    double delta_1     = 150.0;  // atomic detuning for |1>

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    bool operator==(const CavityParams&) const = default;
};

enum class Spin : int
{
    zero = 0,
    one  = 1,
};

/// r_s = 1 - 2 (kappa_a/kappa)(i D_s + 1) / [ (i D_s + 1)(i D_c + 1) + C_s ].
Complex reflection_coefficient(const CavityParams& p, Spin s);

struct ReflectionPair
{
    Complex r0;
    Complex r1;

    static ReflectionPair of(const CavityParams& p);
    void validate() const;
};

/// H diag(r0, r1) H = [[(r0+r1)/2, (r0-r1)/2], [(r0-r1)/2, (r0+r1)/2]].
/// Pauli-X for r0 = -r1 = 1.
quantum::Operator effective_flip_operator(const ReflectionPair& r);

/// eta0 = |r0|^2.
double cpf_efficiency(const ReflectionPair& r);

struct Interval
{
    double lower;
    double upper;

    bool degenerate() const noexcept { return lower == upper; }
};

/// Perturbation box for the nonuniform-cavity study. `cooperativity` applies
/// to C0 and C1 together.
struct ParamRanges
{
    Interval cooperativity{40.0, 50.0};
    Interval delta_0{-1.0, 1.0};
    Interval delta_1{140.0, 160.0};

    void validate() const;
};

enum class PerturbationMode
{
    corners,
    random,
};

/// corners: the distinct corner combinations of the box (8 for a proper box;
/// the worst case C = lower, D0 = +-1, D1 = lower is among them). `count` and
/// `seed` are ignored.
/// random: `count` independent uniform samples, reproducible from `seed`;
/// count = 0 throws std::invalid_argument.
std::vector<CavityParams> perturbed_param_sets(const CavityParams& base, const ParamRanges& ranges,
                                               PerturbationMode mode, std::size_t count = 0,
                                               std::uint64_t seed = 0);

/// Reduced cooperativity with maximum detuning offsets: C = 40, D1 = 140,
/// returned for D0 = +1 and D0 = -1.
std::vector<CavityParams> worst_case_params(const CavityParams& base);

}  // namespace ghzmux::photon
