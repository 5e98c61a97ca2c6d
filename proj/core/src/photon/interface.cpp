#include "ghzmux/photon/interface.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace ghzmux::photon
{

namespace
{

inline constexpr Complex kI{0.0, 1.0};

void
require(bool ok, const std::string& field, const std::string& why)
{
    if (!ok)
        throw std::invalid_argument("cavity." + field + ": " + why);
}

}  // namespace

void
CavityParams::validate() const
{
    require(std::isfinite(kappa_ratio) && kappa_ratio > 0.0 && kappa_ratio <= 1.0, "kappa_ratio", "must lie in (0, 1]");
    require(std::isfinite(C0) && C0 >= 0.0, "C0", "must be >= 0");
    require(std::isfinite(C1) && C1 >= 0.0, "C1", "must be >= 0");
    require(std::isfinite(delta_c), "delta_c", "must be finite");
    require(std::isfinite(delta_0), "delta_0", "must be finite");
    require(std::isfinite(delta_1), "delta_1", "must be finite");
}

Complex
reflection_coefficient(const CavityParams& p, Spin s)
{
    const double c     = s == Spin::zero ? p.C0 : p.C1;
    const double delta = s == Spin::zero ? p.delta_0 : p.delta_1;
    const Complex atom = kI * delta + 1.0;
    const Complex cav  = kI * p.delta_c + 1.0;
    return 1.0 - 2.0 * p.kappa_ratio * atom / (atom * cav + c);
}

ReflectionPair
ReflectionPair::of(const CavityParams& p)
{
    p.validate();
    return {reflection_coefficient(p, Spin::zero), reflection_coefficient(p, Spin::one)};
}

void
ReflectionPair::validate() const
{
    if (std::abs(r0) > 1.0 + quantum::kTolerance || std::abs(r1) > 1.0 + quantum::kTolerance)
        throw std::invalid_argument("ReflectionPair: |r| exceeds 1");
}

quantum::Operator
effective_flip_operator(const ReflectionPair& r)
{
    r.validate();
    const Complex even = 0.5 * (r.r0 + r.r1);
    const Complex odd  = 0.5 * (r.r0 - r.r1);
    quantum::Matrix m(2, 2);
    m << even, odd,
         odd, even;
    return quantum::Operator(std::move(m));
}

double
cpf_efficiency(const ReflectionPair& r)
{
    r.validate();
    return std::norm(r.r0);
}

////////////////////////////////////////////////////////////

void
ParamRanges::validate() const
{
    auto check = [](const Interval& i, const char* name) {
        if (!(i.lower <= i.upper))
            throw std::invalid_argument(std::string("ranges.") + name + ": lower exceeds upper");
    };
    check(cooperativity, "C");
    check(delta_0, "delta_0");
    check(delta_1, "delta_1");
    if (cooperativity.lower < 0.0)
        throw std::invalid_argument("ranges.C: cooperativity must be >= 0");
}

std::vector<CavityParams>
perturbed_param_sets(const CavityParams& base, const ParamRanges& ranges, PerturbationMode mode,
                     std::size_t count, std::uint64_t seed)
{
    ranges.validate();
    std::vector<CavityParams> out;

    if (mode == PerturbationMode::corners) {
        for (double c : {ranges.cooperativity.lower, ranges.cooperativity.upper})
            for (double d0 : {ranges.delta_0.lower, ranges.delta_0.upper})
                for (double d1 : {ranges.delta_1.lower, ranges.delta_1.upper}) {
                    CavityParams p = base;
                    p.C0 = p.C1 = c;
                    p.delta_0 = d0;
                    p.delta_1 = d1;
                    if (std::find(out.begin(), out.end(), p) == out.end())
                        out.push_back(p);
                }
        return out;
    }

    if (count == 0)
        throw std::invalid_argument("perturbed_param_sets: count must be positive in random mode");
    std::mt19937_64 rng(seed);
    auto draw = [&rng](const Interval& i) {
        if (i.degenerate())
            return i.lower;
        return std::uniform_real_distribution<double>(i.lower, i.upper)(rng);
    };
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        CavityParams p = base;
        p.C0 = p.C1 = draw(ranges.cooperativity);
        p.delta_0   = draw(ranges.delta_0);
        p.delta_1   = draw(ranges.delta_1);
        out.push_back(p);
    }
    return out;
}

std::vector<CavityParams>
worst_case_params(const CavityParams& base)
{
    std::vector<CavityParams> out;
    for (double d0 : {+1.0, -1.0}) {
        CavityParams p = base;
        p.C0 = p.C1 = 40.0;
        p.delta_0   = d0;
        p.delta_1   = 140.0;
        out.push_back(p);
    }
    return out;
}

}  // namespace ghzmux::photon
