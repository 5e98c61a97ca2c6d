#include <cmath>
#include <complex>
#include <stdexcept>

#include <gtest/gtest.h>

#include "ghzmux/photon/interface.hpp"
#include "support/generators.hpp"

using namespace ghzmux::photon;
using ghzmux::quantum::Complex;
using ghzmux::quantum::Matrix;

namespace
{

// Frozen values from an independent complex-arithmetic evaluation.
const Complex kR0{0.9573931165498631, 0.0002778709790226313};
const Complex kR1{-0.9560879975246876, 2.6027960580919386e-5};

}  // namespace

TEST(Reflection, DefaultCavitySpinZero)
{
    const Complex r0 = reflection_coefficient(CavityParams{}, Spin::zero);
    EXPECT_NEAR(r0.real(), kR0.real(), 1e-13);
    EXPECT_NEAR(r0.imag(), kR0.imag(), 1e-13);
    EXPECT_NEAR(std::abs(r0), 0.957, 5e-4);
}

TEST(Reflection, DefaultCavitySpinOne)
{
    const Complex r1 = reflection_coefficient(CavityParams{}, Spin::one);
    EXPECT_NEAR(r1.real(), kR1.real(), 1e-13);
    EXPECT_NEAR(r1.imag(), kR1.imag(), 1e-13);
    EXPECT_NEAR(r1.real(), -0.956, 5e-4);
}

TEST(Reflection, BareResonantCavityIsMinusOne)
{
    const CavityParams bare{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    const Complex      r = reflection_coefficient(bare, Spin::zero);
    EXPECT_NEAR(r.real(), -1.0, 1e-15);
    EXPECT_NEAR(r.imag(), 0.0, 1e-15);
}

TEST(Reflection, StrongCouplingLimit)
{
    CavityParams p;
    p.C0 = 1e6;
    EXPECT_NEAR(std::abs(reflection_coefficient(p, Spin::zero) - Complex(1.0)), 0.0, 1e-4);
}

TEST(Reflection, ValidationNamesField)
{
    CavityParams p;
    p.kappa_ratio = 0.0;
    try {
        p.validate();
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("kappa_ratio"), std::string::npos);
    }
    p = {};
    p.C1 = -1.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    EXPECT_THROW((ReflectionPair{{1.1, 0.0}, {0.0, 0.0}}.validate()), std::invalid_argument);
}

TEST(FlipOperator, UnitReflectionIsPauliX)
{
    const auto f = effective_flip_operator({{1.0, 0.0}, {-1.0, 0.0}});
    EXPECT_TRUE(f.elements().isApprox(ghzmux::quantum::Operator::pauli_x().elements(), 1e-15));
}

TEST(FlipOperator, EqualReflectionIsIdentity)
{
    const auto f = effective_flip_operator({{1.0, 0.0}, {1.0, 0.0}});
    EXPECT_LT((f.elements() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(FlipOperator, DefaultCavityMatrix)
{
    const auto    f = effective_flip_operator(ReflectionPair::of(CavityParams{}));
    const Complex s{0.000652559512587747, 0.00015194946980177535};
    const Complex d{0.9567405570372753, 0.00012592150922085594};
    EXPECT_NEAR(std::abs(f.elements()(0, 0) - s), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(f.elements()(1, 1) - s), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(f.elements()(0, 1) - d), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(f.elements()(1, 0) - d), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(d), 0.9567, 1e-4);
}

TEST(CpfEfficiency, Examples)
{
    EXPECT_DOUBLE_EQ(cpf_efficiency({{1.0, 0.0}, {-1.0, 0.0}}), 1.0);
    EXPECT_NEAR(cpf_efficiency({{0.96, 0.0}, {-0.96, 0.0}}), 0.9216, 1e-15);
    EXPECT_NEAR(cpf_efficiency(ReflectionPair::of(CavityParams{})), 0.9166016568, 1e-10);
}

TEST(Perturbation, CornersOfDefaultBox)
{
    const auto sets = perturbed_param_sets(CavityParams{}, ParamRanges{}, PerturbationMode::corners);
    ASSERT_EQ(sets.size(), 8u);
    int worst = 0;
    for (const auto& s : sets) {
        EXPECT_EQ(s.C0, s.C1);
        EXPECT_EQ(s.kappa_ratio, 0.98);
        if (s.C0 == 40.0 && s.delta_1 == 140.0 && std::abs(s.delta_0) == 1.0)
            ++worst;
    }
    EXPECT_EQ(worst, 2);
}

TEST(Perturbation, DegenerateRangesGiveBase)
{
    const ParamRanges degenerate{{45, 45}, {0, 0}, {150, 150}};
    const auto        sets = perturbed_param_sets(CavityParams{}, degenerate, PerturbationMode::corners);
    ASSERT_EQ(sets.size(), 1u);
    EXPECT_EQ(sets.front(), CavityParams{});
}

TEST(Perturbation, RandomReproducibleAndInRange)
{
    const auto a = perturbed_param_sets(CavityParams{}, ParamRanges{}, PerturbationMode::random, 100, 42);
    const auto b = perturbed_param_sets(CavityParams{}, ParamRanges{}, PerturbationMode::random, 100, 42);
    const auto c = perturbed_param_sets(CavityParams{}, ParamRanges{}, PerturbationMode::random, 100, 43);
    ASSERT_EQ(a.size(), 100u);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    for (const auto& s : a) {
        EXPECT_GE(s.C0, 40.0);
        EXPECT_LE(s.C0, 50.0);
        EXPECT_GE(s.delta_0, -1.0);
        EXPECT_LE(s.delta_0, 1.0);
        EXPECT_GE(s.delta_1, 140.0);
        EXPECT_LE(s.delta_1, 160.0);
    }
}

TEST(Perturbation, Errors)
{
    EXPECT_THROW(perturbed_param_sets(CavityParams{}, ParamRanges{}, PerturbationMode::random, 0, 1),
                 std::invalid_argument);
    const ParamRanges inverted{{50, 40}, {0, 0}, {150, 150}};
    EXPECT_THROW(perturbed_param_sets(CavityParams{}, inverted, PerturbationMode::corners), std::invalid_argument);
}

TEST(Perturbation, WorstCaseParams)
{
    const auto w = worst_case_params(CavityParams{});
    ASSERT_EQ(w.size(), 2u);
    for (const auto& p : w) {
        EXPECT_EQ(p.C0, 40.0);
        EXPECT_EQ(p.C1, 40.0);
        EXPECT_EQ(p.delta_1, 140.0);
    }
    EXPECT_EQ(w[0].delta_0, -w[1].delta_0);
    const Complex r0 = reflection_coefficient(w[0].delta_0 > 0 ? w[0] : w[1], Spin::zero);
    EXPECT_NEAR(r0.real(), 0.95035521, 1e-8);
    EXPECT_NEAR(r0.imag(), -0.04657154, 1e-8);
}

// Properties ---------------------------------------------------------------

TEST(PhotonProperties, Passivity)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const auto p = ghzmux::testing::random_cavity(rng);
        EXPECT_LE(std::abs(reflection_coefficient(p, Spin::zero)), 1.0 + 1e-12);
        EXPECT_LE(std::abs(reflection_coefficient(p, Spin::one)), 1.0 + 1e-12);
    }
}

TEST(PhotonProperties, BalancedRealFlipSquaresToScaledIdentity)
{
    std::mt19937_64 rng(12);
    for (int i = 0; i < 200; ++i) {
        const double r  = ghzmux::testing::uniform(rng, -1.0, 1.0);
        const auto   f  = effective_flip_operator({{r, 0.0}, {-r, 0.0}});
        EXPECT_LT((f.elements() - r * ghzmux::quantum::Operator::pauli_x().elements()).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_LT(((f * f).elements() - r * r * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(PhotonProperties, CpfEfficiencyIgnoresGlobalPhase)
{
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        const ReflectionPair r = ReflectionPair::of(ghzmux::testing::random_cavity(rng));
        const Complex        phase = std::polar(1.0, ghzmux::testing::uniform(rng, 0.0, 6.283185307179586));
        EXPECT_NEAR(cpf_efficiency(r), cpf_efficiency({r.r0 * phase, r.r1}), 1e-14);
    }
}
