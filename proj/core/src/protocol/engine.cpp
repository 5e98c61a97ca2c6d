#include "ghzmux/protocol/engine.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ghzmux/noise/models.hpp"
#include "ghzmux/photon/interface.hpp"

namespace ghzmux::protocol
{

using quantum::Complex;
using quantum::Matrix;

namespace
{

Complex
theta_power(std::size_t d, long long exponent)
{
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(exponent % static_cast<long long>(d))
                         / static_cast<double>(d);
    return std::polar(1.0, angle);
}

// Basis index of the qubit register in which every qubit of the groups
// selected by `group_mask` is |1>.
std::size_t
group_pattern_index(std::size_t group_mask, int M, int N)
{
    std::size_t idx = 0;
    for (int m = 0; m < M; ++m)
        if ((group_mask >> m) & 1U)
            for (int n = 0; n < N; ++n)
                idx |= std::size_t{1} << global_qubit(n, m, M);
    return idx;
}

}  // namespace

RoutingBits
routing_bits(std::size_t l, int M)
{
    if (M < 1 || l >= (std::size_t{1} << M))
        throw std::out_of_range("routing_bits: time bin " + std::to_string(l) + " out of range");
    RoutingBits bits(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m)
        bits[static_cast<std::size_t>(m)] = static_cast<std::uint8_t>((l >> m) & 1U);
    return bits;
}

quantum::StateVector
prepare_qudit(const ProtocolConfig& config, std::mt19937_64* rng)
{
    if (!config.qudit_noise.enabled())
        return quantum::StateVector::uniform(config.d());
    if (rng == nullptr)
        throw std::invalid_argument("prepare_qudit: noisy qudit requested without an RNG stream");
    return noise::sample_noisy_qudit(config.d(), config.qudit_noise, *rng);
}

quantum::Layout
hybrid_layout(int M, int N)
{
    std::vector<std::size_t> dims(static_cast<std::size_t>(N * M), 2);
    dims.push_back(std::size_t{1} << M);
    return quantum::Layout(std::move(dims));
}

quantum::StateVector
interaction_pass(const quantum::StateVector& qudit, const ProtocolConfig& config)
{
    config.validate();
    const std::size_t d = config.d();
    if (qudit.dim() != d)
        throw std::invalid_argument("interaction_pass: qudit dimension " + std::to_string(qudit.dim())
                                    + " does not match 2^M = " + std::to_string(d));

    const quantum::Layout layout = hybrid_layout(config.M, config.N);
    const std::size_t     time_bin = config.qubit_count();

    // |qudit> (x) |0...0>
    quantum::StateVector state =
        quantum::tensor_product(qudit, quantum::StateVector::basis(std::size_t{1} << config.qubit_count(), 0));

    for (int n = 0; n < config.N; ++n)
        for (int m = 0; m < config.M; ++m) {
            const auto flip =
                photon::effective_flip_operator(config.reflection_for(n, m));
            // Operator on (qubit, time bin), qubit least significant.
            Matrix controlled = Matrix::Zero(static_cast<Eigen::Index>(2 * d), static_cast<Eigen::Index>(2 * d));
            for (std::size_t l = 0; l < d; ++l) {
                const auto o = static_cast<Eigen::Index>(2 * l);
                if ((l >> m) & 1U)
                    controlled.block(o, o, 2, 2) = flip.elements();
                else
                    controlled.block(o, o, 2, 2) = Matrix::Identity(2, 2);
            }
            const std::size_t targets[] = {global_qubit(n, m, config.M), time_bin};
            state = quantum::apply_operator(quantum::Operator(std::move(controlled)), state, targets, layout).state;
        }
    return state;
}

Schedule
decoherence_schedule(const ProtocolConfig& config)
{
    Schedule s;
    s.t0_s = config.t0_s();
    s.protocol_duration_s = 2.0 * (config.N - 1) * s.t0_s;
    s.wait_s.reserve(static_cast<std::size_t>(config.N));
    for (int n = 1; n <= config.N; ++n) {
        double hops = 0.0;
        switch (config.schedule) {
        case SchedulePolicy::herald_release:        hops = 2.0 * config.N - n - 1; break;
        case SchedulePolicy::interaction_to_herald: hops = 2.0 * (config.N - n); break;
        case SchedulePolicy::uniform:               hops = 2.0 * (config.N - 1); break;
        }
        s.wait_s.push_back(hops * s.t0_s);
    }
    return s;
}

std::vector<MeasurementOutcome>
x_basis_measure(const quantum::DensityMatrix& hybrid, double lam_d, int M, int N)
{
    const quantum::Layout layout = hybrid_layout(M, N);
    if (hybrid.dim() != layout.total_dim())
        throw std::invalid_argument("x_basis_measure: hybrid dimension does not match (M, N)");

    const std::size_t d = std::size_t{1} << M;
    const std::size_t q = layout.total_dim() / d;
    const quantum::DensityMatrix dephased =
        noise::interferometer_dephasing(hybrid, lam_d, layout, static_cast<std::size_t>(N * M));
    const Matrix& rho = dephased.elements();
    const auto    qi  = static_cast<Eigen::Index>(q);

    std::vector<MeasurementOutcome> out;
    out.reserve(d);
    for (std::size_t k = 0; k < d; ++k) {
        Matrix proj = Matrix::Zero(qi, qi);
        for (std::size_t l = 0; l < d; ++l)
            for (std::size_t lp = 0; lp < d; ++lp) {
                // <k|l> <l'|k> = theta^(-k l) theta^(k l') / d
                const Complex w = theta_power(d, static_cast<long long>(k * (d - 1) * l + k * lp)) / static_cast<double>(d);
                proj += w * rho.block(static_cast<Eigen::Index>(l * q), static_cast<Eigen::Index>(lp * q), qi, qi);
            }
        const double p = proj.trace().real();
        if (p <= kDegenerateProbability)
            out.push_back({k, std::max(p, 0.0), quantum::DensityMatrix::maximally_mixed(q), true});
        else
            out.push_back({k, p, quantum::DensityMatrix(proj / p), false});
    }
    return out;
}

MeasurementOutcome
phase_correction(const MeasurementOutcome& outcome, int M, int N)
{
    const std::size_t d = std::size_t{1} << M;
    const std::size_t q = std::size_t{1} << (N * M);
    if (outcome.conditional_state.dim() != q)
        throw std::invalid_argument("phase_correction: state dimension does not match (M, N)");

    // Diagonal unitary: each node-N qubit of group m in |1> picks up theta^(2^m k).
    quantum::Vector phase(static_cast<Eigen::Index>(q));
    for (std::size_t i = 0; i < q; ++i) {
        long long e = 0;
        for (int m = 0; m < M; ++m)
            if ((i >> global_qubit(N - 1, m, M)) & 1U)
                e += (1LL << m) * static_cast<long long>(outcome.k);
        phase(static_cast<Eigen::Index>(i)) = theta_power(d, e);
    }
    Matrix rho = phase.asDiagonal() * outcome.conditional_state.elements() * phase.conjugate().asDiagonal();
    return {outcome.k, outcome.probability, quantum::DensityMatrix(std::move(rho)), outcome.degenerate};
}

quantum::StateVector
ideal_target(int M, int N, std::size_t k, bool corrected)
{
    const std::size_t d = std::size_t{1} << M;
    if (k >= d)
        throw std::out_of_range("ideal_target: outcome index out of range");
    quantum::Vector v = quantum::Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << (N * M)));
    const double amp = std::pow(std::sqrt(0.5), M);
    for (std::size_t mask = 0; mask < d; ++mask) {
        // theta^(-k l) with l = mask
        const Complex phase = corrected ? Complex{1.0, 0.0}
                                        : theta_power(d, static_cast<long long>((d - 1) * k * mask));
        v(static_cast<Eigen::Index>(group_pattern_index(mask, M, N))) = amp * phase;
    }
    return quantum::StateVector(std::move(v));
}

}  // namespace ghzmux::protocol
