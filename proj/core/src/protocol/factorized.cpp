#include "ghzmux/protocol/factorized.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ghzmux/noise/models.hpp"
#include "ghzmux/photon/interface.hpp"
#include "ghzmux/quantum/ops.hpp"

namespace ghzmux::protocol
{

using quantum::Complex;
using quantum::Matrix;

namespace
{

Complex
theta_pow(std::size_t d, std::size_t exponent)
{
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(exponent % d) / static_cast<double>(d));
}

}  // namespace

FactorizedModel::FactorizedModel(const ProtocolConfig& config)
    : M_(config.M)
    , N_(config.N)
    , lambda_(noise::lambda_d(config.device.x))
{
    config.validate();
    const Schedule        schedule = decoherence_schedule(config);
    const quantum::Layout layout   = quantum::Layout::qubits(static_cast<std::size_t>(N_));
    const std::size_t     gdim     = layout.total_dim();

    std::vector<quantum::KrausChannel> channels;
    channels.reserve(static_cast<std::size_t>(N_));
    for (int n = 0; n < N_; ++n)
        channels.push_back(noise::qubit_decoherence_channel(schedule.wait_s[static_cast<std::size_t>(n)],
                                                            config.decoherence));

    groups_.reserve(static_cast<std::size_t>(M_));
    for (int m = 0; m < M_; ++m) {
        const quantum::StateVector zero = quantum::StateVector::basis(gdim, 0);
        quantum::StateVector       one  = zero;
        for (int n = 0; n < N_; ++n) {
            const auto flip = photon::effective_flip_operator(config.reflection_for(n, m));
            const std::size_t target[] = {static_cast<std::size_t>(n)};
            one = quantum::apply_operator(flip, one, target, layout).state;
        }
        const quantum::Vector* phi[2] = {&zero.amplitudes(), &one.amplitudes()};

        GroupKernel g;
        for (int b = 0; b < 2; ++b)
            for (int bp = 0; bp < 2; ++bp) {
                Matrix block = (*phi[b]) * phi[bp]->adjoint();
                for (int n = 0; n < N_; ++n) {
                    const std::size_t target[] = {static_cast<std::size_t>(n)};
                    block = quantum::apply_channel(channels[static_cast<std::size_t>(n)], block, target, layout);
                }
                g.traces[b][bp] = block.trace();
                g.blocks[b][bp] = std::move(block);
            }
        groups_.push_back(std::move(g));
    }
}

Matrix
FactorizedModel::branch_weights(const quantum::StateVector& qudit, std::size_t k) const
{
    const std::size_t d = std::size_t{1} << M_;
    quantum::Vector c(static_cast<Eigen::Index>(d));
    for (std::size_t l = 0; l < d; ++l)
        c(static_cast<Eigen::Index>(l)) = qudit[l] * theta_pow(d, (d - 1) * k * l) / std::sqrt(static_cast<double>(d));
    Matrix w = c * c.adjoint();
    for (Eigen::Index l = 0; l < w.rows(); ++l)
        for (Eigen::Index lp = 0; lp < w.cols(); ++lp)
            if (l != lp)
                w(l, lp) *= lambda_;
    return w;
}

TrialResult
FactorizedModel::evaluate(const quantum::StateVector& qudit) const
{
    const std::size_t d = std::size_t{1} << M_;
    if (qudit.dim() != d)
        throw std::invalid_argument("FactorizedModel: qudit dimension does not match 2^M");
    const auto last = static_cast<Eigen::Index>((std::size_t{1} << N_) - 1);

    TrialResult result;
    result.outcomes.reserve(d);
    for (std::size_t k = 0; k < d; ++k) {
        const Matrix w = branch_weights(qudit, k);

        // Overlap of each decohered block with the pre-correction group target
        // (|0..0> + phase |1..1>)/sqrt2, phase = theta^(-2^m k).
        std::vector<std::array<std::array<Complex, 2>, 2>> overlap(static_cast<std::size_t>(M_));
        for (int m = 0; m < M_; ++m) {
            const Complex phase = theta_pow(d, (d - 1) * (std::size_t{1} << m) * k);
            for (int b = 0; b < 2; ++b)
                for (int bp = 0; bp < 2; ++bp) {
                    const Matrix& blk = groups_[static_cast<std::size_t>(m)].blocks[b][bp];
                    overlap[static_cast<std::size_t>(m)][b][bp] =
                        0.5 * (blk(0, 0) + blk(0, last) * phase + std::conj(phase) * blk(last, 0) + blk(last, last));
                }
        }

        Complex p{0.0, 0.0}, num{0.0, 0.0};
        for (std::size_t l = 0; l < d; ++l)
            for (std::size_t lp = 0; lp < d; ++lp) {
                Complex tr{1.0, 0.0}, ov{1.0, 0.0};
                for (int m = 0; m < M_; ++m) {
                    const int b  = static_cast<int>((l >> m) & 1U);
                    const int bp = static_cast<int>((lp >> m) & 1U);
                    tr *= groups_[static_cast<std::size_t>(m)].traces[b][bp];
                    ov *= overlap[static_cast<std::size_t>(m)][b][bp];
                }
                const Complex wl = w(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(lp));
                p += wl * tr;
                num += wl * ov;
            }

        OutcomeResult o;
        o.k           = k;
        o.probability = std::max(p.real(), 0.0);
        if (o.probability <= kDegenerateProbability) {
            o.degenerate = true;
            o.fidelity   = 1.0 / static_cast<double>(std::size_t{1} << (N_ * M_));
        } else {
            o.fidelity = std::max(num.real() / o.probability, 0.0);
        }
        result.survival += o.probability;
        result.outcomes.push_back(o);
    }
    result.average_fidelity = trial_average_fidelity(result.outcomes, M_);
    return result;
}

std::vector<GroupFactorState>
FactorizedModel::group_states(const quantum::StateVector& qudit) const
{
    const std::size_t d = std::size_t{1} << M_;
    if (qudit.dim() != d)
        throw std::invalid_argument("FactorizedModel: qudit dimension does not match 2^M");
    const auto gdim = static_cast<Eigen::Index>(std::size_t{1} << N_);

    std::vector<GroupFactorState> out;
    out.reserve(d);
    for (std::size_t k = 0; k < d; ++k) {
        const Matrix w = branch_weights(qudit, k);
        GroupFactorState s;
        s.k = k;
        for (int m = 0; m < M_; ++m) {
            Matrix acc = Matrix::Zero(gdim, gdim);
            for (std::size_t l = 0; l < d; ++l)
                for (std::size_t lp = 0; lp < d; ++lp) {
                    Complex coeff = w(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(lp));
                    for (int mo = 0; mo < M_; ++mo)
                        if (mo != m)
                            coeff *= groups_[static_cast<std::size_t>(mo)]
                                         .traces[(l >> mo) & 1U][(lp >> mo) & 1U];
                    acc += coeff * groups_[static_cast<std::size_t>(m)].blocks[(l >> m) & 1U][(lp >> m) & 1U];
                }
            const double p = acc.trace().real();
            if (p <= kDegenerateProbability)
                s.factors.push_back(quantum::DensityMatrix::maximally_mixed(static_cast<std::size_t>(gdim)));
            else
                s.factors.emplace_back(acc / p);
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace ghzmux::protocol
