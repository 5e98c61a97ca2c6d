#include "ghzmux/noise/models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ghzmux::noise
{

using quantum::Complex;
using quantum::Matrix;

namespace
{

void
require(bool ok, const std::string& field, const char* why)
{
    if (!ok)
        throw std::invalid_argument(field + ": " + why);
}

bool
unit_interval(double v)
{
    return std::isfinite(v) && v >= 0.0 && v <= 1.0;
}

quantum::Operator
diag2(double a, double b)
{
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return quantum::Operator(std::move(m));
}

quantum::Operator
single(int row, int col, double v)
{
    Matrix m      = Matrix::Zero(2, 2);
    m(row, col) = v;
    return quantum::Operator(std::move(m));
}

std::uint64_t
splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

void
DecoherenceParams::validate() const
{
    require(std::isfinite(T1_s) && T1_s > 0.0, "decoherence.T1", "must be > 0");
    require(std::isfinite(T2_s) && T2_s > 0.0, "decoherence.T2", "must be > 0");
}

void
DeviceParams::validate() const
{
    require(unit_interval(eta_os), "device.eta_os", "must lie in [0, 1]");
    require(unit_interval(e_os), "device.e_os", "must lie in [0, 1]");
    require(unit_interval(eta_l), "device.eta_l", "must lie in [0, 1]");
    require(std::isfinite(x) && x >= 0.0, "device.x", "must be >= 0");
}

void
QuditNoiseParams::validate() const
{
    require(std::isfinite(sigma_a) && sigma_a >= 0.0, "qudit_noise.sigma_a", "must be >= 0");
    require(std::isfinite(sigma_p) && sigma_p >= 0.0, "qudit_noise.sigma_p", "must be >= 0");
}

////////////////////////////////////////////////////////////

quantum::KrausChannel
qubit_decoherence_channel(double t_s, const DecoherenceParams& p)
{
    if (!(t_s >= 0.0) || !std::isfinite(t_s))
        throw std::invalid_argument("qubit_decoherence_channel: elapsed time must be >= 0");
    p.validate();

    const double mu1 = std::exp(-t_s / p.T1_s);
    const double mu2 = std::exp(-t_s / p.T2_s);
    const double r2  = std::sqrt(0.5);
    const double damp = std::sqrt((1.0 - mu1) / 2.0);

    const quantum::Operator b[4] = {
        diag2(r2, r2 * std::sqrt(mu1)),
        diag2(r2 * std::sqrt(mu1), r2),
        single(0, 1, damp),
        single(1, 0, damp),
    };
    const quantum::Operator a[2] = {
        diag2(std::sqrt((1.0 + mu2) / 2.0), std::sqrt((1.0 + mu2) / 2.0)),
        diag2(std::sqrt((1.0 - mu2) / 2.0), -std::sqrt((1.0 - mu2) / 2.0)),
    };

    std::vector<quantum::Operator> ops;
    ops.reserve(8);
    for (const auto& ai : a)
        for (const auto& bj : b)
            ops.push_back(ai * bj);
    return quantum::KrausChannel(std::move(ops));
}

double
lambda_d(double x)
{
    if (!(x >= 0.0))
        throw std::invalid_argument("lambda_d: x must be >= 0");
    return std::exp(-x * x / 2.0);
}

quantum::DensityMatrix
interferometer_dephasing(const quantum::DensityMatrix& rho, double lam, const quantum::Layout& layout,
                         std::size_t time_bin_subsystem)
{
    if (!(lam >= 0.0 && lam <= 1.0))
        throw std::invalid_argument("interferometer_dephasing: lambda_d must lie in [0, 1]");
    if (rho.dim() != layout.total_dim())
        throw std::invalid_argument("interferometer_dephasing: dimension does not match layout");
    if (time_bin_subsystem >= layout.subsystems())
        throw std::out_of_range("interferometer_dephasing: time-bin subsystem out of range");

    Matrix out = rho.elements();
    const std::size_t n = rho.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (layout.digit(i, time_bin_subsystem) != layout.digit(j, time_bin_subsystem))
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *= lam;
    return quantum::DensityMatrix(std::move(out));
}

quantum::StateVector
sample_noisy_qudit(std::size_t d, const QuditNoiseParams& q, std::mt19937_64& rng)
{
    if (d < 2)
        throw std::invalid_argument("sample_noisy_qudit: dimension must be >= 2");
    q.validate();
    if (!q.enabled())
        return quantum::StateVector::uniform(d);

    std::normal_distribution<double> amp(0.0, q.sigma_a > 0.0 ? q.sigma_a : 1.0);
    std::normal_distribution<double> phase(0.0, q.sigma_p > 0.0 ? q.sigma_p : 1.0);
    quantum::Vector v(static_cast<Eigen::Index>(d));
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        const double a = q.sigma_a > 0.0 ? amp(rng) : 0.0;
        const double t = q.sigma_p > 0.0 ? phase(rng) : 0.0;
        v(j) = (1.0 + a) * std::polar(1.0, t);
    }
    // C_d = sum_j |1 + a_j|^2
    return quantum::StateVector(v / std::sqrt(v.squaredNorm()));
}

double
switch_efficiency_factor(int M, int N, const DeviceParams& dev)
{
    if (M < 1 || N < 1)
        throw std::invalid_argument("switch_efficiency_factor: M and N must be >= 1");
    dev.validate();
    return std::pow(dev.eta_os * (1.0 - dev.e_os), M * (N + 1));
}

std::mt19937_64
trial_stream(std::uint64_t master_seed, std::uint64_t trial)
{
    std::uint64_t s = master_seed;
    const std::uint64_t a = splitmix64(s);
    std::uint64_t t = a ^ (trial * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL);
    const std::uint64_t k0 = splitmix64(t);
    const std::uint64_t k1 = splitmix64(t);
    std::seed_seq seq{static_cast<std::uint32_t>(k0), static_cast<std::uint32_t>(k0 >> 32),
                      static_cast<std::uint32_t>(k1), static_cast<std::uint32_t>(k1 >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace ghzmux::noise
