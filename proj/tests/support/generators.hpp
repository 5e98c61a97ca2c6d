#pragma once

// Hand-rolled random generators for property tests.

#include <cmath>
#include <cstddef>
#include <random>

#include <Eigen/QR>

#include "ghzmux/photon/interface.hpp"
#include "ghzmux/quantum/state.hpp"

namespace ghzmux::testing
{

using quantum::Complex;
using quantum::Matrix;
using quantum::Vector;

inline Complex
gaussian_complex(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    return {g(rng), g(rng)};
}

inline quantum::StateVector
random_state(std::size_t dim, std::mt19937_64& rng)
{
    Vector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = gaussian_complex(rng);
    return quantum::StateVector(v / v.norm());
}

inline Matrix
random_matrix(std::size_t dim, std::mt19937_64& rng)
{
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix     a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = gaussian_complex(rng);
    return a;
}

// Haar-ish unitary from the QR of a Ginibre matrix.
inline quantum::Operator
random_unitary(std::size_t dim, std::mt19937_64& rng)
{
    Eigen::HouseholderQR<Matrix> qr(random_matrix(dim, rng));
    return quantum::Operator(qr.householderQ() * Matrix::Identity(qr.rows(), qr.cols()));
}

/// Random full-rank density matrix with the requested trace.
inline quantum::DensityMatrix
random_density(std::size_t dim, std::mt19937_64& rng, double trace = 1.0)
{
    const Matrix a   = random_matrix(dim, rng);
    Matrix       rho = a * a.adjoint();
    rho *= trace / rho.trace().real();
    return quantum::DensityMatrix(rho);
}

inline double
uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline photon::CavityParams
random_cavity(std::mt19937_64& rng)
{
    photon::CavityParams c;
    c.kappa_ratio = uniform(rng, 0.01, 1.0);
    c.C0          = uniform(rng, 0.0, 200.0);
    c.C1          = uniform(rng, 0.0, 200.0);
    c.delta_c     = uniform(rng, -5.0, 5.0);
    c.delta_0     = uniform(rng, -300.0, 300.0);
    c.delta_1     = uniform(rng, -300.0, 300.0);
    return c;
}

}  // namespace ghzmux::testing
