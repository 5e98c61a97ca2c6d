#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ghzmux::quantum
{

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;

/// Absolute tolerance for normalization, Hermiticity, trace and completeness checks.
inline constexpr double kTolerance = 1e-12;
/// Smallest eigenvalue accepted by the positivity check.
inline constexpr double kPositivityTolerance = 1e-10;
/// Largest Hilbert-space dimension the dense routines accept.
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 16;

/// Pure (possibly unnormalized) state. An unnormalized vector carries its
/// norm squared as a success probability.
class StateVector
{
public:
    explicit StateVector(Vector amplitudes);

    static StateVector basis(std::size_t dim, std::size_t index);
    static StateVector uniform(std::size_t dim);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
    const Vector& amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

    double norm_squared() const noexcept { return amplitudes_.squaredNorm(); }
    bool is_normalized(double tol = kTolerance) const noexcept;
    /// Throws std::domain_error for the zero vector.
    StateVector normalized() const;

private:
    Vector amplitudes_;
};

/// Hermitian, trace in (0, 1 + tol]. Sub-unit trace encodes a heralding probability.
///
/// Construction checks shape, Hermiticity and trace. Positivity costs an
/// eigendecomposition, so it is checked on demand with `check_positive()`;
/// every operation in this module maps positive matrices to positive matrices.
class DensityMatrix
{
public:
    explicit DensityMatrix(Matrix elements);

    static DensityMatrix from_pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(elements_.rows()); }
    const Matrix& elements() const noexcept { return elements_; }
    Complex operator()(std::size_t i, std::size_t j) const
    {
        return elements_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    double trace() const noexcept { return elements_.trace().real(); }
    DensityMatrix normalized() const;

    double min_eigenvalue() const;
    bool is_positive(double tol = kPositivityTolerance) const { return min_eigenvalue() >= -tol; }
    /// Throws std::domain_error when the smallest eigenvalue is below -tol.
    void check_positive(double tol = kPositivityTolerance) const;

private:
    Matrix elements_;
};

/// Square, otherwise unconstrained (scattering operators are not unitary).
class Operator
{
public:
    explicit Operator(Matrix elements);

    static Operator identity(std::size_t dim);
    static Operator pauli_x();
    static Operator pauli_z();
    static Operator hadamard();
    static Operator diagonal(std::span<const Complex> entries);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(elements_.rows()); }
    const Matrix& elements() const noexcept { return elements_; }
    Complex operator()(std::size_t i, std::size_t j) const
    {
        return elements_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    Operator adjoint() const { return Operator(elements_.adjoint()); }
    bool is_unitary(double tol = kTolerance) const;

    friend Operator operator*(const Operator& a, const Operator& b)
    {
        return Operator(a.elements_ * b.elements_);
    }

private:
    Matrix elements_;
};

/// Kraus representation of a CPTP map. Completeness sum_i K_i^dag K_i = I is
/// enforced at construction.
class KrausChannel
{
public:
    explicit KrausChannel(std::vector<Operator> operators, double tol = kTolerance);

    static KrausChannel identity(std::size_t dim);

    std::size_t dim() const noexcept { return operators_.front().dim(); }
    const std::vector<Operator>& operators() const noexcept { return operators_; }

    /// Max-abs deviation of sum_i K_i^dag K_i from the identity.
    double completeness_error() const;

    /// Row-major superoperator S with vec(K rho K^dag) summed over i equal to S vec(rho).
    const Matrix& superoperator() const noexcept { return superop_; }

private:
    std::vector<Operator> operators_;
    Matrix                superop_;
};

}  // namespace ghzmux::quantum
