#include "ghzmux/quantum/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace ghzmux::quantum
{

namespace
{

void
check_dim(std::size_t dim, const char* what)
{
    if (dim == 0)
        throw std::invalid_argument(std::string(what) + ": dimension must be positive");
    if (dim > kMaxDimension)
        throw std::invalid_argument(std::string(what) + ": dimension " + std::to_string(dim)
                                    + " exceeds " + std::to_string(kMaxDimension));
}

double
hermiticity_error(const Matrix& m)
{
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

////////////////////////////////////////////////////////////

StateVector::StateVector(Vector amplitudes)
    : amplitudes_(std::move(amplitudes))
{
    check_dim(static_cast<std::size_t>(amplitudes_.size()), "StateVector");
}

StateVector
StateVector::basis(std::size_t dim, std::size_t index)
{
    if (index >= dim)
        throw std::out_of_range("StateVector::basis: index out of range");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v));
}

StateVector
StateVector::uniform(std::size_t dim)
{
    check_dim(dim, "StateVector::uniform");
    Vector v = Vector::Constant(static_cast<Eigen::Index>(dim), 1.0 / std::sqrt(static_cast<double>(dim)));
    return StateVector(std::move(v));
}

bool
StateVector::is_normalized(double tol) const noexcept
{
    return std::abs(norm_squared() - 1.0) <= tol;
}

StateVector
StateVector::normalized() const
{
    const double n = amplitudes_.norm();
    if (n == 0.0)
        throw std::domain_error("StateVector::normalized: zero vector");
    return StateVector(amplitudes_ / n);
}

////////////////////////////////////////////////////////////

DensityMatrix::DensityMatrix(Matrix elements)
    : elements_(std::move(elements))
{
    if (elements_.rows() != elements_.cols())
        throw std::invalid_argument("DensityMatrix: matrix is not square");
    check_dim(static_cast<std::size_t>(elements_.rows()), "DensityMatrix");

    const double scale = std::max(1.0, elements_.cwiseAbs().maxCoeff());
    if (hermiticity_error(elements_) > kTolerance * scale)
        throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    // Snap away round-off so downstream checks see an exactly Hermitian matrix.
    elements_ = 0.5 * (elements_ + elements_.adjoint()).eval();

    const double tr = trace();
    if (!(tr > 0.0) || tr > 1.0 + kTolerance)
        throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) + " outside (0, 1]");
}

DensityMatrix
DensityMatrix::from_pure(const StateVector& psi)
{
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix
DensityMatrix::maximally_mixed(std::size_t dim)
{
    check_dim(dim, "DensityMatrix::maximally_mixed");
    const auto n = static_cast<Eigen::Index>(dim);
    return DensityMatrix(Matrix::Identity(n, n) / static_cast<double>(dim));
}

DensityMatrix
DensityMatrix::normalized() const
{
    return DensityMatrix(elements_ / trace());
}

double
DensityMatrix::min_eigenvalue() const
{
    Eigen::SelfAdjointEigenSolver<Matrix> solver(elements_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void
DensityMatrix::check_positive(double tol) const
{
    const double lo = min_eigenvalue();
    if (lo < -tol)
        throw std::domain_error("DensityMatrix: smallest eigenvalue " + std::to_string(lo) + " is negative");
}

////////////////////////////////////////////////////////////

Operator::Operator(Matrix elements)
    : elements_(std::move(elements))
{
    if (elements_.rows() != elements_.cols())
        throw std::invalid_argument("Operator: matrix is not square");
    check_dim(static_cast<std::size_t>(elements_.rows()), "Operator");
}

Operator
Operator::identity(std::size_t dim)
{
    check_dim(dim, "Operator::identity");
    const auto n = static_cast<Eigen::Index>(dim);
    return Operator(Matrix::Identity(n, n));
}

Operator
Operator::pauli_x()
{
    Matrix m(2, 2);
    m << 0.0, 1.0,
         1.0, 0.0;
    return Operator(std::move(m));
}

Operator
Operator::pauli_z()
{
    Matrix m(2, 2);
    m << 1.0, 0.0,
         0.0, -1.0;
    return Operator(std::move(m));
}

Operator
Operator::hadamard()
{
    const double h = 1.0 / std::sqrt(2.0);
    Matrix m(2, 2);
    m << h, h,
         h, -h;
    return Operator(std::move(m));
}

Operator
Operator::diagonal(std::span<const Complex> entries)
{
    check_dim(entries.size(), "Operator::diagonal");
    const auto n = static_cast<Eigen::Index>(entries.size());
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        m(i, i) = entries[static_cast<std::size_t>(i)];
    return Operator(std::move(m));
}

bool
Operator::is_unitary(double tol) const
{
    const auto n = elements_.rows();
    return (elements_.adjoint() * elements_ - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
}

////////////////////////////////////////////////////////////

KrausChannel::KrausChannel(std::vector<Operator> operators, double tol)
    : operators_(std::move(operators))
{
    if (operators_.empty())
        throw std::invalid_argument("KrausChannel: no operators");
    const std::size_t d = operators_.front().dim();
    for (const auto& k : operators_)
        if (k.dim() != d)
            throw std::invalid_argument("KrausChannel: operators differ in dimension");

    const double err = completeness_error();
    if (err > tol)
        throw std::invalid_argument("KrausChannel: completeness violated by " + std::to_string(err));

    // S_{(i j),(a b)} = sum_K K_{i a} conj(K_{j b})
    const auto n = static_cast<Eigen::Index>(d);
    superop_ = Matrix::Zero(n * n, n * n);
    for (const auto& op : operators_) {
        const Matrix& k = op.elements();
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                for (Eigen::Index a = 0; a < n; ++a)
                    for (Eigen::Index b = 0; b < n; ++b)
                        superop_(i * n + j, a * n + b) += k(i, a) * std::conj(k(j, b));
    }
}

KrausChannel
KrausChannel::identity(std::size_t dim)
{
    return KrausChannel({Operator::identity(dim)});
}

double
KrausChannel::completeness_error() const
{
    const auto n = static_cast<Eigen::Index>(dim());
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& k : operators_)
        sum += k.elements().adjoint() * k.elements();
    return (sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace ghzmux::quantum
