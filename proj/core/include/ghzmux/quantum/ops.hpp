#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ghzmux/quantum/state.hpp"

namespace ghzmux::quantum
{

// Kronecker convention: in a (x) b the left operand is the slower-varying index.
StateVector   tensor_product(const StateVector& a, const StateVector& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
Operator      tensor_product(const Operator& a, const Operator& b);

/// Subsystem layout of a composite space. dims[0] is the least significant
/// (fastest varying) factor of the basis index.
class Layout
{
public:
    explicit Layout(std::vector<std::size_t> dims);

    static Layout qubits(std::size_t count) { return Layout(std::vector<std::size_t>(count, 2)); }

    std::size_t subsystems() const noexcept { return dims_.size(); }
    std::size_t dim(std::size_t subsystem) const { return dims_.at(subsystem); }
    std::size_t stride(std::size_t subsystem) const { return strides_.at(subsystem); }
    std::size_t total_dim() const noexcept { return total_; }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }

    /// Digit of `index` belonging to `subsystem`.
    std::size_t digit(std::size_t index, std::size_t subsystem) const
    {
        return (index / strides_[subsystem]) % dims_[subsystem];
    }

private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> strides_;
    std::size_t              total_ = 1;
};

struct AppliedState
{
    StateVector state;
    double      norm_squared;
};

/// Applies `op` to the subsystems listed in `targets`. Within the operator,
/// targets[0] is the least significant factor. The result is not renormalized.
/// Throws std::out_of_range for a bad target and std::invalid_argument for a
/// dimension mismatch or repeated target.
AppliedState apply_operator(const Operator& op, const StateVector& state,
                            std::span<const std::size_t> targets, const Layout& layout);

/// rho -> sum_i K_i rho K_i^dag on the target subsystems (same ordering as apply_operator).
DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho,
                            std::span<const std::size_t> targets, const Layout& layout);

/// Matrix-level variant used for operator blocks that are not density matrices.
Matrix apply_channel(const KrausChannel& channel, const Matrix& rho,
                     std::span<const std::size_t> targets, const Layout& layout);

/// Reduced state on `keep` (keep[0] becomes the least significant factor).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep,
                            const Layout& layout);

/// <psi|rho|psi> for a normalized target. Equals the Uhlmann expression
/// tr(sqrt(sigma) rho sqrt(sigma)) when sigma = |psi><psi| is pure.
double pure_fidelity(const StateVector& target, const DensityMatrix& rho);

}  // namespace ghzmux::quantum
