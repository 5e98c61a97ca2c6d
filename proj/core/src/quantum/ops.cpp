#include "ghzmux/quantum/ops.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace ghzmux::quantum
{

StateVector
tensor_product(const StateVector& a, const StateVector& b)
{
    return StateVector(Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval());
}

DensityMatrix
tensor_product(const DensityMatrix& a, const DensityMatrix& b)
{
    return DensityMatrix(Eigen::kroneckerProduct(a.elements(), b.elements()).eval());
}

Operator
tensor_product(const Operator& a, const Operator& b)
{
    return Operator(Eigen::kroneckerProduct(a.elements(), b.elements()).eval());
}

////////////////////////////////////////////////////////////

Layout::Layout(std::vector<std::size_t> dims)
    : dims_(std::move(dims))
{
    if (dims_.empty())
        throw std::invalid_argument("Layout: no subsystems");
    strides_.reserve(dims_.size());
    for (std::size_t d : dims_) {
        if (d == 0)
            throw std::invalid_argument("Layout: zero-dimensional subsystem");
        strides_.push_back(total_);
        total_ *= d;
        if (total_ > kMaxDimension)
            throw std::invalid_argument("Layout: total dimension exceeds " + std::to_string(kMaxDimension));
    }
}

////////////////////////////////////////////////////////////

namespace
{

// Offsets of every operator basis index inside the composite index, plus the
// list of composite indices whose target digits are all zero.
struct Embedding
{
    std::vector<std::size_t> offsets;
    std::vector<std::size_t> bases;
};

Embedding
make_embedding(std::size_t op_dim, std::span<const std::size_t> targets, const Layout& layout)
{
    if (targets.empty())
        throw std::invalid_argument("no target subsystems");
    std::size_t target_dim = 1;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] >= layout.subsystems())
            throw std::out_of_range("target subsystem " + std::to_string(targets[i]) + " out of range");
        for (std::size_t j = 0; j < i; ++j)
            if (targets[j] == targets[i])
                throw std::invalid_argument("repeated target subsystem " + std::to_string(targets[i]));
        target_dim *= layout.dim(targets[i]);
    }
    if (target_dim != op_dim)
        throw std::invalid_argument("operator dimension " + std::to_string(op_dim)
                                    + " does not match target dimension " + std::to_string(target_dim));

    Embedding e;
    e.offsets.resize(op_dim);
    for (std::size_t t = 0; t < op_dim; ++t) {
        std::size_t rem = t, off = 0;
        for (std::size_t target : targets) {
            const std::size_t d = layout.dim(target);
            off += (rem % d) * layout.stride(target);
            rem /= d;
        }
        e.offsets[t] = off;
    }

    e.bases.reserve(layout.total_dim() / op_dim);
    for (std::size_t i = 0; i < layout.total_dim(); ++i) {
        bool zero = true;
        for (std::size_t target : targets)
            if (layout.digit(i, target) != 0) {
                zero = false;
                break;
            }
        if (zero)
            e.bases.push_back(i);
    }
    return e;
}

}  // namespace

AppliedState
apply_operator(const Operator& op, const StateVector& state, std::span<const std::size_t> targets,
               const Layout& layout)
{
    if (state.dim() != layout.total_dim())
        throw std::invalid_argument("apply_operator: state dimension does not match layout");
    const Embedding e = make_embedding(op.dim(), targets, layout);

    const auto n = static_cast<Eigen::Index>(op.dim());
    const Vector& in = state.amplitudes();
    Vector out(in.size());
    Vector block(n), mapped(n);
    for (std::size_t base : e.bases) {
        for (Eigen::Index t = 0; t < n; ++t)
            block(t) = in(static_cast<Eigen::Index>(base + e.offsets[static_cast<std::size_t>(t)]));
        mapped.noalias() = op.elements() * block;
        for (Eigen::Index t = 0; t < n; ++t)
            out(static_cast<Eigen::Index>(base + e.offsets[static_cast<std::size_t>(t)])) = mapped(t);
    }
    StateVector result(std::move(out));
    const double n2 = result.norm_squared();
    return {std::move(result), n2};
}

Matrix
apply_channel(const KrausChannel& channel, const Matrix& rho, std::span<const std::size_t> targets,
              const Layout& layout)
{
    if (static_cast<std::size_t>(rho.rows()) != layout.total_dim() || rho.rows() != rho.cols())
        throw std::invalid_argument("apply_channel: matrix dimension does not match layout");
    const Embedding e = make_embedding(channel.dim(), targets, layout);

    const auto   n  = static_cast<Eigen::Index>(channel.dim());
    const Matrix& s = channel.superoperator();
    Matrix out(rho.rows(), rho.cols());
    Vector block(n * n), mapped(n * n);
    for (std::size_t rb : e.bases)
        for (std::size_t cb : e.bases) {
            for (Eigen::Index a = 0; a < n; ++a)
                for (Eigen::Index b = 0; b < n; ++b)
                    block(a * n + b) = rho(static_cast<Eigen::Index>(rb + e.offsets[static_cast<std::size_t>(a)]),
                                           static_cast<Eigen::Index>(cb + e.offsets[static_cast<std::size_t>(b)]));
            mapped.noalias() = s * block;
            for (Eigen::Index a = 0; a < n; ++a)
                for (Eigen::Index b = 0; b < n; ++b)
                    out(static_cast<Eigen::Index>(rb + e.offsets[static_cast<std::size_t>(a)]),
                        static_cast<Eigen::Index>(cb + e.offsets[static_cast<std::size_t>(b)])) = mapped(a * n + b);
        }
    return out;
}

DensityMatrix
apply_channel(const KrausChannel& channel, const DensityMatrix& rho, std::span<const std::size_t> targets,
              const Layout& layout)
{
    return DensityMatrix(apply_channel(channel, rho.elements(), targets, layout));
}

DensityMatrix
partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep, const Layout& layout)
{
    if (rho.dim() != layout.total_dim())
        throw std::invalid_argument("partial_trace: matrix dimension does not match layout");

    std::vector<bool> kept(layout.subsystems(), false);
    std::size_t       kept_dim = 1;
    for (std::size_t s : keep) {
        if (s >= layout.subsystems())
            throw std::out_of_range("partial_trace: subsystem out of range");
        if (kept[s])
            throw std::invalid_argument("partial_trace: repeated subsystem");
        kept[s] = true;
        kept_dim *= layout.dim(s);
    }

    const std::size_t total = layout.total_dim();
    std::vector<std::size_t> reduced_index(total);
    std::vector<std::size_t> traced_index(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t r = 0, mult = 1;
        for (std::size_t s : keep) {
            r += layout.digit(i, s) * mult;
            mult *= layout.dim(s);
        }
        std::size_t t = 0;
        mult = 1;
        for (std::size_t s = 0; s < layout.subsystems(); ++s)
            if (!kept[s]) {
                t += layout.digit(i, s) * mult;
                mult *= layout.dim(s);
            }
        reduced_index[i] = r;
        traced_index[i]  = t;
    }

    const auto kd = static_cast<Eigen::Index>(kept_dim);
    Matrix out = Matrix::Zero(kd, kd);
    const Matrix& m = rho.elements();
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = 0; j < total; ++j)
            if (traced_index[i] == traced_index[j])
                out(static_cast<Eigen::Index>(reduced_index[i]), static_cast<Eigen::Index>(reduced_index[j]))
                    += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return DensityMatrix(std::move(out));
}

double
pure_fidelity(const StateVector& target, const DensityMatrix& rho)
{
    if (target.dim() != rho.dim())
        throw std::invalid_argument("pure_fidelity: dimension mismatch");
    if (!target.is_normalized(1e-10))
        throw std::invalid_argument("pure_fidelity: target is not normalized");
    const Complex f = target.amplitudes().dot(rho.elements() * target.amplitudes());
    return std::max(0.0, f.real());
}

}  // namespace ghzmux::quantum
