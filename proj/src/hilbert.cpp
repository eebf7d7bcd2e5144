// Copyright 2026 The SDC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sdc/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <string>

#include "sdc/error.hpp"

namespace sdc {

namespace {

std::size_t product(const std::vector<std::size_t> &dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

struct Strides {
    std::size_t outer;
    std::size_t local;
    std::size_t inner;
};

Strides strides_for(const StateVector &s, std::size_t subsystem, std::size_t op_dim) {
    const auto &dims = s.dims();
    if (subsystem >= dims.size())
        fail(ErrorCode::DimensionMismatch, "subsystem " + std::to_string(subsystem) +
                                               " out of range for " +
                                               std::to_string(dims.size()) + " factors");
    if (dims[subsystem] != op_dim)
        fail(ErrorCode::DimensionMismatch, "operator dim " + std::to_string(op_dim) +
                                               " != subsystem dim " +
                                               std::to_string(dims[subsystem]));
    Strides st{1, dims[subsystem], 1};
    for (std::size_t i = 0; i < subsystem; ++i)
        st.outer *= dims[i];
    for (std::size_t i = subsystem + 1; i < dims.size(); ++i)
        st.inner *= dims[i];
    return st;
}

void require_same_dims(const StateVector &a, const StateVector &b) {
    if (a.dims() != b.dims())
        fail(ErrorCode::DimensionMismatch, "state dims differ");
}

} // namespace

PositionLabel::PositionLabel(int value) : value_(value) {
    if (value == 0)
        fail(ErrorCode::LabelOutOfRange, "position label must be nonzero");
}

BasisIndex label_to_index(PositionLabel n, std::size_t N) {
    const auto mag = static_cast<std::size_t>(n.magnitude());
    if (mag > N)
        fail(ErrorCode::LabelOutOfRange, "label " + std::to_string(n.value()) +
                                             " outside +-1..+-" + std::to_string(N));
    return BasisIndex{n.positive() ? mag - 1 : N + mag - 1};
}

PositionLabel index_to_label(BasisIndex i, std::size_t N) {
    if (i.value >= 2 * N)
        fail(ErrorCode::LabelOutOfRange, "index " + std::to_string(i.value) +
                                             " outside [0, " + std::to_string(2 * N) + ")");
    if (i.value < N)
        return PositionLabel(static_cast<int>(i.value + 1));
    return PositionLabel(-static_cast<int>(i.value - N + 1));
}

StateVector::StateVector(std::vector<std::size_t> dims)
    : dims_(std::move(dims)), amps_(product(dims_), Complex{0.0, 0.0}) {}

StateVector::StateVector(std::vector<std::size_t> dims, std::vector<Complex> amplitudes)
    : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
    if (amps_.size() != product(dims_))
        fail(ErrorCode::DimensionMismatch, "amplitude count " + std::to_string(amps_.size()) +
                                               " does not match dims product " +
                                               std::to_string(product(dims_)));
}

StateVector StateVector::basis(std::vector<std::size_t> dims, std::size_t flat_index) {
    StateVector s(std::move(dims));
    if (flat_index >= s.size())
        fail(ErrorCode::DimensionMismatch, "basis index out of range");
    s[flat_index] = 1.0;
    return s;
}

double StateVector::norm_squared() const {
    double n = 0.0;
    for (const auto &a : amps_)
        n += std::norm(a);
    return n;
}

StateVector operator+(const StateVector &a, const StateVector &b) {
    require_same_dims(a, b);
    StateVector out(a.dims());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return out;
}

StateVector operator*(Complex c, const StateVector &s) {
    StateVector out(s.dims());
    for (std::size_t i = 0; i < s.size(); ++i)
        out[i] = c * s[i];
    return out;
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    std::vector<std::size_t> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    StateVector out(dims);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == Complex{})
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i * b.size() + j] = a[i] * b[j];
    }
    return out;
}

SignedPermutationOp::SignedPermutationOp(std::vector<std::size_t> target,
                                         std::vector<Complex> phase)
    : target_(std::move(target)), phase_(std::move(phase)) {
    if (target_.size() != phase_.size())
        fail(ErrorCode::DimensionMismatch, "target and phase sizes differ");
    std::vector<bool> hit(target_.size(), false);
    for (std::size_t i = 0; i < target_.size(); ++i) {
        if (target_[i] >= target_.size() || hit[target_[i]])
            fail(ErrorCode::ArgOutOfRange, "target map is not a bijection");
        hit[target_[i]] = true;
        if (std::abs(std::abs(phase_[i]) - 1.0) > 1e-12)
            fail(ErrorCode::ArgOutOfRange, "phase entries must have unit modulus");
    }
}

SignedPermutationOp SignedPermutationOp::identity(std::size_t dim) {
    std::vector<std::size_t> t(dim);
    std::iota(t.begin(), t.end(), std::size_t{0});
    return SignedPermutationOp(std::move(t), std::vector<Complex>(dim, 1.0));
}

SignedPermutationOp SignedPermutationOp::inverse() const {
    std::vector<std::size_t> t(dim());
    std::vector<Complex> p(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        t[target_[i]] = i;
        p[target_[i]] = std::conj(phase_[i]);
    }
    return SignedPermutationOp(std::move(t), std::move(p));
}

SignedPermutationOp SignedPermutationOp::pow(long exponent) const {
    SignedPermutationOp base = exponent < 0 ? inverse() : *this;
    SignedPermutationOp out = identity(dim());
    for (long e = exponent < 0 ? -exponent : exponent; e > 0; --e)
        out = base * out;
    return out;
}

DenseOp SignedPermutationOp::dense() const {
    const auto n = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < dim(); ++i)
        m(static_cast<Eigen::Index>(target_[i]), static_cast<Eigen::Index>(i)) = phase_[i];
    return DenseOp(std::move(m));
}

SignedPermutationOp operator*(const SignedPermutationOp &a, const SignedPermutationOp &b) {
    if (a.dim() != b.dim())
        fail(ErrorCode::DimensionMismatch, "operator dims differ");
    std::vector<std::size_t> t(a.dim());
    std::vector<Complex> p(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const auto mid = b.target(i);
        t[i] = a.target(mid);
        p[i] = a.phase(mid) * b.phase(i);
    }
    return SignedPermutationOp(std::move(t), std::move(p));
}

SignedPermutationOp kron(const SignedPermutationOp &a, const SignedPermutationOp &b) {
    const std::size_t n = a.dim() * b.dim();
    std::vector<std::size_t> t(n);
    std::vector<Complex> p(n);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            t[i * b.dim() + j] = a.target(i) * b.dim() + b.target(j);
            p[i * b.dim() + j] = a.phase(i) * b.phase(j);
        }
    }
    return SignedPermutationOp(std::move(t), std::move(p));
}

DenseOp::DenseOp(Eigen::MatrixXcd matrix) : m_(std::move(matrix)) {
    if (m_.rows() != m_.cols())
        fail(ErrorCode::DimensionMismatch, "operator matrix must be square");
}

DenseOp DenseOp::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return DenseOp(Eigen::MatrixXcd::Identity(n, n));
}

DenseOp operator*(const DenseOp &a, const DenseOp &b) {
    if (a.dim() != b.dim())
        fail(ErrorCode::DimensionMismatch, "operator dims differ");
    return DenseOp(a.matrix() * b.matrix());
}

DenseOp kron(const DenseOp &a, const DenseOp &b) {
    const auto na = a.matrix().rows();
    const auto nb = b.matrix().rows();
    Eigen::MatrixXcd m(na * nb, na * nb);
    for (Eigen::Index i = 0; i < na; ++i)
        for (Eigen::Index j = 0; j < na; ++j)
            m.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
    return DenseOp(std::move(m));
}

BlockTransformOp::BlockTransformOp(std::vector<std::size_t> in_slot,
                                   std::vector<std::size_t> out_index,
                                   Eigen::MatrixXcd block)
    : in_slot_(std::move(in_slot)), out_index_(std::move(out_index)), block_(std::move(block)) {
    const std::size_t n = in_slot_.size();
    if (block_.rows() != block_.cols() || block_.rows() == 0)
        fail(ErrorCode::DimensionMismatch, "block must be square and non-empty");
    if (out_index_.size() != n || n % static_cast<std::size_t>(block_.rows()) != 0)
        fail(ErrorCode::DimensionMismatch, "slot maps inconsistent with block size");
    std::vector<bool> seen_in(n, false), seen_out(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (in_slot_[i] >= n || seen_in[in_slot_[i]] || out_index_[i] >= n ||
            seen_out[out_index_[i]])
            fail(ErrorCode::ArgOutOfRange, "slot maps must be bijections");
        seen_in[in_slot_[i]] = true;
        seen_out[out_index_[i]] = true;
    }
}

DenseOp BlockTransformOp::dense() const {
    const std::size_t b = block_size();
    const auto n = static_cast<Eigen::Index>(dim());
    std::vector<std::size_t> slot_to_in(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        slot_to_in[in_slot_[i]] = i;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t c = 0; c < class_count(); ++c)
        for (std::size_t r = 0; r < b; ++r)
            for (std::size_t p = 0; p < b; ++p)
                m(static_cast<Eigen::Index>(out_index_[c * b + r]),
                  static_cast<Eigen::Index>(slot_to_in[c * b + p])) =
                    block_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(p));
    return DenseOp(std::move(m));
}

StateVector apply(const SignedPermutationOp &op, std::size_t subsystem, const StateVector &s) {
    const auto st = strides_for(s, subsystem, op.dim());
    StateVector out(s.dims());
    for (std::size_t o = 0; o < st.outer; ++o) {
        const std::size_t base = o * st.local * st.inner;
        for (std::size_t i = 0; i < st.local; ++i) {
            const std::size_t src = base + i * st.inner;
            const std::size_t dst = base + op.target(i) * st.inner;
            const Complex ph = op.phase(i);
            for (std::size_t r = 0; r < st.inner; ++r)
                out[dst + r] = ph * s[src + r];
        }
    }
    return out;
}

StateVector apply(const DenseOp &op, std::size_t subsystem, const StateVector &s) {
    const auto st = strides_for(s, subsystem, op.dim());
    StateVector out(s.dims());
    const auto &m = op.matrix();
    for (std::size_t o = 0; o < st.outer; ++o) {
        const std::size_t base = o * st.local * st.inner;
        for (std::size_t c = 0; c < st.local; ++c) {
            for (std::size_t r = 0; r < st.inner; ++r) {
                const Complex v = s[base + c * st.inner + r];
                if (v == Complex{})
                    continue;
                for (std::size_t row = 0; row < st.local; ++row)
                    out[base + row * st.inner + r] +=
                        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(c)) * v;
            }
        }
    }
    return out;
}

StateVector apply(const SignedPermutationOp &op, const StateVector &s) {
    if (op.dim() != s.size())
        fail(ErrorCode::DimensionMismatch, "operator dim " + std::to_string(op.dim()) +
                                               " != state size " + std::to_string(s.size()));
    StateVector out(s.dims());
    for (std::size_t i = 0; i < s.size(); ++i)
        out[op.target(i)] = op.phase(i) * s[i];
    return out;
}

StateVector apply(const DenseOp &op, const StateVector &s) {
    if (op.dim() != s.size())
        fail(ErrorCode::DimensionMismatch, "operator dim " + std::to_string(op.dim()) +
                                               " != state size " + std::to_string(s.size()));
    Eigen::Map<const Eigen::VectorXcd> in(s.amplitudes().data(),
                                          static_cast<Eigen::Index>(s.size()));
    Eigen::VectorXcd res = op.matrix() * in;
    return StateVector(s.dims(), std::vector<Complex>(res.data(), res.data() + res.size()));
}

StateVector apply(const BlockTransformOp &op, const StateVector &s) {
    if (op.dim() != s.size())
        fail(ErrorCode::DimensionMismatch, "operator dim " + std::to_string(op.dim()) +
                                               " != state size " + std::to_string(s.size()));
    const std::size_t b = op.block_size();
    const auto bi = static_cast<Eigen::Index>(b);
    std::vector<Complex> slots(s.size(), Complex{});
    std::vector<bool> active(op.class_count(), false);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == Complex{})
            continue;
        const std::size_t slot = op.in_slot(i);
        slots[slot] = s[i];
        active[slot / b] = true;
    }
    StateVector out(s.dims());
    Eigen::VectorXcd v(bi);
    for (std::size_t c = 0; c < op.class_count(); ++c) {
        if (!active[c])
            continue;
        for (std::size_t p = 0; p < b; ++p)
            v(static_cast<Eigen::Index>(p)) = slots[c * b + p];
        const Eigen::VectorXcd w = op.block() * v;
        for (std::size_t r = 0; r < b; ++r)
            out[op.out_index(c * b + r)] = w(static_cast<Eigen::Index>(r));
    }
    return out;
}

DenseOp partial_trace(const StateVector &s, std::size_t keep) {
    const auto &dims = s.dims();
    if (dims.size() != 2 || keep > 1)
        fail(ErrorCode::DimensionMismatch, "partial_trace needs a two-subsystem state");
    const std::size_t da = dims[0], db = dims[1];
    const std::size_t dk = keep == 0 ? da : db;
    const std::size_t dt = keep == 0 ? db : da;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dk),
                                                  static_cast<Eigen::Index>(dk));
    auto amp = [&](std::size_t kept, std::size_t traced) {
        return keep == 0 ? s[kept * db + traced] : s[traced * db + kept];
    };
    for (std::size_t t = 0; t < dt; ++t) {
        for (std::size_t i = 0; i < dk; ++i) {
            const Complex ai = amp(i, t);
            if (ai == Complex{})
                continue;
            for (std::size_t j = 0; j < dk; ++j)
                rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
                    ai * std::conj(amp(j, t));
        }
    }
    return DenseOp(std::move(rho));
}

Complex inner(const StateVector &a, const StateVector &b) {
    require_same_dims(a, b);
    Complex acc{};
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::conj(a[i]) * b[i];
    return acc;
}

double fidelity(const StateVector &a, const StateVector &b) { return std::norm(inner(a, b)); }

double max_abs_diff(const StateVector &a, const StateVector &b) {
    require_same_dims(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::vector<double> probabilities(const StateVector &s) {
    std::vector<double> p(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        p[i] = std::norm(s[i]);
    return p;
}

double unitarity_residual(const DenseOp &u) {
    const auto &m = u.matrix();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    return (m.adjoint() * m - id).cwiseAbs().maxCoeff();
}

double involution_residual(const DenseOp &u) {
    const auto &m = u.matrix();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    return (m * m - id).cwiseAbs().maxCoeff();
}

double max_abs_diff(const DenseOp &a, const DenseOp &b) {
    if (a.dim() != b.dim())
        fail(ErrorCode::DimensionMismatch, "operator dims differ");
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

std::vector<double> schmidt_coefficients(const StateVector &s) {
    const auto &dims = s.dims();
    if (dims.size() != 2)
        fail(ErrorCode::DimensionMismatch, "Schmidt decomposition needs two subsystems");
    Eigen::MatrixXcd c(static_cast<Eigen::Index>(dims[0]), static_cast<Eigen::Index>(dims[1]));
    for (std::size_t i = 0; i < dims[0]; ++i)
        for (std::size_t j = 0; j < dims[1]; ++j)
            c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s[i * dims[1] + j];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c);
    const auto &sv = svd.singularValues();
    return std::vector<double>(sv.data(), sv.data() + sv.size());
}

double gram_max_deviation(const std::vector<StateVector> &states) {
    if (states.empty()) return 0.0;
    const std::size_t dim = states.front().size();
    std::map<std::size_t, std::vector<std::pair<std::size_t, Complex>>> support;
    for (std::size_t a = 0; a < states.size(); ++a) {
        if (states[a].size() != dim) fail(ErrorCode::DimensionMismatch, "states differ in size");
        for (std::size_t i = 0; i < dim; ++i)
            if (states[a][i] != Complex{}) support[i].emplace_back(a, states[a][i]);
    }
    const std::size_t m = states.size();
    std::vector<Complex> gram(m * m);
    for (const auto &[i, entries] : support)
        for (const auto &[a, x] : entries)
            for (const auto &[b, y] : entries) gram[a * m + b] += std::conj(x) * y;
    double dev = 0.0;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            dev = std::max(dev, std::abs(gram[a * m + b] - Complex(a == b ? 1.0 : 0.0)));
    return dev;
}

} // namespace sdc
