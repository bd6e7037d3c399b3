// Copyright 2026 qecmit Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QECMIT_DENSE_HPP
#define QECMIT_DENSE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecmit/circuit.hpp"
#include "qecmit/pauli.hpp"

namespace qecmit {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr size_t kMaxDenseQubits = 10;

/// Basis index bit q holds the value of qubit q.
inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return r;
}

inline Matrix gate_matrix(GateKind g) {
    const cplx i(0, 1);
    Matrix m(2, 2);
    switch (g) {
        case GateKind::H:
            m << 1, 1, 1, -1;
            return m / std::sqrt(2.0);
        case GateKind::S:
            m << 1, 0, 0, i;
            return m;
        case GateKind::S_DAG:
            m << 1, 0, 0, -i;
            return m;
        case GateKind::X:
            m << 0, 1, 1, 0;
            return m;
        case GateKind::Y:
            m << 0, -i, i, 0;
            return m;
        case GateKind::Z:
            m << 1, 0, 0, -1;
            return m;
        case GateKind::T:
            m << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4);
            return m;
        case GateKind::CNOT:
            break;
    }
    throw std::invalid_argument("gate_matrix: not a single-qubit gate");
}

inline Matrix pauli_matrix(Pauli p) {
    switch (p) {
        case Pauli::X:
            return gate_matrix(GateKind::X);
        case Pauli::Y:
            return gate_matrix(GateKind::Y);
        case Pauli::Z:
            return gate_matrix(GateKind::Z);
        default:
            return Matrix::Identity(2, 2);
    }
}

inline Matrix rz(double theta) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::polar(1.0, -theta / 2);
    m(1, 1) = std::polar(1.0, theta / 2);
    return m;
}

inline Matrix projector(const Vector &v) {
    return v * v.adjoint();
}

class DensityMatrix {
   public:
    DensityMatrix() : DensityMatrix(1) {
    }
    /// |0...0><0...0| on n qubits.
    explicit DensityMatrix(size_t n) : n_(n) {
        check_size(n);
        rho_ = Matrix::Zero(dim(), dim());
        rho_(0, 0) = 1;
    }
    DensityMatrix(size_t n, Matrix rho) : n_(n), rho_(std::move(rho)) {
        check_size(n);
        if (rho_.rows() != (Eigen::Index)dim() || rho_.cols() != (Eigen::Index)dim()) {
            throw std::invalid_argument("DensityMatrix: matrix has the wrong dimension");
        }
    }
    static DensityMatrix pure(const Vector &psi) {
        size_t n = 0;
        while (((Eigen::Index)1 << n) < psi.size()) {
            n++;
        }
        if (((Eigen::Index)1 << n) != psi.size()) {
            throw std::invalid_argument("DensityMatrix::pure: length is not a power of two");
        }
        Vector v = psi / psi.norm();
        return DensityMatrix(n, projector(v));
    }

    size_t num_qubits() const {
        return n_;
    }
    size_t dim() const {
        return (size_t)1 << n_;
    }
    const Matrix &matrix() const {
        return rho_;
    }
    Matrix &matrix() {
        return rho_;
    }

    void apply_unitary(const Matrix &u, size_t q) {
        check_qubit(q);
        size_t bit = (size_t)1 << q;
        for (size_t side = 0; side < 2; side++) {
            for (size_t a = 0; a < dim(); a++) {
                if (a & bit) {
                    continue;
                }
                for (size_t k = 0; k < dim(); k++) {
                    cplx &x0 = side == 0 ? rho_(a, k) : rho_(k, a);
                    cplx &x1 = side == 0 ? rho_(a | bit, k) : rho_(k, a | bit);
                    cplx y0, y1;
                    if (side == 0) {
                        y0 = u(0, 0) * x0 + u(0, 1) * x1;
                        y1 = u(1, 0) * x0 + u(1, 1) * x1;
                    } else {
                        y0 = x0 * std::conj(u(0, 0)) + x1 * std::conj(u(0, 1));
                        y1 = x0 * std::conj(u(1, 0)) + x1 * std::conj(u(1, 1));
                    }
                    x0 = y0;
                    x1 = y1;
                }
            }
        }
    }

    void apply_cnot(size_t control, size_t target) {
        check_qubit(control);
        check_qubit(target);
        if (control == target) {
            throw std::invalid_argument("apply_cnot: control equals target");
        }
        std::vector<size_t> perm(dim());
        for (size_t a = 0; a < dim(); a++) {
            perm[a] = (a >> control) & 1 ? a ^ ((size_t)1 << target) : a;
        }
        Matrix out(dim(), dim());
        for (size_t a = 0; a < dim(); a++) {
            for (size_t b = 0; b < dim(); b++) {
                out(perm[a], perm[b]) = rho_(a, b);
            }
        }
        rho_ = std::move(out);
    }

    void apply(const Operation &op) {
        switch (op.kind) {
            case OpKind::gate:
                if (op.gate == GateKind::CNOT) {
                    apply_cnot(op.q0, op.q1);
                } else {
                    apply_unitary(gate_matrix(op.gate), op.q0);
                }
                return;
            case OpKind::idle:
                return;
            default:
                throw std::invalid_argument("DensityMatrix::apply: only gates and idles are supported");
        }
    }

    /// Tr(rho P), including the phase of P.
    cplx expectation(const PauliString &p) const {
        if (p.num_qubits() != n_) {
            throw std::invalid_argument("expectation: qubit count mismatch");
        }
        size_t xmask = 0, zmask = 0;
        int ys = 0;
        for (size_t q = 0; q < n_; q++) {
            Pauli s = p.get(q);
            if (s == Pauli::X || s == Pauli::Y) {
                xmask |= (size_t)1 << q;
            }
            if (s == Pauli::Z || s == Pauli::Y) {
                zmask |= (size_t)1 << q;
            }
            ys += s == Pauli::Y;
        }
        static const cplx powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        cplx phase = powers[(p.phase() + ys) & 3];
        cplx sum = 0;
        for (size_t j = 0; j < dim(); j++) {
            double sign = __builtin_popcountll(j & zmask) & 1 ? -1.0 : 1.0;
            sum += sign * rho_(j, j ^ xmask);
        }
        return phase * sum;
    }

    /// Expectation of a Hermitian Pauli observable.
    double expectation_real(const PauliString &p) const {
        return expectation(p).real();
    }

    double trace_distance(const DensityMatrix &o) const {
        Matrix diff = rho_ - o.rho_;
        Eigen::SelfAdjointEigenSolver<Matrix> es(diff);
        return 0.5 * es.eigenvalues().cwiseAbs().sum();
    }

    double fidelity_with(const Vector &psi) const {
        return (psi.adjoint() * rho_ * psi)(0, 0).real() / psi.squaredNorm();
    }

    /// Checks the density-matrix invariants; returns an empty string when valid.
    std::string violation(double herm_tol = 1e-12, double trace_tol = 1e-10, double eig_tol = 1e-10) const {
        if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > herm_tol) {
            return "not Hermitian";
        }
        if (std::abs(rho_.trace() - cplx(1, 0)) > trace_tol) {
            return "trace is not 1";
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho_);
        if (es.eigenvalues().minCoeff() < -eig_tol) {
            return "negative eigenvalue";
        }
        return "";
    }
    bool is_valid() const {
        return violation().empty();
    }

   private:
    static void check_size(size_t n) {
        if (n == 0 || n > kMaxDenseQubits) {
            throw std::invalid_argument("DensityMatrix: qubit count must be in [1, 10]");
        }
    }
    void check_qubit(size_t q) const {
        if (q >= n_) {
            throw std::out_of_range("DensityMatrix: qubit index out of range");
        }
    }

    size_t n_;
    Matrix rho_;
};

/// Linear map on d x d matrices, stored as a superoperator acting on column-major vec(rho).
class Channel {
   public:
    Channel() = default;
    Channel(Matrix superop, std::string label = "") : s_(std::move(superop)), label_(std::move(label)) {
        Eigen::Index d2 = s_.rows();
        d_ = (size_t)std::llround(std::sqrt((double)d2));
        if (s_.cols() != d2 || (Eigen::Index)(d_ * d_) != d2) {
            throw std::invalid_argument("Channel: superoperator must be d^2 x d^2");
        }
    }

    static Channel from_kraus(const std::vector<Matrix> &kraus, std::string label = "") {
        if (kraus.empty()) {
            throw std::invalid_argument("Channel::from_kraus: no operators");
        }
        Eigen::Index d = kraus[0].rows();
        Matrix s = Matrix::Zero(d * d, d * d);
        for (const Matrix &k : kraus) {
            s += kron(k.conjugate(), k);
        }
        return Channel(s, std::move(label));
    }
    static Channel unitary(const Matrix &u, std::string label = "") {
        return from_kraus({u}, std::move(label));
    }
    static Channel identity(size_t d, std::string label = "I") {
        return Channel(Matrix::Identity(d * d, d * d), std::move(label));
    }

    size_t dim() const {
        return d_;
    }
    const Matrix &superop() const {
        return s_;
    }
    const std::string &label() const {
        return label_;
    }

    Matrix apply(const Matrix &rho) const {
        Eigen::Map<const Vector> v(rho.data(), rho.size());
        Vector out = s_ * v;
        return Eigen::Map<const Matrix>(out.data(), rho.rows(), rho.cols());
    }
    DensityMatrix apply(const DensityMatrix &rho) const {
        return DensityMatrix(rho.num_qubits(), apply(rho.matrix()));
    }

    /// (this o other)(rho) = this(other(rho)).
    Channel after(const Channel &other) const {
        return Channel(s_ * other.s_, label_ + "o" + other.label_);
    }
    Channel operator+(const Channel &o) const {
        return Channel(s_ + o.s_, label_ + "+" + o.label_);
    }
    Channel operator-(const Channel &o) const {
        return Channel(s_ - o.s_, label_ + "-" + o.label_);
    }
    Channel scaled(double a) const {
        return Channel(a * s_, label_);
    }

    /// Choi matrix sum_ij |i><j| (x) E(|i><j|), input factor first.
    Matrix choi() const {
        Matrix j = Matrix::Zero(d_ * d_, d_ * d_);
        for (size_t a = 0; a < d_; a++) {
            for (size_t b = 0; b < d_; b++) {
                Matrix e = Matrix::Zero(d_, d_);
                e(a, b) = 1;
                j.block(a * d_, b * d_, d_, d_) = apply(e);
            }
        }
        return j;
    }

    bool is_cptp(double tol = 1e-10) const {
        Matrix j = choi();
        if ((j - j.adjoint()).cwiseAbs().maxCoeff() > tol) {
            return false;
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(j);
        if (es.eigenvalues().minCoeff() < -tol) {
            return false;
        }
        for (size_t a = 0; a < d_; a++) {
            for (size_t b = 0; b < d_; b++) {
                cplx tr = j.block(a * d_, b * d_, d_, d_).trace();
                if (std::abs(tr - cplx(a == b ? 1.0 : 0.0, 0)) > tol) {
                    return false;
                }
            }
        }
        return true;
    }

    double max_distance(const Channel &o) const {
        return (s_ - o.s_).cwiseAbs().maxCoeff();
    }
    /// Trace norm of the Choi difference, normalised by the dimension.
    double choi_distance(const Channel &o) const {
        Matrix diff = (choi() - o.choi()) / (double)d_;
        Eigen::SelfAdjointEigenSolver<Matrix> es(diff);
        return 0.5 * es.eigenvalues().cwiseAbs().sum();
    }

   private:
    Matrix s_;
    size_t d_ = 0;
    std::string label_;
};

/// Applies a single-qubit superoperator to qubit q of an n-qubit state.
inline void apply_local(DensityMatrix &rho, const Channel &ch, size_t q) {
    if (ch.dim() != 2) {
        throw std::invalid_argument("apply_local: channel must act on one qubit");
    }
    if (q >= rho.num_qubits()) {
        throw std::out_of_range("apply_local: qubit index out of range");
    }
    const Matrix &s = ch.superop();
    Matrix &m = rho.matrix();
    size_t bit = (size_t)1 << q;
    size_t dim = rho.dim();
    for (size_t a = 0; a < dim; a++) {
        if (a & bit) {
            continue;
        }
        for (size_t b = 0; b < dim; b++) {
            if (b & bit) {
                continue;
            }
            // Column-major vec of the 2x2 block: (00, 10, 01, 11).
            cplx v[4] = {m(a, b), m(a | bit, b), m(a, b | bit), m(a | bit, b | bit)};
            cplx w[4];
            for (int r = 0; r < 4; r++) {
                w[r] = s(r, 0) * v[0] + s(r, 1) * v[1] + s(r, 2) * v[2] + s(r, 3) * v[3];
            }
            m(a, b) = w[0];
            m(a | bit, b) = w[1];
            m(a, b | bit) = w[2];
            m(a | bit, b | bit) = w[3];
        }
    }
}

}  // namespace qecmit

#endif
