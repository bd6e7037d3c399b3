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

#ifndef QECMIT_MITIGATION_HPP
#define QECMIT_MITIGATION_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qecmit/dense.hpp"
#include "qecmit/rng.hpp"

namespace qecmit {

/// |pi/4> = T|+>.
inline Vector magic_state() {
    Vector v(2);
    v << 1, std::polar(1.0, std::numbers::pi / 4);
    return v / std::sqrt(2.0);
}

/// |omega> = Z|pi/4>.
inline Vector omega_state() {
    Vector v(2);
    v << 1, -std::polar(1.0, std::numbers::pi / 4);
    return v / std::sqrt(2.0);
}

/// A = e^{-i pi/4} S X, which fixes |pi/4> and negates |omega>.
inline Matrix a_gate() {
    return std::polar(1.0, -std::numbers::pi / 4) * gate_matrix(GateKind::S) * gate_matrix(GateKind::X);
}

/// A_T = T^dag X T, the Clifford with X T = T A_T.
inline Matrix a_t_gate() {
    Matrix t = gate_matrix(GateKind::T);
    return t.adjoint() * gate_matrix(GateKind::X) * t;
}

inline double epsilon_bar(const DensityMatrix &rho) {
    if (rho.num_qubits() != 1) {
        throw std::invalid_argument("epsilon_bar: single-qubit state expected");
    }
    return 1.0 - rho.fidelity_with(magic_state());
}

/// tau = (rho + A rho A^dag) / 2.
inline DensityMatrix twirl_state(const DensityMatrix &rho) {
    if (rho.num_qubits() != 1) {
        throw std::invalid_argument("twirl_state: single-qubit state expected");
    }
    Matrix a = a_gate();
    return DensityMatrix(1, 0.5 * (rho.matrix() + a * rho.matrix() * a.adjoint()));
}

/// The T gadget acting on an arbitrary (not necessarily physical) 2x2 input, linear in psi.
/// The magic state is qubit 0 and the CNOT control; psi is qubit 1 and is measured in the Z basis.
/// Outcome 1 is followed by S X on the magic wire. Returns the outcome-averaged output.
inline Matrix t_gadget_map(const Matrix &psi, const Matrix &magic) {
    DensityMatrix joint(2, kron(psi, magic));
    joint.apply_cnot(0, 1);
    const Matrix &m = joint.matrix();
    Matrix out = Matrix::Zero(2, 2);
    Matrix sx = gate_matrix(GateKind::S) * gate_matrix(GateKind::X);
    for (size_t outcome = 0; outcome < 2; outcome++) {
        Matrix block = m.block(2 * outcome, 2 * outcome, 2, 2);
        out += outcome == 0 ? block : Matrix(sx * block * sx.adjoint());
    }
    return out;
}

inline DensityMatrix t_gadget(const DensityMatrix &psi, const DensityMatrix &magic) {
    if (psi.num_qubits() != 1 || magic.num_qubits() != 1) {
        throw std::invalid_argument("t_gadget: single-qubit states expected");
    }
    return DensityMatrix(1, t_gadget_map(psi.matrix(), magic.matrix()));
}

struct GadgetShot {
    int outcome = 0;
    DensityMatrix output;
};

/// One run of the gadget with a sampled measurement outcome; the output is the corrected state.
inline GadgetShot t_gadget(const DensityMatrix &psi, const DensityMatrix &magic, RandomStream &rng) {
    if (psi.num_qubits() != 1 || magic.num_qubits() != 1) {
        throw std::invalid_argument("t_gadget: single-qubit states expected");
    }
    DensityMatrix joint(2, kron(psi.matrix(), magic.matrix()));
    joint.apply_cnot(0, 1);
    const Matrix &m = joint.matrix();
    double p1 = m.block(2, 2, 2, 2).trace().real();
    GadgetShot shot;
    shot.outcome = uniform01(rng) < p1 ? 1 : 0;
    Matrix block = m.block(2 * shot.outcome, 2 * shot.outcome, 2, 2);
    block /= block.trace().real();
    if (shot.outcome == 1) {
        Matrix sx = gate_matrix(GateKind::S) * gate_matrix(GateKind::X);
        block = sx * block * sx.adjoint();
    }
    shot.output = DensityMatrix(1, block);
    return shot;
}

/// Process tomography of the gadget with a fixed magic-state input.
inline Channel gadget_channel(const DensityMatrix &magic) {
    Matrix s(4, 4);
    for (int b = 0; b < 2; b++) {
        for (int a = 0; a < 2; a++) {
            Matrix e = Matrix::Zero(2, 2);
            e(a, b) = 1;
            Matrix out = t_gadget_map(e, magic.matrix());
            s.col(a + 2 * b) = Eigen::Map<const Vector>(out.data(), 4);
        }
    }
    return Channel(s, "gadget");
}

inline Channel t_channel() {
    return Channel::unitary(gate_matrix(GateKind::T), "T");
}
inline Channel z_channel() {
    return Channel::unitary(gate_matrix(GateKind::Z), "Z");
}
inline Channel x_channel() {
    return Channel::unitary(gate_matrix(GateKind::X), "X");
}
inline Channel a_channel() {
    return Channel::unitary(a_gate(), "A");
}
inline Channel a_t_channel() {
    return Channel::unitary(a_t_gate(), "A_T");
}

/// N = (1 - e) I + e Z.
inline Channel dephasing_channel(double eps_bar) {
    if (!(eps_bar >= 0 && eps_bar <= 1)) {
        throw std::invalid_argument("dephasing_channel: eps_bar must be in [0, 1]");
    }
    return Channel::identity(2).scaled(1 - eps_bar) + z_channel().scaled(eps_bar);
}

/// T_e = N_e o T.
inline Channel noisy_t_channel(double eps_bar) {
    Channel c = dephasing_channel(eps_bar).after(t_channel());
    return Channel(c.superop(), "T_noisy");
}

/// (T_n + X o T_n o A_T) / 2 for a noisy T gate T_n = N o T with Z-type noise N.
inline Channel deformation_twirl(const Channel &t_n) {
    Channel c = t_n + x_channel().after(t_n).after(a_t_channel());
    return Channel(c.superop() * 0.5, "twirled");
}

struct QpdTerm {
    double coefficient = 0;
    Channel channel;
};

struct QuasiProbDecomposition {
    std::vector<QpdTerm> terms;
    double gamma = 1;

    Channel combined() const {
        Matrix s = Matrix::Zero(terms.at(0).channel.superop().rows(), terms.at(0).channel.superop().cols());
        for (const QpdTerm &t : terms) {
            s += t.coefficient * t.channel.superop();
        }
        return Channel(s, "qpd");
    }
};

/// T = a1 T_e + a2 Z o T_e with a1 = (1-e)/(1-2e), a2 = -e/(1-2e).
inline QuasiProbDecomposition qpd_for_t(double eps_bar) {
    if (!(eps_bar >= 0 && eps_bar < 0.5)) {
        throw std::invalid_argument("qpd_for_t: eps_bar must be in [0, 1/2)");
    }
    double den = 1 - 2 * eps_bar;
    Channel te = noisy_t_channel(eps_bar);
    QuasiProbDecomposition q;
    q.terms.push_back({(1 - eps_bar) / den, te});
    q.terms.push_back({-eps_bar / den, Channel(z_channel().after(te).superop(), "ZoT_noisy")});
    q.gamma = 1 / den;
    return q;
}

struct QpdEstimate {
    double mean = 0;
    double std_error = 0;
    uint64_t shots = 0;
    double gamma_total = 1;
};

/// Ideal expectation of a Pauli observable after running a gate circuit on |0...0>.
inline double exact_expectation(const Circuit &circuit, const PauliString &observable) {
    DensityMatrix rho(circuit.num_qubits());
    for (const auto &step : circuit.steps()) {
        for (const Operation &op : step) {
            rho.apply(op);
        }
    }
    return rho.expectation_real(observable);
}

/// Monte Carlo QPD estimator for a Clifford+T circuit whose T gates are all noisy T_e.
/// Each T site independently uses term i with probability |a_i|/gamma; the shot weight is
/// gamma^t times the product of the term signs times a sampled +-1 outcome of the observable.
class QpdEstimator {
   public:
    static constexpr uint64_t kChunk = 1024;

    QpdEstimator(Circuit circuit, PauliString observable, double eps_bar)
        : circuit_(std::move(circuit)), observable_(std::move(observable)), qpd_(qpd_for_t(eps_bar)) {
        if (observable_.num_qubits() != circuit_.num_qubits()) {
            throw std::invalid_argument("QpdEstimator: observable has the wrong qubit count");
        }
        if (!observable_.is_hermitian()) {
            throw std::invalid_argument("QpdEstimator: observable must be Hermitian");
        }
        for (const auto &step : circuit_.steps()) {
            for (const Operation &op : step) {
                if (op.kind == OpKind::reset || op.kind == OpKind::measure) {
                    throw std::invalid_argument("QpdEstimator: only unitary gates are supported");
                }
                t_count_ += op.kind == OpKind::gate && op.gate == GateKind::T;
            }
        }
        if (t_count_ > 63) {
            throw std::invalid_argument("QpdEstimator: at most 63 T gates");
        }
        if (circuit_.num_qubits() == 0 || circuit_.num_qubits() > kMaxDenseQubits) {
            throw std::invalid_argument("QpdEstimator: qubit count must be in [1, 10]");
        }
    }

    size_t t_count() const {
        return t_count_;
    }
    const QuasiProbDecomposition &decomposition() const {
        return qpd_;
    }
    double gamma_total() const {
        return std::pow(qpd_.gamma, (double)t_count_);
    }
    double ideal() const {
        return exact_expectation(circuit_, observable_);
    }

    /// Exact expectation with term (pattern >> k) & 1 at the k-th T site.
    double pattern_expectation(uint64_t pattern) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(pattern);
            if (it != cache_.end()) {
                return it->second;
            }
        }
        DensityMatrix rho(circuit_.num_qubits());
        size_t k = 0;
        for (const auto &step : circuit_.steps()) {
            for (const Operation &op : step) {
                if (op.kind == OpKind::gate && op.gate == GateKind::T) {
                    apply_local(rho, qpd_.terms[(pattern >> k) & 1].channel, op.q0);
                    k++;
                } else {
                    rho.apply(op);
                }
            }
        }
        double e = rho.expectation_real(observable_);
        std::lock_guard<std::mutex> lock(mu_);
        cache_.emplace(pattern, e);
        return e;
    }

    /// Sum of sign * outcome over the shots of one chunk.
    int64_t run_chunk(uint64_t seed, uint64_t chunk, uint64_t shots) const {
        RandomStream rng = stream(seed, chunk, 2);
        double p1 = std::abs(qpd_.terms[1].coefficient) / qpd_.gamma;
        int64_t sum = 0;
        for (uint64_t s = 0; s < shots; s++) {
            uint64_t pattern = 0;
            int sign = 1;
            for (size_t k = 0; k < t_count_; k++) {
                if (uniform01(rng) < p1) {
                    pattern |= (uint64_t)1 << k;
                    sign = -sign;
                }
            }
            double e = pattern_expectation(pattern);
            int outcome = uniform01(rng) < 0.5 * (1 + e) ? 1 : -1;
            sum += sign * outcome;
        }
        return sum;
    }

    QpdEstimate estimate(uint64_t shots, uint64_t seed, unsigned threads = 1) const {
        if (shots == 0) {
            throw std::invalid_argument("qpd_estimate: shots must be positive");
        }
        uint64_t chunks = (shots + kChunk - 1) / kChunk;
        std::vector<int64_t> sums(chunks, 0);
        std::atomic<uint64_t> next{0};
        std::exception_ptr error;
        std::mutex error_mu;
        auto worker = [&] {
            try {
                for (uint64_t c = next++; c < chunks; c = next++) {
                    uint64_t n = std::min(kChunk, shots - c * kChunk);
                    sums[c] = run_chunk(seed, c, n);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                error = std::current_exception();
            }
        };
        threads = std::max(1u, threads);
        std::vector<std::thread> pool;
        for (unsigned i = 1; i < threads; i++) {
            pool.emplace_back(worker);
        }
        worker();
        for (auto &t : pool) {
            t.join();
        }
        if (error) {
            std::rethrow_exception(error);
        }
        int64_t total = 0;
        for (int64_t s : sums) {
            total += s;
        }
        QpdEstimate r;
        r.shots = shots;
        r.gamma_total = gamma_total();
        double n = (double)shots;
        r.mean = r.gamma_total * (double)total / n;
        if (shots > 1) {
            double var = (r.gamma_total * r.gamma_total * n - n * r.mean * r.mean) / (n - 1);
            r.std_error = std::sqrt(std::max(0.0, var) / n);
        }
        return r;
    }

   private:
    Circuit circuit_;
    PauliString observable_;
    QuasiProbDecomposition qpd_;
    size_t t_count_ = 0;
    mutable std::mutex mu_;
    mutable std::unordered_map<uint64_t, double> cache_;
};

inline QpdEstimate qpd_estimate(const Circuit &circuit, const PauliString &observable, double eps_bar, uint64_t shots,
                                uint64_t seed, unsigned threads = 1) {
    return QpdEstimator(circuit, observable, eps_bar).estimate(shots, seed, threads);
}

}  // namespace qecmit

#endif
