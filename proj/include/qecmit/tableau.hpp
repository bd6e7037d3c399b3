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

#ifndef QECMIT_TABLEAU_HPP
#define QECMIT_TABLEAU_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecmit/pauli.hpp"
#include "qecmit/rng.hpp"

namespace qecmit {

enum class GateKind : uint8_t { H, S, S_DAG, X, Y, Z, CNOT, T };

inline const char *gate_name(GateKind k) {
    switch (k) {
        case GateKind::H:
            return "H";
        case GateKind::S:
            return "S";
        case GateKind::S_DAG:
            return "S_DAG";
        case GateKind::X:
            return "X";
        case GateKind::Y:
            return "Y";
        case GateKind::Z:
            return "Z";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::T:
            return "T";
    }
    return "?";
}

inline size_t gate_arity(GateKind k) {
    return k == GateKind::CNOT ? 2 : 1;
}

enum class Basis : uint8_t { Z, X };

struct CliffordGate {
    GateKind kind;
    uint32_t q0;
    uint32_t q1 = 0;

    void validate(size_t n) const {
        if (kind == GateKind::T) {
            throw std::invalid_argument("CliffordGate: T is not a Clifford gate");
        }
        if (q0 >= n || (gate_arity(kind) == 2 && q1 >= n)) {
            throw std::out_of_range("CliffordGate: target out of range");
        }
        if (gate_arity(kind) == 2 && q0 == q1) {
            throw std::invalid_argument("CliffordGate: CNOT targets must be distinct");
        }
    }
};

/// Stabilizer state as an Aaronson-Gottesman tableau. Rows 0..n-1 are destabilizers,
/// rows n..2n-1 stabilizers. Each row is stored as packed x and z words plus a sign bit.
class StabilizerState {
   public:
    StabilizerState() = default;

    /// |0...0>
    explicit StabilizerState(size_t n) : n_(n), w_(num_words(n)), xs_(2 * n * w_, 0), zs_(2 * n * w_, 0), signs_(2 * n, 0) {
        for (size_t q = 0; q < n; q++) {
            set_bit(xs_, q, q);
            set_bit(zs_, n + q, q);
        }
    }

    /// State stabilized by `generators` (commuting, independent, phases +-1). Any
    /// remaining degrees of freedom are fixed as in |0...0>.
    static StabilizerState from_generators(size_t n, const std::vector<PauliString> &generators) {
        StabilizerState s(n);
        RandomStream unused(0);
        for (size_t k = 0; k < generators.size(); k++) {
            const PauliString &g = generators[k];
            if (g.num_qubits() != n || !g.is_hermitian()) {
                throw std::invalid_argument("from_generators: bad generator " + g.str());
            }
            for (size_t j = 0; j < k; j++) {
                if (!generators[j].commutes(g)) {
                    throw std::invalid_argument("from_generators: generators do not commute");
                }
            }
            bool random = false;
            s.measure_internal(g, unused, &random, 0);
        }
        // Some generators may have come out with the wrong sign. Find a product of
        // destabilizers anticommuting with exactly those generators (a GF(2) solve) and
        // conjugate by it.
        size_t m = generators.size();
        size_t cols = num_words(n + 1);
        std::vector<std::vector<uint64_t>> rows(m, std::vector<uint64_t>(cols, 0));
        bool any_wrong = false;
        for (size_t k = 0; k < m; k++) {
            std::vector<size_t> ws = s.nonzero_words(generators[k]);
            for (size_t i = 0; i < n; i++) {
                if (s.anticommutes_row(i, generators[k], ws)) {
                    rows[k][i >> 6] |= uint64_t{1} << (i & 63);
                }
            }
            if (s.expectation(generators[k]) != +1) {
                rows[k][n >> 6] |= uint64_t{1} << (n & 63);
                any_wrong = true;
            }
        }
        if (!any_wrong) {
            return s;
        }
        auto bit = [](const std::vector<uint64_t> &r, size_t i) {
            return (r[i >> 6] >> (i & 63)) & 1;
        };
        std::vector<size_t> pivot_col;
        size_t rank = 0;
        for (size_t col = 0; col < n && rank < m; col++) {
            size_t pr = rank;
            while (pr < m && !bit(rows[pr], col)) {
                pr++;
            }
            if (pr == m) {
                continue;
            }
            std::swap(rows[pr], rows[rank]);
            for (size_t r = 0; r < m; r++) {
                if (r != rank && bit(rows[r], col)) {
                    for (size_t w = 0; w < cols; w++) {
                        rows[r][w] ^= rows[rank][w];
                    }
                }
            }
            pivot_col.push_back(col);
            rank++;
        }
        if (rank < m) {
            throw std::invalid_argument("from_generators: generators are not independent");
        }
        PauliString fix(n);
        for (size_t r = 0; r < rank; r++) {
            if (bit(rows[r], n)) {
                PauliString d = s.row(pivot_col[r]);
                d.set_phase(0);
                fix *= d;
            }
        }
        fix.set_phase(0);
        s.apply_pauli(fix);
        return s;
    }

    size_t num_qubits() const {
        return n_;
    }

    PauliString row(size_t r) const {
        PauliString p(n_);
        for (size_t w = 0; w < w_; w++) {
            p.xs()[w] = xs_[r * w_ + w];
            p.zs()[w] = zs_[r * w_ + w];
        }
        p.set_phase(signs_[r] ? 2 : 0);
        return p;
    }
    PauliString stabilizer(size_t i) const {
        return row(n_ + i);
    }
    PauliString destabilizer(size_t i) const {
        return row(i);
    }
    std::vector<PauliString> stabilizers() const {
        std::vector<PauliString> out;
        for (size_t i = 0; i < n_; i++) {
            out.push_back(stabilizer(i));
        }
        return out;
    }

    void apply_gate(const CliffordGate &g) {
        g.validate(n_);
        switch (g.kind) {
            case GateKind::H:
                h(g.q0);
                break;
            case GateKind::S:
                s(g.q0);
                break;
            case GateKind::S_DAG:
                s_dag(g.q0);
                break;
            case GateKind::X:
                pauli_gate(g.q0, false, true);
                break;
            case GateKind::Y:
                pauli_gate(g.q0, true, true);
                break;
            case GateKind::Z:
                pauli_gate(g.q0, true, false);
                break;
            case GateKind::CNOT:
                cnot(g.q0, g.q1);
                break;
            case GateKind::T:
                break;
        }
    }

    void h(size_t q) {
        check(q);
        size_t w = q >> 6;
        uint64_t m = uint64_t{1} << (q & 63);
        for (size_t r = 0; r < 2 * n_; r++) {
            uint64_t &x = xs_[r * w_ + w];
            uint64_t &z = zs_[r * w_ + w];
            bool xb = x & m, zb = z & m;
            signs_[r] ^= (uint8_t)(xb & zb);
            if (xb != zb) {
                x ^= m;
                z ^= m;
            }
        }
    }
    void s(size_t q) {
        check(q);
        size_t w = q >> 6;
        uint64_t m = uint64_t{1} << (q & 63);
        for (size_t r = 0; r < 2 * n_; r++) {
            uint64_t x = xs_[r * w_ + w];
            uint64_t &z = zs_[r * w_ + w];
            signs_[r] ^= (uint8_t)((x & z & m) != 0);
            z ^= x & m;
        }
    }
    void s_dag(size_t q) {
        check(q);
        size_t w = q >> 6;
        uint64_t m = uint64_t{1} << (q & 63);
        for (size_t r = 0; r < 2 * n_; r++) {
            uint64_t x = xs_[r * w_ + w];
            uint64_t &z = zs_[r * w_ + w];
            signs_[r] ^= (uint8_t)((x & ~z & m) != 0);
            z ^= x & m;
        }
    }
    void cnot(size_t c, size_t t) {
        check(c);
        check(t);
        if (c == t) {
            throw std::invalid_argument("cnot: control equals target");
        }
        size_t wc = c >> 6, wt = t >> 6;
        unsigned bc = c & 63, bt = t & 63;
        for (size_t r = 0; r < 2 * n_; r++) {
            uint64_t *x = &xs_[r * w_];
            uint64_t *z = &zs_[r * w_];
            unsigned xc = (x[wc] >> bc) & 1, zc = (z[wc] >> bc) & 1;
            unsigned xt = (x[wt] >> bt) & 1, zt = (z[wt] >> bt) & 1;
            signs_[r] ^= (uint8_t)(xc & zt & (xt ^ zc ^ 1));
            x[wt] ^= (uint64_t)xc << bt;
            z[wc] ^= (uint64_t)zt << bc;
        }
    }

    /// Conjugation by a Pauli: flips the sign of every row anticommuting with it.
    void apply_pauli(const PauliString &p) {
        if (p.num_qubits() != n_) {
            throw std::invalid_argument("apply_pauli: size mismatch");
        }
        std::vector<size_t> ws = nonzero_words(p);
        for (size_t r = 0; r < 2 * n_; r++) {
            signs_[r] ^= (uint8_t)anticommutes_row(r, p, ws);
        }
    }
    void apply_pauli(size_t q, Pauli p) {
        check(q);
        if (p == Pauli::I) {
            return;
        }
        pauli_gate(q, pauli_z(p), pauli_x(p));
    }

    /// Measures a Hermitian Pauli observable; returns +1 or -1.
    int measure_pauli(const PauliString &observable, RandomStream &rng) {
        bool random = false;
        return measure_internal(observable, rng, &random) ? -1 : +1;
    }
    int measure(size_t q, Basis basis, RandomStream &rng) {
        check(q);
        return measure_pauli(PauliString::single(n_, q, basis == Basis::Z ? Pauli::Z : Pauli::X), rng);
    }

    /// +1 or -1 when the observable is determined by the state, 0 when its outcome is random.
    int expectation(const PauliString &observable) const {
        if (observable.num_qubits() != n_ || !observable.is_hermitian()) {
            throw std::invalid_argument("expectation: bad observable");
        }
        std::vector<size_t> ws = nonzero_words(observable);
        for (size_t i = n_; i < 2 * n_; i++) {
            if (anticommutes_row(i, observable, ws)) {
                return 0;
            }
        }
        return deterministic_value(observable, ws) ? -1 : +1;
    }

    /// Measures the qubit and flips it back when needed. The measurement outcome is
    /// random, so entangled partners end up in the correct mixture over trajectories.
    void reset(size_t q, Basis basis, RandomStream &rng) {
        check(q);
        PauliString p = PauliString::single(n_, q, basis == Basis::Z ? Pauli::Z : Pauli::X);
        bool random = false;
        if (measure_internal(p, rng, &random)) {
            if (basis == Basis::Z) {
                pauli_gate(q, false, true);
            } else {
                pauli_gate(q, true, false);
            }
        }
    }

    /// Checks the tableau group structure; returns an empty string when it holds.
    std::string audit() const {
        for (size_t a = 0; a < 2 * n_; a++) {
            for (size_t b = a + 1; b < 2 * n_; b++) {
                bool anti = detail::anticommute_words(&xs_[a * w_], &zs_[a * w_], &xs_[b * w_], &zs_[b * w_], w_);
                bool expect = (a < n_ && b == a + n_);
                if (anti != expect) {
                    return "rows " + std::to_string(a) + " and " + std::to_string(b) + " have the wrong commutation relation";
                }
            }
        }
        for (size_t r = 0; r < 2 * n_; r++) {
            if (signs_[r] > 1) {
                return "row " + std::to_string(r) + " has a bad sign";
            }
            if (num_words(n_) * 64 != n_ && w_ > 0) {
                uint64_t tail = ~uint64_t{0} << (n_ & 63);
                if ((xs_[r * w_ + w_ - 1] | zs_[r * w_ + w_ - 1]) & tail) {
                    return "row " + std::to_string(r) + " has bits beyond the last qubit";
                }
            }
        }
        return "";
    }

   private:
    static void set_bit(std::vector<uint64_t> &v, size_t r, size_t q, size_t w) {
        v[r * w + (q >> 6)] |= uint64_t{1} << (q & 63);
    }
    void set_bit(std::vector<uint64_t> &v, size_t r, size_t q) {
        set_bit(v, r, q, w_);
    }
    void check(size_t q) const {
        if (q >= n_) {
            throw std::out_of_range("StabilizerState: qubit index out of range");
        }
    }
    // Conjugation by a single-qubit Pauli: X flips rows with a z bit, Z rows with an x bit.
    void pauli_gate(size_t q, bool flip_if_x, bool flip_if_z) {
        size_t w = q >> 6;
        unsigned b = q & 63;
        for (size_t r = 0; r < 2 * n_; r++) {
            unsigned x = (xs_[r * w_ + w] >> b) & 1, z = (zs_[r * w_ + w] >> b) & 1;
            signs_[r] ^= (uint8_t)((flip_if_x & x) ^ (flip_if_z & z));
        }
    }
    std::vector<size_t> nonzero_words(const PauliString &p) const {
        std::vector<size_t> ws;
        for (size_t w = 0; w < w_; w++) {
            if (p.xs()[w] | p.zs()[w]) {
                ws.push_back(w);
            }
        }
        return ws;
    }
    bool anticommutes_row(size_t r, const PauliString &p, const std::vector<size_t> &ws) const {
        uint64_t acc = 0;
        for (size_t w : ws) {
            acc ^= (xs_[r * w_ + w] & p.zs()[w]) ^ (zs_[r * w_ + w] & p.xs()[w]);
        }
        return (std::popcount(acc) & 1) != 0;
    }
    // row[dst] = row[dst] * row[src]; both Hermitian and commuting.
    void rowmul(size_t dst, size_t src) {
        uint8_t k = detail::mul_words(&xs_[dst * w_], &zs_[dst * w_], &xs_[src * w_], &zs_[src * w_], w_);
        k = (uint8_t)((k + 2 * signs_[dst] + 2 * signs_[src]) & 3);
        if (k & 1) {
            throw std::logic_error("StabilizerState: rowmul produced a non-Hermitian row");
        }
        signs_[dst] = (uint8_t)(k >> 1);
    }
    bool deterministic_value(const PauliString &p, const std::vector<size_t> &ws) const {
        std::vector<uint64_t> x(w_, 0), z(w_, 0);
        uint8_t phase = 0;
        for (size_t i = 0; i < n_; i++) {
            if (anticommutes_row(i, p, ws)) {
                size_t r = n_ + i;
                uint8_t k = detail::mul_words(x.data(), z.data(), &xs_[r * w_], &zs_[r * w_], w_);
                phase = (uint8_t)((phase + k + 2 * signs_[r]) & 3);
            }
        }
        for (size_t w = 0; w < w_; w++) {
            if (x[w] != p.xs()[w] || z[w] != p.zs()[w]) {
                throw std::logic_error("StabilizerState: deterministic observable not in the stabilizer group");
            }
        }
        return ((phase + p.phase()) & 3) == 2;
    }
    // Returns true for outcome -1. When `forced` is given, a random outcome is set to it.
    bool measure_internal(const PauliString &p, RandomStream &rng, bool *was_random, int forced = -1) {
        if (p.num_qubits() != n_) {
            throw std::invalid_argument("measure_pauli: observable size mismatch");
        }
        if (!p.is_hermitian()) {
            throw std::invalid_argument("measure_pauli: observable has an imaginary phase");
        }
        std::vector<size_t> ws = nonzero_words(p);
        size_t pivot = 2 * n_;
        for (size_t i = n_; i < 2 * n_; i++) {
            if (anticommutes_row(i, p, ws)) {
                pivot = i;
                break;
            }
        }
        if (pivot == 2 * n_) {
            *was_random = false;
            return deterministic_value(p, ws);
        }
        *was_random = true;
        for (size_t r = 0; r < 2 * n_; r++) {
            if (r != pivot && r != pivot - n_ && anticommutes_row(r, p, ws)) {
                rowmul(r, pivot);
            }
        }
        size_t d = pivot - n_;
        for (size_t w = 0; w < w_; w++) {
            xs_[d * w_ + w] = xs_[pivot * w_ + w];
            zs_[d * w_ + w] = zs_[pivot * w_ + w];
            xs_[pivot * w_ + w] = p.xs()[w];
            zs_[pivot * w_ + w] = p.zs()[w];
        }
        signs_[d] = signs_[pivot];
        bool outcome = forced >= 0 ? (forced != 0) : coin(rng);
        // Row stores (-1)^sign * P; the observable itself carries p.phase().
        signs_[pivot] = (uint8_t)(outcome ^ p.sign());
        return outcome;
    }

    size_t n_ = 0;
    size_t w_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    std::vector<uint8_t> signs_;
};

}  // namespace qecmit

#endif
