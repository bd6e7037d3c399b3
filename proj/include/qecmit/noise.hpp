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


#ifndef QECMIT_NOISE_HPP
#define QECMIT_NOISE_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "qecmit/circuit.hpp"
#include "qecmit/pauli.hpp"
#include "qecmit/rng.hpp"
#include "qecmit/tableau.hpp"

namespace qecmit {

struct NoiseParams {
    double epsilon = 0;
    /// Draw faulty CNOT Paulis from all 16 two-qubit Paulis instead of the 15 non-identity ones.
    bool cnot_includes_identity = false;

    void validate() const {
        if (!(epsilon >= 0 && epsilon <= 1)) {
            throw std::invalid_argument("epsilon must lie in [0, 1]");
        }
    }
};

/// Location ids are positions in fault_locations(circuit). offsets[s] is the id of the
/// first operation of step s; offsets.back() is the total.
inline std::vector<uint32_t> location_offsets(const Circuit &c) {
    std::vector<uint32_t> off(c.num_steps() + 1, 0);
    for (size_t s = 0; s < c.num_steps(); s++) {
        off[s + 1] = off[s] + (uint32_t)c.step(s).size();
    }
    return off;
}

/// Pauli error after a gate or idle. `p1` is used only for CNOT (second qubit).
struct Fault {
    uint32_t location = 0;
    Pauli p0 = Pauli::I;
    Pauli p1 = Pauli::I;
};

struct FaultyCircuit {
    const Circuit *base = nullptr;
    std::vector<Fault> inserted_faults;
    std::vector<uint32_t> flipped_measurements;
    std::vector<uint32_t> flipped_resets;

    size_t num_faults() const {
        return inserted_faults.size() + flipped_measurements.size() + flipped_resets.size();
    }
    /// Merges faults from another sample of the same base circuit.
    void merge(const FaultyCircuit &other) {
        auto cat = [](auto &a, const auto &b, auto key) {
            a.insert(a.end(), b.begin(), b.end());
            std::sort(a.begin(), a.end(), [&](const auto &x, const auto &y) { return key(x) < key(y); });
        };
        cat(inserted_faults, other.inserted_faults, [](const Fault &f) { return f.location; });
        cat(flipped_measurements, other.flipped_measurements, [](uint32_t x) { return x; });
        cat(flipped_resets, other.flipped_resets, [](uint32_t x) { return x; });
    }
};

/// Full-register Pauli of a fault on `op`.
inline PauliString fault_pauli(size_t n, const Operation &op, const Fault &f) {
    PauliString p(n);
    p.set(op.q0, f.p0);
    if (op.arity() == 2) {
        p.set(op.q1, f.p1);
    }
    return p;
}

/// Records the fault drawn for a faulty location `loc` holding operation `op`.
inline void draw_fault(FaultyCircuit &out, uint32_t loc, const Operation &op, const NoiseParams &params, RandomStream &rng) {
    switch (op.kind) {
        case OpKind::measure:
            out.flipped_measurements.push_back(loc);
            return;
        case OpKind::reset:
            out.flipped_resets.push_back(loc);
            return;
        default:
            break;
    }
    Fault f;
    f.location = loc;
    if (op.arity() == 2) {
        uint32_t k = params.cnot_includes_identity ? (uint32_t)(rng() % 16) : 1 + (uint32_t)(rng() % 15);
        f.p0 = (Pauli)(k & 3);
        f.p1 = (Pauli)(k >> 2);
    } else {
        f.p0 = (Pauli)(1 + rng() % 3);
    }
    out.inserted_faults.push_back(f);
}

/// Each location in steps [step_begin, step_end) is faulty independently with
/// probability epsilon.
inline FaultyCircuit sample_faults(const Circuit &circuit, const NoiseParams &params, RandomStream &rng, size_t step_begin = 0,
                                   size_t step_end = std::numeric_limits<size_t>::max()) {
    params.validate();
    FaultyCircuit out;
    out.base = &circuit;
    step_end = std::min(step_end, circuit.num_steps());
    if (params.epsilon <= 0 || step_begin >= step_end) {
        return out;
    }
    std::vector<uint32_t> off = location_offsets(circuit);
    uint64_t begin = off[step_begin];
    uint64_t end = off[step_end];
    size_t step = step_begin;
    auto op_at = [&](uint64_t loc) -> const Operation & {
        while (off[step + 1] <= loc) {
            step++;
        }
        return circuit.step(step)[loc - off[step]];
    };
    if (params.epsilon >= 1) {
        for (uint64_t loc = begin; loc < end; loc++) {
            draw_fault(out, (uint32_t)loc, op_at(loc), params, rng);
        }
        return out;
    }
    // Gaps between faulty locations are geometric.
    std::geometric_distribution<uint64_t> gap(params.epsilon);
    uint64_t loc = begin + gap(rng);
    while (loc < end) {
        draw_fault(out, (uint32_t)loc, op_at(loc), params, rng);
        loc += 1 + gap(rng);
    }
    return out;
}

struct MeasurementResult {
    uint32_t location = 0;
    std::optional<MeasurementTag> tag;
    /// true for outcome -1
    bool outcome = false;
};

using MeasurementRecord = std::vector<MeasurementResult>;

/// Runs steps [step_begin, step_end) of the faulty circuit on `state`, appending
/// measurement results to `record`. The state may carry extra trailing qubits that
/// the circuit does not touch.
inline void execute(const FaultyCircuit &faulty, StabilizerState &state, RandomStream &rng, MeasurementRecord &record,
                    size_t step_begin = 0, size_t step_end = std::numeric_limits<size_t>::max()) {
    const Circuit &c = *faulty.base;
    if (state.num_qubits() < c.num_qubits()) {
        throw std::invalid_argument("execute: state has fewer qubits than the circuit");
    }
    step_end = std::min(step_end, c.num_steps());
    std::vector<uint32_t> off = location_offsets(c);
    auto first_at = [](const auto &v, uint32_t loc, auto key) {
        return (size_t)(std::lower_bound(v.begin(), v.end(), loc, [&](const auto &x, uint32_t l) { return key(x) < l; }) - v.begin());
    };
    uint32_t begin_loc = step_begin < c.num_steps() ? off[step_begin] : off.back();
    size_t fi = first_at(faulty.inserted_faults, begin_loc, [](const Fault &f) { return f.location; });
    size_t mi = first_at(faulty.flipped_measurements, begin_loc, [](uint32_t x) { return x; });
    size_t ri = first_at(faulty.flipped_resets, begin_loc, [](uint32_t x) { return x; });
    for (size_t s = step_begin; s < step_end; s++) {
        const auto &ops = c.step(s);
        for (size_t i = 0; i < ops.size(); i++) {
            uint32_t loc = off[s] + (uint32_t)i;
            const Operation &op = ops[i];
            switch (op.kind) {
                case OpKind::gate:
                    state.apply_gate(CliffordGate{op.gate, op.q0, op.q1});
                    break;
                case OpKind::reset:
                    state.reset(op.q0, op.basis, rng);
                    if (ri < faulty.flipped_resets.size() && faulty.flipped_resets[ri] == loc) {
                        state.apply_pauli(op.q0, op.basis == Basis::Z ? Pauli::X : Pauli::Z);
                        ri++;
                    }
                    break;
                case OpKind::measure: {
                    MeasurementResult m;
                    m.location = loc;
                    m.tag = op.tag;
                    m.outcome = state.measure(op.q0, op.basis, rng) < 0;
                    if (mi < faulty.flipped_measurements.size() && faulty.flipped_measurements[mi] == loc) {
                        m.outcome = !m.outcome;
                        mi++;
                    }
                    record.push_back(m);
                    break;
                }
                case OpKind::idle:
                    break;
            }
            while (fi < faulty.inserted_faults.size() && faulty.inserted_faults[fi].location == loc) {
                const Fault &f = faulty.inserted_faults[fi];
                state.apply_pauli(op.q0, f.p0);
                if (op.arity() == 2) {
                    state.apply_pauli(op.q1, f.p1);
                }
                fi++;
            }
        }
    }
}

inline MeasurementRecord execute(const FaultyCircuit &faulty, StabilizerState &state, RandomStream &rng) {
    MeasurementRecord record;
    execute(faulty, state, rng, record);
    return record;
}

}  // namespace qecmit

#endif
