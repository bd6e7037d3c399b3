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
#include "qecmit/surface_code.hpp"

#include <gtest/gtest.h>

#include "qecmit/rng.hpp"

using namespace qecmit;

namespace {

std::vector<PauliString> all_stabilizers(const CodeSpec &spec) {
    std::vector<PauliString> out;
    for (uint32_t id : spec.active) {
        out.push_back(spec.stabilizer(id));
    }
    return out;
}

// Runs the cycle on a tableau without noise and returns outcomes keyed by stabilizer id.
std::map<uint32_t, int> run_cycle(const Circuit &c, StabilizerState &s, RandomStream &rng) {
    std::map<uint32_t, int> out;
    for (const auto &step : c.steps()) {
        for (const Operation &op : step) {
            switch (op.kind) {
                case OpKind::gate:
                    s.apply_gate({op.gate, op.q0, op.q1});
                    break;
                case OpKind::reset:
                    s.reset(op.q0, op.basis, rng);
                    break;
                case OpKind::measure:
                    out[op.tag->stabilizer] = s.measure(op.q0, op.basis, rng);
                    break;
                case OpKind::idle:
                    break;
            }
        }
    }
    return out;
}

}  // namespace

TEST(surface_code, rejects_bad_distance) {
    EXPECT_THROW(Lattice(4), std::invalid_argument);
    EXPECT_THROW(Lattice(1), std::invalid_argument);
}

TEST(surface_code, d3_counts) {
    CodeSpec s1 = build_code(3, CodeVariant::S1);
    EXPECT_EQ(s1.lattice->num_data(), 13u);
    EXPECT_EQ(s1.x_ids.size(), 6u);
    EXPECT_EQ(s1.z_ids.size(), 6u);
    CodeSpec s2 = build_code(3, CodeVariant::S2);
    EXPECT_EQ(s2.x_ids.size(), 5u);
    EXPECT_EQ(s2.z_ids.size(), 7u);
    // G1 = Z2 Z3 on the top boundary, F1 the X check touching qubits 1, 2.
    const Lattice &lat = *s2.lattice;
    PauliString g1 = lat.stabilizer(lat.g_ids()[0]).pauli;
    EXPECT_EQ(g1.support(), (std::vector<size_t>{lat.top_qubit(2), lat.top_qubit(3)}));
    PauliString f1 = lat.stabilizer(lat.f_ids()[0]).pauli;
    EXPECT_TRUE(f1.x(lat.top_qubit(1)));
    EXPECT_TRUE(f1.x(lat.top_qubit(2)));
    EXPECT_TRUE(f1.x((size_t)lat.data_at(1, 1)));
    EXPECT_EQ(f1.weight(), 3u);
    EXPECT_FALSE(s2.is_active(lat.f_ids()[0]));
    EXPECT_TRUE(s2.is_active(lat.g_ids()[0]));
}

TEST(surface_code, group_audit) {
    for (int d : {3, 5, 7}) {
        for (CodeVariant v : {CodeVariant::S1, CodeVariant::S2}) {
            CodeSpec spec = build_code(d, v);
            const Lattice &lat = *spec.lattice;
            int t = (d - 1) / 2;
            EXPECT_EQ(lat.num_data(), (size_t)(d * d + (d - 1) * (d - 1)));
            size_t base = (size_t)d * (d - 1);
            EXPECT_EQ(spec.x_ids.size(), v == CodeVariant::S1 ? base : base - t);
            EXPECT_EQ(spec.z_ids.size(), v == CodeVariant::S1 ? base : base + t);
            auto stabs = all_stabilizers(spec);
            for (size_t a = 0; a < stabs.size(); a++) {
                for (size_t b = a + 1; b < stabs.size(); b++) {
                    EXPECT_TRUE(stabs[a].commutes(stabs[b]));
                }
                EXPECT_TRUE(stabs[a].commutes(spec.logical_x));
                EXPECT_TRUE(stabs[a].commutes(spec.logical_z));
            }
            EXPECT_FALSE(spec.logical_x.commutes(spec.logical_z));
            // The removed X checks are exactly those anticommuting with some G_i.
            CodeSpec s1 = build_code(spec.lattice, CodeVariant::S1);
            for (uint32_t id : s1.x_ids) {
                bool anti = false;
                for (uint32_t g : lat.g_ids()) {
                    anti |= !lat.stabilizer(g).pauli.commutes(lat.stabilizer(id).pauli);
                }
                bool removed = std::find(lat.f_ids().begin(), lat.f_ids().end(), id) != lat.f_ids().end();
                EXPECT_EQ(anti, removed);
            }
            for (int i = 1; i <= t; i++) {
                const PauliString &f = lat.stabilizer(lat.f_ids()[i - 1]).pauli;
                EXPECT_EQ(f.weight(), 3u);
                EXPECT_TRUE(f.x(lat.top_qubit(2 * i - 1)));
                EXPECT_TRUE(f.x(lat.top_qubit(2 * i)));
                EXPECT_TRUE(f.x((size_t)lat.data_at(1, 4 * i - 3)));
            }
        }
    }
}

TEST(surface_code, local_logical_z_is_single_qubit) {
    for (int d : {3, 5, 7, 9}) {
        CodeSpec s2 = build_code(d, CodeVariant::S2);
        PauliString zl = s2.local_logical_z();
        EXPECT_EQ(zl.support(), (std::vector<size_t>{s2.q_loc()}));
        EXPECT_EQ(zl.get(s2.q_loc()), Pauli::Z);
        EXPECT_EQ(zl.phase(), 0);
    }
}

TEST(surface_code, cycle_is_valid_and_counts_match) {
    for (int d : {3, 5}) {
        for (CodeVariant v : {CodeVariant::S1, CodeVariant::S2}) {
            CodeSpec spec = build_code(d, v);
            Circuit c = syndrome_cycle(spec, 0);
            EXPECT_FALSE(validate(c).has_value());
            EXPECT_EQ(c.num_steps(), 6u);
            size_t weights = 0;
            for (uint32_t id : spec.active) {
                weights += spec.stabilizer(id).weight();
            }
            size_t n = spec.num_qubits();
            size_t active = spec.active.size();
            EXPECT_EQ(c.count_gate(GateKind::CNOT), weights);
            EXPECT_EQ(c.count(OpKind::reset), active);
            EXPECT_EQ(c.count(OpKind::measure), active);
            // Every step covers every qubit once; a CNOT covers two.
            size_t idles = 6 * n - 2 * weights - 2 * active;
            EXPECT_EQ(c.count(OpKind::idle), idles);
            EXPECT_EQ(fault_locations(c).size(), weights + 2 * active + idles);
        }
    }
}

TEST(surface_code, encoded_states) {
    RandomStream rng(1);
    CodeSpec spec = build_code(3, CodeVariant::S1);
    StabilizerState zero = encode_logical(spec, LogicalBasisState::zero);
    StabilizerState one = encode_logical(spec, LogicalBasisState::one);
    StabilizerState plus = encode_logical(spec, LogicalBasisState::plus);
    EXPECT_EQ(zero.expectation(spec.logical_z), +1);
    EXPECT_EQ(one.expectation(spec.logical_z), -1);
    EXPECT_EQ(plus.expectation(spec.logical_x), +1);
    EXPECT_EQ(plus.expectation(spec.logical_z), 0);
    for (const StabilizerState *s : {&zero, &one, &plus}) {
        for (uint32_t id : spec.active) {
            EXPECT_EQ(s->expectation(spec.stabilizer(id)), +1);
        }
        EXPECT_EQ(s->audit(), "");
    }
    EXPECT_THROW(encode_logical(build_code(3, CodeVariant::S2), LogicalBasisState::zero), std::invalid_argument);
}

TEST(surface_code, noiseless_cycles_are_trivial) {
    RandomStream rng(2);
    for (int d : {3, 5}) {
        CodeSpec spec = build_code(d, CodeVariant::S1);
        for (LogicalBasisState b : {LogicalBasisState::zero, LogicalBasisState::one, LogicalBasisState::plus}) {
            StabilizerState s = encode_logical(spec, b);
            for (uint32_t k = 0; k < 4; k++) {
                auto out = run_cycle(syndrome_cycle(spec, k), s, rng);
                EXPECT_EQ(out.size(), spec.active.size());
                for (auto [id, v] : out) {
                    EXPECT_EQ(v, +1) << "d=" << d << " stabilizer " << id << " cycle " << k;
                }
            }
            if (b == LogicalBasisState::zero) {
                EXPECT_EQ(s.expectation(spec.logical_z), +1);
            }
            if (b == LogicalBasisState::plus) {
                EXPECT_EQ(s.expectation(spec.logical_x), +1);
            }
        }
    }
}

TEST(surface_code, s2_cycle_on_s1_state) {
    CodeSpec s1 = build_code(3, CodeVariant::S1);
    CodeSpec s2 = build_code(s1.lattice, CodeVariant::S2);
    uint32_t g1 = s1.lattice->g_ids()[0];
    int minus = 0;
    const int shots = 400;
    RandomStream rng(3);
    for (int k = 0; k < shots; k++) {
        StabilizerState s = encode_logical(s1, LogicalBasisState::zero);
        auto first = run_cycle(syndrome_cycle(s2, 0), s, rng);
        for (auto [id, v] : first) {
            if (id != g1) {
                EXPECT_EQ(v, +1);
            }
        }
        minus += first[g1] < 0;
        for (uint32_t c = 1; c < 3; c++) {
            auto again = run_cycle(syndrome_cycle(s2, c), s, rng);
            EXPECT_EQ(again[g1], first[g1]);
            for (auto [id, v] : again) {
                if (id != g1) {
                    EXPECT_EQ(v, +1);
                }
            }
        }
    }
    EXPECT_NEAR(minus, shots / 2, 4 * std::sqrt(shots / 4.0));
}

TEST(surface_code, s2_noiseless_cycles_keep_all_syndromes) {
    // Every cycle of S2 after the first reproduces the first cycle's values.
    RandomStream rng(4);
    for (int d : {5, 7}) {
        CodeSpec s1 = build_code(d, CodeVariant::S1);
        CodeSpec s2 = build_code(s1.lattice, CodeVariant::S2);
        StabilizerState s = encode_logical(s1, LogicalBasisState::plus);
        auto first = run_cycle(syndrome_cycle(s2, 0), s, rng);
        for (uint32_t c = 1; c < 3; c++) {
            EXPECT_EQ(run_cycle(syndrome_cycle(s2, c), s, rng), first);
        }
        auto back = run_cycle(syndrome_cycle(s1, 3), s, rng);
        for (uint32_t c = 4; c < 6; c++) {
            EXPECT_EQ(run_cycle(syndrome_cycle(s1, c), s, rng), back);
        }
    }
}

TEST(surface_code, describe_lists_everything) {
    CodeSpec s2 = build_code(3, CodeVariant::S2);
    std::string text = describe_code(s2);
    EXPECT_NE(text.find("z_stabilizer G1 +_ZZ__________"), std::string::npos) << text;
    EXPECT_NE(text.find("logical_z +ZZZ__________"), std::string::npos);
    EXPECT_EQ(text.find("=F1"), std::string::npos);
    EXPECT_NE(describe_code(build_code(3, CodeVariant::S1)).find("=F1"), std::string::npos);
}
