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

#include "qecmit/circuit.hpp"

#include <gtest/gtest.h>

#include "qecmit/rng.hpp"

using namespace qecmit;

TEST(circuit, empty_has_no_locations) {
    Circuit c(3);
    EXPECT_TRUE(fault_locations(c).empty());
    EXPECT_FALSE(validate(c).has_value());
}

TEST(circuit, locations_count_operations) {
    Circuit c(3);
    auto &s = c.add_step();
    s.push_back(Operation::make_gate(GateKind::CNOT, 0, 1));
    s.push_back(Operation::make_idle(2));
    auto locs = fault_locations(c);
    ASSERT_EQ(locs.size(), 2u);
    EXPECT_EQ(locs[0].step, 0u);
    EXPECT_EQ(locs[1].index, 1u);
    EXPECT_FALSE(validate(c).has_value());
}

TEST(circuit, validate_reports_double_use) {
    Circuit c(3);
    c.add_step().push_back(Operation::make_idle(0));
    c.add_operation(Operation::make_idle(1));
    c.add_operation(Operation::make_idle(2));
    auto &s = c.add_step();
    s.push_back(Operation::make_gate(GateKind::CNOT, 0, 1));
    s.push_back(Operation::make_gate(GateKind::H, 1));
    s.push_back(Operation::make_idle(2));
    auto v = validate(c);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->step, 1u);
    EXPECT_EQ(v->qubit, 1u);
}

TEST(circuit, validate_reports_uncovered_qubit) {
    Circuit c(3);
    c.add_step().push_back(Operation::make_gate(GateKind::CNOT, 0, 1));
    auto v = validate(c);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->step, 0u);
    EXPECT_EQ(v->qubit, 2u);
    EXPECT_NE(v->message.find("not covered"), std::string::npos);
}

TEST(circuit, validate_reports_duplicate_tag) {
    Circuit c(2);
    auto &s = c.add_step();
    s.push_back(Operation::make_measure(0, Basis::Z, MeasurementTag{1, 4, 0}));
    s.push_back(Operation::make_measure(1, Basis::Z, MeasurementTag{1, 4, 0}));
    auto v = validate(c);
    ASSERT_TRUE(v.has_value());
    EXPECT_NE(v->message.find("duplicate"), std::string::npos);
}

TEST(circuit, text_round_trip) {
    RandomStream rng(3);
    for (int trial = 0; trial < 50; trial++) {
        size_t n = 2 + rng() % 5;
        Circuit c(n);
        size_t steps = rng() % 6;
        uint32_t cycle = 0;
        for (size_t s = 0; s < steps; s++) {
            c.add_step();
            for (uint32_t q = 0; q < n; q++) {
                switch (rng() % 6) {
                    case 0:
                        c.add_operation(Operation::make_gate((GateKind)(rng() % 6), q));
                        break;
                    case 1:
                        c.add_operation(Operation::make_reset(q, coin(rng) ? Basis::X : Basis::Z));
                        break;
                    case 2:
                        c.add_operation(Operation::make_measure(q, Basis::X, MeasurementTag{2, q, cycle++}));
                        break;
                    case 3:
                        c.add_operation(Operation::make_measure(q, Basis::Z));
                        break;
                    case 4:
                        if (q + 1 < n) {
                            c.add_operation(Operation::make_gate(GateKind::CNOT, q, q + 1));
                            q++;
                            break;
                        }
                        [[fallthrough]];
                    default:
                        c.add_operation(Operation::make_idle(q));
                }
            }
        }
        Circuit back = from_text(to_text(c));
        EXPECT_EQ(back, c);
        EXPECT_EQ(to_text(back), to_text(c));
    }
}

TEST(circuit, parses_t_opcode_and_comments) {
    Circuit c = from_text("# test\nQUBITS 2\nSTEP\nH 0\nT(1)\nSTEP\nCNOT(0,1)\n");
    EXPECT_EQ(c.num_steps(), 2u);
    EXPECT_EQ(c.step(0)[1].gate, GateKind::T);
    EXPECT_EQ(c.step(1)[0].q1, 1u);
    EXPECT_THROW(from_text("QUBITS 1\nSTEP\nFOO 0\n"), std::invalid_argument);
    EXPECT_THROW(from_text("STEP\n"), std::invalid_argument);
}
