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

#include "qecmit/pauli.hpp"

#include <gtest/gtest.h>

#include "qecmit/rng.hpp"
#include "support/dense_oracle.hpp"

using namespace qecmit;

namespace {

PauliString random_pauli(size_t n, RandomStream &rng) {
    PauliString p(n);
    for (size_t q = 0; q < n; q++) {
        p.set(q, (Pauli)(rng() % 4));
    }
    p.set_phase((uint8_t)(rng() % 4));
    return p;
}

}  // namespace

TEST(pauli, parse_and_print) {
    PauliString p = PauliString::from_str("-XZ_Y");
    EXPECT_EQ(p.num_qubits(), 4u);
    EXPECT_EQ(p.get(0), Pauli::X);
    EXPECT_EQ(p.get(1), Pauli::Z);
    EXPECT_EQ(p.get(2), Pauli::I);
    EXPECT_EQ(p.get(3), Pauli::Y);
    EXPECT_EQ(p.phase(), 2);
    EXPECT_EQ(p.str(), "-XZ_Y");
    EXPECT_EQ(PauliString::from_str("+iXX").str(), "+iXX");
    EXPECT_EQ(PauliString::from_str("ZIZ").str(), "+Z_Z");
    EXPECT_THROW(PauliString::from_str("XQ"), std::invalid_argument);
}

TEST(pauli, y_equals_i_x_z) {
    PauliString x = PauliString::from_str("X");
    PauliString z = PauliString::from_str("Z");
    PauliString y = PauliString::from_str("Y");
    PauliString xz = x * z;
    xz.set_phase((uint8_t)(xz.phase() + 1));
    EXPECT_EQ(xz, y);
    EXPECT_EQ((x * z).str(), "-iY");
    EXPECT_EQ((z * x).str(), "+iY");
    EXPECT_EQ((x * y).str(), "+iZ");
    EXPECT_EQ((y * x).str(), "-iZ");
}

TEST(pauli, single_qubit_products_match_matrices) {
    const char names[4] = {'I', 'X', 'Z', 'Y'};
    for (int a = 0; a < 4; a++) {
        for (int b = 0; b < 4; b++) {
            PauliString pa(1), pb(1);
            pa.set(0, (Pauli)a);
            pb.set(0, (Pauli)b);
            PauliString prod = pa * pb;
            oracle::Mat expect = oracle::single(names[a]) * oracle::single(names[b]);
            EXPECT_LT((oracle::pauli(prod) - expect).norm(), 1e-12) << a << " " << b;
        }
    }
}

TEST(pauli, random_products_match_matrices) {
    RandomStream rng(5);
    for (int trial = 0; trial < 200; trial++) {
        size_t n = 1 + rng() % 4;
        PauliString a = random_pauli(n, rng);
        PauliString b = random_pauli(n, rng);
        oracle::Mat expect = oracle::pauli(a) * oracle::pauli(b);
        EXPECT_LT((oracle::pauli(a * b) - expect).norm(), 1e-9);
        oracle::Mat comm = oracle::pauli(a) * oracle::pauli(b) - oracle::pauli(b) * oracle::pauli(a);
        EXPECT_EQ(a.commutes(b), comm.norm() < 1e-9);
    }
}

TEST(pauli, long_strings_span_words) {
    RandomStream rng(11);
    for (int trial = 0; trial < 50; trial++) {
        size_t n = 60 + rng() % 140;
        PauliString a = random_pauli(n, rng);
        PauliString b = random_pauli(n, rng);
        // Qubit-by-qubit reference for the scalar and the commutation parity.
        int k = a.phase() + b.phase();
        int anti = 0;
        for (size_t q = 0; q < n; q++) {
            PauliString sa(1), sb(1);
            sa.set(0, a.get(q));
            sb.set(0, b.get(q));
            k += (sa * sb).phase();
            anti += !sa.commutes(sb);
        }
        PauliString c = a * b;
        EXPECT_EQ(c.phase(), k & 3);
        EXPECT_EQ(a.commutes(b), anti % 2 == 0);
        for (size_t q = 0; q < n; q++) {
            EXPECT_EQ((uint8_t)c.get(q), (uint8_t)a.get(q) ^ (uint8_t)b.get(q));
        }
    }
}

TEST(pauli, commutation_is_symplectic_parity) {
    PauliString a = PauliString::from_str("XXI");
    PauliString b = PauliString::from_str("ZZI");
    PauliString c = PauliString::from_str("ZIZ");
    EXPECT_TRUE(a.commutes(b));
    EXPECT_FALSE(a.commutes(c));
    EXPECT_THROW(a.commutes(PauliString(2)), std::invalid_argument);
}

TEST(pauli, resize_and_support) {
    PauliString p = PauliString::from_str("X_Z");
    EXPECT_EQ(p.resized(5).str(), "+X_Z__");
    EXPECT_THROW(p.resized(2), std::invalid_argument);
    EXPECT_EQ(p.support(), (std::vector<size_t>{0, 2}));
    EXPECT_EQ(p.weight(), 2u);
}
