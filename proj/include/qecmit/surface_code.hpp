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


#ifndef QECMIT_SURFACE_CODE_HPP
#define QECMIT_SURFACE_CODE_HPP

#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecmit/circuit.hpp"
#include "qecmit/pauli.hpp"
#include "qecmit/tableau.hpp"

namespace qecmit {

enum class CodeVariant : uint8_t { S1 = 1, S2 = 2 };
enum class StabilizerType : uint8_t { X, Z };

inline const char *variant_name(CodeVariant v) {
    return v == CodeVariant::S1 ? "S1" : "S2";
}

struct Site {
    int row = 0;
    int col = 0;
    bool operator==(const Site &o) const {
        return row == o.row && col == o.col;
    }
};

/// Neighbour directions used by the CNOT schedule.
enum Direction { North = 0, South = 1, West = 2, East = 3 };

struct Stabilizer {
    StabilizerType type;
    std::string label;
    Site site;
    uint32_t ancilla = 0;
    /// Register index of the data qubit touched in each CNOT round R1..R4, or -1.
    std::array<int32_t, 4> rounds{-1, -1, -1, -1};
    std::vector<uint32_t> data;
    PauliString pauli;
};

/// The (2d-1) x (2d-1) lattice with the register layout shared by S1 and S2:
/// data qubits first (row-major over even-parity sites, so the top row comes first),
/// then one ancilla per lattice stabilizer, then one ancilla per G_i.
class Lattice {
   public:
    explicit Lattice(int d) : d_(d) {
        if (d < 3 || d % 2 == 0) {
            throw std::invalid_argument("surface code distance must be odd and >= 3, got " + std::to_string(d));
        }
        int m = 2 * d - 1;
        index_.assign((size_t)m * m, -1);
        for (int r = 0; r < m; r++) {
            for (int c = 0; c < m; c++) {
                if ((r + c) % 2 == 0) {
                    index_[(size_t)r * m + c] = (int)data_sites_.size();
                    data_sites_.push_back({r, c});
                }
            }
        }
        size_t n_data = data_sites_.size();
        size_t n_lattice_stabs = (size_t)2 * d * (d - 1);
        n_qubits_ = n_data + n_lattice_stabs + (size_t)t();
        for (int r = 0; r < m; r++) {
            for (int c = 0; c < m; c++) {
                if ((r + c) % 2 == 1) {
                    add_lattice_stabilizer({r, c});
                }
            }
        }
        for (int i = 1; i <= t(); i++) {
            Stabilizer g;
            g.type = StabilizerType::Z;
            g.label = "G" + std::to_string(i);
            g.site = {-1, 4 * i - 1};
            g.ancilla = (uint32_t)stabs_.size() + (uint32_t)n_data;
            // Weight-2 schedule in R3/R4, where both top-row qubits are free in S2.
            g.rounds[2] = data_at(0, 4 * i - 2);
            g.rounds[3] = data_at(0, 4 * i);
            finish(g);
            g_ids_.push_back((uint32_t)stabs_.size());
            stabs_.push_back(g);
        }
        for (int i = 1; i <= t(); i++) {
            f_ids_.push_back(stabilizer_at({0, 4 * i - 3}));
        }
    }

    int d() const {
        return d_;
    }
    int t() const {
        return (d_ - 1) / 2;
    }
    size_t num_qubits() const {
        return n_qubits_;
    }
    size_t num_data() const {
        return data_sites_.size();
    }
    const std::vector<Site> &data_sites() const {
        return data_sites_;
    }
    const std::vector<Stabilizer> &stabilizers() const {
        return stabs_;
    }
    const Stabilizer &stabilizer(size_t id) const {
        return stabs_.at(id);
    }
    const std::vector<uint32_t> &g_ids() const {
        return g_ids_;
    }
    const std::vector<uint32_t> &f_ids() const {
        return f_ids_;
    }
    /// Register index of the data qubit at (r, c), or -1.
    int32_t data_at(int r, int c) const {
        int m = 2 * d_ - 1;
        if (r < 0 || c < 0 || r >= m || c >= m) {
            return -1;
        }
        return index_[(size_t)r * m + c];
    }
    /// Top-boundary data qubit k (1-based, left to right).
    uint32_t top_qubit(int k) const {
        return (uint32_t)data_at(0, 2 * (k - 1));
    }
    uint32_t stabilizer_at(Site s) const {
        for (size_t i = 0; i < stabs_.size(); i++) {
            if (stabs_[i].site == s) {
                return (uint32_t)i;
            }
        }
        throw std::out_of_range("no stabilizer at site");
    }

   private:
    void add_lattice_stabilizer(Site s) {
        Stabilizer st;
        st.site = s;
        st.type = (s.row % 2 == 0) ? StabilizerType::X : StabilizerType::Z;
        st.label = std::string(st.type == StabilizerType::X ? "X" : "Z") + "(" + std::to_string(s.row) + "," +
                   std::to_string(s.col) + ")";
        st.ancilla = (uint32_t)(data_sites_.size() + stabs_.size());
        int32_t nb[4] = {data_at(s.row - 1, s.col), data_at(s.row + 1, s.col), data_at(s.row, s.col - 1),
                         data_at(s.row, s.col + 1)};
        // X ancillas visit N, W, E, S; Z ancillas visit N, E, W, S.
        static const int x_order[4] = {North, West, East, South};
        static const int z_order[4] = {North, East, West, South};
        const int *order = st.type == StabilizerType::X ? x_order : z_order;
        for (int k = 0; k < 4; k++) {
            st.rounds[k] = nb[order[k]];
        }
        finish(st);
        stabs_.push_back(st);
    }
    void finish(Stabilizer &st) const {
        st.pauli = PauliString(n_qubits_);
        for (int32_t q : st.rounds) {
            if (q >= 0) {
                st.data.push_back((uint32_t)q);
                st.pauli.set((size_t)q, st.type == StabilizerType::X ? Pauli::X : Pauli::Z);
            }
        }
    }

    int d_;
    size_t n_qubits_ = 0;
    std::vector<int32_t> index_;
    std::vector<Site> data_sites_;
    std::vector<Stabilizer> stabs_;
    std::vector<uint32_t> g_ids_;
    std::vector<uint32_t> f_ids_;
};

/// One of the two codes on a shared lattice. Stabilizer ids index Lattice::stabilizers().
struct CodeSpec {
    CodeVariant variant = CodeVariant::S1;
    std::shared_ptr<const Lattice> lattice;
    std::vector<uint32_t> active;
    std::vector<uint32_t> x_ids;
    std::vector<uint32_t> z_ids;
    PauliString logical_x;
    PauliString logical_z;

    int d() const {
        return lattice->d();
    }
    int t() const {
        return lattice->t();
    }
    size_t num_qubits() const {
        return lattice->num_qubits();
    }
    uint32_t q_loc() const {
        return lattice->top_qubit(1);
    }
    bool is_active(uint32_t id) const {
        for (uint32_t a : active) {
            if (a == id) {
                return true;
            }
        }
        return false;
    }
    const PauliString &stabilizer(uint32_t id) const {
        return lattice->stabilizer(id).pauli;
    }
    std::vector<PauliString> x_stabilizers() const {
        std::vector<PauliString> out;
        for (uint32_t id : x_ids) {
            out.push_back(stabilizer(id));
        }
        return out;
    }
    std::vector<PauliString> z_stabilizers() const {
        std::vector<PauliString> out;
        for (uint32_t id : z_ids) {
            out.push_back(stabilizer(id));
        }
        return out;
    }
    /// Z_bar times all G_i; equals Z on q_loc in S2.
    PauliString local_logical_z() const {
        PauliString p = logical_z;
        for (uint32_t g : lattice->g_ids()) {
            p *= lattice->stabilizer(g).pauli;
        }
        return p;
    }
};

inline CodeSpec build_code(std::shared_ptr<const Lattice> lattice, CodeVariant variant) {
    CodeSpec spec;
    spec.variant = variant;
    spec.lattice = lattice;
    const auto &g = lattice->g_ids();
    const auto &f = lattice->f_ids();
    auto contains = [](const std::vector<uint32_t> &v, uint32_t x) {
        for (uint32_t y : v) {
            if (y == x) {
                return true;
            }
        }
        return false;
    };
    for (uint32_t id = 0; id < lattice->stabilizers().size(); id++) {
        bool on = variant == CodeVariant::S1 ? !contains(g, id) : !contains(f, id);
        if (!on) {
            continue;
        }
        spec.active.push_back(id);
        if (lattice->stabilizer(id).type == StabilizerType::X) {
            spec.x_ids.push_back(id);
        } else {
            spec.z_ids.push_back(id);
        }
    }
    int d = lattice->d();
    spec.logical_z = PauliString(lattice->num_qubits());
    spec.logical_x = PauliString(lattice->num_qubits());
    for (int k = 0; k < d; k++) {
        spec.logical_z.set((size_t)lattice->data_at(0, 2 * k), Pauli::Z);
        spec.logical_x.set((size_t)lattice->data_at(2 * k, 0), Pauli::X);
    }
    return spec;
}

inline CodeSpec build_code(int d, CodeVariant variant) {
    return build_code(std::make_shared<const Lattice>(d), variant);
}

/// Depth-6 syndrome extraction cycle: reset round, CNOT rounds R1..R4, measurement round.
/// Qubits of inactive stabilizers idle throughout. Measurements are tagged
/// (variant, stabilizer id, cycle).
inline Circuit syndrome_cycle(const CodeSpec &spec, uint32_t cycle) {
    const Lattice &lat = *spec.lattice;
    size_t n = lat.num_qubits();
    Circuit c(n);
    auto fill_idles = [&](std::vector<Operation> &step, std::vector<char> &busy) {
        for (uint32_t q = 0; q < n; q++) {
            if (!busy[q]) {
                step.push_back(Operation::make_idle(q));
            }
        }
    };
    {
        auto &step = c.add_step();
        std::vector<char> busy(n, 0);
        for (uint32_t id : spec.active) {
            const Stabilizer &s = lat.stabilizer(id);
            step.push_back(Operation::make_reset(s.ancilla, s.type == StabilizerType::X ? Basis::X : Basis::Z));
            busy[s.ancilla] = 1;
        }
        fill_idles(step, busy);
    }
    for (int round = 0; round < 4; round++) {
        auto &step = c.add_step();
        std::vector<char> busy(n, 0);
        for (uint32_t id : spec.active) {
            const Stabilizer &s = lat.stabilizer(id);
            int32_t q = s.rounds[round];
            if (q < 0) {
                continue;
            }
            if (s.type == StabilizerType::X) {
                step.push_back(Operation::make_gate(GateKind::CNOT, s.ancilla, (uint32_t)q));
            } else {
                step.push_back(Operation::make_gate(GateKind::CNOT, (uint32_t)q, s.ancilla));
            }
            busy[s.ancilla] = 1;
            busy[q] = 1;
        }
        fill_idles(step, busy);
    }
    {
        auto &step = c.add_step();
        std::vector<char> busy(n, 0);
        for (uint32_t id : spec.active) {
            const Stabilizer &s = lat.stabilizer(id);
            step.push_back(Operation::make_measure(s.ancilla, s.type == StabilizerType::X ? Basis::X : Basis::Z,
                                                   MeasurementTag{(uint32_t)spec.variant, id, cycle}));
            busy[s.ancilla] = 1;
        }
        fill_idles(step, busy);
    }
    return c;
}

enum class LogicalBasisState { zero, one, plus };

/// Noiseless encoded state of an S1 code with all stabilizers +1 and ancillas in |0>.
/// `extra_qubits` trailing qubits are appended in |0>.
inline StabilizerState encode_logical(const CodeSpec &spec, LogicalBasisState b, size_t extra_qubits = 0) {
    if (spec.variant != CodeVariant::S1) {
        throw std::invalid_argument("encode_logical: expects the S1 code");
    }
    size_t n = spec.num_qubits() + extra_qubits;
    std::vector<PauliString> gens;
    for (uint32_t id : spec.active) {
        gens.push_back(spec.stabilizer(id).resized(n));
    }
    PauliString logical = (b == LogicalBasisState::plus ? spec.logical_x : spec.logical_z).resized(n);
    if (b == LogicalBasisState::one) {
        logical.set_phase(2);
    }
    gens.push_back(logical);
    for (size_t q = spec.lattice->num_data(); q < n; q++) {
        gens.push_back(PauliString::single(n, q, Pauli::Z));
    }
    return StabilizerState::from_generators(n, gens);
}

/// Human-readable listing of a code, restricted to data qubits.
inline std::string describe_code(const CodeSpec &spec) {
    const Lattice &lat = *spec.lattice;
    size_t nd = lat.num_data();
    auto data_part = [&](const PauliString &p) {
        std::string s = p.str();
        return s.substr(0, 1) + s.substr(1, nd);
    };
    std::string out;
    out += "# code " + std::string(variant_name(spec.variant)) + " d=" + std::to_string(spec.d()) + "\n";
    out += "data_qubits " + std::to_string(nd) + "\n";
    for (size_t q = 0; q < nd; q++) {
        out += "qubit " + std::to_string(q) + " (" + std::to_string(lat.data_sites()[q].row) + "," +
               std::to_string(lat.data_sites()[q].col) + ")\n";
    }
    for (uint32_t id : spec.active) {
        const Stabilizer &s = lat.stabilizer(id);
        std::string name = s.label;
        for (size_t i = 0; i < lat.f_ids().size(); i++) {
            if (lat.f_ids()[i] == id) {
                name += "=F" + std::to_string(i + 1);
            }
        }
        out += std::string(s.type == StabilizerType::X ? "x_stabilizer " : "z_stabilizer ") + name + " " +
               data_part(s.pauli) + "\n";
    }
    out += "logical_x " + data_part(spec.logical_x) + "\n";
    out += "logical_z " + data_part(spec.logical_z) + "\n";
    return out;
}

}  // namespace qecmit

#endif
