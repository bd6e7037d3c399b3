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

#ifndef QECMIT_CIRCUIT_HPP
#define QECMIT_CIRCUIT_HPP

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "qecmit/tableau.hpp"

namespace qecmit {

enum class OpKind : uint8_t { gate, reset, measure, idle };

/// Identifies which stabilizer a measurement belongs to: code id, stabilizer id, cycle.
struct MeasurementTag {
    uint32_t code = 0;
    uint32_t stabilizer = 0;
    uint32_t cycle = 0;

    bool operator==(const MeasurementTag &o) const {
        return code == o.code && stabilizer == o.stabilizer && cycle == o.cycle;
    }
};

struct Operation {
    OpKind kind = OpKind::idle;
    GateKind gate = GateKind::H;
    Basis basis = Basis::Z;
    uint32_t q0 = 0;
    uint32_t q1 = 0;
    std::optional<MeasurementTag> tag;

    static Operation make_gate(GateKind g, uint32_t a, uint32_t b = 0) {
        Operation op;
        op.kind = OpKind::gate;
        op.gate = g;
        op.q0 = a;
        op.q1 = b;
        return op;
    }
    static Operation make_reset(uint32_t q, Basis basis) {
        Operation op;
        op.kind = OpKind::reset;
        op.basis = basis;
        op.q0 = q;
        return op;
    }
    static Operation make_measure(uint32_t q, Basis basis, std::optional<MeasurementTag> tag = std::nullopt) {
        Operation op;
        op.kind = OpKind::measure;
        op.basis = basis;
        op.q0 = q;
        op.tag = tag;
        return op;
    }
    static Operation make_idle(uint32_t q) {
        Operation op;
        op.kind = OpKind::idle;
        op.q0 = q;
        return op;
    }

    size_t arity() const {
        return (kind == OpKind::gate && gate == GateKind::CNOT) ? 2 : 1;
    }
    bool operator==(const Operation &o) const {
        if (kind != o.kind || q0 != o.q0 || tag != o.tag) {
            return false;
        }
        if (kind == OpKind::gate) {
            return gate == o.gate && (arity() == 1 || q1 == o.q1);
        }
        if (kind == OpKind::reset || kind == OpKind::measure) {
            return basis == o.basis;
        }
        return true;
    }
};

class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(size_t n) : n_(n) {
    }

    size_t num_qubits() const {
        return n_;
    }
    size_t num_steps() const {
        return steps_.size();
    }
    const std::vector<std::vector<Operation>> &steps() const {
        return steps_;
    }
    const std::vector<Operation> &step(size_t s) const {
        return steps_.at(s);
    }
    std::vector<Operation> &add_step() {
        steps_.emplace_back();
        return steps_.back();
    }
    /// Appends to the last step.
    void add_operation(const Operation &op) {
        if (steps_.empty()) {
            throw std::logic_error("Circuit::add_operation: no step");
        }
        steps_.back().push_back(op);
    }
    void append(const Circuit &other) {
        if (other.n_ != n_) {
            throw std::invalid_argument("Circuit::append: qubit count mismatch");
        }
        steps_.insert(steps_.end(), other.steps_.begin(), other.steps_.end());
    }
    size_t num_operations() const {
        size_t k = 0;
        for (const auto &s : steps_) {
            k += s.size();
        }
        return k;
    }
    size_t count(OpKind kind) const {
        size_t k = 0;
        for (const auto &s : steps_) {
            for (const auto &op : s) {
                k += op.kind == kind;
            }
        }
        return k;
    }
    size_t count_gate(GateKind g) const {
        size_t k = 0;
        for (const auto &s : steps_) {
            for (const auto &op : s) {
                k += op.kind == OpKind::gate && op.gate == g;
            }
        }
        return k;
    }
    bool operator==(const Circuit &o) const {
        return n_ == o.n_ && steps_ == o.steps_;
    }

   private:
    size_t n_ = 0;
    std::vector<std::vector<Operation>> steps_;
};

struct Location {
    uint32_t step = 0;
    uint32_t index = 0;
};

/// Every operation of the circuit exactly once, in step order then in-step order.
inline std::vector<Location> fault_locations(const Circuit &c) {
    std::vector<Location> out;
    out.reserve(c.num_operations());
    for (size_t s = 0; s < c.num_steps(); s++) {
        for (size_t i = 0; i < c.step(s).size(); i++) {
            out.push_back(Location{(uint32_t)s, (uint32_t)i});
        }
    }
    return out;
}

struct Violation {
    size_t step = 0;
    uint32_t qubit = 0;
    std::string message;
};

/// Checks step coverage and tag uniqueness. Returns the first violation found.
inline std::optional<Violation> validate(const Circuit &c) {
    std::set<std::tuple<uint32_t, uint32_t, uint32_t>> tags;
    for (size_t s = 0; s < c.num_steps(); s++) {
        std::vector<int> seen(c.num_qubits(), 0);
        for (const Operation &op : c.step(s)) {
            uint32_t qs[2] = {op.q0, op.q1};
            for (size_t k = 0; k < op.arity(); k++) {
                if (qs[k] >= c.num_qubits()) {
                    return Violation{s, qs[k], "qubit " + std::to_string(qs[k]) + " out of range"};
                }
                if (seen[qs[k]]++) {
                    return Violation{s, qs[k], "qubit " + std::to_string(qs[k]) + " used twice in step " + std::to_string(s)};
                }
            }
            if (op.arity() == 2 && op.q0 == op.q1) {
                return Violation{s, op.q0, "two-qubit gate on a single qubit"};
            }
            if (op.tag.has_value()) {
                if (op.kind != OpKind::measure) {
                    return Violation{s, op.q0, "tag on a non-measurement"};
                }
                auto key = std::make_tuple(op.tag->code, op.tag->stabilizer, op.tag->cycle);
                if (!tags.insert(key).second) {
                    return Violation{s, op.q0, "duplicate measurement tag"};
                }
            }
        }
        for (uint32_t q = 0; q < c.num_qubits(); q++) {
            if (!seen[q]) {
                return Violation{s, q, "qubit " + std::to_string(q) + " not covered in step " + std::to_string(s)};
            }
        }
    }
    return std::nullopt;
}

inline void write_text(std::ostream &out, const Circuit &c) {
    out << "QUBITS " << c.num_qubits() << "\n";
    for (const auto &step : c.steps()) {
        out << "STEP\n";
        for (const Operation &op : step) {
            switch (op.kind) {
                case OpKind::gate:
                    out << gate_name(op.gate) << " " << op.q0;
                    if (op.arity() == 2) {
                        out << " " << op.q1;
                    }
                    break;
                case OpKind::reset:
                    out << (op.basis == Basis::Z ? "RZ " : "RX ") << op.q0;
                    break;
                case OpKind::measure:
                    out << (op.basis == Basis::Z ? "MZ " : "MX ") << op.q0;
                    if (op.tag) {
                        out << " @" << op.tag->code << ":" << op.tag->stabilizer << ":" << op.tag->cycle;
                    }
                    break;
                case OpKind::idle:
                    out << "IDLE " << op.q0;
                    break;
            }
            out << "\n";
        }
    }
}

inline std::string to_text(const Circuit &c) {
    std::ostringstream ss;
    write_text(ss, c);
    return ss.str();
}

/// Reads the text format written by write_text. '#' starts a comment. Gate lines
/// accept either "CNOT 0 1" or "CNOT(0,1)" spelling.
inline Circuit read_text(std::istream &in) {
    static const std::map<std::string, GateKind> gates = {
        {"H", GateKind::H}, {"S", GateKind::S}, {"S_DAG", GateKind::S_DAG}, {"X", GateKind::X},
        {"Y", GateKind::Y}, {"Z", GateKind::Z}, {"CNOT", GateKind::CNOT},   {"T", GateKind::T},
    };
    Circuit c;
    bool have_header = false;
    std::string line;
    size_t line_no = 0;
    auto fail = [&](const std::string &msg) {
        throw std::invalid_argument("circuit text line " + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        for (char &ch : line) {
            if (ch == '(' || ch == ')' || ch == ',') {
                ch = ' ';
            }
        }
        std::istringstream ss(line);
        std::string word;
        if (!(ss >> word)) {
            continue;
        }
        if (word == "QUBITS") {
            size_t n;
            if (have_header || !(ss >> n)) {
                fail("bad QUBITS line");
            }
            c = Circuit(n);
            have_header = true;
            continue;
        }
        if (!have_header) {
            fail("missing QUBITS header");
        }
        if (word == "STEP") {
            c.add_step();
            continue;
        }
        if (c.num_steps() == 0) {
            fail("operation before the first STEP");
        }
        Operation op;
        uint32_t q0 = 0, q1 = 0;
        if (!(ss >> q0)) {
            fail("missing qubit");
        }
        if (word == "RZ" || word == "RX") {
            op = Operation::make_reset(q0, word == "RZ" ? Basis::Z : Basis::X);
        } else if (word == "MZ" || word == "MX") {
            op = Operation::make_measure(q0, word == "MZ" ? Basis::Z : Basis::X);
            std::string t;
            if (ss >> t) {
                MeasurementTag tag;
                char a, b, cc;
                std::istringstream ts(t);
                if (!(ts >> a >> tag.code >> b >> tag.stabilizer >> cc >> tag.cycle) || a != '@' || b != ':' || cc != ':') {
                    fail("bad tag '" + t + "'");
                }
                op.tag = tag;
            }
        } else if (word == "IDLE") {
            op = Operation::make_idle(q0);
        } else {
            auto it = gates.find(word);
            if (it == gates.end()) {
                fail("unknown opcode '" + word + "'");
            }
            if (it->second == GateKind::CNOT && !(ss >> q1)) {
                fail("CNOT needs two qubits");
            }
            op = Operation::make_gate(it->second, q0, q1);
        }
        std::string extra;
        if (ss >> extra) {
            fail("trailing text '" + extra + "'");
        }
        c.add_operation(op);
    }
    if (!have_header) {
        fail("empty input");
    }
    return c;
}

inline Circuit from_text(const std::string &text) {
    std::istringstream ss(text);
    return read_text(ss);
}

}  // namespace qecmit

#endif
