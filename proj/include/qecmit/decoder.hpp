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

#ifndef QECMIT_DECODER_HPP
#define QECMIT_DECODER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecmit/matching.hpp"
#include "qecmit/noise.hpp"
#include "qecmit/surface_code.hpp"

namespace qecmit {

/// Fixed-length bit vector used for fault effects.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    size_t size() const {
        return n_;
    }
    bool get(size_t i) const {
        return (w_[i >> 6] >> (i & 63)) & 1;
    }
    void flip(size_t i) {
        w_[i >> 6] ^= uint64_t(1) << (i & 63);
    }
    void set(size_t i, bool v) {
        if (get(i) != v) {
            flip(i);
        }
    }
    BitVec &operator^=(const BitVec &o) {
        for (size_t k = 0; k < w_.size(); k++) {
            w_[k] ^= o.w_[k];
        }
        return *this;
    }
    void xor_words(const uint64_t *src) {
        for (size_t k = 0; k < w_.size(); k++) {
            w_[k] ^= src[k];
        }
    }
    bool any() const {
        for (uint64_t x : w_) {
            if (x) {
                return true;
            }
        }
        return false;
    }
    bool operator==(const BitVec &o) const {
        return n_ == o.n_ && w_ == o.w_;
    }
    bool operator<(const BitVec &o) const {
        return w_ < o.w_;
    }
    const std::vector<uint64_t> &words() const {
        return w_;
    }

   private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

struct CycleSpec {
    CodeVariant code = CodeVariant::S1;
    bool noisy = true;
};

/// Sequence of syndrome cycles applied to a noiseless encoded state of `initial`.
/// Noisy cycles must precede noiseless ones.
struct Timeline {
    std::shared_ptr<const Lattice> lattice;
    CodeVariant initial = CodeVariant::S1;
    std::vector<CycleSpec> cycles;
};

struct Detector {
    uint32_t stabilizer = 0;
    uint32_t cycle = 0;
    StabilizerType type = StabilizerType::Z;
    /// Record indices compared; `previous` is -1 when compared against +1.
    int32_t current = -1;
    int32_t previous = -1;
};

/// Circuit, measurement record layout and detectors of a timeline.
class DetectorLayout {
   public:
    static constexpr size_t kStepsPerCycle = 6;

    explicit DetectorLayout(Timeline timeline) : timeline_(std::move(timeline)) {
        const Lattice &lat = *timeline_.lattice;
        s1_ = build_code(timeline_.lattice, CodeVariant::S1);
        s2_ = build_code(timeline_.lattice, CodeVariant::S2);
        circuit_ = Circuit(lat.num_qubits());
        bool seen_noiseless = false;
        for (uint32_t k = 0; k < timeline_.cycles.size(); k++) {
            const CycleSpec &cs = timeline_.cycles[k];
            if (cs.noisy && seen_noiseless) {
                throw std::invalid_argument("timeline: noisy cycles must precede noiseless ones");
            }
            if (cs.noisy) {
                noisy_steps_ += kStepsPerCycle;
            } else {
                seen_noiseless = true;
            }
            circuit_.append(syndrome_cycle(code(cs.code), k));
        }
        size_t nstab = lat.stabilizers().size();
        meas_index_.assign(timeline_.cycles.size(), std::vector<int32_t>(nstab, -1));
        std::vector<uint32_t> off = location_offsets(circuit_);
        record_of_loc_.assign(off.back(), -1);
        for (size_t s = 0; s < circuit_.num_steps(); s++) {
            const auto &ops = circuit_.step(s);
            for (size_t i = 0; i < ops.size(); i++) {
                if (ops[i].kind == OpKind::measure) {
                    const MeasurementTag &tag = *ops[i].tag;
                    record_of_loc_[off[s] + i] = (int32_t)record_tags_.size();
                    meas_index_[tag.cycle][tag.stabilizer] = (int32_t)record_tags_.size();
                    record_tags_.push_back(tag);
                }
            }
        }
        dets_of_record_.assign(record_tags_.size(), {});
        det_index_.assign(timeline_.cycles.size(), std::vector<int32_t>(nstab, -1));
        for (uint32_t k = 0; k < timeline_.cycles.size(); k++) {
            for (uint32_t id : code(timeline_.cycles[k].code).active) {
                Detector det;
                det.stabilizer = id;
                det.cycle = k;
                det.type = lat.stabilizer(id).type;
                det.current = meas_index_[k][id];
                if (k == 0) {
                    if (!code(timeline_.initial).is_active(id)) {
                        continue;
                    }
                } else {
                    det.previous = meas_index_[k - 1][id];
                    if (det.previous < 0) {
                        continue;
                    }
                }
                uint32_t di = (uint32_t)detectors_.size();
                det_index_[k][id] = (int32_t)di;
                dets_of_record_[det.current].push_back(di);
                if (det.previous >= 0) {
                    dets_of_record_[det.previous].push_back(di);
                }
                detectors_.push_back(det);
            }
        }
        int32_t last_s2 = -1;
        for (uint32_t k = 0; k < timeline_.cycles.size(); k++) {
            if (timeline_.cycles[k].code == CodeVariant::S2) {
                last_s2 = (int32_t)k;
            }
        }
        readout_of_record_.assign(record_tags_.size(), -1);
        if (last_s2 >= 0) {
            for (uint32_t g : lat.g_ids()) {
                int32_t r = meas_index_[last_s2][g];
                readout_of_record_[r] = (int32_t)sigma_records_.size();
                sigma_records_.push_back(r);
            }
        }
    }

    const Timeline &timeline() const {
        return timeline_;
    }
    const Lattice &lattice() const {
        return *timeline_.lattice;
    }
    const CodeSpec &code(CodeVariant v) const {
        return v == CodeVariant::S1 ? s1_ : s2_;
    }
    const Circuit &circuit() const {
        return circuit_;
    }
    size_t num_cycles() const {
        return timeline_.cycles.size();
    }
    /// Steps [0, noisy_steps) carry faults.
    size_t noisy_steps() const {
        return noisy_steps_;
    }
    size_t num_records() const {
        return record_tags_.size();
    }
    const MeasurementTag &record_tag(size_t r) const {
        return record_tags_[r];
    }
    int32_t record_of_location(uint32_t loc) const {
        return record_of_loc_[loc];
    }
    int32_t record_index(uint32_t cycle, uint32_t stabilizer) const {
        return meas_index_.at(cycle).at(stabilizer);
    }
    const std::vector<Detector> &detectors() const {
        return detectors_;
    }
    int32_t detector_index(uint32_t cycle, uint32_t stabilizer) const {
        return det_index_.at(cycle).at(stabilizer);
    }
    const std::vector<uint32_t> &detectors_of_record(size_t r) const {
        return dets_of_record_[r];
    }
    /// Records of the G_i measurements in the last S2 cycle, in order i = 1..t.
    const std::vector<int32_t> &sigma_records() const {
        return sigma_records_;
    }
    int32_t readout_of_record(size_t r) const {
        return readout_of_record_[r];
    }
    /// Effect layout: X bits of data qubits, Z bits of data qubits, then sigma flips.
    size_t num_data() const {
        return lattice().num_data();
    }
    size_t effect_size() const {
        return 2 * num_data() + sigma_records_.size();
    }
    size_t x_bit(size_t q) const {
        return q;
    }
    size_t z_bit(size_t q) const {
        return num_data() + q;
    }
    size_t sigma_bit(size_t i) const {
        return 2 * num_data() + i;
    }

   private:
    Timeline timeline_;
    CodeSpec s1_;
    CodeSpec s2_;
    Circuit circuit_{0};
    size_t noisy_steps_ = 0;
    std::vector<MeasurementTag> record_tags_;
    std::vector<int32_t> record_of_loc_;
    std::vector<std::vector<int32_t>> meas_index_;
    std::vector<std::vector<int32_t>> det_index_;
    std::vector<Detector> detectors_;
    std::vector<std::vector<uint32_t>> dets_of_record_;
    std::vector<int32_t> sigma_records_;
    std::vector<int32_t> readout_of_record_;
};

/// Per-cycle stabilizer outcomes (+1 or -1) and the code active in each cycle.
struct SyndromeHistory {
    std::vector<std::map<uint32_t, int>> cycles;
    std::vector<CodeVariant> code_timeline;

    static SyndromeHistory from_record(const DetectorLayout &layout, const MeasurementRecord &record) {
        SyndromeHistory h;
        h.cycles.resize(layout.num_cycles());
        for (const auto &c : layout.timeline().cycles) {
            h.code_timeline.push_back(c.code);
        }
        for (const auto &m : record) {
            if (m.tag) {
                h.cycles.at(m.tag->cycle)[m.tag->stabilizer] = m.outcome ? -1 : 1;
            }
        }
        return h;
    }
    /// Throws if an active stabilizer lacks an outcome.
    void check(const DetectorLayout &layout) const {
        if (cycles.size() != layout.num_cycles()) {
            throw std::invalid_argument("syndrome history: wrong number of cycles");
        }
        for (size_t k = 0; k < cycles.size(); k++) {
            for (uint32_t id : layout.code(code_timeline[k]).active) {
                if (!cycles[k].count(id)) {
                    throw std::invalid_argument("syndrome history: missing outcome for " +
                                                layout.lattice().stabilizer(id).label + " in cycle " +
                                                std::to_string(k));
                }
            }
        }
    }
};

/// Sorted detector indices that fired.
struct DetectionEvents {
    std::vector<uint32_t> events;
};

inline DetectionEvents detection_events(const SyndromeHistory &history, const DetectorLayout &layout) {
    history.check(layout);
    DetectionEvents out;
    const auto &dets = layout.detectors();
    for (uint32_t i = 0; i < dets.size(); i++) {
        const Detector &d = dets[i];
        int now = history.cycles[d.cycle].at(d.stabilizer);
        int before = d.previous < 0 ? 1 : history.cycles[d.cycle - 1].at(d.stabilizer);
        if (now != before) {
            out.events.push_back(i);
        }
    }
    return out;
}

/// Detector flips and effect of a set of faults.
struct Signature {
    std::vector<uint32_t> detectors;
    BitVec effect;
};

/// Single-fault signatures for every fault component of the noisy region.
/// Components: X and Z on each qubit of a gate or idle, one flip per reset or measurement.
class ErrorModel {
   public:
    ErrorModel(std::shared_ptr<const DetectorLayout> layout, NoiseParams params)
        : layout_(std::move(layout)), params_(params) {
        params_.validate();
        const Circuit &c = layout_->circuit();
        n_ = c.num_qubits();
        off_ = location_offsets(c);
        op_on_.assign(c.num_steps() * n_, -1);
        for (size_t s = 0; s < c.num_steps(); s++) {
            const auto &ops = c.step(s);
            for (size_t i = 0; i < ops.size(); i++) {
                op_on_[s * n_ + ops[i].q0] = (int32_t)i;
                if (ops[i].arity() == 2) {
                    op_on_[s * n_ + ops[i].q1] = (int32_t)i;
                }
            }
        }
        size_t end = off_[layout_->noisy_steps()];
        comp_base_.assign(end + 1, 0);
        for (size_t s = 0; s < layout_->noisy_steps(); s++) {
            const auto &ops = c.step(s);
            for (size_t i = 0; i < ops.size(); i++) {
                uint32_t loc = off_[s] + (uint32_t)i;
                const Operation &op = ops[i];
                comp_base_[loc] = (uint32_t)comps_.size();
                if (op.kind == OpKind::measure) {
                    comps_.push_back(measurement_flip(layout_->record_of_location(loc)));
                    probs_.push_back(1.0);
                } else if (op.kind == OpKind::reset) {
                    Pauli p = op.basis == Basis::Z ? Pauli::X : Pauli::Z;
                    comps_.push_back(propagate(s, {{op.q0, p}}));
                    probs_.push_back(1.0);
                } else {
                    double share = op.arity() == 2 ? (params_.cnot_includes_identity ? 8.0 / 16.0 : 8.0 / 15.0) : 2.0 / 3.0;
                    for (uint32_t q : {op.q0, op.q1}) {
                        comps_.push_back(propagate(s, {{q, Pauli::X}}));
                        probs_.push_back(share);
                        comps_.push_back(propagate(s, {{q, Pauli::Z}}));
                        probs_.push_back(share);
                        if (op.arity() == 1) {
                            break;
                        }
                    }
                }
            }
        }
        comp_base_[end] = (uint32_t)comps_.size();
    }

    const DetectorLayout &layout() const {
        return *layout_;
    }
    std::shared_ptr<const DetectorLayout> layout_ptr() const {
        return layout_;
    }
    const NoiseParams &params() const {
        return params_;
    }
    size_t num_components() const {
        return comps_.size();
    }
    const Signature &component(size_t i) const {
        return comps_[i];
    }
    /// Probability of component i given that its location is faulty.
    double component_share(size_t i) const {
        return probs_[i];
    }
    uint32_t location_of_component(size_t i) const {
        return (uint32_t)(std::upper_bound(comp_base_.begin(), comp_base_.end() - 1, (uint32_t)i) - comp_base_.begin() - 1);
    }
    /// Components of the fault at `loc`, in the order X0, Z0, X1, Z1 (or the single flip).
    std::pair<uint32_t, uint32_t> components_at(uint32_t loc) const {
        return {comp_base_[loc], comp_base_[loc + 1]};
    }

    /// Combined signature of all faults in `faulty`, which must lie in the noisy region.
    Signature signature(const FaultyCircuit &faulty) const {
        std::vector<uint32_t> dets;
        BitVec effect(layout_->effect_size());
        auto add = [&](uint32_t comp) {
            const Signature &s = comps_[comp];
            dets.insert(dets.end(), s.detectors.begin(), s.detectors.end());
            effect ^= s.effect;
        };
        size_t end = off_[layout_->noisy_steps()];
        auto check = [&](uint32_t loc) {
            if (loc >= end) {
                throw std::out_of_range("fault outside the noisy region");
            }
        };
        for (const Fault &f : faulty.inserted_faults) {
            check(f.location);
            uint32_t b = comp_base_[f.location];
            if (pauli_x(f.p0)) {
                add(b);
            }
            if (pauli_z(f.p0)) {
                add(b + 1);
            }
            if (comp_base_[f.location + 1] - b == 4) {
                if (pauli_x(f.p1)) {
                    add(b + 2);
                }
                if (pauli_z(f.p1)) {
                    add(b + 3);
                }
            }
        }
        for (uint32_t loc : faulty.flipped_measurements) {
            check(loc);
            add(comp_base_[loc]);
        }
        for (uint32_t loc : faulty.flipped_resets) {
            check(loc);
            add(comp_base_[loc]);
        }
        Signature out;
        out.effect = std::move(effect);
        out.detectors = odd_multiplicity(std::move(dets));
        return out;
    }

    /// Sorted values that occur an odd number of times.
    static std::vector<uint32_t> odd_multiplicity(std::vector<uint32_t> v) {
        std::sort(v.begin(), v.end());
        std::vector<uint32_t> out;
        for (size_t i = 0; i < v.size();) {
            size_t j = i;
            while (j < v.size() && v[j] == v[i]) {
                j++;
            }
            if ((j - i) % 2 == 1) {
                out.push_back(v[i]);
            }
            i = j;
        }
        return out;
    }

    /// Signature of Paulis inserted after step `step`.
    Signature propagate(size_t step, const std::vector<std::pair<uint32_t, Pauli>> &inserted) const {
        const Circuit &c = layout_->circuit();
        std::vector<uint8_t> fx(n_, 0);
        std::vector<uint8_t> fz(n_, 0);
        std::vector<uint32_t> active;
        std::vector<uint32_t> flips;
        for (auto [q, p] : inserted) {
            fx[q] ^= pauli_x(p);
            fz[q] ^= pauli_z(p);
            active.push_back(q);
        }
        std::vector<int32_t> done;
        for (size_t s = step + 1; s < c.num_steps(); s++) {
            const auto &ops = c.step(s);
            done.clear();
            size_t count = active.size();
            for (size_t a = 0; a < count; a++) {
                int32_t idx = op_on_[s * n_ + active[a]];
                if (std::find(done.begin(), done.end(), idx) != done.end()) {
                    continue;
                }
                done.push_back(idx);
                const Operation &op = ops[idx];
                uint32_t q = op.q0;
                switch (op.kind) {
                    case OpKind::idle:
                        break;
                    case OpKind::reset:
                        fx[q] = fz[q] = 0;
                        break;
                    case OpKind::measure:
                        if (op.basis == Basis::Z ? fx[q] : fz[q]) {
                            flips.push_back((uint32_t)layout_->record_of_location(off_[s] + (uint32_t)idx));
                        }
                        break;
                    case OpKind::gate:
                        switch (op.gate) {
                            case GateKind::CNOT:
                                fx[op.q1] ^= fx[q];
                                fz[q] ^= fz[op.q1];
                                active.push_back(op.q0);
                                active.push_back(op.q1);
                                break;
                            case GateKind::H:
                                std::swap(fx[q], fz[q]);
                                break;
                            case GateKind::S:
                            case GateKind::S_DAG:
                                fz[q] ^= fx[q];
                                break;
                            case GateKind::T:
                                throw std::invalid_argument("frame propagation through T");
                            default:
                                break;
                        }
                        break;
                }
            }
            size_t keep = 0;
            for (size_t a = 0; a < active.size(); a++) {
                uint32_t q = active[a];
                bool dup = std::find(active.begin(), active.begin() + keep, q) != active.begin() + keep;
                if ((fx[q] || fz[q]) && !dup) {
                    active[keep++] = q;
                }
            }
            active.resize(keep);
            if (active.empty()) {
                break;
            }
        }
        Signature out;
        out.effect = BitVec(layout_->effect_size());
        for (uint32_t q : active) {
            if (q < layout_->num_data()) {
                out.effect.set(layout_->x_bit(q), fx[q]);
                out.effect.set(layout_->z_bit(q), fz[q]);
            }
        }
        apply_flips(out, flips);
        return out;
    }

    Signature measurement_flip(int32_t record) const {
        Signature out;
        out.effect = BitVec(layout_->effect_size());
        apply_flips(out, {(uint32_t)record});
        return out;
    }

   private:
    void apply_flips(Signature &out, const std::vector<uint32_t> &records) const {
        std::vector<uint32_t> dets;
        for (uint32_t r : records) {
            const auto &dr = layout_->detectors_of_record(r);
            dets.insert(dets.end(), dr.begin(), dr.end());
            int32_t ro = layout_->readout_of_record(r);
            if (ro >= 0) {
                out.effect.flip(layout_->sigma_bit((size_t)ro));
            }
        }
        out.detectors = odd_multiplicity(std::move(dets));
    }

    std::shared_ptr<const DetectorLayout> layout_;
    NoiseParams params_;
    size_t n_ = 0;
    std::vector<uint32_t> off_;
    std::vector<int32_t> op_on_;
    std::vector<uint32_t> comp_base_;
    std::vector<Signature> comps_;
    std::vector<double> probs_;
};

struct DecoderOptions {
    /// Every edge weighs the same instead of -log of its probability.
    bool unit_weights = false;
    /// Error rate used for weights when the model's epsilon is zero.
    double fallback_epsilon = 1e-3;
};

/// Matching graph over detectors of one type plus a boundary node.
class MatchingGraph {
   public:
    static constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
    static constexpr double kWeightScale = 1e4;

    struct Edge {
        uint32_t a = 0;
        uint32_t b = 0;
        double probability = 0;
        int64_t weight = 0;
        BitVec effect;
    };

    MatchingGraph(const ErrorModel &model, StabilizerType detector_type, const DecoderOptions &options)
        : type_(detector_type), effect_size_(model.layout().effect_size()) {
        const DetectorLayout &layout = model.layout();
        local_.assign(layout.detectors().size(), -1);
        for (uint32_t i = 0; i < layout.detectors().size(); i++) {
            if (layout.detectors()[i].type == type_) {
                local_[i] = (int32_t)nodes_.size();
                nodes_.push_back(i);
            }
        }
        double eps = model.params().epsilon > 0 ? model.params().epsilon : options.fallback_epsilon;
        uint32_t boundary = (uint32_t)nodes_.size();
        std::map<std::pair<uint32_t, uint32_t>, std::map<BitVec, double>> groups;
        auto combine = [](double p, double q) { return p * (1 - q) + q * (1 - p); };
        for (size_t i = 0; i < model.num_components(); i++) {
            const Signature &s = model.component(i);
            if (s.detectors.empty()) {
                continue;
            }
            std::vector<uint32_t> mine;
            for (uint32_t d : s.detectors) {
                if (local_[d] >= 0) {
                    mine.push_back((uint32_t)local_[d]);
                }
            }
            if (mine.empty()) {
                continue;
            }
            if (mine.size() != s.detectors.size()) {
                throw std::logic_error("fault component flips detectors of both types");
            }
            if (mine.size() > 2) {
                hyperedges_++;
                continue;
            }
            uint32_t a = mine[0];
            uint32_t b = mine.size() == 2 ? mine[1] : boundary;
            double p = std::min(0.5, eps * model.component_share(i));
            double &slot = groups[{a, b}][s.effect];
            slot = combine(slot, p);
        }
        for (auto &[ends, by_effect] : groups) {
            Edge e;
            e.a = ends.first;
            e.b = ends.second;
            double best = -1;
            for (auto &[effect, p] : by_effect) {
                e.probability = combine(e.probability, p);
                if (p > best) {
                    best = p;
                    e.effect = effect;
                }
            }
            double w = options.unit_weights ? 1.0 : -std::log(e.probability);
            e.weight = std::max<int64_t>(1, std::llround(w * kWeightScale));
            edges_.push_back(std::move(e));
        }
        shortest_paths();
    }

    StabilizerType detector_type() const {
        return type_;
    }
    size_t num_nodes() const {
        return nodes_.size();
    }
    uint32_t boundary() const {
        return (uint32_t)nodes_.size();
    }
    const std::vector<uint32_t> &nodes() const {
        return nodes_;
    }
    int32_t local(uint32_t detector) const {
        return local_[detector];
    }
    const std::vector<Edge> &edges() const {
        return edges_;
    }
    size_t num_hyperedges() const {
        return hyperedges_;
    }
    int64_t distance(uint32_t a, uint32_t b) const {
        return dist_[(size_t)a * (nodes_.size() + 1) + b];
    }
    const uint64_t *path_effect(uint32_t a, uint32_t b) const {
        return &path_[((size_t)a * (nodes_.size() + 1) + b) * words_];
    }

    /// Effect of the minimum-weight matching of the given detectors (global ids of this type).
    BitVec decode(const std::vector<uint32_t> &detectors) const {
        BitVec effect(effect_size_);
        int k = (int)detectors.size();
        if (k == 0) {
            return effect;
        }
        std::vector<uint32_t> loc(k);
        for (int i = 0; i < k; i++) {
            if (local_[detectors[i]] < 0) {
                throw std::invalid_argument("decode: detector of the wrong type");
            }
            loc[i] = (uint32_t)local_[detectors[i]];
        }
        uint32_t bnd = boundary();
        std::vector<WeightedEdge> edges;
        for (int i = 0; i < k; i++) {
            int64_t di = distance(loc[i], bnd);
            if (di >= kInf) {
                throw std::logic_error("decode: detector cannot reach the boundary");
            }
            edges.push_back({i, k + i, di});
            for (int j = i + 1; j < k; j++) {
                int64_t dij = distance(loc[i], loc[j]);
                if (dij < kInf && dij <= di + distance(loc[j], bnd)) {
                    edges.push_back({i, j, dij});
                }
                edges.push_back({k + i, k + j, 0});
            }
        }
        std::vector<int> mate = min_weight_perfect_matching(2 * k, edges);
        for (int i = 0; i < k; i++) {
            int m = mate[i];
            if (m < k && m < i) {
                continue;
            }
            effect.xor_words(m < k ? path_effect(loc[i], loc[m]) : path_effect(loc[i], bnd));
        }
        return effect;
    }

    /// Edge list: one line per edge "a b weight probability", with node names
    /// "Z(r,c)@cycle", "G1@cycle" or "boundary".
    std::string dump(const DetectorLayout &layout) const {
        std::ostringstream os;
        auto name = [&](uint32_t v) -> std::string {
            if (v == boundary()) {
                return "boundary";
            }
            const Detector &d = layout.detectors()[nodes_[v]];
            return layout.lattice().stabilizer(d.stabilizer).label + "@" + std::to_string(d.cycle);
        };
        os << "# nodes " << nodes_.size() + 1 << " edges " << edges_.size() << "\n";
        for (const Edge &e : edges_) {
            os << name(e.a) << " " << name(e.b) << " " << e.weight << " " << e.probability << "\n";
        }
        return os.str();
    }

   private:
    void shortest_paths() {
        size_t n = nodes_.size() + 1;
        words_ = (effect_size_ + 63) / 64;
        std::vector<std::vector<std::pair<uint32_t, uint32_t>>> adj(n);
        for (uint32_t i = 0; i < edges_.size(); i++) {
            adj[edges_[i].a].push_back({edges_[i].b, i});
            adj[edges_[i].b].push_back({edges_[i].a, i});
        }
        dist_.assign(n * n, kInf);
        path_.assign(n * n * words_, 0);
        std::vector<int32_t> via(n);
        std::vector<uint32_t> order;
        using Item = std::pair<int64_t, uint32_t>;
        for (uint32_t src = 0; src < n; src++) {
            int64_t *dist = &dist_[(size_t)src * n];
            std::fill(via.begin(), via.end(), -1);
            order.clear();
            std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
            dist[src] = 0;
            pq.push({0, src});
            std::vector<char> settled(n, 0);
            while (!pq.empty()) {
                auto [dv, v] = pq.top();
                pq.pop();
                if (settled[v]) {
                    continue;
                }
                settled[v] = 1;
                order.push_back(v);
                // Paths do not pass through the boundary.
                if (v == boundary() && v != src) {
                    continue;
                }
                for (auto [w, ei] : adj[v]) {
                    int64_t nd = dv + edges_[ei].weight;
                    if (nd < dist[w]) {
                        dist[w] = nd;
                        via[w] = (int32_t)ei;
                        pq.push({nd, w});
                    }
                }
            }
            for (uint32_t v : order) {
                if (v == src) {
                    continue;
                }
                const Edge &e = edges_[via[v]];
                uint32_t u = e.a == v ? e.b : e.a;
                uint64_t *dst = &path_[((size_t)src * n + v) * words_];
                const uint64_t *prev = &path_[((size_t)src * n + u) * words_];
                for (size_t w = 0; w < words_; w++) {
                    dst[w] = prev[w] ^ e.effect.words()[w];
                }
            }
        }
    }

    StabilizerType type_;
    size_t effect_size_;
    std::vector<uint32_t> nodes_;
    std::vector<int32_t> local_;
    std::vector<Edge> edges_;
    size_t hyperedges_ = 0;
    size_t words_ = 0;
    std::vector<int64_t> dist_;
    std::vector<uint64_t> path_;
};

/// Matching graphs for both error types. The X-error graph uses Z-type detectors.
struct Decoder {
    std::shared_ptr<const ErrorModel> model;
    std::shared_ptr<const MatchingGraph> x_errors;
    std::shared_ptr<const MatchingGraph> z_errors;

    /// Decodes into an effect: X and Z correction bits on data qubits and sigma flips.
    BitVec decode_effect(const DetectionEvents &ev, bool with_z = true) const {
        std::vector<uint32_t> zdet;
        std::vector<uint32_t> xdet;
        const auto &dets = model->layout().detectors();
        for (uint32_t d : ev.events) {
            (dets[d].type == StabilizerType::Z ? zdet : xdet).push_back(d);
        }
        BitVec effect = x_errors->decode(zdet);
        if (with_z) {
            effect ^= z_errors->decode(xdet);
        }
        return effect;
    }
};

inline Decoder build_decoder(std::shared_ptr<const ErrorModel> model, const DecoderOptions &options = {}) {
    Decoder d;
    d.x_errors = std::make_shared<const MatchingGraph>(*model, StabilizerType::Z, options);
    d.z_errors = std::make_shared<const MatchingGraph>(*model, StabilizerType::X, options);
    d.model = std::move(model);
    return d;
}

struct DecodeResult {
    /// Correction C on the full register (non-identity on data qubits only).
    PauliString correction;
    /// Final-cycle G_i values after correction, +1 or -1.
    std::vector<int> corrected_sigmas;
    /// Whether C has an X component on q_loc.
    bool x_on_qloc = false;
};

inline DecodeResult make_decode_result(const DetectorLayout &layout, const BitVec &effect, const SyndromeHistory &history) {
    DecodeResult r;
    size_t nd = layout.num_data();
    r.correction = PauliString(layout.lattice().num_qubits());
    for (size_t q = 0; q < nd; q++) {
        r.correction.set(q, make_pauli(effect.get(layout.x_bit(q)), effect.get(layout.z_bit(q))));
    }
    for (size_t i = 0; i < layout.sigma_records().size(); i++) {
        const MeasurementTag &tag = layout.record_tag((size_t)layout.sigma_records()[i]);
        int raw = history.cycles.at(tag.cycle).at(tag.stabilizer);
        r.corrected_sigmas.push_back(effect.get(layout.sigma_bit(i)) ? -raw : raw);
    }
    r.x_on_qloc = effect.get(layout.x_bit(layout.code(CodeVariant::S1).q_loc()));
    return r;
}

inline DecodeResult decode(const Decoder &decoder, const SyndromeHistory &history) {
    const DetectorLayout &layout = decoder.model->layout();
    DetectionEvents ev = detection_events(history, layout);
    return make_decode_result(layout, decoder.decode_effect(ev), history);
}

}  // namespace qecmit

#endif
