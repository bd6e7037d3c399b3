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

#ifndef QECMIT_CODE_SWITCHING_HPP
#define QECMIT_CODE_SWITCHING_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qecmit/decoder.hpp"
#include "qecmit/rng.hpp"
#include "qecmit/stats.hpp"

namespace qecmit {

enum class Backend { frame, tableau };

inline const char *backend_name(Backend b) {
    return b == Backend::frame ? "frame" : "tableau";
}

struct SwitchingConfig {
    int d = 3;
    double epsilon = 0;
    int L = 3;
    /// Noisy S1 cycles after the switch back; 0 selects d.
    int s1_cycles = 0;
    bool adaptive_L = false;
    uint64_t trials = 1000;
    uint64_t seed = 0;
    Backend backend = Backend::frame;
    bool unit_weights = false;
    bool cnot_includes_identity = false;

    int effective_s1_cycles() const {
        return s1_cycles > 0 ? s1_cycles : d;
    }
    NoiseParams noise() const {
        return NoiseParams{epsilon, cnot_includes_identity};
    }
    void validate() const {
        if (d < 3 || d % 2 == 0) {
            throw std::invalid_argument("d must be odd and >= 3");
        }
        if (L < 2) {
            throw std::invalid_argument("L must be >= 2");
        }
        if (adaptive_L && L != 3) {
            throw std::invalid_argument("adaptive L chooses between 2 and 3 cycles; set L = 3");
        }
        if (trials < 1) {
            throw std::invalid_argument("trials must be >= 1");
        }
        if (s1_cycles < 0) {
            throw std::invalid_argument("s1_cycles must be >= 0");
        }
        noise().validate();
    }
};

/// R = prod_{i: lambda_i = -1} prod_{a >= i} G_a, so that R F_i = lambda_i F_i R.
inline PauliString compute_R(const std::vector<int> &lambdas, const CodeSpec &spec) {
    const Lattice &lat = *spec.lattice;
    if (lambdas.size() != (size_t)lat.t()) {
        throw std::invalid_argument("compute_R: expected t values");
    }
    PauliString r(lat.num_qubits());
    bool on = false;
    for (size_t a = 0; a < lambdas.size(); a++) {
        if (lambdas[a] != 1 && lambdas[a] != -1) {
            throw std::invalid_argument("compute_R: values must be +1 or -1");
        }
        // G_a appears once for every i <= a with lambda_i = -1.
        on ^= lambdas[a] == -1;
        if (on) {
            r *= lat.stabilizer(lat.g_ids()[a]).pauli;
        }
    }
    return r;
}

enum class ExperimentKind { frame, logical };

struct TrialOutcome {
    bool frame_error = false;
    bool z_error = false;
    bool x_error = false;
    /// Number of S2 cycles used.
    int L = 0;
};

/// S2 cycles only for the frame experiment; S2, then S1, then one noiseless S1 cycle
/// for the logical experiment.
inline Timeline switching_timeline(std::shared_ptr<const Lattice> lattice, ExperimentKind kind, int L, int s1_cycles) {
    Timeline t;
    t.lattice = std::move(lattice);
    t.initial = CodeVariant::S1;
    for (int k = 0; k < L; k++) {
        t.cycles.push_back({CodeVariant::S2, true});
    }
    if (kind == ExperimentKind::logical) {
        for (int k = 0; k < s1_cycles; k++) {
            t.cycles.push_back({CodeVariant::S1, true});
        }
        t.cycles.push_back({CodeVariant::S1, false});
    }
    return t;
}

/// One prepared experiment: circuit, fault signatures and decoder.
class SwitchingExperiment {
   public:
    SwitchingExperiment(std::shared_ptr<const Lattice> lattice, ExperimentKind kind, int L, int s1_cycles,
                        NoiseParams noise, DecoderOptions options = {})
        : kind_(kind), L_(L) {
        auto layout = std::make_shared<const DetectorLayout>(switching_timeline(std::move(lattice), kind, L, s1_cycles));
        model_ = std::make_shared<const ErrorModel>(layout, noise);
        decoder_ = build_decoder(model_, options);
    }

    ExperimentKind kind() const {
        return kind_;
    }
    int L() const {
        return L_;
    }
    const DetectorLayout &layout() const {
        return model_->layout();
    }
    const ErrorModel &model() const {
        return *model_;
    }
    const Decoder &decoder() const {
        return decoder_;
    }
    const Circuit &circuit() const {
        return layout().circuit();
    }

    /// Outcome from fault signatures alone.
    TrialOutcome evaluate_frame(const FaultyCircuit &faults) const {
        const DetectorLayout &lay = layout();
        Signature sig = model_->signature(faults);
        BitVec residual = decoder_.decode_effect(DetectionEvents{sig.detectors}, kind_ == ExperimentKind::logical);
        residual ^= sig.effect;
        TrialOutcome out;
        out.L = L_;
        const CodeSpec &s1 = lay.code(CodeVariant::S1);
        if (kind_ == ExperimentKind::frame) {
            bool bit = residual.get(lay.x_bit(s1.q_loc()));
            for (size_t i = 0; i < lay.sigma_records().size(); i++) {
                bit ^= residual.get(lay.sigma_bit(i));
            }
            out.frame_error = bit;
        } else {
            bool z = false;
            bool x = false;
            for (size_t q = 0; q < lay.num_data(); q++) {
                if (s1.logical_x.x(q)) {
                    z ^= residual.get(lay.z_bit(q));
                }
                if (s1.logical_z.z(q)) {
                    x ^= residual.get(lay.x_bit(q));
                }
            }
            out.z_error = z;
            out.x_error = x;
        }
        return out;
    }

    /// Outcome from a full stabilizer simulation of the faulty circuit.
    TrialOutcome evaluate_tableau(const FaultyCircuit &faults, RandomStream &sim) const {
        const DetectorLayout &lay = layout();
        const CodeSpec &s1 = lay.code(CodeVariant::S1);
        const CodeSpec &s2 = lay.code(CodeVariant::S2);
        size_t n = s1.num_qubits();
        TrialOutcome out;
        out.L = L_;
        if (kind_ == ExperimentKind::frame) {
            bool b = coin(sim);
            StabilizerState state = encode_logical(s1, b ? LogicalBasisState::one : LogicalBasisState::zero);
            MeasurementRecord rec = execute(faults, state, sim);
            SyndromeHistory h = SyndromeHistory::from_record(lay, rec);
            DecodeResult r = decode(decoder_, h);
            state.apply_pauli(r.correction);
            int expected = b ? -1 : 1;
            for (int s : r.corrected_sigmas) {
                expected *= s;
            }
            int v = state.expectation(PauliString::single(n, s1.q_loc(), Pauli::Z));
            if (v == 0) {
                throw std::logic_error("Z on q_loc is not determined after the switch");
            }
            out.frame_error = v != expected;
            return out;
        }
        size_t ref = n;
        std::vector<PauliString> gens;
        for (uint32_t id : s1.active) {
            gens.push_back(s1.stabilizer(id).resized(n + 1));
        }
        PauliString xx = s1.logical_x.resized(n + 1);
        xx.set(ref, Pauli::X);
        PauliString zz = s1.logical_z.resized(n + 1);
        zz.set(ref, Pauli::Z);
        gens.push_back(xx);
        gens.push_back(zz);
        for (size_t q = s1.lattice->num_data(); q < n; q++) {
            gens.push_back(PauliString::single(n + 1, q, Pauli::Z));
        }
        StabilizerState state = StabilizerState::from_generators(n + 1, gens);
        MeasurementRecord rec = execute(faults, state, sim);
        SyndromeHistory h = SyndromeHistory::from_record(lay, rec);
        DecodeResult r = decode(decoder_, h);
        state.apply_pauli(r.correction.resized(n + 1));
        const auto &last = h.cycles.back();
        std::vector<int> lambdas;
        for (uint32_t f : s1.lattice->f_ids()) {
            int v = last.at(f);
            lambdas.push_back(r.correction.commutes(s1.stabilizer(f)) ? v : -v);
        }
        state.apply_pauli(compute_R(lambdas, s2).resized(n + 1));
        int vx = state.expectation(xx);
        int vz = state.expectation(zz);
        if (vx == 0 || vz == 0) {
            throw std::logic_error("logical readout is not determined after correction");
        }
        out.z_error = vx < 0;
        out.x_error = vz < 0;
        return out;
    }

    TrialOutcome evaluate(const FaultyCircuit &faults, Backend backend, RandomStream &sim) const {
        return backend == Backend::frame ? evaluate_frame(faults) : evaluate_tableau(faults, sim);
    }

   private:
    ExperimentKind kind_;
    int L_;
    std::shared_ptr<const ErrorModel> model_;
    Decoder decoder_;
};

/// Trials of one experiment kind for a configuration. Trial `index` draws faults from
/// stream(seed, index, 0) and simulation randomness from stream(seed, index, 1).
class SwitchingSimulator {
   public:
    SwitchingSimulator(const SwitchingConfig &config, ExperimentKind kind) : config_(config) {
        config_.validate();
        auto lattice = std::make_shared<const Lattice>(config_.d);
        DecoderOptions opt;
        opt.unit_weights = config_.unit_weights;
        main_ = std::make_shared<const SwitchingExperiment>(lattice, kind, config_.L, config_.effective_s1_cycles(),
                                                            config_.noise(), opt);
        if (config_.adaptive_L) {
            short_ = std::make_shared<const SwitchingExperiment>(lattice, kind, 2, config_.effective_s1_cycles(),
                                                                 config_.noise(), opt);
        }
    }

    const SwitchingConfig &config() const {
        return config_;
    }
    const SwitchingExperiment &experiment() const {
        return *main_;
    }

    /// Faults for trial `index` and the experiment they belong to.
    std::pair<const SwitchingExperiment *, FaultyCircuit> sample(uint64_t index) const {
        RandomStream rng = stream(config_.seed, index, 0);
        const NoiseParams noise = config_.noise();
        if (!config_.adaptive_L) {
            return {main_.get(), sample_faults(main_->circuit(), noise, rng, 0, main_->layout().noisy_steps())};
        }
        // The first two S2 cycles coincide in both experiments. L = 2 is kept when
        // the second G_i outcomes repeat the first ones.
        const size_t prefix = 2 * DetectorLayout::kStepsPerCycle;
        FaultyCircuit head = sample_faults(main_->circuit(), noise, rng, 0, prefix);
        Signature sig = main_->model().signature(head);
        bool changed = false;
        for (uint32_t g : main_->layout().lattice().g_ids()) {
            uint32_t det = (uint32_t)main_->layout().detector_index(1, g);
            changed |= std::binary_search(sig.detectors.begin(), sig.detectors.end(), det);
        }
        const SwitchingExperiment *chosen = changed ? main_.get() : short_.get();
        FaultyCircuit tail = sample_faults(chosen->circuit(), noise, rng, prefix, chosen->layout().noisy_steps());
        head.base = &chosen->circuit();
        head.merge(tail);
        return {chosen, head};
    }

    TrialOutcome trial(uint64_t index) const {
        auto [exp, faults] = sample(index);
        RandomStream sim = stream(config_.seed, index, 1);
        return exp->evaluate(faults, config_.backend, sim);
    }

   private:
    SwitchingConfig config_;
    std::shared_ptr<const SwitchingExperiment> main_;
    std::shared_ptr<const SwitchingExperiment> short_;
};

struct SwitchingRates {
    RateEstimate p_f;
    RateEstimate p_z;
    RateEstimate p_x;
    uint64_t trials = 0;
    /// Logical-experiment trials that used L = 2 (adaptive mode only).
    uint64_t short_trials = 0;
    double wall_time = 0;
};

struct TrialCounts {
    uint64_t trials = 0;
    uint64_t frame_errors = 0;
    uint64_t z_errors = 0;
    uint64_t x_errors = 0;
    uint64_t short_trials = 0;
};

/// Runs trials [0, trials) on `threads` workers. Counts do not depend on the thread count.
inline TrialCounts run_trials(const SwitchingSimulator &sim, uint64_t trials, unsigned threads) {
    threads = std::max(1u, threads);
    const uint64_t chunk = 64;
    std::atomic<uint64_t> next{0};
    std::vector<TrialCounts> partial(threads);
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned w) {
        try {
            TrialCounts &c = partial[w];
            while (true) {
                uint64_t begin = next.fetch_add(chunk);
                if (begin >= trials) {
                    break;
                }
                uint64_t end = std::min(trials, begin + chunk);
                for (uint64_t i = begin; i < end; i++) {
                    TrialOutcome o = sim.trial(i);
                    c.trials++;
                    c.frame_errors += o.frame_error;
                    c.z_errors += o.z_error;
                    c.x_errors += o.x_error;
                    c.short_trials += o.L == 2;
                }
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; w++) {
            pool.emplace_back(work, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    TrialCounts total;
    for (unsigned w = 0; w < threads; w++) {
        if (errors[w]) {
            std::rethrow_exception(errors[w]);
        }
        total.trials += partial[w].trials;
        total.frame_errors += partial[w].frame_errors;
        total.z_errors += partial[w].z_errors;
        total.x_errors += partial[w].x_errors;
        total.short_trials += partial[w].short_trials;
    }
    return total;
}

/// P_F from the frame experiment, P_Z and P_X from the logical experiment.
/// Either experiment can be skipped; its rates are then left empty.
inline SwitchingRates estimate_rates(const SwitchingConfig &config, unsigned threads = 1, bool frame = true,
                                     bool logical = true) {
    auto start = std::chrono::steady_clock::now();
    SwitchingRates out;
    out.trials = config.trials;
    if (frame) {
        SwitchingSimulator sim(config, ExperimentKind::frame);
        TrialCounts c = run_trials(sim, config.trials, threads);
        out.p_f = wilson(c.frame_errors, c.trials);
    }
    if (logical) {
        SwitchingSimulator sim(config, ExperimentKind::logical);
        TrialCounts c = run_trials(sim, config.trials, threads);
        out.p_z = wilson(c.z_errors, c.trials);
        out.p_x = wilson(c.x_errors, c.trials);
        out.short_trials = c.short_trials;
    }
    out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

/// A single fault and its probability in units of epsilon.
struct SingleFault {
    FaultyCircuit faults;
    double weight = 0;
    /// The faulty operation acts on a G_i ancilla.
    bool on_sigma_ancilla = false;
};

/// Every single fault of the noisy region, one per location and fault kind.
inline std::vector<SingleFault> enumerate_single_faults(const SwitchingExperiment &exp) {
    const DetectorLayout &lay = exp.layout();
    const Circuit &c = lay.circuit();
    const Lattice &lat = lay.lattice();
    bool with_identity = exp.model().params().cnot_includes_identity;
    std::vector<char> sigma_ancilla(c.num_qubits(), 0);
    for (uint32_t g : lat.g_ids()) {
        sigma_ancilla[lat.stabilizer(g).ancilla] = 1;
    }
    auto off = location_offsets(c);
    std::vector<SingleFault> out;
    for (size_t s = 0; s < lay.noisy_steps(); s++) {
        const auto &ops = c.step(s);
        for (size_t i = 0; i < ops.size(); i++) {
            uint32_t loc = off[s] + (uint32_t)i;
            const Operation &op = ops[i];
            bool on_sigma = sigma_ancilla[op.q0] || (op.arity() == 2 && sigma_ancilla[op.q1]);
            auto push = [&](FaultyCircuit f, double w) {
                f.base = &c;
                out.push_back({std::move(f), w, on_sigma});
            };
            if (op.kind == OpKind::measure) {
                FaultyCircuit f;
                f.flipped_measurements.push_back(loc);
                push(f, 1.0);
            } else if (op.kind == OpKind::reset) {
                FaultyCircuit f;
                f.flipped_resets.push_back(loc);
                push(f, 1.0);
            } else if (op.arity() == 2) {
                double w = 1.0 / (with_identity ? 16 : 15);
                for (int k = 1; k < 16; k++) {
                    FaultyCircuit f;
                    f.inserted_faults.push_back(Fault{loc, (Pauli)(k & 3), (Pauli)(k >> 2)});
                    push(f, w);
                }
            } else {
                for (int k = 1; k < 4; k++) {
                    FaultyCircuit f;
                    f.inserted_faults.push_back(Fault{loc, (Pauli)k, Pauli::I});
                    push(f, 1.0 / 3);
                }
            }
        }
    }
    return out;
}

struct SingleFaultReport {
    size_t faults = 0;
    size_t errors = 0;
    size_t sigma_faults = 0;
    size_t sigma_errors = 0;
    size_t x_errors = 0;
    size_t z_errors = 0;
    /// First-order error rates in units of epsilon.
    double frame_coefficient = 0;
    double z_coefficient = 0;
    double x_coefficient = 0;
};

/// Evaluates every single fault with the frame backend.
inline SingleFaultReport single_fault_sweep(const SwitchingExperiment &exp) {
    SingleFaultReport r;
    for (const SingleFault &sf : enumerate_single_faults(exp)) {
        TrialOutcome o = exp.evaluate_frame(sf.faults);
        bool err = o.frame_error || o.z_error || o.x_error;
        r.faults++;
        r.errors += err;
        r.x_errors += o.x_error;
        r.z_errors += o.z_error;
        if (sf.on_sigma_ancilla) {
            r.sigma_faults++;
            r.sigma_errors += err;
        }
        r.frame_coefficient += o.frame_error * sf.weight;
        r.z_coefficient += o.z_error * sf.weight;
        r.x_coefficient += o.x_error * sf.weight;
    }
    return r;
}

}  // namespace qecmit

#endif
