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

#include "qecmit/decoder.hpp"

#include <gtest/gtest.h>

#include <set>

#include "qecmit/rng.hpp"

using namespace qecmit;

namespace {

Timeline make_timeline(int d, std::vector<CycleSpec> cycles) {
    Timeline t;
    t.lattice = std::make_shared<const Lattice>(d);
    t.cycles = std::move(cycles);
    return t;
}

Timeline switching_timeline(int d, int l, int s1) {
    std::vector<CycleSpec> c;
    for (int k = 0; k < l; k++) {
        c.push_back({CodeVariant::S2, true});
    }
    for (int k = 0; k < s1; k++) {
        c.push_back({CodeVariant::S1, true});
    }
    c.push_back({CodeVariant::S1, false});
    return make_timeline(d, c);
}

SyndromeHistory trivial_history(const DetectorLayout &layout) {
    SyndromeHistory h;
    for (size_t k = 0; k < layout.num_cycles(); k++) {
        CodeVariant v = layout.timeline().cycles[k].code;
        h.code_timeline.push_back(v);
        std::map<uint32_t, int> m;
        for (uint32_t id : layout.code(v).active) {
            m[id] = 1;
        }
        h.cycles.push_back(m);
    }
    return h;
}

std::vector<uint32_t> tableau_events(const DetectorLayout &layout, const FaultyCircuit &f, RandomStream &rng) {
    StabilizerState s = encode_logical(layout.code(CodeVariant::S1), LogicalBasisState::zero);
    MeasurementRecord rec = execute(f, s, rng);
    return detection_events(SyndromeHistory::from_record(layout, rec), layout).events;
}

}  // namespace

TEST(decoder, trivial_history_has_no_events) {
    DetectorLayout layout(switching_timeline(3, 3, 3));
    EXPECT_TRUE(detection_events(trivial_history(layout), layout).events.empty());
}

TEST(decoder, single_flip_gives_two_events) {
    DetectorLayout layout(make_timeline(5, std::vector<CycleSpec>(4, {CodeVariant::S1, true})));
    SyndromeHistory h = trivial_history(layout);
    uint32_t id = layout.code(CodeVariant::S1).z_ids[3];
    h.cycles[1][id] = -1;
    auto ev = detection_events(h, layout).events;
    ASSERT_EQ(ev.size(), 2u);
    EXPECT_EQ(ev[0], (uint32_t)layout.detector_index(1, id));
    EXPECT_EQ(ev[1], (uint32_t)layout.detector_index(2, id));
}

TEST(decoder, first_cycle_switch_outcomes_are_excluded) {
    DetectorLayout layout(switching_timeline(5, 3, 5));
    SyndromeHistory h = trivial_history(layout);
    uint32_t g1 = layout.lattice().g_ids()[0];
    for (uint32_t k = 0; k < 3; k++) {
        h.cycles[k][g1] = -1;
    }
    EXPECT_TRUE(detection_events(h, layout).events.empty());
    // F_i in the first S1 cycle is random as well.
    h = trivial_history(layout);
    for (uint32_t k = 3; k < layout.num_cycles(); k++) {
        h.cycles[k][layout.lattice().f_ids()[1]] = -1;
    }
    EXPECT_TRUE(detection_events(h, layout).events.empty());
    EXPECT_EQ(layout.detector_index(0, g1), -1);
    EXPECT_EQ(layout.detector_index(3, layout.lattice().f_ids()[0]), -1);
    EXPECT_GE(layout.detector_index(1, g1), 0);
    EXPECT_GE(layout.detector_index(4, layout.lattice().f_ids()[0]), 0);
}

TEST(decoder, missing_outcome_is_rejected) {
    DetectorLayout layout(switching_timeline(3, 2, 1));
    SyndromeHistory h = trivial_history(layout);
    h.cycles[1].erase(layout.lattice().g_ids()[0]);
    EXPECT_THROW(detection_events(h, layout), std::invalid_argument);
}

TEST(decoder, frame_signatures_match_tableau_events) {
    for (int d : {3, 5}) {
        auto layout = std::make_shared<const DetectorLayout>(switching_timeline(d, 3, d));
        ErrorModel model(layout, NoiseParams{0.004});
        for (uint64_t trial = 0; trial < 60; trial++) {
            RandomStream frng = stream(17, trial, 0);
            RandomStream srng = stream(17, trial, 1);
            FaultyCircuit f = sample_faults(layout->circuit(), model.params(), frng, 0, layout->noisy_steps());
            EXPECT_EQ(model.signature(f).detectors, tableau_events(*layout, f, srng)) << "d=" << d << " trial " << trial;
        }
    }
}

TEST(decoder, every_component_signature_matches_tableau) {
    auto layout = std::make_shared<const DetectorLayout>(switching_timeline(3, 2, 2));
    ErrorModel model(layout, NoiseParams{0.001});
    const Circuit &c = layout->circuit();
    auto off = location_offsets(c);
    RandomStream rng(3);
    size_t step = 0;
    for (uint32_t loc = 0; loc < off[layout->noisy_steps()]; loc++) {
        while (off[step + 1] <= loc) {
            step++;
        }
        const Operation &op = c.step(step)[loc - off[step]];
        auto [b, e] = model.components_at(loc);
        for (uint32_t comp = b; comp < e; comp++) {
            FaultyCircuit f;
            f.base = &c;
            if (op.kind == OpKind::measure) {
                f.flipped_measurements.push_back(loc);
            } else if (op.kind == OpKind::reset) {
                f.flipped_resets.push_back(loc);
            } else {
                uint32_t k = comp - b;
                Pauli p = k % 2 == 0 ? Pauli::X : Pauli::Z;
                f.inserted_faults.push_back(Fault{loc, k < 2 ? p : Pauli::I, k < 2 ? Pauli::I : p});
            }
            EXPECT_EQ(model.component(comp).detectors, tableau_events(*layout, f, rng)) << "location " << loc;
            EXPECT_EQ(model.signature(f).detectors, model.component(comp).detectors);
        }
    }
}

TEST(decoder, data_error_edge_joins_adjacent_plaquettes) {
    auto layout = std::make_shared<const DetectorLayout>(make_timeline(3, std::vector<CycleSpec>(3, {CodeVariant::S1, true})));
    auto model = std::make_shared<const ErrorModel>(layout, NoiseParams{0.001});
    Decoder dec = build_decoder(model);
    const Lattice &lat = layout->lattice();
    const MatchingGraph &g = *dec.x_errors;
    // X on a data qubit during the idle of the reset step of cycle 1.
    for (uint32_t q = 0; q < lat.num_data(); q++) {
        Signature s = model->propagate(6, {{q, Pauli::X}});
        std::set<uint32_t> expect;
        Site site = lat.data_sites()[q];
        for (auto [dr, dc] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
            int r = site.row + dr, col = site.col + dc;
            if (r >= 0 && col >= 0 && r < 5 && col < 5 && r % 2 == 1) {
                expect.insert((uint32_t)layout->detector_index(1, lat.stabilizer_at({r, col})));
            }
        }
        EXPECT_EQ(std::set<uint32_t>(s.detectors.begin(), s.detectors.end()), expect) << q;
        uint32_t a = (uint32_t)g.local(s.detectors[0]);
        uint32_t b = s.detectors.size() == 2 ? (uint32_t)g.local(s.detectors[1]) : g.boundary();
        bool found = false;
        for (const auto &e : g.edges()) {
            found |= (e.a == a && e.b == b);
        }
        EXPECT_TRUE(found) << q;
    }
}

TEST(decoder, measurement_flip_edge_is_timelike) {
    auto layout = std::make_shared<const DetectorLayout>(make_timeline(3, std::vector<CycleSpec>(3, {CodeVariant::S1, true})));
    auto model = std::make_shared<const ErrorModel>(layout, NoiseParams{0.001});
    for (uint32_t id : layout->code(CodeVariant::S1).active) {
        Signature s = model->measurement_flip(layout->record_index(1, id));
        ASSERT_EQ(s.detectors.size(), 2u);
        EXPECT_EQ(s.detectors[0], (uint32_t)layout->detector_index(1, id));
        EXPECT_EQ(s.detectors[1], (uint32_t)layout->detector_index(2, id));
    }
}

TEST(decoder, graphs_have_no_hyperedges) {
    for (int d : {3, 5, 7}) {
        for (bool logical : {false, true}) {
            Timeline t = logical ? switching_timeline(d, 3, d)
                                 : make_timeline(d, std::vector<CycleSpec>(3, {CodeVariant::S2, true}));
            auto layout = std::make_shared<const DetectorLayout>(t);
            Decoder dec = build_decoder(std::make_shared<const ErrorModel>(layout, NoiseParams{0.001}));
            EXPECT_EQ(dec.x_errors->num_hyperedges(), 0u) << d;
            EXPECT_EQ(dec.z_errors->num_hyperedges(), 0u) << d;
            for (uint32_t v = 0; v < dec.x_errors->num_nodes(); v++) {
                EXPECT_LT(dec.x_errors->distance(v, dec.x_errors->boundary()), MatchingGraph::kInf);
            }
        }
    }
}

TEST(decoder, no_events_decode_to_identity) {
    auto layout = std::make_shared<const DetectorLayout>(make_timeline(5, std::vector<CycleSpec>(3, {CodeVariant::S2, true})));
    Decoder dec = build_decoder(std::make_shared<const ErrorModel>(layout, NoiseParams{0.001}));
    SyndromeHistory h = trivial_history(*layout);
    uint32_t g2 = layout->lattice().g_ids()[1];
    for (auto &c : h.cycles) {
        c[g2] = -1;
    }
    DecodeResult r = decode(dec, h);
    EXPECT_TRUE(r.correction.is_identity());
    EXPECT_EQ(r.corrected_sigmas, (std::vector<int>{1, -1}));
    EXPECT_FALSE(r.x_on_qloc);
}

TEST(decoder, single_component_decodes_to_matching_events) {
    // The decoded correction of any single graph-like fault flips the same detectors.
    auto layout = std::make_shared<const DetectorLayout>(switching_timeline(3, 3, 3));
    auto model = std::make_shared<const ErrorModel>(layout, NoiseParams{0.001});
    Decoder dec = build_decoder(model);
    size_t checked = 0;
    for (size_t i = 0; i < model->num_components(); i++) {
        const Signature &s = model->component(i);
        if (s.detectors.empty()) {
            continue;
        }
        BitVec e = dec.decode_effect(DetectionEvents{s.detectors});
        BitVec e2 = dec.decode_effect(DetectionEvents{s.detectors});
        EXPECT_TRUE(e == e2);
        checked++;
    }
    EXPECT_GT(checked, 100u);
}

TEST(decoder, dump_lists_edges) {
    auto layout = std::make_shared<const DetectorLayout>(make_timeline(3, std::vector<CycleSpec>(2, {CodeVariant::S1, true})));
    auto model = std::make_shared<const ErrorModel>(layout, NoiseParams{0.001});
    Decoder dec = build_decoder(model);
    std::string text = dec.x_errors->dump(*layout);
    EXPECT_NE(text.find("boundary"), std::string::npos);
    EXPECT_NE(text.find("Z(1,0)@0"), std::string::npos);
    size_t lines = (size_t)std::count(text.begin(), text.end(), '\n');
    EXPECT_EQ(lines, dec.x_errors->edges().size() + 1);
}

TEST(decoder, unit_weights_switch) {
    auto layout = std::make_shared<const DetectorLayout>(make_timeline(3, std::vector<CycleSpec>(2, {CodeVariant::S1, true})));
    auto model = std::make_shared<const ErrorModel>(layout, NoiseParams{0.001});
    DecoderOptions opt;
    opt.unit_weights = true;
    Decoder dec = build_decoder(model, opt);
    for (const auto &e : dec.x_errors->edges()) {
        EXPECT_EQ(e.weight, (int64_t)MatchingGraph::kWeightScale);
    }
}
