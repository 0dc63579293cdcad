// Copyright 2026 The bcdist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bcdist/circuits.h"

#include "gtest/gtest.h"

#include "bcdist/errors.h"
#include "bcdist/werner_enum.h"

using namespace bcd;

namespace {

const Protocol &optimum(int n) {
    static std::map<int, std::pair<DistinctResult, size_t>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        auto r = distinct_protocols(n);
        auto d = best_fidelity_protocol(r.protocols, default_grid());
        it = cache.emplace(n, std::make_pair(std::move(r), d.primary)).first;
    }
    return it->second.first.protocols[it->second.second];
}

CliffordCircuit random_circuit(int n, int len, Rng &rng) {
    CliffordCircuit c{n, {}};
    std::uniform_int_distribution<int> q(1, n), kind(0, 5);
    for (int k = 0; k < len; k++) {
        int a = q(rng), b;
        do b = q(rng);
        while (b == a);
        switch (kind(rng)) {
            case 0: c.gates.push_back(Gate::h(a)); break;
            case 1: c.gates.push_back(Gate::s(a)); break;
            case 2: c.gates.push_back(Gate::x(a)); break;
            case 3: c.gates.push_back(Gate::cnot(a, b)); break;
            case 4: c.gates.push_back(Gate::cz(a, b)); break;
            default: c.gates.push_back(Gate::swap(a, b)); break;
        }
    }
    return c;
}

}  // namespace

TEST(circuits, trivial_images) {
    EXPECT_TRUE(circuit_to_symplectic({3, {}}).matrix().is_identity());
    EXPECT_TRUE(circuit_to_symplectic({2, {Gate::cnot(1, 2), Gate::cnot(1, 2)}}).matrix().is_identity());
    EXPECT_THROW(circuit_to_symplectic({2, {Gate::h(3)}}), DimensionError);
}

TEST(circuits, temporal_order) {
    // H then S maps X -> Z -> Z; S then H maps X -> Y -> Y.
    auto hs = circuit_to_symplectic({1, {Gate::h(1), Gate::s(1)}});
    EXPECT_EQ(hs.apply(PauliVector::from_string("X")).str(), "Z");
    auto sh = circuit_to_symplectic({1, {Gate::s(1), Gate::h(1)}});
    EXPECT_EQ(sh.apply(PauliVector::from_string("X")).str(), "Y");
}

TEST(circuits, homomorphism) {
    Rng rng(4);
    for (int t = 0; t < 50; t++) {
        int n = 2 + t % 4;
        auto a = random_circuit(n, 12, rng), b = random_circuit(n, 12, rng);
        EXPECT_EQ(circuit_to_symplectic(a + b), circuit_to_symplectic(b) * circuit_to_symplectic(a));
        EXPECT_TRUE(is_symplectic(circuit_to_symplectic(a).matrix()));
    }
}

TEST(circuits, depth_and_counts) {
    CliffordCircuit h{1, {Gate::h(1)}};
    EXPECT_EQ(depth(h), 1);
    EXPECT_EQ(two_qubit_count(h), 0);
    EXPECT_EQ(depth({3, {Gate::cnot(1, 2), Gate::h(3), Gate::cz(2, 3)}}), 2);
    const std::pair<int, int> expected[] = {{4, 3}, {7, 5}, {8, 6}, {11, 6}, {13, 7}};
    for (int n = 4; n <= 8; n++) {
        const auto &c = published_circuits().at(n);
        EXPECT_EQ(two_qubit_count(c), expected[n - 4].first) << n;
        EXPECT_EQ(depth(c), expected[n - 4].second) << n;
    }
}

TEST(circuits, published_circuits_verify) {
    for (int n = 4; n <= 7; n++) {
        const auto &c = published_circuits().at(n);
        auto m = circuit_to_symplectic(c);
        EXPECT_TRUE(is_symplectic(m.matrix()));
        auto s = werner_stats(m, n);
        EXPECT_EQ(s.p_suc, optimum(n).stats.p_suc) << n;
        EXPECT_EQ(s.f_num, optimum(n).stats.f_num) << n;
    }
}

TEST(circuits, json_round_trip) {
    const auto &c = published_circuits().at(5);
    auto text = circuit_to_json(c);
    EXPECT_EQ(circuit_from_json(text, 5), c);
    EXPECT_EQ(circuit_to_json({2, {Gate::cnot(2, 1)}}), R"([{"gate":"CNOT","qubits":[2,1]}])");
    EXPECT_THROW(circuit_from_json("[{\"gate\":\"CNOT\",\"qubits\":[1]}]", 2), InputError);
    EXPECT_THROW(circuit_from_json("{", 2), InputError);
}

TEST(circuits, diagram_has_one_row_per_qubit) {
    auto text = circuit_diagram(published_circuits().at(4));
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
    EXPECT_NE(text.find("q1 : -X-"), std::string::npos);
}

TEST(circuits, borel_suffix_invariance) {
    // Trailing gates from {X_i, S_i, CNOT_ij : j < i} act as left factors and do not change the statistics.
    Rng rng(12);
    for (int n = 3; n <= 6; n++) {
        auto base_c = synthesis_candidate(n, rng, false);
        auto ref = werner_stats(circuit_to_symplectic(base_c), n);
        for (int t = 0; t < 20; t++) {
            CliffordCircuit tail{n, {}};
            std::uniform_int_distribution<int> q(1, n), kind(0, 2);
            for (int k = 0; k < 8; k++) {
                int i = q(rng), j = q(rng);
                switch (kind(rng)) {
                    case 0: tail.gates.push_back(Gate::x(i)); break;
                    case 1: tail.gates.push_back(Gate::s(i)); break;
                    default:
                        if (j < i) tail.gates.push_back(Gate::cnot(i, j));
                }
            }
            EXPECT_EQ(werner_stats(circuit_to_symplectic(base_c + tail), n), ref);
        }
    }
}

TEST(circuits, synthesize_dejmps) {
    SynthesisOptions opt;
    opt.budget = 20000;
    auto res = synthesize(optimum(2).profile, 2, opt);
    ASSERT_TRUE(res.found);
    EXPECT_EQ(two_qubit_count(res.circuit), 1);
    EXPECT_EQ(res.circuit.gates.back(), Gate::h(2));
    EXPECT_EQ(werner_profile(circuit_to_symplectic(res.circuit)).canonical(), optimum(2).profile);
}

TEST(circuits, synthesize_n4) {
    SynthesisOptions opt;
    opt.budget = 400000;
    auto res = synthesize(optimum(4).profile, 4, opt);
    ASSERT_TRUE(res.found);
    EXPECT_LE(res.best_two_qubit, 4);
    EXPECT_LE(res.best_depth, 3);
    EXPECT_EQ(two_qubit_count(res.circuit), res.best_two_qubit);
    EXPECT_EQ(depth(res.circuit), res.best_depth);
    EXPECT_EQ(werner_profile(circuit_to_symplectic(res.circuit)).canonical(), optimum(4).profile);
}

TEST(circuits, synthesize_independent_of_jobs) {
    SynthesisOptions a;
    a.budget = 30000;
    a.chunk_trials = 1000;
    auto r1 = synthesize(optimum(4).profile, 4, a);
    a.jobs = 3;
    auto r2 = synthesize(optimum(4).profile, 4, a);
    EXPECT_EQ(r1.circuit, r2.circuit);
    EXPECT_EQ(r1.hits, r2.hits);
    EXPECT_EQ(r1.trial, r2.trial);
}

TEST(circuits, synthesize_patience_stops_early) {
    SynthesisOptions a;
    a.budget = 1000000;
    a.chunk_trials = 1000;
    a.patience = 2;
    auto r = synthesize(optimum(3).profile, 3, a);
    EXPECT_TRUE(r.found);
    EXPECT_LE(r.trials, 3000u);
}

TEST(circuits, synthesize_miss_reports_not_found) {
    SynthesisOptions a;
    a.budget = 10;
    // A profile no circuit of this family reaches: the identity protocol.
    auto id = werner_profile(SymplecticMatrix::identity(3)).canonical();
    auto r = synthesize(id, 3, a);
    EXPECT_FALSE(r.found);
    EXPECT_EQ(r.trials, 10u);
}
