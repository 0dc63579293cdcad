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

#include "bcdist/dejmps.h"

#include <set>

#include "gtest/gtest.h"

#include "bcdist/errors.h"
#include "bcdist/subgroups.h"

using namespace bcd;

namespace {

BellVector random_bell(Rng &rng) {
    std::uniform_real_distribution<double> u(0.01, 1.0);
    BellVector v{u(rng), u(rng), u(rng), u(rng)};
    double s = v[0] + v[1] + v[2] + v[3];
    for (double &x : v) x /= s;
    return v;
}

BellVector werner_vector(double f) { return {f, (1 - f) / 3, (1 - f) / 3, (1 - f) / 3}; }

TreePlan random_rotations(TreePlan plan, Rng &rng) {
    std::uniform_int_distribution<int> r(0, 5);
    for (auto &node : plan.nodes) {
        if (node.left >= 0) node.rotation = r(rng);
    }
    return plan;
}

void for_each_plan(int n, const std::function<void(const TreePlan &)> &fn) {
    for (const auto &shape : tree_shapes(n)) {
        std::vector<int> internal;
        for (int v = 0; v < static_cast<int>(shape.nodes.size()); v++) {
            if (shape.nodes[v].left >= 0) internal.push_back(v);
        }
        int total = 1;
        for (size_t k = 0; k < internal.size(); k++) total *= 6;
        for (int code = 0; code < total; code++) {
            TreePlan p = shape;
            int c = code;
            for (int v : internal) {
                p.nodes[v].rotation = c % 6;
                c /= 6;
            }
            fn(p);
        }
    }
}

const Protocol &full_optimum(int n) {
    static std::map<int, std::pair<DistinctResult, size_t>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        auto r = distinct_protocols(n);
        auto d = best_fidelity_protocol(r.protocols, default_grid());
        it = cache.emplace(n, std::make_pair(std::move(r), d.primary)).first;
    }
    return it->second.first.protocols[it->second.second];
}

}  // namespace

TEST(dejmps, rotation_catalog_covers_sp2) {
    std::set<std::array<uint32_t, 2>> images;
    for (const auto &rot : rotation_catalog()) {
        auto m = circuit_to_symplectic({1, rot.gates}).matrix();
        images.insert({m.row(0), m.row(1)});
    }
    EXPECT_EQ(images.size(), 6u);
    auto m = circuit_to_symplectic({1, rotation_catalog()[kDejmpsRotation].gates});
    EXPECT_EQ(m.apply(PauliVector::from_string("X")).str(), "X");
    EXPECT_EQ(m.apply(PauliVector::from_string("Y")).str(), "Z");
    EXPECT_EQ(m.apply(PauliVector::from_string("Z")).str(), "Y");
}

TEST(dejmps, step_table_is_symmetric) {
    for (const auto &t : dejmps_step_table()) {
        int survivors = 0;
        for (int i = 0; i < 4; i++) {
            for (int j = 0; j < 4; j++) {
                EXPECT_EQ(t[i][j], t[j][i]);
                survivors += t[i][j] >= 0;
            }
        }
        EXPECT_EQ(survivors, 8);
        EXPECT_EQ(t[0][0], 0);
    }
}

TEST(dejmps, perfect_pairs) {
    for (int rot = 0; rot < 6; rot++) {
        auto r = dejmps_step({1, 0, 0, 0}, {1, 0, 0, 0}, rot);
        EXPECT_EQ(r.p_suc, 1.0);
        EXPECT_EQ(r.out, (BellVector{1, 0, 0, 0}));
    }
}

TEST(dejmps, werner_step_values) {
    double f = 0.7;
    double p = 8.0 / 9 * f * f - 4.0 / 9 * f + 5.0 / 9;
    double fn = 10.0 / 9 * f * f - 2.0 / 9 * f + 1.0 / 9;
    auto r = dejmps_step(werner_vector(f), werner_vector(f), kDejmpsRotation);
    EXPECT_NEAR(r.p_suc, 0.68, 1e-12);
    EXPECT_NEAR(r.p_suc, p, 1e-12);
    EXPECT_NEAR(r.out[0], fn / p, 1e-12);
    EXPECT_NEAR(r.out[0], 0.735294, 1e-6);
}

TEST(dejmps, werner_step_symbolic) {
    auto shape = tree_shapes(2)[0];
    for (int rot = 0; rot < 6; rot++) {
        auto s = plan_stats_werner(shape.with_rotation(rot));
        EXPECT_EQ(s.p_suc.str(), "8/9F^2-4/9F+5/9");
        EXPECT_EQ(s.f_num.str(), "10/9F^2-2/9F+1/9");
    }
}

TEST(dejmps, unnormalized_step_matches_circuit) {
    Rng rng(8);
    for (int t = 0; t < 30; t++) {
        auto a = random_bell(rng), b = random_bell(rng);
        int rot = t % 6;
        auto r = dejmps_step(a, b, rot);
        auto u = dejmps_step_unnormalized(a, b, rot);
        EXPECT_NEAR(u[0] + u[1] + u[2] + u[3], r.p_suc, 1e-14);
        for (int k = 0; k < 4; k++) EXPECT_NEAR(u[k] / r.p_suc, r.out[k], 1e-12);
    }
}

TEST(dejmps, rejects_unnormalized_input) {
    EXPECT_THROW(dejmps_step({0.5, 0.2, 0.2, 0.2}, {1, 0, 0, 0}, 0), InputError);
    EXPECT_THROW(dejmps_step({1.1, -0.1, 0, 0}, {1, 0, 0, 0}, 0), InputError);
    EXPECT_THROW(dejmps_step({1, 0, 0, 0}, {1, 0, 0, 0}, 6), InputError);
}

TEST(dejmps, tree_shape_counts) {
    const size_t expected[] = {1, 1, 1, 2, 3, 6, 11, 23};
    for (int n = 1; n <= 8; n++) {
        auto shapes = tree_shapes(n);
        EXPECT_EQ(shapes.size(), expected[n - 1]) << n;
        std::set<std::string> seen;
        for (const auto &s : shapes) {
            EXPECT_EQ(s.leaves(), n);
            seen.insert(s.str());
        }
        EXPECT_EQ(seen.size(), shapes.size());
    }
    EXPECT_EQ(tree_shapes(4)[0].with_rotation(0).str(), "I(I(*,*),I(*,*))");
    EXPECT_EQ(tree_shapes(4)[1].with_rotation(0).str(), "I(I(I(*,*),*),*)");
}

TEST(dejmps, plan_json) {
    auto p = tree_shapes(3)[0].with_rotation(kDejmpsRotation);
    EXPECT_EQ(p.json(), R"({"children":[{"children":["pair","pair"],"rotation":"HSH"},"pair"],"rotation":"HSH"})");
}

TEST(dejmps, chain_rule_matches_whole_circuit) {
    Rng rng(31);
    for (int n = 2; n <= 5; n++) {
        for (const auto &shape : tree_shapes(n)) {
            for (int t = 0; t < 5; t++) {
                auto plan = random_rotations(shape, rng);
                auto v = random_bell(rng);
                std::vector<BellVector> pairs(n, v);
                auto m = circuit_to_symplectic(plan_circuit(plan));
                auto direct = numeric_stats(m, BellDiagonalState::product(pairs));
                auto chained = plan_stats(plan, v);
                EXPECT_NEAR(chained.p_suc, direct.p_suc, 1e-12);
                EXPECT_NEAR(chained.f_num, direct.f_num, 1e-12);
                for (int k = 0; k < 3; k++) EXPECT_NEAR(chained.fi_nums[k], direct.fi_nums[k], 1e-12);
                EXPECT_EQ(plan_stats_werner(plan), werner_stats(m, n));
            }
        }
    }
}

TEST(dejmps, plans_are_bilocal_clifford_protocols) {
    for (int n = 2; n <= 4; n++) {
        auto full = distinct_protocols(n);
        std::set<std::pair<RationalPolynomial, RationalPolynomial>> known;
        for (const auto &p : full.protocols) known.insert({p.stats.p_suc, p.stats.f_num});
        for_each_plan(n, [&](const TreePlan &plan) {
            auto s = plan_stats_werner(plan);
            EXPECT_TRUE(known.count({s.p_suc, s.f_num})) << plan.str();
        });
    }
}

TEST(dejmps, concatenated_set_covers_all_plans) {
    for (int n = 2; n <= 5; n++) {
        const auto &set = concatenated_werner(n);
        std::set<std::pair<RationalPolynomial, RationalPolynomial>> have;
        for (size_t i = 0; i < set.stats.size(); i++) {
            have.insert({set.stats[i].p_suc, set.stats[i].f_num});
            EXPECT_EQ(plan_stats_werner(set.plans[i]), set.stats[i]);
        }
        for_each_plan(n, [&](const TreePlan &plan) {
            auto s = plan_stats_werner(plan);
            EXPECT_TRUE(have.count({s.p_suc, s.f_num})) << plan.str();
        });
    }
}

TEST(dejmps, perfect_input_is_fixed) {
    for (int n = 2; n <= 8; n++) {
        for (const auto &s : concatenated_werner(n).stats) {
            EXPECT_EQ(s.p_suc(Rational(1)), Rational(1));
            EXPECT_EQ(s.f_num(Rational(1)), Rational(1));
        }
    }
}

TEST(dejmps, known_optima) {
    for (int n = 2; n <= 3; n++) {
        auto b = best_concatenated(n);
        EXPECT_EQ(b.stats.p_suc, full_optimum(n).stats.p_suc) << n;
        EXPECT_EQ(b.stats.f_num, full_optimum(n).stats.f_num) << n;
    }
    auto b5 = best_concatenated(5);
    auto lt = leading_infidelity_term(b5.stats);
    EXPECT_EQ(lt.order, 2);
    EXPECT_EQ(lt.coefficient, Rational(2, 3));
    // Same F_out as the four-pair optimum: f5·p4 = f4·p5.
    const auto &s4 = full_optimum(4).stats;
    EXPECT_EQ(b5.stats.f_num * s4.p_suc, s4.f_num * b5.stats.p_suc);
}

TEST(dejmps, numeric_mode_agrees_with_polynomials) {
    for (int n = 2; n <= 6; n++) {
        for (double f : {0.6, 0.8, 0.95}) {
            auto num = concatenated_numeric(n, werner_vector(f));
            const auto &poly = concatenated_werner(n);
            double best_poly = 0;
            for (const auto &s : poly.stats) best_poly = std::max(best_poly, s.f_num(f) / s.p_suc(f));
            auto best = best_concatenated(n, werner_vector(f));
            EXPECT_NEAR(f_out(best.stats), best_poly, 1e-12);
            for (const auto &s : num.stats) EXPECT_LE(f_out(s), f_out(best.stats));
        }
    }
}

TEST(dejmps, numeric_mode_general_state) {
    BellVector v{0.7, 0.15, 0.10, 0.05};
    auto best = best_concatenated(2, v);
    double expected = 0;
    for (int rot = 0; rot < 6; rot++) expected = std::max(expected, dejmps_step(v, v, rot).out[0]);
    EXPECT_NEAR(f_out(best.stats), expected, 1e-15);
    auto direct = plan_stats(best.plan, v);
    EXPECT_NEAR(direct.f_num, best.stats.f_num, 1e-15);
}
