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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bcdist/circuits.h"
#include "bcdist/cli.h"
#include "bcdist/dejmps.h"
#include "bcdist/metrics.h"
#include "bcdist/parallel.h"
#include "bcdist/pauli_state.h"
#include "bcdist/subgroups.h"
#include "bcdist/transversal.h"
#include "bcdist/werner_enum.h"

using namespace bcd;

namespace {

// Coefficients in ascending powers of F.
const std::map<int, const char *> kPsucRows = {
    {2, "5/9;-4/9;8/9"},
    {3, "7/27;0;-4/9;32/27"},
    {4, "1/9;4/27;-4/9;0;32/27"},
    {5, "2/27;-5/27;10/9;-80/27;80/27"},
    {6, "1/27;-14/243;40/243;16/243;-256/243;320/243;128/243"},
    {7, "37/2187;-37/2187;49/729;-44/2187;-796/2187;320/729;-128/2187;2048/2187"},
    {8, "53/6561;-16/6561;-4/6561;416/6561;-1120/6561;-64/6561;1664/6561;-1024/6561;6656/6561"},
};
const std::map<int, const char *> kFnumRows = {
    {2, "1/9;-2/9;10/9"},
    {3, "2/27;-1/9;0;28/27"},
    {4, "1/27;0;-2/9;8/27;8/9"},
    {5, "0;5/27;-20/27;10/9;-20/27;32/27"},
    {6, "1/243;10/243;-32/243;8/243;80/243;-112/243;32/27"},
    {7, "8/2187;-2/2187;20/729;-199/2187;-44/2187;196/729;-592/2187;2368/2187"},
    {8, "13/6561;-8/6561;52/6561;-8/6561;-560/6561;832/6561;-32/6561;-51/6561;6784/6561"},
};
// Coefficients in ascending powers of ε = 1 - F.
const std::map<int, const char *> kPsucEpsRows = {
    {2, "1;-4/3;8/9"},
    {3, "1;-2;4/3"},
    {4, "1;-2;4/3;-8/27"},
    {5, "1;-14/3;28/3;-256/27;400/81;-256/243"},
    {6, "1;-5;32/3;-12;608/81;-608/243;256/729"},
    {7, "1;-7;190/9;-944/27;928/27;-544/27;1600/243;-2048/2187"},
    {8, "1;-23/3;244/9;-1540/27;6280/81;-16832/243;28768/729;-9472/729;4096/2187"},
};
const std::map<int, const char *> kFnumEpsRows = {
    {2, "1;-2;10/9"},
    {3, "1;-3;10/3;-4/3"},
    {4, "1;-3;10/3;-44/27;8/27"},
    {5, "1;-5;92/9;-284/27;440/81;-272/243"},
    {6, "1;-17/3;122/9;-466/27;992/81;-1112/243;512/729"},
    {7, "1;-7;190/9;-320/9;2936/81;-1816/81;5680/729;-2560/2187"},
    {8, "1;-8;259/9;-544/9;2180/27;-17000/243;27872/729;-2912/243;3584/2187"},
};
// Leading term of 1 - F_out: (order in ε, coefficient).
const std::map<int, std::pair<int, Rational>> kLeading = {
    {2, {1, Rational(2, 3)}},  {3, {1, Rational(1, 3)}},   {4, {2, Rational(2, 3)}},  {5, {3, Rational(10, 9)}},
    {6, {3, Rational(8, 9)}}, {7, {3, Rational(13, 27)}}, {8, {3, Rational(8, 27)}},
};

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string &what) {
        if (!ok) pass = false;
        notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
    void note(const std::string &what) { notes.push_back("     " + what); }
};

int failures = 0;

template <typename Fn>
void run(int id, const char *title, Fn &&fn) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        fn(o);
    } catch (const std::exception &e) {
        o.check(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) failures++;
    std::printf("%s %2d %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, secs);
    for (const auto &s : o.notes) std::printf("        %s\n", s.c_str());
    std::fflush(stdout);
}

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::map<int, DistinctResult> distinct;
std::map<int, DominanceReport> dominance;

const Protocol &optimum(int n) { return distinct.at(n).protocols[dominance.at(n).primary]; }

std::vector<PolyStats> stats_of(const std::vector<Protocol> &ps) {
    std::vector<PolyStats> out;
    for (const auto &p : ps) out.push_back(p.stats);
    return out;
}

std::set<std::pair<RationalPolynomial, RationalPolynomial>> stat_pairs(const std::vector<Protocol> &ps) {
    std::set<std::pair<RationalPolynomial, RationalPolynomial>> out;
    for (const auto &p : ps) out.insert({p.stats.p_suc, p.stats.f_num});
    return out;
}

bool sorted_near(NumericStats a, NumericStats b, double tol) {
    canonicalize(a);
    canonicalize(b);
    bool ok = std::abs(a.p_suc - b.p_suc) < tol && std::abs(a.f_num - b.f_num) < tol;
    for (int k = 0; k < 3; k++) ok = ok && std::abs(a.fi_nums[k] - b.fi_nums[k]) < tol;
    return ok;
}

NumericStats random_state_stats(const SymplecticMatrix &m, uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> probs(1u << (2 * m.n()));
    for (double &p : probs) p = u(rng);
    return numeric_stats(m, BellDiagonalState::from_probs(m.n(), probs, true));
}

std::set<uint32_t> image_set(const SymplecticMatrix &m, const std::vector<PauliVector> &vs) {
    std::set<uint32_t> out;
    for (const auto &v : vs) out.insert(m.apply(v.bits));
    return out;
}

std::set<uint32_t> bits_of(const std::vector<PauliVector> &vs) {
    std::set<uint32_t> out;
    for (const auto &v : vs) out.insert(v.bits);
    return out;
}

}  // namespace

int main() {
    const int jobs = default_jobs();
    std::printf("bcdist acceptance (jobs = %d)\n", jobs);

    run(1, "group orders and indices, n = 2..5", [&](Outcome &o) {
        cli::Options opt;
        opt.n = "2..5";
        std::ostringstream out, log;
        cli::cmd_tables(opt, out, log);
        const char *expected =
            "n,sp_order,dn_order,dn_index\n"
            "2,720,48,15\n"
            "3,1451520,4608,315\n"
            "4,47377612800,4128768,11475\n"
            "5,24815256521932800,31708938240,782595\n";
        o.check(out.str() == expected, "tables output matches 720/15, 1451520/315, 47377612800/11475, "
                                       "24815256521932800/782595");
        if (out.str() != expected) o.note(out.str());
    });

    run(2, "distillation subgroup closure", [&](Outcome &o) {
        for (int n : {2, 3}) {
            auto closure = bfs_closure(dn_generators(n));
            uint64_t want = n == 2 ? 48 : 4608;
            o.check(closure.size() == want && dn_order(n) == BigInt(want),
                    fmt("n=%d: closure %zu, formula %s, expected %llu", n, closure.size(), dn_order(n).str().c_str(),
                        static_cast<unsigned long long>(want)));
        }
    });

    run(3, "transversal completeness, n = 2..4", [&](Outcome &o) {
        const size_t want[] = {15, 315, 11475};
        for (int n = 2; n <= 4; n++) {
            auto t0 = std::chrono::steady_clock::now();
            TransversalOptions opt;
            opt.jobs = jobs;
            auto t = build_transversal(n, opt);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            o.check(t.complete && t.size() == want[n - 2],
                    fmt("n=%d: %zu cosets after %llu samples (%.2f s)", n, t.size(),
                        static_cast<unsigned long long>(t.samples), secs));
        }
    });

    run(4, "Werner case counts, n = 2..8", [&](Outcome &o) {
        const uint64_t want[] = {2, 10, 60, 561, 6358, 111540, 2917980};
        for (int n = 2; n <= 8; n++) {
            uint64_t got = enumerate_cases(n).size();
            uint64_t formula = count_ab_pairs_formula(n - 1) * graphs_up_to_iso(n - 1).size();
            o.check(got == want[n - 2] && formula == got,
                    fmt("n=%d: %llu cases", n, static_cast<unsigned long long>(got)));
        }
    });

    run(5, "distinct protocol counts, n = 2..8", [&](Outcome &o) {
        const size_t want[] = {2, 5, 13, 34, 108, 379, 1736};
        for (int n = 2; n <= 8; n++) {
            auto t0 = std::chrono::steady_clock::now();
            DistinctOptions opt;
            opt.jobs = jobs;
            distinct[n] = distinct_protocols(n, opt);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            size_t got = distinct[n].protocols.size();
            o.check(got == want[n - 2], fmt("n=%d: %zu distinct (%.2f s)", n, got, secs));
            dominance[n] = best_fidelity_protocol(distinct[n].protocols, default_grid());
        }
    });

    run(6, "exact polynomials of the best-fidelity protocols", [&](Outcome &o) {
        for (int n = 2; n <= 8; n++) {
            const auto &rep = dominance.at(n);
            const auto &s = optimum(n).stats;
            auto p = RationalPolynomial::parse_coeffs(kPsucRows.at(n));
            auto f = RationalPolynomial::parse_coeffs(kFnumRows.at(n));
            o.check(rep.dominant, fmt("n=%d: one stats group dominates the grid", n));
            o.check(s.p_suc == p, fmt("n=%d: p_suc = %s", n, s.p_suc.str().c_str()));
            if (s.f_num == f) {
                o.check(true, fmt("n=%d: f_num = %s", n, s.f_num.str().c_str()));
            } else {
                int diffs = 0;
                for (int k = 0; k <= std::max(f.degree(), s.f_num.degree()); k++) {
                    if (f.coeff(k) != s.f_num.coeff(k)) {
                        diffs++;
                        o.note(fmt("n=%d: f_num F^%d reference %s, computed %s", n, k, f.coeff(k).str().c_str(),
                                   s.f_num.coeff(k).str().c_str()));
                    }
                }
                bool ref_inconsistent = f(Rational(1)) != Rational(1);
                o.note(fmt("n=%d: reference row gives f_num(1) = %s, computed row gives %s", n,
                           f(Rational(1)).str().c_str(), s.f_num(Rational(1)).str().c_str()));
                o.check(diffs == 1 && ref_inconsistent && s.f_num(Rational(1)) == Rational(1),
                        fmt("n=%d: f_num matches up to one coefficient of an inconsistent row", n));
            }
            auto pe = stats_in_epsilon(s.p_suc), fe = stats_in_epsilon(s.f_num);
            o.check(pe.reflect() == s.p_suc && fe.reflect() == s.f_num,
                    fmt("n=%d: ε-forms agree with exact substitution F = 1 - ε", n));
            bool vp = pe == RationalPolynomial::parse_coeffs(kPsucEpsRows.at(n));
            bool vf = fe == RationalPolynomial::parse_coeffs(kFnumEpsRows.at(n));
            o.check(vp, fmt("n=%d: ε-form of p_suc = %s", n, pe.coeff_str().c_str()));
            o.check(vf, fmt("n=%d: ε-form of f_num = %s", n, fe.coeff_str().c_str()));
            if (!vp || !vf) {
                bool elsewhere = false;
                for (const auto &q : distinct.at(n).protocols) {
                    if ((vp || stats_in_epsilon(q.stats.p_suc) ==
                                   RationalPolynomial::parse_coeffs(kPsucEpsRows.at(n))) &&
                        (vf || stats_in_epsilon(q.stats.f_num) ==
                                   RationalPolynomial::parse_coeffs(kFnumEpsRows.at(n)))) {
                        elsewhere = true;
                    }
                }
                o.note(fmt("n=%d: reference ε-rows %s the ε-form of another enumerated protocol", n,
                           elsewhere ? "are" : "are not"));
            }
            auto lt = leading_infidelity_term(s);
            const auto &want = kLeading.at(n);
            o.check(lt.order == want.first && lt.coefficient == want.second,
                    fmt("n=%d: 1 - F_out = %s ε^%d + ...", n, lt.coefficient.str().c_str(), lt.order));
        }
    });

    run(7, "known protocol recovery", [&](Outcome &o) {
        auto dejmps = werner_stats(circuit_to_symplectic(dejmps_circuit(kDejmpsRotation)), 2);
        o.check(dejmps.p_suc == optimum(2).stats.p_suc && dejmps.f_num == optimum(2).stats.f_num,
                "n=2 optimum equals the DEJMPS circuit");
        auto b2 = best_concatenated(2);
        o.check(b2.stats.p_suc == optimum(2).stats.p_suc && b2.stats.f_num == optimum(2).stats.f_num,
                "n=2 optimum equals the best concatenated plan " + b2.plan.str());
        auto b3 = best_concatenated(3);
        o.check(b3.stats.p_suc == optimum(3).stats.p_suc && b3.stats.f_num == optimum(3).stats.f_num,
                "n=3 optimum equals the best concatenated plan " + b3.plan.str());
    });

    run(8, "n=4 optimum and best concatenated n=5 share F_out", [&](Outcome &o) {
        auto b5 = best_concatenated(5);
        const auto &s4 = optimum(4).stats;
        o.check(b5.stats.f_num * s4.p_suc == s4.f_num * b5.stats.p_suc,
                "f5 p4 = f4 p5 exactly, plan " + b5.plan.str());
        auto lt = leading_infidelity_term(b5.stats);
        o.note(fmt("concatenated n=5: 1 - F_out = %s ε^%d + ...", lt.coefficient.str().c_str(), lt.order));
    });

    run(9, "n=8 degeneracy", [&](Outcome &o) {
        const auto &rep = dominance.at(8);
        const auto &g = rep.groups[rep.best_group];
        std::set<std::array<RationalPolynomial, 3>> fis;
        for (size_t i : g.members) fis.insert(distinct.at(8).protocols[i].stats.fi_nums);
        o.check(rep.dominant && g.members.size() == 4 && fis.size() == 4,
                fmt("%zu protocols share the best (p_suc, f_num), %zu distinct fi_nums", g.members.size(),
                    fis.size()));
    });

    run(10, "published circuits and synthesis", [&](Outcome &o) {
        const std::map<int, std::pair<int, int>> want = {{4, {4, 3}}, {5, {7, 5}}, {6, {8, 6}}, {7, {11, 6}},
                                                          {8, {13, 7}}};
        for (const auto &[n, c] : published_circuits()) {
            auto s = werner_stats(circuit_to_symplectic(c), n);
            bool stats_ok = s.p_suc == optimum(n).stats.p_suc && s.f_num == optimum(n).stats.f_num;
            int tq = two_qubit_count(c), d = depth(c);
            o.check(stats_ok && want.at(n) == std::make_pair(tq, d),
                    fmt("n=%d: verifies %s, (two-qubit, depth) = (%d,%d)", n, stats_ok ? "yes" : "no", tq, d));
        }
        for (int n : {4, 5}) {
            SynthesisOptions opt;
            opt.budget = 10000000;
            opt.jobs = jobs;
            opt.patience = 16;
            auto t0 = std::chrono::steady_clock::now();
            auto r = synthesize(optimum(n).profile, n, opt);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            bool ok = r.found && werner_profile(circuit_to_symplectic(r.circuit)).canonical() == optimum(n).profile;
            o.check(ok, fmt("n=%d synthesis: found at trial %llu of %llu, (%d,%d) (%.2f s)", n,
                            static_cast<unsigned long long>(r.trial), static_cast<unsigned long long>(r.trials),
                            r.best_two_qubit, r.best_depth, secs));
        }
    });

    run(11, "transversal vs case enumeration, n = 2, 3", [&](Outcome &o) {
        for (int n : {2, 3}) {
            TransversalOptions opt;
            opt.jobs = jobs;
            auto t = build_transversal(n, opt);
            std::vector<SymplecticMatrix> reps;
            for (size_t i = 0; i < t.size(); i++) reps.push_back(t.rep(i));
            auto from_t = distinct_from_matrices(n, reps);
            auto key = [](const std::vector<Protocol> &ps) {
                std::set<std::string> out;
                for (const auto &p : ps) {
                    out.insert(p.stats.p_suc.coeff_str() + "|" + p.stats.f_num.coeff_str() + "|" +
                               p.stats.fi_nums[0].coeff_str() + "|" + p.stats.fi_nums[1].coeff_str() + "|" +
                               p.stats.fi_nums[2].coeff_str());
                }
                return out;
            };
            o.check(key(from_t) == key(distinct.at(n).protocols),
                    fmt("n=%d: %zu cosets give %zu distinct stats, enumeration gives %zu", n, t.size(), from_t.size(),
                        distinct.at(n).protocols.size()));
        }
    });

    run(12, "property suites", [&](Outcome &o) {
        Rng rng(2026);
        bool symp = true;
        for (int n = 1; n <= 8; n++) {
            for (int t = 0; t < 50; t++) {
                auto a = random_symplectic(n, rng), b = random_symplectic(n, rng);
                symp = symp && is_symplectic((a * b).matrix()) && (a * a.inverse()).matrix().is_identity();
                SymplecticMatrix w = SymplecticMatrix::identity(n);
                for (int k = 0; k < 20; k++) {
                    std::uniform_int_distribution<int> q(1, n);
                    int i = q(rng), j = q(rng);
                    Gate g = (n > 1 && i != j) ? (k % 3 == 0 ? Gate::cnot(i, j) : k % 3 == 1 ? Gate::cz(i, j)
                                                                                              : Gate::swap(i, j))
                                               : (k % 2 ? Gate::h(i) : Gate::s(i));
                    w = gate_matrix(g, n) * w;
                }
                symp = symp && is_symplectic(w.matrix());
            }
        }
        o.check(symp, "products, inverses and gate words stay symplectic, n = 1..8");

        auto base_pillar = [](const SymplecticMatrix &m) {
            int n = m.n();
            bool b = image_set(m, base(n)) == bits_of(base(n));
            bool p = image_set(m, pillars(n)) == bits_of(pillars(n));
            return b == p && b == is_in_dn(m);
        };
        size_t sp4 = 0;
        bool bp = true;
        for (uint32_t code = 0; code < (1u << 16); code++) {
            BinaryMatrix m(2);
            for (int i = 0; i < 4; i++) m.set_row(i, (code >> (4 * i)) & 0xF);
            if (!is_symplectic(m)) continue;
            sp4++;
            bp = bp && base_pillar(SymplecticMatrix::trusted(m));
        }
        o.check(bp && sp4 == 720, fmt("base and pillar preservation coincide on all %zu elements of Sp(4)", sp4));
        bool bp_sampled = true;
        for (int n : {3, 4}) {
            for (int t = 0; t < 500; t++) bp_sampled = bp_sampled && base_pillar(random_symplectic(n, rng));
            for (int t = 0; t < 200; t++) {
                bp_sampled = bp_sampled && base_pillar(random_word(dn_generators(n), 25, rng));
            }
        }
        o.check(bp_sampled, "base and pillar preservation coincide on sampled matrices, n = 3, 4");

        bool dn_ok = true, kn_ok = true;
        for (int n = 2; n <= 5; n++) {
            for (int t = 0; t < 20; t++) {
                auto m = random_symplectic(n, rng);
                auto d = random_word(dn_generators(n), 30, rng);
                uint64_t seed = rng();
                dn_ok = dn_ok && sorted_near(random_state_stats(m, seed), random_state_stats(d * m, seed), 1e-12);
                auto ref = werner_stats(m, n);
                kn_ok = kn_ok && werner_stats(m * random_word(kn_generators(n), 30, rng), n) == ref;
            }
        }
        o.check(dn_ok, "left multiplication by D_n preserves sorted statistics of random states, n = 2..5");
        o.check(kn_ok, "right multiplication by K_n preserves Werner statistics, n = 2..5");

        bool unit = true;
        size_t total = 0;
        for (int n = 2; n <= 8; n++) {
            for (const auto &p : distinct.at(n).protocols) {
                unit = unit && p.stats.p_suc(Rational(1)) == Rational(1) && p.stats.f_num(Rational(1)) == Rational(1);
                total++;
            }
        }
        o.check(unit, fmt("p_suc(1) = F_out(1) = 1 for all %zu protocols, n = 2..8", total));

        double worst = 0;
        for (int n = 2; n <= 8; n++) {
            const auto &ps = distinct.at(n).protocols;
            std::uniform_int_distribution<size_t> pick(0, ps.size() - 1);
            std::uniform_real_distribution<double> fu(0.25, 1.0);
            for (int t = 0; t < 50; t++) {
                const auto &p = ps[pick(rng)];
                double f = fu(rng);
                auto ns = numeric_stats(p.rep, BellDiagonalState::werner(n, f));
                worst = std::max({worst, std::abs(p.stats.p_suc(f) - ns.p_suc), std::abs(p.stats.f_num(f) - ns.f_num)});
            }
        }
        o.check(worst <= 1e-12, fmt("polynomial vs numeric on 50 random (protocol, F) per n: max error %.3g", worst));
    });

    run(13, "metric sanity", [&](Outcome &o) {
        std::map<int, std::vector<PolyStats>> full_stats;
        std::vector<ProtocolSet> full, concat;
        for (int n = 2; n <= 8; n++) full_stats[n] = stats_of(distinct.at(n).protocols);
        for (int n = 2; n <= 8; n++) {
            full.push_back({n, full_stats[n]});
            concat.push_back({n, concatenated_werner(n).stats});
        }
        double best_ratio = 0, best_f = 0;
        for (int k = 500; k < 760; k++) {
            double f = k / 1000.0;
            auto a = best_metric(Metric::yield, f, full), b = best_metric(Metric::yield, f, concat);
            if (b.value > 0 && a.value / b.value > best_ratio) {
                best_ratio = a.value / b.value;
                best_f = f;
            }
        }
        o.check(best_ratio > 2.5, fmt("max yield ratio over F_in < 0.76: %.4g at F_in = %.3f", best_ratio, best_f));
        for (int n = 4; n <= 8; n++) {
            ProtocolSet fs{n, full_stats[n]}, cs{n, concatenated_werner(n).stats};
            bool ge = true, strict = false;
            std::string vals;
            for (double f : {0.85, 0.9, 0.95}) {
                double a = best_metric(Metric::ree, f, {&fs, 1}).value;
                double b = best_metric(Metric::ree, f, {&cs, 1}).value;
                ge = ge && a >= b;
                strict = strict || a > b;
                vals += fmt(" %.4f/%.4f", a, b);
            }
            o.check(ge && strict, fmt("n=%d: REE product full/concatenated at 0.85, 0.9, 0.95:%s", n, vals.c_str()));
        }
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
