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

#include "bcdist/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bcdist/cache.h"
#include "bcdist/circuits.h"
#include "bcdist/dejmps.h"
#include "bcdist/errors.h"
#include "bcdist/subgroups.h"
#include "bcdist/transversal.h"
#include "bcdist/werner_enum.h"

namespace bcd::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string seconds_since(Clock::time_point t0) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", std::chrono::duration<double>(Clock::now() - t0).count());
    return buf;
}

int single_n(const Options &opt, int lo, int hi) {
    auto ns = parse_n_range(opt.n, lo, hi);
    if (ns.size() != 1) throw InputError("this command takes a single --n value");
    return ns[0];
}

void ensure_dir(const std::string &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw InputError("cannot create cache directory " + dir + ": " + ec.message());
}

DistinctResult load_werner(const Options &opt, int n) {
    auto path = werner_cache_path(opt.cache, n);
    if (!std::filesystem::exists(path)) {
        throw MissingCache("no Werner cache for n=" + std::to_string(n) + " at " + path + "; build it with `bcdist werner --n " +
                           std::to_string(n) + " --cache " + opt.cache + "`");
    }
    return read_werner_cache(path);
}

Transversal load_transversal(const Options &opt, int n) {
    auto path = transversal_cache_path(opt.cache, n);
    if (!std::filesystem::exists(path)) {
        throw MissingCache("no transversal cache for n=" + std::to_string(n) + " at " + path +
                           "; build it with `bcdist transversal --n " + std::to_string(n) + " --cache " + opt.cache + "`");
    }
    return read_transversal_cache(path);
}

std::vector<GridPoint> grid_of(const Options &opt) {
    return make_grid(opt.f_min, opt.f_max, opt.f_step);
}

BellVector parse_pair(const nlohmann::json &j) {
    if (!j.is_array() || j.size() != 4) throw InputError("state: a pair needs four Bell coefficients");
    BellVector v;
    double sum = 0;
    for (int k = 0; k < 4; k++) {
        v[k] = j[k].get<double>();
        if (!(v[k] >= 0)) throw InputError("state: negative Bell coefficient");
        sum += v[k];
    }
    if (std::abs(sum - 1) > 1e-12) throw InputError("state: Bell coefficients of a pair do not sum to 1");
    return v;
}

BellDiagonalState read_state(const std::string &path, int n) {
    if (path.empty()) throw InputError("eval needs --state FILE");
    std::ifstream in(path);
    if (!in) throw InputError("cannot read state file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
        if (j.contains("werner")) {
            double f = j.at("werner").get<double>();
            if (!(f >= 0 && f <= 1)) throw InputError("state: Werner fidelity outside [0, 1]");
            return BellDiagonalState::werner(n, f);
        }
        if (j.contains("pair")) {
            std::vector<BellVector> pairs(n, parse_pair(j.at("pair")));
            return BellDiagonalState::product(pairs);
        }
        if (j.contains("pairs")) {
            std::vector<BellVector> pairs;
            for (const auto &p : j.at("pairs")) pairs.push_back(parse_pair(p));
            if (static_cast<int>(pairs.size()) != n) throw InputError("state: number of pairs differs from --n");
            return BellDiagonalState::product(pairs);
        }
        if (j.contains("probs")) {
            auto probs = j.at("probs").get<std::vector<double>>();
            if (probs.size() != (size_t{1} << (2 * n))) throw InputError("state: probs needs 4^n entries");
            return BellDiagonalState::from_probs(n, std::move(probs));
        }
    } catch (const nlohmann::json::exception &e) {
        throw InputError("state: " + std::string(e.what()));
    }
    throw InputError("state: expected one of the keys werner, pair, pairs, probs");
}

std::string json_str(const std::string &s) {
    return nlohmann::json(s).dump();
}

struct CircuitReport {
    bool matches = false;
    PolyStats stats;
};

CircuitReport check_circuit(const CliffordCircuit &c, const Protocol &best) {
    CircuitReport r;
    r.stats = werner_stats(circuit_to_symplectic(c), c.n);
    r.matches = r.stats.p_suc == best.stats.p_suc && r.stats.f_num == best.stats.f_num;
    return r;
}

void print_circuit(std::ostream &out, const std::string &source, const CliffordCircuit &c, const CircuitReport &r,
                   const nlohmann::json &extra) {
    nlohmann::json j;
    j["n"] = c.n;
    j["source"] = source;
    j["gates"] = nlohmann::json::parse(circuit_to_json(c));
    j["two_qubit_gates"] = two_qubit_count(c);
    j["depth"] = depth(c);
    j["verified"] = r.matches;
    j["p_suc"] = r.stats.p_suc.str();
    j["f_num"] = r.stats.f_num.str();
    for (const auto &[k, v] : extra.items()) j[k] = v;
    out << j.dump() << "\n\n" << circuit_diagram(c);
}

}  // namespace

std::vector<int> parse_n_range(const std::string &text, int lo, int hi) {
    int a = 0, b = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d..%d%c", &a, &b, &tail) == 2 || std::sscanf(text.c_str(), "%d-%d%c", &a, &b, &tail) == 2) {
    } else if (std::sscanf(text.c_str(), "%d%c", &a, &tail) == 1) {
        b = a;
    } else {
        throw InputError("cannot parse --n '" + text + "' (expected N or A..B)");
    }
    if (a > b || a < lo || b > hi) {
        throw InputError("--n '" + text + "' outside the supported range " + std::to_string(lo) + ".." + std::to_string(hi));
    }
    std::vector<int> out;
    for (int n = a; n <= b; n++) out.push_back(n);
    return out;
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string decimal_coeffs(const RationalPolynomial &p) {
    std::string s;
    for (size_t k = 0; k < p.coeffs().size(); k++) {
        if (k) s += ';';
        s += fmt_double(p.coeffs()[k].to_double());
    }
    return s.empty() ? "0" : s;
}

int cmd_tables(const Options &opt, std::ostream &out, std::ostream &) {
    out << "n,sp_order,dn_order,dn_index\n";
    for (int n : parse_n_range(opt.n, 1, 16)) {
        out << n << ',' << sp_order(n).str() << ',' << dn_order(n).str() << ',' << dn_index(n).str() << '\n';
    }
    return kOk;
}

int cmd_werner(const Options &opt, std::ostream &out, std::ostream &log) {
    auto ns = parse_n_range(opt.n, 2, 8);
    auto grid = grid_of(opt);
    ensure_dir(opt.cache);
    if (opt.protocols) {
        out << "n,index,case_index,source,p_suc,f_num,p_suc_exact,f_num_exact,fi1_exact,fi2_exact,fi3_exact\n";
    } else {
        out << "n,cases,distinct,dominant,best_group_size,crossovers,p_suc,f_num,p_suc_exact,f_num_exact,"
               "p_suc_decimal,f_num_decimal,leading_order,leading_coefficient\n";
    }
    for (int n : ns) {
        auto t0 = Clock::now();
        auto path = werner_cache_path(opt.cache, n);
        DistinctOptions dopt;
        dopt.jobs = opt.jobs;
        ChunkJournal journal(path + ".journal", n, dopt.chunk_cases);
        if (journal.size()) log << "werner n=" << n << ": resuming with " << journal.size() << " journaled chunks\n";
        dopt.lookup = [&](uint64_t c) { return journal.lookup(c); };
        dopt.on_chunk = [&](uint64_t c, const ChunkResult &r) { journal.append(c, r); };
        if (opt.progress) {
            dopt.progress = [&](uint64_t done, uint64_t total) {
                log << "werner n=" << n << ": " << done << "/" << total << " chunks\n";
            };
        }
        auto result = distinct_protocols(n, dopt);
        write_werner_cache(path, result, dopt.chunk_cases);
        journal.remove();
        log << "werner n=" << n << ": " << result.cases << " cases, " << result.protocols.size() << " distinct, "
            << seconds_since(t0) << " s, cache " << path << '\n';
        if (opt.protocols) {
            for (size_t i = 0; i < result.protocols.size(); i++) {
                const auto &p = result.protocols[i];
                out << n << ',' << i << ',' << p.case_index << ',' << json_str(p.source_str()) << ',' << p.stats.p_suc.str()
                    << ',' << p.stats.f_num.str() << ',' << p.stats.p_suc.coeff_str() << ',' << p.stats.f_num.coeff_str();
                for (const auto &fi : p.stats.fi_nums) out << ',' << fi.coeff_str();
                out << '\n';
            }
            continue;
        }
        auto report = best_fidelity_protocol(result.protocols, grid);
        const auto &best = result.protocols[report.primary];
        auto lead = leading_infidelity_term(best.stats);
        out << n << ',' << result.cases << ',' << result.protocols.size() << ',' << (report.dominant ? 1 : 0) << ','
            << report.groups[report.best_group].members.size() << ',' << report.crossovers.size() << ','
            << best.stats.p_suc.str() << ',' << best.stats.f_num.str() << ',' << best.stats.p_suc.coeff_str() << ','
            << best.stats.f_num.coeff_str() << ',' << decimal_coeffs(best.stats.p_suc) << ','
            << decimal_coeffs(best.stats.f_num) << ',' << lead.order << ',' << lead.coefficient.str() << '\n';
    }
    return kOk;
}

int cmd_transversal(const Options &opt, std::ostream &out, std::ostream &log) {
    auto ns = parse_n_range(opt.n, 1, kMaxTransversalPairs);
    ensure_dir(opt.cache);
    out << "n,index,found,samples,complete\n";
    int code = kOk;
    for (int n : ns) {
        auto t0 = Clock::now();
        TransversalOptions topt;
        topt.seed = opt.seed;
        topt.jobs = opt.jobs;
        topt.budget = opt.budget;
        if (opt.progress) {
            topt.progress = [&](uint64_t samples, size_t found) {
                log << "transversal n=" << n << ": " << samples << " samples, " << found << " cosets\n";
            };
        }
        auto t = build_transversal(n, topt);
        out << n << ',' << t.target_size.str() << ',' << t.size() << ',' << t.samples << ',' << (t.complete ? 1 : 0) << '\n';
        if (!t.complete) {
            log << "transversal n=" << n << ": sample budget exhausted with " << t.size() << " of " << t.target_size.str()
                << " cosets; no cache written\n";
            code = kBudgetExhausted;
            continue;
        }
        auto path = transversal_cache_path(opt.cache, n);
        write_transversal_cache(path, t, opt.seed);
        log << "transversal n=" << n << ": " << seconds_since(t0) << " s, cache " << path << '\n';
    }
    return code;
}

int cmd_eval(const Options &opt, std::ostream &out, std::ostream &log) {
    int n = single_n(opt, 1, kMaxTransversalPairs);
    auto state = read_state(opt.state, n);
    auto t = load_transversal(opt, n);
    auto cs = enumerate_stats(t, state, opt.jobs);
    std::vector<NumericStats> stats;
    stats.reserve(cs.size());
    for (const auto &c : cs) stats.push_back(c.stats);
    std::vector<char> on_envelope(stats.size(), 0);
    for (size_t i : pareto_envelope_indices(stats)) on_envelope[i] = 1;
    out << "coset,p_suc,f_out,f1,f2,f3,envelope\n";
    size_t shown = 0;
    for (size_t i = 0; i < stats.size(); i++) {
        const auto &s = stats[i];
        double f = f_out(s);
        if (opt.min_fidelity && f < *opt.min_fidelity) continue;
        auto v = output_vector(s);
        out << cs[i].index << ',' << fmt_double(s.p_suc) << ',' << fmt_double(f) << ',' << fmt_double(v[1]) << ','
            << fmt_double(v[2]) << ',' << fmt_double(v[3]) << ',' << int(on_envelope[i]) << '\n';
        shown++;
    }
    log << "eval n=" << n << ": " << stats.size() << " cosets, " << shown << " rows\n";
    return kOk;
}

int cmd_compare(const Options &opt, std::ostream &out, std::ostream &log) {
    auto ns = parse_n_range(opt.n, 2, 8);
    Metric metric = parse_metric(opt.metric);
    auto grid = grid_of(opt);
    std::vector<std::vector<PolyStats>> full_stats;
    for (int n : ns) {
        auto r = load_werner(opt, n);
        std::vector<PolyStats> v;
        v.reserve(r.protocols.size());
        for (const auto &p : r.protocols) v.push_back(p.stats);
        full_stats.push_back(std::move(v));
    }
    std::vector<ProtocolSet> full, cc;
    for (size_t k = 0; k < ns.size(); k++) {
        full.push_back({ns[k], full_stats[k]});
        cc.push_back({ns[k], concatenated_werner(ns[k]).stats});
    }
    out << "f_in,metric,full,full_n,dejmps,dejmps_n,ratio,difference\n";
    std::vector<double> xs;
    SvgSeries a{"full", {}}, b{"concatenated DEJMPS", {}};
    for (const auto &g : grid) {
        auto pf = best_metric(metric, g.value, full, opt.f_tar);
        auto pc = best_metric(metric, g.value, cc, opt.f_tar);
        out << fmt_double(g.value) << ',' << metric_name(metric) << ',' << fmt_double(pf.value) << ',' << pf.n << ','
            << fmt_double(pc.value) << ',' << pc.n << ',';
        if (pc.value > 0) out << fmt_double(pf.value / pc.value);
        out << ',' << fmt_double(pf.value - pc.value) << '\n';
        xs.push_back(g.value);
        a.y.push_back(pf.value);
        b.y.push_back(pc.value);
    }
    if (!opt.svg.empty()) {
        std::ofstream svg(opt.svg);
        if (!svg) throw InputError("cannot write " + opt.svg);
        svg << svg_chart(std::string(metric_name(metric)) + ", n = " + opt.n, "F_in", xs, {a, b});
        log << "compare: wrote " << opt.svg << '\n';
    }
    return kOk;
}

int cmd_circuit(const Options &opt, std::ostream &out, std::ostream &log) {
    int n = single_n(opt, 2, 8);
    auto r = load_werner(opt, n);
    auto report = best_fidelity_protocol(r.protocols, grid_of(opt));
    const auto &best = r.protocols[report.primary];
    SynthesisOptions sopt;
    sopt.budget = opt.budget ? opt.budget : sopt.budget;
    sopt.seed = opt.seed;
    sopt.jobs = opt.jobs;
    sopt.patience = opt.patience;
    sopt.swap_w = opt.swap_w;
    if (opt.progress) {
        sopt.progress = [&](uint64_t trials, uint64_t hits) { log << "circuit: " << trials << " trials, " << hits << " hits\n"; };
    }
    auto t0 = Clock::now();
    auto res = synthesize(best.profile, n, sopt);
    log << "circuit n=" << n << ": " << res.trials << " trials, " << res.hits << " hits, "
        << seconds_since(t0) << " s\n";
    if (res.found) {
        auto check = check_circuit(res.circuit, best);
        if (!check.matches) throw std::logic_error("synthesized circuit failed re-verification");
        print_circuit(out, "synthesized", res.circuit, check, {{"trials", res.trials}, {"trial", res.trial}});
        return kOk;
    }
    auto published = published_circuits();
    auto it = published.find(n);
    if (it != published.end()) {
        log << "circuit n=" << n << ": budget exhausted; printing the published circuit instead\n";
        print_circuit(out, "published", it->second, check_circuit(it->second, best), {{"trials", res.trials}});
    } else {
        log << "circuit n=" << n << ": budget exhausted and no published circuit for this n\n";
    }
    return kBudgetExhausted;
}

int cmd_verify(const Options &opt, std::ostream &out, std::ostream &log) {
    auto ns = parse_n_range(opt.n, 1, 8);
    out << "n,item,checked,mismatches,status\n";
    bool any = false, all_ok = true;
    auto row = [&](int n, const std::string &item, uint64_t checked, uint64_t bad) {
        out << n << ',' << item << ',' << checked << ',' << bad << ',' << (bad ? "FAIL" : "ok") << '\n';
        all_ok = all_ok && bad == 0;
        any = true;
    };
    for (int n : ns) {
        for (const auto &path : {werner_cache_path(opt.cache, n), transversal_cache_path(opt.cache, n)}) {
            if (!std::filesystem::exists(path)) continue;
            auto rep = verify_cache(path, 100, opt.seed);
            row(n, rep.header.mode + "-cache", rep.checked, rep.mismatches);
        }
        auto wpath = werner_cache_path(opt.cache, n);
        auto published = published_circuits();
        if (std::filesystem::exists(wpath) && published.count(n)) {
            auto r = read_werner_cache(wpath);
            auto report = best_fidelity_protocol(r.protocols, grid_of(opt));
            auto check = check_circuit(published.at(n), r.protocols[report.primary]);
            row(n, "published-circuit", 1, check.matches ? 0 : 1);
        }
    }
    if (!any) {
        throw MissingCache("no caches for --n " + opt.n + " under " + opt.cache + "; build them with `bcdist werner` or `bcdist transversal`");
    }
    log << "verify: " << (all_ok ? "all checks passed" : "mismatches found") << '\n';
    return all_ok ? kOk : kInvalidInput;
}

int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const MissingCache *>(&e)) return kMissingCache;
    if (dynamic_cast<const BudgetExhausted *>(&e)) return kBudgetExhausted;
    if (dynamic_cast<const InputError *>(&e) || dynamic_cast<const DimensionError *>(&e)) return kInvalidInput;
    return kInternal;
}

std::string svg_chart(const std::string &title, const std::string &x_label, const std::vector<double> &x,
                      const std::vector<SvgSeries> &series) {
    const double w = 640, h = 400, ml = 60, mr = 20, mt = 40, mb = 50;
    double x0 = x.empty() ? 0 : x.front(), x1 = x.empty() ? 1 : x.back();
    double y0 = INFINITY, y1 = -INFINITY;
    for (const auto &s : series) {
        for (double v : s.y) {
            if (std::isfinite(v)) {
                y0 = std::min(y0, v);
                y1 = std::max(y1, v);
            }
        }
    }
    if (!(y0 < y1)) {
        y0 = std::isfinite(y0) ? y0 - 0.5 : 0;
        y1 = y0 + 1;
    }
    if (x1 <= x0) x1 = x0 + 1;
    auto px = [&](double v) { return ml + (v - x0) / (x1 - x0) * (w - ml - mr); };
    auto py = [&](double v) { return h - mb - (v - y0) / (y1 - y0) * (h - mt - mb); };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4g", v);
        return std::string(buf);
    };
    static const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\"" << h - mb
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << w / 2 << "\" y=\"" << h - 10 << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
    for (int k = 0; k <= 4; k++) {
        double xv = x0 + (x1 - x0) * k / 4, yv = y0 + (y1 - y0) * k / 4;
        os << "<text x=\"" << px(xv) << "\" y=\"" << h - mb + 16 << "\" text-anchor=\"middle\" font-size=\"11\">" << num(xv)
           << "</text>\n";
        os << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << num(yv)
           << "</text>\n";
    }
    for (size_t s = 0; s < series.size(); s++) {
        const char *color = colors[s % 5];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < x.size() && i < series[s].y.size(); i++) {
            if (!std::isfinite(series[s].y[i])) continue;
            os << num(px(x[i])) << ',' << num(py(series[s].y[i])) << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << ml + 10 << "\" y=\"" << mt + 16 * (s + 1) << "\" font-size=\"12\" fill=\"" << color << "\">"
           << series[s].name << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace bcd::cli
