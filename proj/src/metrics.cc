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

#include "bcdist/metrics.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "bcdist/errors.h"

namespace bcd {

double shannon_entropy(const BellVector &p) {
    double sum = 0;
    for (double x : p) {
        if (!(x >= 0)) throw InputError("shannon_entropy: negative probability");
        sum += x;
    }
    if (std::abs(sum - 1) > 1e-12) throw InputError("shannon_entropy: probabilities do not sum to 1");
    double h = 0;
    for (double x : p) {
        if (x > 0) h -= x * std::log2(x);
    }
    return h;
}

double binary_entropy(double x) {
    if (x <= 0 || x >= 1) return 0;
    return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

namespace {

// Normalised output with rounding drift removed, so the entropy checks hold.
BellVector clean_output(const NumericStats &stats) {
    BellVector p = output_vector(stats);
    double sum = 0;
    for (double &x : p) {
        x = std::max(x, 0.0);
        sum += x;
    }
    for (double &x : p) x /= sum;
    return p;
}

}  // namespace

double hashing_yield(const NumericStats &stats, int n) {
    if (n < 1) throw DimensionError("hashing_yield: n must be positive");
    if (!(stats.p_suc > 0)) return 0;
    return std::max(0.0, 1 - shannon_entropy(clean_output(stats))) * stats.p_suc / n;
}

double ree_bell_diagonal(const BellVector &p) {
    double m = *std::max_element(p.begin(), p.end());
    return m > 0.5 ? 1 - binary_entropy(m) : 0.0;
}

double ree_product(const NumericStats &stats) {
    if (!(stats.p_suc > 0)) return 0;
    return stats.p_suc * ree_bell_diagonal(clean_output(stats));
}

NumericStats evaluate(const PolyStats &stats, double fidelity) {
    NumericStats s;
    s.p_suc = stats.p_suc(fidelity);
    s.f_num = stats.f_num(fidelity);
    for (int k = 0; k < 3; k++) s.fi_nums[k] = stats.fi_nums[k](fidelity);
    canonicalize(s);
    return s;
}

MetricPoint target_rate(double f_in, double f_tar, std::span<const ProtocolSet> sets) {
    if (!(f_tar > 0.5 && f_tar < 1)) throw InputError("target_rate: f_tar must lie in (1/2, 1)");
    MetricPoint best{f_in, 1, 0.0, kNoProtocol};
    if (f_in >= f_tar) {
        best.value = 1;
        return best;
    }
    for (const auto &set : sets) {
        for (size_t i = 0; i < set.stats.size(); i++) {
            auto s = evaluate(set.stats[i], f_in);
            if (f_out(s) < f_tar) continue;
            double rate = s.p_suc / set.n;
            if (rate > best.value) best = {f_in, set.n, rate, i};
        }
    }
    return best;
}

Metric parse_metric(std::string_view name) {
    if (name == "fidelity") return Metric::fidelity;
    if (name == "yield") return Metric::yield;
    if (name == "ree") return Metric::ree;
    if (name == "target-rate") return Metric::target_rate;
    throw InputError("unknown metric '" + std::string(name) + "' (expected fidelity, yield, ree or target-rate)");
}

std::string_view metric_name(Metric m) {
    switch (m) {
        case Metric::fidelity: return "fidelity";
        case Metric::yield: return "yield";
        case Metric::ree: return "ree";
        case Metric::target_rate: return "target-rate";
    }
    return "";
}

double metric_value(Metric m, const NumericStats &stats, int n) {
    switch (m) {
        case Metric::fidelity: return f_out(stats);
        case Metric::yield: return hashing_yield(stats, n);
        case Metric::ree: return ree_product(stats);
        case Metric::target_rate: break;
    }
    throw ContractViolation("metric_value: target-rate is not a per-protocol metric");
}

MetricPoint best_metric(Metric m, double f_in, std::span<const ProtocolSet> sets, double f_tar) {
    if (m == Metric::target_rate) return target_rate(f_in, f_tar, sets);
    MetricPoint best{f_in, 1, -1.0, kNoProtocol};
    for (const auto &set : sets) {
        for (size_t i = 0; i < set.stats.size(); i++) {
            double v = metric_value(m, evaluate(set.stats[i], f_in), set.n);
            if (v > best.value) best = {f_in, set.n, v, i};
        }
    }
    if (best.protocol_id == kNoProtocol) best.value = 0;
    return best;
}

}  // namespace bcd
