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

#ifndef BCDIST_METRICS_H
#define BCDIST_METRICS_H

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>

#include "bcdist/pauli_state.h"

namespace bcd {

constexpr double kDefaultTargetFidelity = 0.930025;
constexpr size_t kNoProtocol = std::numeric_limits<size_t>::max();

struct MetricPoint {
    double f_in = 0;
    int n = 1;
    double value = 0;
    /// Index into the winning set's stats, or kNoProtocol.
    size_t protocol_id = kNoProtocol;
};

/// Entropy in bits; throws InputError on negative entries or a sum off 1 by more than 1e-12.
double shannon_entropy(const BellVector &p);
double binary_entropy(double x);
/// max(0, 1 - H(p)) · p_suc / n.
double hashing_yield(const NumericStats &stats, int n);
/// 1 - h₂(max p) above 1/2, else 0.
double ree_bell_diagonal(const BellVector &p);
double ree_product(const NumericStats &stats);

/// Werner statistics evaluated at input fidelity F.
NumericStats evaluate(const PolyStats &stats, double fidelity);

/// Werner protocols acting on n pairs.
struct ProtocolSet {
    int n = 1;
    std::span<const PolyStats> stats;
};

/// Best p_suc(F)/n with F_out(F) ≥ f_tar over all sets, or rate 1 with n = 1
/// when f_in already reaches f_tar.
MetricPoint target_rate(double f_in, double f_tar, std::span<const ProtocolSet> sets);

enum class Metric { fidelity, yield, ree, target_rate };

Metric parse_metric(std::string_view name);
std::string_view metric_name(Metric m);

/// Per-protocol value of a fidelity, yield or ree metric.
double metric_value(Metric m, const NumericStats &stats, int n);

/// Best metric value over all sets at f_in. Ties keep the earliest set and protocol.
MetricPoint best_metric(Metric m, double f_in, std::span<const ProtocolSet> sets,
                        double f_tar = kDefaultTargetFidelity);

}  // namespace bcd

#endif
