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

#ifndef BCDIST_CLI_H
#define BCDIST_CLI_H

#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcdist/metrics.h"
#include "bcdist/rational.h"

namespace bcd {

/// The search budget ran out before a result was found.
struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 2, kMissingCache = 3, kBudgetExhausted = 4, kInternal = 1 };

struct Options {
    /// "4", "2..8" or "2-8".
    std::string n = "2";
    int jobs = 1;
    uint64_t seed = 1;
    std::string cache = "bcdist_cache";
    std::string metric = "fidelity";
    std::string f_min = "0.5";
    std::string f_max = "0.999";
    std::string f_step = "0.001";
    double f_tar = kDefaultTargetFidelity;
    /// 0 keeps the command's default.
    uint64_t budget = 0;
    std::optional<uint64_t> patience;
    bool swap_w = false;
    std::string svg;
    std::string state;
    /// eval: drop rows with F_out below this value.
    std::optional<double> min_fidelity;
    /// werner: also list every distinct protocol.
    bool protocols = false;
    bool progress = false;
};

std::vector<int> parse_n_range(const std::string &text, int lo, int hi);

std::string fmt_double(double v);
/// Coefficients from power 0 upward, 17 significant digits, ';'-separated.
std::string decimal_coeffs(const RationalPolynomial &p);

/// Each command writes CSV to `out` and human notes to `log`, and returns an
/// exit code. Errors propagate as exceptions; see exit_code_for.
int cmd_tables(const Options &opt, std::ostream &out, std::ostream &log);
int cmd_werner(const Options &opt, std::ostream &out, std::ostream &log);
int cmd_transversal(const Options &opt, std::ostream &out, std::ostream &log);
int cmd_eval(const Options &opt, std::ostream &out, std::ostream &log);
int cmd_compare(const Options &opt, std::ostream &out, std::ostream &log);
int cmd_circuit(const Options &opt, std::ostream &out, std::ostream &log);
int cmd_verify(const Options &opt, std::ostream &out, std::ostream &log);

int exit_code_for(const std::exception &e);

/// A minimal polyline chart.
struct SvgSeries {
    std::string name;
    std::vector<double> y;
};
std::string svg_chart(const std::string &title, const std::string &x_label, const std::vector<double> &x,
                      const std::vector<SvgSeries> &series);

}  // namespace cli
}  // namespace bcd

#endif
