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

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "bcdist/cli.h"
#include "bcdist/parallel.h"

namespace {

using bcd::cli::Options;

void common_flags(CLI::App *cmd, Options &opt, bool grid) {
    cmd->add_option("--n", opt.n, "Pair count N or range A..B");
    cmd->add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opt.seed, "RNG seed");
    cmd->add_option("--cache", opt.cache, "Cache directory");
    if (grid) {
        cmd->add_option("--f-min", opt.f_min, "Fidelity grid start");
        cmd->add_option("--f-max", opt.f_max, "Fidelity grid end (inclusive)");
        cmd->add_option("--f-step", opt.f_step, "Fidelity grid step");
    }
    cmd->add_flag("--progress", opt.progress, "Print progress to stderr");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"bcdist: bilocal Clifford entanglement distillation"};
    app.require_subcommand(1);
    Options opt;
    opt.jobs = bcd::default_jobs();
    std::string out_path;
    app.add_option("--out", out_path, "Write CSV output to this file instead of stdout");

    auto *tables = app.add_subcommand("tables", "Orders of Sp(2n,F2) and of the distillation subgroup, and its index");
    tables->add_option("--n", opt.n, "Pair count N or range A..B");
    tables->add_option("--out", out_path, "Output file");

    auto *werner = app.add_subcommand("werner", "Enumerate distinct Werner-input protocols and cache them");
    common_flags(werner, opt, true);
    werner->add_flag("--protocols", opt.protocols, "List every distinct protocol instead of the summary");
    werner->add_option("--out", out_path, "Output file");

    auto *transversal = app.add_subcommand("transversal", "Build and cache a right-coset transversal");
    common_flags(transversal, opt, false);
    transversal->add_option("--budget", opt.budget, "Maximum number of random samples");
    transversal->add_option("--out", out_path, "Output file");

    auto *eval = app.add_subcommand("eval", "Evaluate every coset on a Bell-diagonal product state");
    common_flags(eval, opt, false);
    eval->add_option("--state", opt.state, "State JSON file")->required();
    eval->add_option("--min-fidelity", opt.min_fidelity, "Drop rows with F_out below this value");
    eval->add_option("--out", out_path, "Output file");

    auto *compare = app.add_subcommand("compare", "Full optimum against concatenated DEJMPS on a fidelity grid");
    common_flags(compare, opt, true);
    compare->add_option("--metric", opt.metric, "fidelity, yield, ree or target-rate");
    compare->add_option("--f-tar", opt.f_tar, "Target fidelity for target-rate");
    compare->add_option("--svg", opt.svg, "Also write an SVG line plot");
    compare->add_option("--out", out_path, "Output file");

    auto *circuit = app.add_subcommand("circuit", "Synthesize a circuit for the best-fidelity protocol");
    common_flags(circuit, opt, true);
    circuit->add_option("--budget", opt.budget, "Trial budget (default 1000000)");
    circuit->add_option("--patience", opt.patience, "Stop this many chunks after the first hit");
    circuit->add_flag("--swap-w", opt.swap_w, "Also search final layers with a SWAP of qubit 1");
    circuit->add_option("--out", out_path, "Output file");

    auto *verify = app.add_subcommand("verify", "Re-verify cached records and published circuits");
    common_flags(verify, opt, true);
    verify->add_option("--out", out_path, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : bcd::cli::kInvalidInput;
    }

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return bcd::cli::kInvalidInput;
        }
    }
    std::ostream &out = out_path.empty() ? std::cout : file;
    try {
        int code = 0;
        if (*tables) code = bcd::cli::cmd_tables(opt, out, std::cerr);
        if (*werner) code = bcd::cli::cmd_werner(opt, out, std::cerr);
        if (*transversal) code = bcd::cli::cmd_transversal(opt, out, std::cerr);
        if (*eval) code = bcd::cli::cmd_eval(opt, out, std::cerr);
        if (*compare) code = bcd::cli::cmd_compare(opt, out, std::cerr);
        if (*circuit) code = bcd::cli::cmd_circuit(opt, out, std::cerr);
        if (*verify) code = bcd::cli::cmd_verify(opt, out, std::cerr);
        out.flush();
        return code;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return bcd::cli::exit_code_for(e);
    }
}
