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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bcdist/circuits.h"
#include "bcdist/dejmps.h"
#include "bcdist/errors.h"
#include "bcdist/metrics.h"
#include "bcdist/subgroups.h"
#include "bcdist/transversal.h"
#include "bcdist/werner_enum.h"

namespace py = pybind11;
using namespace bcd;

namespace {

py::object fraction(const Rational &r) {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(r.str());
}

py::int_ big(const BigInt &v) {
    return py::int_(py::str(v.str()));
}

std::vector<BellVector> pairs_of(const std::vector<std::vector<double>> &pairs) {
    std::vector<BellVector> out;
    for (const auto &p : pairs) {
        if (p.size() != 4) throw InputError("each pair needs four Bell coefficients");
        out.push_back({p[0], p[1], p[2], p[3]});
    }
    return out;
}

BellVector bell_of(const std::vector<double> &p) {
    return pairs_of({p})[0];
}

std::vector<uint32_t> rows_of(const SymplecticMatrix &m) {
    std::vector<uint32_t> rows;
    for (int i = 0; i < 2 * m.n(); i++) rows.push_back(m.matrix().row(i));
    return rows;
}

SymplecticMatrix matrix_of(int n, const std::vector<uint32_t> &rows) {
    if (static_cast<int>(rows.size()) != 2 * n) throw DimensionError("expected 2n matrix rows");
    BinaryMatrix m(n, rows);
    if (!is_symplectic(m)) throw InputError("matrix is not symplectic");
    return SymplecticMatrix::trusted(m);
}

py::dict numeric_dict(const NumericStats &s) {
    py::dict d;
    d["p_suc"] = s.p_suc;
    d["f_out"] = f_out(s);
    auto v = output_vector(s);
    d["fi"] = py::make_tuple(v[1], v[2], v[3]);
    return d;
}

struct Enumeration {
    DistinctResult result;
};

}  // namespace

PYBIND11_MODULE(_bcdist, m) {
    m.doc() = "Bilocal Clifford entanglement distillation";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);
    py::register_exception<MissingCache>(m, "MissingCache", PyExc_FileNotFoundError);

    py::class_<RationalPolynomial>(m, "Polynomial")
        .def_property_readonly("coeffs",
                               [](const RationalPolynomial &p) {
                                   py::list out;
                                   for (const auto &c : p.coeffs()) out.append(fraction(c));
                                   return out;
                               })
        .def_property_readonly("degree", &RationalPolynomial::degree)
        .def("__call__", [](const RationalPolynomial &p, double x) { return p(x); })
        .def("in_epsilon", &stats_in_epsilon)
        .def("__eq__", [](const RationalPolynomial &a, const RationalPolynomial &b) { return a == b; })
        .def("__str__", [](const RationalPolynomial &p) { return p.str(); })
        .def("__repr__", [](const RationalPolynomial &p) { return "Polynomial('" + p.str() + "')"; });

    py::class_<PolyStats>(m, "PolyStats")
        .def_readonly("p_suc", &PolyStats::p_suc)
        .def_readonly("f_num", &PolyStats::f_num)
        .def_property_readonly("fi_nums", [](const PolyStats &s) { return std::vector<RationalPolynomial>(s.fi_nums.begin(), s.fi_nums.end()); })
        .def("f_out", [](const PolyStats &s, double f) { return s.f_num(f) / s.p_suc(f); })
        .def("evaluate", [](const PolyStats &s, double f) { return numeric_dict(evaluate(s, f)); })
        .def("leading_term",
             [](const PolyStats &s) {
                 auto t = leading_infidelity_term(s);
                 return py::make_tuple(t.order, fraction(t.coefficient));
             })
        .def("__eq__", [](const PolyStats &a, const PolyStats &b) { return a == b; });

    py::class_<Protocol>(m, "Protocol")
        .def_readonly("n", &Protocol::n)
        .def_readonly("stats", &Protocol::stats)
        .def_readonly("case_index", &Protocol::case_index)
        .def_property_readonly("source", &Protocol::source_str)
        .def_property_readonly("matrix_rows", [](const Protocol &p) { return rows_of(p.rep); });

    py::class_<Enumeration>(m, "WernerEnumeration")
        .def_property_readonly("n", [](const Enumeration &e) { return e.result.n; })
        .def_property_readonly("cases", [](const Enumeration &e) { return e.result.cases; })
        .def_property_readonly("protocols", [](const Enumeration &e) { return e.result.protocols; })
        .def("__len__", [](const Enumeration &e) { return e.result.protocols.size(); })
        .def(
            "best",
            [](const Enumeration &e, double lo, double hi, double step) {
                auto grid = make_grid(std::to_string(lo), std::to_string(hi), std::to_string(step));
                auto rep = best_fidelity_protocol(e.result.protocols, grid);
                py::dict d;
                d["primary"] = rep.primary;
                d["dominant"] = rep.dominant;
                d["members"] = rep.groups[rep.best_group].members;
                d["crossovers"] = rep.crossovers.size();
                d["protocol"] = e.result.protocols[rep.primary];
                return d;
            },
            py::arg("f_min") = 0.5, py::arg("f_max") = 0.999, py::arg("f_step") = 0.001);

    m.def("sp_order", [](int n) { return big(sp_order(n)); });
    m.def("dn_order", [](int n) { return big(dn_order(n)); });
    m.def("dn_index", [](int n) { return big(dn_index(n)); });
    m.def("case_count", [](int n) { return CaseSpace(n).size(); });
    m.def(
        "enumerate_werner",
        [](int n, int jobs) {
            DistinctOptions opt;
            opt.jobs = jobs;
            Enumeration e;
            {
                py::gil_scoped_release release;
                e.result = distinct_protocols(n, opt);
            }
            return e;
        },
        py::arg("n"), py::arg("jobs") = 1);
    m.def("werner_stats", [](int n, const std::vector<uint32_t> &rows) { return werner_stats(matrix_of(n, rows), n); });
    m.def("numeric_stats", [](int n, const std::vector<uint32_t> &rows, const std::vector<std::vector<double>> &pairs) {
        auto state = BellDiagonalState::product(pairs_of(pairs));
        return numeric_dict(numeric_stats(matrix_of(n, rows), state));
    });

    py::class_<Transversal>(m, "Transversal")
        .def_readonly("n", &Transversal::n)
        .def_readonly("complete", &Transversal::complete)
        .def_readonly("samples", &Transversal::samples)
        .def_property_readonly("target_size", [](const Transversal &t) { return big(t.target_size); })
        .def("__len__", &Transversal::size)
        .def("matrix_rows", [](const Transversal &t, size_t i) { return rows_of(t.rep(i)); })
        .def(
            "evaluate",
            [](const Transversal &t, const std::vector<std::vector<double>> &pairs, int jobs) {
                auto state = BellDiagonalState::product(pairs_of(pairs));
                std::vector<CosetStats> cs;
                {
                    py::gil_scoped_release release;
                    cs = enumerate_stats(t, state, jobs);
                }
                std::vector<NumericStats> stats;
                for (const auto &c : cs) stats.push_back(c.stats);
                py::list rows;
                for (const auto &s : stats) rows.append(numeric_dict(s));
                return py::make_tuple(rows, pareto_envelope_indices(stats));
            },
            py::arg("pairs"), py::arg("jobs") = 1);
    m.def(
        "build_transversal",
        [](int n, uint64_t seed, int jobs, uint64_t budget) {
            TransversalOptions opt;
            opt.seed = seed;
            opt.jobs = jobs;
            opt.budget = budget;
            py::gil_scoped_release release;
            return build_transversal(n, opt);
        },
        py::arg("n"), py::arg("seed") = 1, py::arg("jobs") = 1, py::arg("budget") = 0);

    py::class_<CliffordCircuit>(m, "Circuit")
        .def_readonly("n", &CliffordCircuit::n)
        .def_property_readonly("gates",
                               [](const CliffordCircuit &c) {
                                   py::list out;
                                   for (const auto &g : c.gates) {
                                       if (g.arity() == 2) {
                                           out.append(py::make_tuple(std::string(gate_name(g.kind)), g.qubits[0], g.qubits[1]));
                                       } else {
                                           out.append(py::make_tuple(std::string(gate_name(g.kind)), g.qubits[0]));
                                       }
                                   }
                                   return out;
                               })
        .def_property_readonly("two_qubit_count", &two_qubit_count)
        .def_property_readonly("depth", &depth)
        .def("matrix_rows", [](const CliffordCircuit &c) { return rows_of(circuit_to_symplectic(c)); })
        .def("werner_stats", [](const CliffordCircuit &c) { return werner_stats(circuit_to_symplectic(c), c.n); })
        .def("to_json", &circuit_to_json)
        .def("diagram", &circuit_diagram)
        .def_static("from_json", &circuit_from_json, py::arg("text"), py::arg("n"))
        .def("__eq__", [](const CliffordCircuit &a, const CliffordCircuit &b) { return a == b; });

    m.def("published_circuit", [](int n) {
        const auto &all = published_circuits();
        auto it = all.find(n);
        if (it == all.end()) throw InputError("no published circuit for this n");
        return it->second;
    });
    m.def(
        "synthesize",
        [](const Protocol &target, uint64_t budget, uint64_t seed, int jobs, std::optional<uint64_t> patience) {
            SynthesisOptions opt;
            opt.budget = budget;
            opt.seed = seed;
            opt.jobs = jobs;
            opt.patience = patience;
            SynthesisResult r;
            {
                py::gil_scoped_release release;
                r = synthesize(target.profile, target.n, opt);
            }
            py::dict d;
            d["found"] = r.found;
            d["circuit"] = r.found ? py::cast(r.circuit) : py::none();
            d["trials"] = r.trials;
            d["hits"] = r.hits;
            return d;
        },
        py::arg("target"), py::arg("budget") = 1000000, py::arg("seed") = 1, py::arg("jobs") = 1,
        py::arg("patience") = std::nullopt);

    m.def("dejmps_step", [](const std::vector<double> &a, const std::vector<double> &b, int rot) {
        auto r = dejmps_step(bell_of(a), bell_of(b), rot);
        return py::make_tuple(r.p_suc, std::vector<double>(r.out.begin(), r.out.end()));
    }, py::arg("a"), py::arg("b"), py::arg("rotation") = kDejmpsRotation);
    m.def("rotation_labels", [] {
        std::vector<std::string> out;
        for (const auto &r : rotation_catalog()) out.push_back(r.label);
        return out;
    });
    m.def("tree_shape_count", [](int n) { return tree_shapes(n).size(); });
    m.def("best_concatenated", [](int n) {
        auto b = best_concatenated(n);
        return py::make_tuple(b.stats, b.plan.str());
    });
    m.def("concatenated_stats", [](int n) { return concatenated_werner(n).stats; });

    m.def("shannon_entropy", [](const std::vector<double> &p) { return shannon_entropy(bell_of(p)); });
    m.def("ree_bell_diagonal", [](const std::vector<double> &p) { return ree_bell_diagonal(bell_of(p)); });
    m.def("binary_entropy", &binary_entropy);
    m.def("hashing_yield", [](const PolyStats &s, double f, int n) { return hashing_yield(evaluate(s, f), n); });
    m.def("ree_product", [](const PolyStats &s, double f) { return ree_product(evaluate(s, f)); });
    m.attr("DEFAULT_TARGET_FIDELITY") = kDefaultTargetFidelity;
}
