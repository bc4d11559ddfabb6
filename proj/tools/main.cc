// Copyright 2026 The magicbound Authors.
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

#include <omp.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "magicbound/bounds.h"
#include "magicbound/canonical.h"
#include "magicbound/extent.h"
#include "magicbound/phasepoly.h"
#include "magicbound/protocols.h"
#include "magicbound/simulator.h"
#include "magicbound/states.h"

using namespace mb;
using json = nlohmann::ordered_json;

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_FAILED = 1;
constexpr int EXIT_INPUT = 2;
constexpr int EXIT_SOLVER = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    double extent_gap_tol = 1e-8;
    size_t extent_max_iter = 200000;
    size_t tree_guard = 16;
    int threads = 0;
};

// "key = value" lines, '#' comments, optional [section] headers ignored.
Config load_config(const std::string &path) {
    Config cfg;
    if (path.empty()) {
        return cfg;
    }
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open config file '" + path + "'");
    }
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        line = line.substr(0, line.find('#'));
        auto eq = line.find('=');
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r\"");
            size_t b = s.find_last_not_of(" \t\r\"");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        if (trim(line).empty() || trim(line)[0] == '[') {
            continue;
        }
        if (eq == std::string::npos) {
            throw InputError(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        try {
            if (key == "extent_gap_tol") {
                cfg.extent_gap_tol = std::stod(value);
            } else if (key == "extent_max_iter") {
                cfg.extent_max_iter = std::stoul(value);
            } else if (key == "tree_guard") {
                cfg.tree_guard = std::stoul(value);
            } else if (key == "threads") {
                cfg.threads = std::stoi(value);
            } else {
                throw InputError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
            }
        } catch (const std::logic_error &) {
            throw InputError(path + ":" + std::to_string(line_no) + ": bad value '" + value + "'");
        }
    }
    return cfg;
}

ExactState parse_state(const std::string &expr) {
    try {
        return resource_state(expr);
    } catch (const std::exception &e) {
        throw InputError("state '" + expr + "': " + e.what());
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CircuitIR parse_circuit_file(const std::string &path) {
    std::string text = read_file(path);
    try {
        return CircuitIR::parse(text);
    } catch (const std::exception &e) {
        throw InputError(path + ": " + e.what());
    }
}

json cyc_json(const CycNumber &c) {
    json j;
    j["exact"] = c.str();
    j["level"] = c.level();
    j["denom_exp"] = c.denom_exp();
    json coeffs = json::array();
    for (const auto &a : c.coeffs()) {
        coeffs.push_back(a.get_str());
    }
    j["coeffs"] = coeffs;
    auto z = c.to_complex();
    j["re"] = z.real();
    j["im"] = z.imag();
    return j;
}

json dyadic_json(const Dyadic &d) {
    return json{{"exact", d.mixed_str()}, {"fraction", d.str()}, {"decimal", d.to_double()}};
}

void emit(const json &j, const std::string &format, const std::string &text) {
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

std::string pauli_list(const std::vector<PauliOperator> &ps) {
    std::string out;
    for (const auto &p : ps) {
        out += (out.empty() ? "" : " ") + p.str();
    }
    return out;
}

json report_json(const VerificationReport &r) {
    json j;
    j["name"] = r.name;
    j["params"] = r.params;
    j["passed"] = r.passed;
    j["failures"] = r.failures;
    j["max_qubits"] = r.max_qubits;
    j["total_probability_one"] = r.total_probability_one;
    j["all_half"] = r.all_half;
    j["catalyst_intact"] = r.catalyst_intact;
    j["average"] = r.average;
    j["worst"] = r.worst;
    j["nullity_in"] = r.nullity_in;
    j["nullity_out"] = r.nullity_out;
    j["mu2_in"] = r.mu2_in;
    j["mu2_out"] = r.mu2_out;
    j["monotone_ok"] = r.monotone_ok;
    json branches = json::array();
    for (const auto &b : r.branches) {
        branches.push_back({{"outcomes", b.outcomes},
                            {"probability", b.probability_exact},
                            {"is_half", b.is_half},
                            {"matches", b.matches},
                            {"catalyst_intact", b.catalyst_intact},
                            {"tally", b.tally}});
    }
    j["branches"] = branches;
    return j;
}

std::string params_str(const Params &ps) {
    std::string out;
    for (const auto &[k, v] : ps) {
        out += (out.empty() ? "" : ",") + k + "=" + std::to_string(v);
    }
    return out;
}

Params parse_params(const std::vector<std::string> &items) {
    Params out;
    for (const auto &item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw InputError("--param expects key=value, got '" + item + "'");
        }
        try {
            size_t used;
            std::string v = item.substr(eq + 1);
            out[item.substr(0, eq)] = std::stoll(v, &used);
            if (used != v.size()) {
                throw std::invalid_argument(v);
            }
        } catch (const std::logic_error &) {
            throw InputError("--param value must be an integer: '" + item + "'");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"magicbound: exact magic-state monotones, protocol verification and bounds"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key = value file (extent_gap_tol, extent_max_iter, tree_guard, threads)");

    std::string state, format, circuit_path, input_expr, witness_out, file;
    double tol = -1;
    size_t max_iter = 0;

    auto *spectrum = app.add_subcommand("spectrum", "Pauli spectrum (absolute expectations and multiplicities)");
    auto *nullity = app.add_subcommand("nullity", "stabilizer nullity");
    auto *mu2 = app.add_subcommand("mu2", "dyadic monotone");
    auto *level = app.add_subcommand("ring-level", "smallest cyclotomic level holding the amplitudes");
    auto *ext = app.add_subcommand("extent", "stabilizer extent (certified)");
    for (auto *sc : {spectrum, nullity, mu2, level, ext}) {
        sc->add_option("--state", state, "state expression, e.g. \"T*3,CCZ\"")->required();
        sc->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    }
    ext->add_option("--tol", tol, "duality gap target");
    ext->add_option("--max-iter", max_iter, "iteration cap");
    ext->add_option("--witness-out", witness_out, "write the dual witness as JSON");

    auto *sim = app.add_subcommand("simulate", "run a circuit file branch by branch");
    sim->add_option("--circuit", circuit_path)->required();
    sim->add_option("--input", input_expr, "input state expression (default |0...0>)");
    std::optional<uint64_t> seed;
    sim->add_option("--seed", seed, "seed for SAMPLE measurements");
    bool with_state = false;
    sim->add_flag("--amplitudes", with_state, "include output amplitudes");
    sim->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto *canon = app.add_subcommand("canonical", "canonical form of a post-selected stabilizer circuit");
    canon->add_option("--circuit", circuit_path)->required();
    canon->add_option("--input", input_expr, "input state expression")->required();
    canon->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto *ver = app.add_subcommand("verify", "verify catalog protocols");
    std::string protocol;
    std::vector<std::string> param_items;
    bool all = false, list = false;
    auto *opt_protocol = ver->add_option("--protocol", protocol);
    ver->add_option("--param", param_items, "key=value, repeatable");
    auto *opt_all = ver->add_flag("--all", all, "every catalog instance");
    auto *opt_list = ver->add_flag("--list", list, "list the catalog");
    opt_protocol->excludes(opt_all)->excludes(opt_list);
    opt_all->excludes(opt_list);
    ver->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto *tab = app.add_subcommand("tables", "regenerate the bound and monotone tables");
    std::string table_name;
    tab->add_option("--name", table_name)->required()->check(CLI::IsMember(table_names()));
    tab->add_option("--format", format)->check(CLI::IsMember({"md", "csv", "json", "text"}));

    auto *bound = app.add_subcommand("bound", "conversion and synthesis bounds");
    bound->require_subcommand(1);
    auto *convert = bound->add_subcommand("convert", "monotone bounds on converting one state into another");
    std::string from, to;
    convert->add_option("--from", from)->required();
    convert->add_option("--to", to)->required();
    auto *synth = bound->add_subcommand("synth", "unitary/state synthesis lower bounds");
    std::string family, form = "unitary";
    double epsilon = 0, C = 2;
    int d = 2;
    synth->add_option("--family", family, "T, CS, CCZ, mixed_sqrtT, general")->required();
    synth->add_option("--epsilon", epsilon)->required();
    synth->add_option("--C", C);
    synth->add_option("--form", form)->check(CLI::IsMember({"unitary", "state"}));
    synth->add_option("--d", d, "ring level for the general bound");
    auto *floor = bound->add_subcommand("floor", "sampled joint-probability floors");
    std::string rule = "t";
    size_t trials = 1000;
    uint64_t floor_seed = 1;
    floor->add_option("--state", state)->required();
    floor->add_option("--rule", rule)->check(CLI::IsMember({"t", "gaussian", "dyadic"}));
    floor->add_option("--trials", trials);
    floor->add_option("--seed", floor_seed);
    for (auto *sc : {convert, synth, floor}) {
        sc->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    }

    auto *pp = app.add_subcommand("phasepoly", "phase polynomial analysis");
    std::string pp_action;
    pp->add_option("action", pp_action)->required()->check(CLI::IsMember({"tau", "convert"}));
    pp->add_option("--file", file)->required();
    pp->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? EXIT_OK : EXIT_INPUT;
    }

    try {
        Config cfg = load_config(config_path);
        if (cfg.threads > 0) {
            omp_set_num_threads(cfg.threads);
        }
        std::stringstream text;

        if (spectrum->parsed()) {
            ExactState s = parse_state(state);
            SpectrumReport r = pauli_spectrum(s);
            json entries = json::array();
            text << "state " << state << " (" << r.n << " qubits)\n";
            for (const auto &e : r.entries) {
                entries.push_back({{"value", cyc_json(e.value)}, {"approx", e.approx}, {"multiplicity", e.multiplicity}});
                text << e.value.str() << " ~ " << e.approx << "  x" << e.multiplicity << "\n";
            }
            text << "nullity " << r.nullity << "\nmu2 " << r.mu2.mixed_str() << "\n";
            emit({{"state", state}, {"n", r.n}, {"entries", entries}, {"nullity", r.nullity}, {"mu2", dyadic_json(r.mu2)}},
                 format, text.str());
        } else if (nullity->parsed()) {
            size_t v = stabilizer_nullity(parse_state(state));
            emit({{"state", state}, {"nullity", v}}, format, std::to_string(v) + "\n");
        } else if (mu2->parsed()) {
            Dyadic v = dyadic_monotone(parse_state(state));
            text << v.mixed_str() << "\n" << v.to_double() << "\n";
            emit({{"state", state}, {"mu2", dyadic_json(v)}}, format, text.str());
        } else if (level->parsed()) {
            int v = ring_level(parse_state(state));
            emit({{"state", state}, {"ring_level", v}}, format, std::to_string(v) + "\n");
        } else if (ext->parsed()) {
            ExactState s = parse_state(state);
            if (s.num_qubits() > MAX_EXTENT_QUBITS) {
                throw InputError("extent is solved for at most " + std::to_string(MAX_EXTENT_QUBITS) + " qubits");
            }
            ExtentOptions opt;
            opt.gap_tol = tol > 0 ? tol : cfg.extent_gap_tol;
            opt.max_iter = max_iter ? max_iter : cfg.extent_max_iter;
            ExtentResult r = extent(s, opt);
            if (!witness_out.empty()) {
                json w = json::array();
                for (const auto &z : r.witness) {
                    w.push_back({z.real(), z.imag()});
                }
                std::ofstream(witness_out) << json{{"state", state}, {"witness", w}}.dump(2) << "\n";
            }
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%.6f\nlower %.10f upper %.10f gap %.2e iterations %zu residual %.2e\n",
                          r.value, r.lower, r.value, r.gap, r.iterations, r.residual);
            emit({{"state", state},
                  {"value", r.value},
                  {"lower", r.lower},
                  {"gap", r.gap},
                  {"iterations", r.iterations},
                  {"residual", r.residual},
                  {"converged", r.converged},
                  {"support", r.coefficients.size()}},
                 format, buf);
            if (!r.converged) {
                throw SolverError("extent did not reach the gap target");
            }
        } else if (sim->parsed()) {
            CircuitIR c = parse_circuit_file(circuit_path);
            ExactState in = input_expr.empty() ? ExactState::basis(c.num_qubits, 0) : parse_state(input_expr);
            if (in.num_qubits() != c.num_qubits) {
                throw InputError("input has " + std::to_string(in.num_qubits()) + " qubits, circuit expects " +
                                 std::to_string(c.num_qubits));
            }
            SimOptions opt;
            opt.tree_guard = cfg.tree_guard;
            opt.seed = seed;
            auto branches = simulate(c, in, opt);
            json out = json::array();
            for (const auto &b : branches) {
                json j{{"outcomes", b.outcomes},
                       {"bits", b.bits},
                       {"probability", cyc_json(b.probability)},
                       {"is_half", b.is_half},
                       {"tally", b.tally},
                       {"qubits", b.state.num_qubits()},
                       {"nullity", b.state.num_qubits() <= 8 ? json(stabilizer_nullity(b.state)) : json()}};
                if (with_state) {
                    json amps = json::array();
                    for (const auto &a : b.state.amps()) {
                        amps.push_back(a.str());
                    }
                    j["amplitudes"] = amps;
                }
                out.push_back(j);
                text << (b.outcomes.empty() ? "-" : b.outcomes) << "  p=" << b.probability.str()
                     << (b.is_half ? "" : "  (not 1/2)");
                for (const auto &[k, v] : b.tally) {
                    text << "  " << k << ":" << v;
                }
                text << "\n";
            }
            emit({{"circuit", circuit_path}, {"branches", out}}, format.empty() ? "json" : format, text.str());
        } else if (canon->parsed()) {
            CircuitIR c = parse_circuit_file(circuit_path);
            ExactState in = parse_state(input_expr);
            CanonicalForm f = canonical_form(c, in);
            json images = json::array();
            for (size_t q = 0; q < f.tableau.num_qubits(); q++) {
                images.push_back({{"qubit", q}, {"X", f.tableau.x_image(q).str()}, {"Z", f.tableau.z_image(q).str()}});
            }
            json measurements = json::array();
            for (const auto &p : f.measurements) {
                measurements.push_back(p.str());
            }
            json restricted = json::array();
            for (const auto &p : f.restricted) {
                restricted.push_back(p.str());
            }
            text << "k " << f.k() << "\nmeasurements " << pauli_list(f.measurements) << "\nnullity " << f.nullity_in
                 << " -> " << f.nullity_out << "\n";
            emit({{"n_in", f.n_in},
                  {"n_out", f.n_out},
                  {"k", f.k()},
                  {"measurements", measurements},
                  {"clifford", images},
                  {"annihilated", f.annihilated},
                  {"nullity_in", f.nullity_in},
                  {"nullity_out", f.nullity_out},
                  {"dropped", f.dropped},
                  {"converted", f.converted},
                  {"r", f.r},
                  {"restricted", restricted}},
                 format.empty() ? "json" : format, text.str());
        } else if (ver->parsed()) {
            if (list) {
                json out = json::array();
                for (const auto &e : catalog()) {
                    json inst = json::array();
                    for (const auto &ps : e.instances) {
                        inst.push_back(ps);
                    }
                    out.push_back({{"name", e.name}, {"summary", e.summary}, {"params", e.param_names}, {"instances", inst}});
                    text << e.name << "  " << e.summary << "\n";
                }
                emit(out, format, text.str());
                return EXIT_OK;
            }
            std::vector<VerificationReport> reports;
            if (all) {
                reports = verify_catalog();
            } else if (!protocol.empty()) {
                ProtocolSpec p;
                try {
                    p = make_protocol(protocol, parse_params(param_items));
                } catch (const std::invalid_argument &e) {
                    throw InputError(e.what());
                }
                reports.push_back(verify(p));
            } else {
                throw InputError("verify needs --protocol, --all or --list");
            }
            bool ok = true;
            json out = json::array();
            for (const auto &r : reports) {
                ok = ok && r.passed;
                out.push_back(report_json(r));
                text << (r.passed ? "PASS " : "FAIL ") << r.name << " " << params_str(r.params) << "  branches "
                     << r.branches.size() << "  qubits " << r.max_qubits;
                for (const auto &[k, v] : r.average) {
                    text << "  " << k << ":" << v;
                }
                text << "\n";
                for (const auto &f : r.failures) {
                    text << "    " << f << "\n";
                }
            }
            emit(out, format.empty() ? "json" : format, text.str());
            return ok ? EXIT_OK : EXIT_FAILED;
        } else if (tab->parsed()) {
            Table t = table(table_name);
            if (format == "json") {
                std::cout << t.to_json();
            } else if (format == "csv") {
                std::cout << t.to_csv();
            } else {
                std::cout << t.to_markdown();
            }
        } else if (bound->parsed()) {
            if (convert->parsed()) {
                BoundReport r;
                try {
                    r = conversion_bounds(from, to);
                } catch (const std::invalid_argument &e) {
                    throw InputError(e.what());
                }
                text << from << " -> " << to << "\n";
                text << "consumed per produced >= " << format6(r.lower) << (r.lower_star ? "*" : "")
                     << "  (nullity " << format6(r.nullity_ratio) << ", extent " << format6(r.extent_ratio) << ")\n";
                text << "produced per consumed <= " << format6(r.upper) << (r.upper_star ? "*" : "") << "\n";
                text << "dyadic monotone (probability-1/2 protocols only): >= " << format6(r.lower_dagger)
                     << ", <= " << format6(r.upper_dagger) << "\n";
                emit({{"source", from},
                      {"target", to},
                      {"nullity_ratio", r.nullity_ratio},
                      {"extent_ratio", r.extent_ratio},
                      {"mu2_ratio", r.mu2_ratio},
                      {"lower", r.lower},
                      {"lower_extent", r.lower_star},
                      {"upper", r.upper},
                      {"upper_extent", r.upper_star},
                      {"lower_mu2", r.lower_dagger},
                      {"upper_mu2", r.upper_dagger},
                      {"extent_solved", r.extent_solved}},
                     format, text.str());
            } else if (synth->parsed()) {
                SynthesisBound b;
                try {
                    b = synthesis_bound(parse_synth_family(family), epsilon, C,
                                        form == "state" ? SynthForm::STATE : SynthForm::UNITARY, d);
                } catch (const std::logic_error &e) {
                    throw InputError(e.what());
                }
                text << format6(b.value) << "  (" << b.formula << ")\nholds with probability >= "
                     << format6(b.probability) << "; average >= " << format6(b.average) << "\n";
                emit({{"family", family},
                      {"form", form},
                      {"epsilon", epsilon},
                      {"C", C},
                      {"d", d},
                      {"value", b.value},
                      {"probability", b.probability},
                      {"average", b.average},
                      {"formula", b.formula}},
                     format, text.str());
            } else {
                FloorRule fr = rule == "t" ? FloorRule::T_STATES : rule == "gaussian" ? FloorRule::GAUSSIAN : FloorRule::DYADIC;
                ExactState s = parse_state(state);
                (void)s;
                FloorReport r = probability_floor_check(state, fr, trials, floor_seed);
                text << r.trials << " trials, " << r.zeros << " zero, " << r.violations << " violations, min p "
                     << r.min_nonzero << ", min log2 margin " << r.min_log2_margin << "\n";
                for (const auto &w : r.witnesses) {
                    text << "  " << w << "\n";
                }
                emit({{"state", state},
                      {"rule", rule},
                      {"trials", r.trials},
                      {"seed", r.seed},
                      {"zeros", r.zeros},
                      {"violations", r.violations},
                      {"min_nonzero", r.min_nonzero},
                      {"min_log2_margin", r.min_log2_margin},
                      {"witnesses", r.witnesses}},
                     format, text.str());
                return r.violations ? EXIT_FAILED : EXIT_OK;
            }
        } else if (pp->parsed()) {
            PhasePolynomial poly;
            try {
                poly = PhasePolynomial::parse(read_file(file));
            } catch (const std::invalid_argument &e) {
                throw InputError(file + ": " + e.what());
            }
            if (pp_action == "tau") {
                size_t tau = tau_upper(poly), rank = odd_rank(poly);
                size_t nu = stabilizer_nullity(phase_state(poly));
                text << "tau_upper " << tau << "\nodd_rank " << rank << "\nnullity " << nu << "\neven_rows "
                     << (even_row_weight(poly) ? "yes" : "no") << "\n";
                emit({{"n", poly.n},
                      {"tau_upper", tau},
                      {"odd_rank", rank},
                      {"nullity", nu},
                      {"even_row_weight", even_row_weight(poly)},
                      {"canonical", canonicalize(poly).str()}},
                     format, text.str());
            } else {
                CatalyticReport r = catalytic_conversion(poly);
                auto branches = simulate(r.circuit, phase_state(poly));
                bool ok = true;
                for (const auto &b : branches) {
                    ok = ok && equal_up_to_phase(b.state, r.target);
                }
                text << "tau " << r.tau << " nullity " << r.nullity << " rank " << r.rank << "\ncatalyst " << r.catalyst
                     << " produced " << r.produced << "\ncircuit consumes " << r.circuit_t_consumed << " T, outputs "
                     << r.circuit_t_output << " T\nverified " << (ok ? "yes" : "no") << "\n";
                emit({{"tau", r.tau},
                      {"nullity", r.nullity},
                      {"rank", r.rank},
                      {"catalyst", r.catalyst},
                      {"produced", r.produced},
                      {"circuit_t_consumed", r.circuit_t_consumed},
                      {"circuit_t_output", r.circuit_t_output},
                      {"verified", ok},
                      {"circuit", r.circuit.str()}},
                     format, text.str());
                return ok ? EXIT_OK : EXIT_FAILED;
            }
        }
        return EXIT_OK;
    } catch (const SolverError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_SOLVER;
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_INPUT;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_INPUT;
    } catch (const std::out_of_range &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_INPUT;
    } catch (const SimulationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_INPUT;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_FAILED;
    }
}
