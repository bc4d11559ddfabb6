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

#include "magicbound/simulator.h"

#include <numeric>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace mb;
using mb_test::Mat;
using mb_test::Vec;

namespace {

CycNumber total_probability(const std::vector<Branch> &bs) {
    CycNumber t;
    for (const auto &b : bs) {
        t += b.probability;
    }
    return t;
}

/// Random circuit of Clifford gates, T gates and branch measurements, with
/// Clifford corrections conditioned on earlier outcomes.
CircuitIR random_circuit(size_t n, std::mt19937_64 &rng, size_t num_ops, size_t max_measurements) {
    CircuitIR c(n);
    std::vector<std::string> labels;
    const char *gates[] = {"H", "S", "SDG", "X", "Y", "Z", "CX", "CZ", "SWAP", "T"};
    for (size_t i = 0; i < num_ops; i++) {
        size_t a = rng() % n;
        size_t b = (a + 1 + rng() % std::max<size_t>(1, n - 1)) % n;
        int kind = (int)(rng() % 6);
        if (kind == 0 && labels.size() < max_measurements) {
            std::string p;
            for (size_t q = 0; q < n; q++) {
                p += "IXYZ"[rng() % 4];
            }
            if (p.find_first_not_of('I') == std::string::npos) {
                p[0] = 'Z';
            }
            std::vector<size_t> all(n);
            for (size_t q = 0; q < n; q++) {
                all[q] = q;
            }
            labels.push_back("m" + std::to_string(labels.size()));
            c.measure(((rng() & 1) ? "-" : "+") + p, all, MeasureMode::BRANCH, labels.back());
        } else if (kind == 1 && !labels.empty()) {
            c.gate((rng() & 1) ? "X" : "S", {a});
            c.when({labels[rng() % labels.size()]}, (int)(rng() & 1));
        } else {
            std::string g = gates[rng() % 10];
            if (n == 1 && clifford_gate_arity(g == "T" ? "H" : g) == 2) {
                g = "H";
            }
            if (g == "T" || clifford_gate_arity(g) == 1) {
                c.gate(g, {a});
            } else {
                c.gate(g, {a, b});
            }
        }
    }
    return c;
}

Mat dense_diag(const std::string &name, const std::vector<size_t> &qs, size_t n) {
    size_t dim = size_t{1} << n;
    Mat u = Mat::Identity(dim, dim);
    for (size_t x = 0; x < dim; x++) {
        bool all = true;
        for (size_t q : qs) {
            all = all && ((x >> (n - 1 - q)) & 1);
        }
        if (all && name == "T") {
            u(x, x) = std::polar(1.0, M_PI / 4);
        }
    }
    return u;
}

/// Dense oracle: sum over branches of |v><v| following the same conditions.
void dense_run(const CircuitIR &c, size_t pc, Vec v, std::map<std::string, int> bits, Mat &rho) {
    size_t n = c.num_qubits;
    for (; pc < c.instructions.size(); pc++) {
        const Instruction &inst = c.instructions[pc];
        if (inst.cond) {
            int x = 0;
            for (const auto &l : inst.cond->labels) {
                x ^= bits.at(l);
            }
            if (x != inst.cond->value) {
                continue;
            }
        }
        if (inst.kind == InstKind::CLIFFORD) {
            v = mb_test::dense_gate(inst.name, inst.qubits, n) * v;
        } else if (inst.kind == InstKind::DIAGONAL) {
            v = dense_diag(inst.name, inst.qubits, n) * v;
        } else if (inst.kind == InstKind::MEASURE) {
            Mat p = mb_test::dense_pauli(embed_pauli(inst.pauli, inst.qubits, n));
            Mat id = Mat::Identity(p.rows(), p.cols());
            Vec v0 = (id + p) / 2 * v;
            Vec v1 = (id - p) / 2 * v;
            auto b0 = bits;
            b0[inst.label] = 0;
            dense_run(c, pc + 1, v0, b0, rho);
            bits[inst.label] = 1;
            v = v1;
        }
    }
    rho += v * v.adjoint();
}

}  // namespace

TEST(simulator, project_tt_onto_odd_parity) {
    ExactState tt = resource_state("T,T");
    auto [proj, p] = project(tt, PauliOperator::from_str("-ZZ"), +1);
    ASSERT_EQ(p, CycNumber(1).scaled(-1));
    ExactState expect =
        ExactState::from_amps(2, {CycNumber(), CycNumber::inv_sqrt2(), CycNumber::inv_sqrt2(), CycNumber()});
    ASSERT_TRUE(equal_up_to_phase(proj, expect));
    ASSERT_EQ(stabilizer_group(proj.scaled(CycNumber::sqrt2())).size(), 2u);

    auto [z, pz] = project(resource_state("zero:1"), PauliOperator::from_str("Z"), +1);
    ASSERT_EQ(pz, CycNumber(1));
    ASSERT_EQ(z, resource_state("zero:1"));
}

TEST(simulator, project_vs_dense) {
    std::mt19937_64 rng(3);
    for (size_t n = 1; n <= 3; n++) {
        for (int t = 0; t < 30; t++) {
            ExactState s = mb_test::random_state(n, 2, rng);
            PauliOperator p = mb_test::random_pauli(n, rng, true);
            int sign = (rng() & 1) ? 1 : -1;
            auto [proj, w] = project(s, p, sign);
            Vec v = mb_test::dense_state(s);
            Mat id = Mat::Identity(v.size(), v.size());
            Vec expect = (id + (double)sign * mb_test::dense_pauli(p)) / 2 * v;
            ASSERT_LT((mb_test::dense_state(proj) - expect).norm(), 1e-9);
            ASSERT_LT(std::abs(w.to_complex() - expect.squaredNorm()), 1e-9);
        }
    }
}

TEST(simulator, empty_circuit) {
    auto bs = simulate(CircuitIR(1), resource_state("T"));
    ASSERT_EQ(bs.size(), 1u);
    ASSERT_EQ(bs[0].probability, CycNumber(1));
    ASSERT_EQ(bs[0].state, resource_state("T"));
    ASSERT_EQ(bs[0].outcomes, "");
}

TEST(simulator, measure_y_on_cnz) {
    for (size_t n = 1; n <= 3; n++) {
        CircuitIR c(n + 2);
        c.measure("Y", {0}, MeasureMode::BRANCH, "m").discard(0);
        auto bs = simulate(c, resource_state("CnZ:" + std::to_string(n + 2)));
        ASSERT_EQ(bs.size(), 2u);
        for (const auto &b : bs) {
            ASSERT_EQ(b.probability, CycNumber(1).scaled(-1));
            ASSERT_TRUE(b.is_half);
            ASSERT_TRUE(b.state.is_normalized());
        }
        std::string k = std::to_string(n + 1);
        bool a = equal_up_to_phase(bs[0].state, resource_state("CnS:" + k)) &&
                 equal_up_to_phase(bs[1].state, resource_state("CnSdg:" + k));
        bool b = equal_up_to_phase(bs[1].state, resource_state("CnS:" + k)) &&
                 equal_up_to_phase(bs[0].state, resource_state("CnSdg:" + k));
        ASSERT_TRUE(a || b) << n;
    }
}

TEST(simulator, measurement_probability) {
    for (size_t n = 2; n <= 5; n++) {
        auto r = measurement_probability(resource_state("CnZ:" + std::to_string(n)),
                                         embed_pauli(PauliOperator::from_str("Z"), {0}, n));
        ASSERT_EQ(r.value, CycNumber(1).scaled(-1));
        ASSERT_TRUE(r.is_half);
    }
    auto r = measurement_probability(resource_state("zero:1"), PauliOperator::from_str("Z"));
    ASSERT_EQ(r.value, CycNumber(1));
    ASSERT_FALSE(r.is_half);
}

TEST(simulator, discard) {
    ASSERT_EQ(discard(resource_state("zero:1,T"), 0), resource_state("T"));
    ASSERT_EQ(discard(resource_state("T,ket:1"), 1), resource_state("T"));
    ASSERT_EQ(discard(resource_state("T,plus:1"), 1), resource_state("T"));
    ExactState bell = ExactState::from_amps(2, {CycNumber::inv_sqrt2(), CycNumber(), CycNumber(), CycNumber::inv_sqrt2()});
    ASSERT_THROW(discard(bell, 0), SimulationError);
    // H|T> has unequal weights on |0> and |1>.
    ExactState ht = tensor(apply_gate(resource_state("T"), "H", {0}), resource_state("T"));
    ASSERT_THROW(discard(ht, 0), SimulationError);
}

TEST(simulator, w_reduction_discard) {
    // Outcome 1 leaves the last qubit in |1>, which is then removed.
    CircuitIR c(3);
    c.measure("Z", {2}, MeasureMode::POST_MINUS, "m").discard(2);
    auto bs = simulate(c, resource_state("W:3"));
    ASSERT_EQ(bs.size(), 1u);
    ASSERT_EQ(bs[0].state.num_qubits(), 2u);
    ASSERT_EQ(bs[0].probability, CycNumber(1).scaled(-1));
    ASSERT_TRUE(bs[0].state.is_normalized());
}

TEST(simulator, choi_states) {
    CircuitIR id(1);
    ExactState bell = choi_state(id);
    ASSERT_EQ(bell,
              ExactState::from_amps(2, {CycNumber::inv_sqrt2(), CycNumber(), CycNumber(), CycNumber::inv_sqrt2()}));
    ASSERT_EQ(dyadic_monotone(bell), Dyadic(0));

    CircuitIR t(1);
    t.gate("T", {0});
    ASSERT_EQ(dyadic_monotone(choi_state(t)), Dyadic(1, 1));

    CircuitIR ccz(3);
    ccz.gate("CCZ", {0, 1, 2});
    ASSERT_EQ(dyadic_monotone(choi_state(ccz)), Dyadic(1));

    CircuitIR m(1);
    m.measure("Z", {0});
    ASSERT_THROW(choi_state(m), std::invalid_argument);
}

TEST(simulator, errors) {
    CircuitIR post(1);
    post.measure("Z", {0}, MeasureMode::POST_MINUS);
    ASSERT_THROW(simulate(post), SimulationError);

    CircuitIR deep(1);
    for (int i = 0; i < 15; i++) {
        deep.measure(i % 2 ? "Z" : "X", {0});
    }
    ASSERT_THROW(simulate(deep), SimulationError);

    CircuitIR sample(1);
    sample.measure("X", {0}, MeasureMode::SAMPLE);
    ASSERT_THROW(simulate(sample), SimulationError);
    SimOptions opt;
    opt.seed = 5;
    ASSERT_EQ(simulate(sample, opt).size(), 1u);

    CircuitIR bad(2);
    bad.gate("CX", {0, 2});
    ASSERT_THROW(simulate(bad), std::invalid_argument);
    CircuitIR bad_label(1);
    bad_label.gate("X", {0}).when({"nope"});
    ASSERT_THROW(simulate(bad_label), std::invalid_argument);
}

TEST(simulator, deterministic_measurement_does_not_branch) {
    CircuitIR c(2);
    c.measure("ZZ", {0, 1}, MeasureMode::BRANCH, "a");
    auto bs = simulate(c, resource_state("ket:11"));
    ASSERT_EQ(bs.size(), 1u);
    ASSERT_EQ(bs[0].outcomes, "a=0");
    ASSERT_FALSE(bs[0].is_half);
}

TEST(simulator, random_circuits_vs_dense_channel) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 60; t++) {
        size_t n = 1 + rng() % 3;
        CircuitIR c = random_circuit(n, rng, 12, 4);
        ExactState in = resource_state("T*" + std::to_string(n));
        auto bs = simulate(c, in);
        ASSERT_EQ(total_probability(bs), CycNumber(1)) << c.str();
        size_t dim = size_t{1} << n;
        Mat rho = Mat::Zero(dim, dim);
        for (const auto &b : bs) {
            Vec v = mb_test::dense_state(b.state);
            double scale = b.probability.to_complex().real() / v.squaredNorm();
            rho += scale * v * v.adjoint();
        }
        Mat oracle = Mat::Zero(dim, dim);
        dense_run(c, 0, mb_test::dense_state(in), {}, oracle);
        ASSERT_LT((rho - oracle).norm(), 1e-9) << c.str();
    }
}

TEST(simulator, nullity_and_mu2_never_increase) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 60; t++) {
        size_t n = 2 + rng() % 2;
        CircuitIR c(n);
        for (int i = 0; i < 10; i++) {
            size_t a = rng() % n;
            size_t b = (a + 1) % n;
            switch (rng() % 4) {
                case 0:
                    c.gate("H", {a});
                    break;
                case 1:
                    c.gate("S", {a});
                    break;
                case 2:
                    c.gate("CX", {a, b});
                    break;
                default: {
                    std::string p;
                    for (size_t q = 0; q < n; q++) {
                        p += "IXYZ"[rng() % 4];
                    }
                    if (p.find_first_not_of('I') == std::string::npos) {
                        p[0] = 'X';
                    }
                    std::vector<size_t> all(n);
                    std::iota(all.begin(), all.end(), 0);
                    c.measure(p, all);
                }
            }
        }
        const char *inputs2[] = {"T,T", "sqrtT,T", "CS"};
        const char *inputs3[] = {"T,T,T", "sqrtT,CS", "CCZ"};
        ExactState in = resource_state(n == 2 ? inputs2[rng() % 3] : inputs3[rng() % 3]);
        size_t nu_in = stabilizer_nullity(in);
        Dyadic mu_in = dyadic_monotone(in);
        for (const auto &b : simulate(c, in)) {
            ASSERT_LE(stabilizer_nullity(b.state), nu_in);
            if (b.is_half) {
                ASSERT_LE(dyadic_monotone(b.state), mu_in) << c.str();
            }
        }
    }
}

TEST(simulator, text_round_trip) {
    std::string text =
        "qubits 2\n"
        "# comment\n"
        "alloc + |0\n"
        "alloc |+\n"
        "gate H 0\n"
        "gate CCZ 0 1 2\n"
        "gate RZ 1 3 0\n"
        "inject T -> 4\n"
        "measure -ZZ 0 1 -> branch AS m1\n"
        "measure X 3 -> post+\n"
        "cond m1=1 gate X 2\n"
        "cond m1^m1=0 gate CX 2 4\n"
        "discard 0\n";
    CircuitIR c = CircuitIR::parse(text);
    ASSERT_EQ(c.instructions.size(), 11u);
    ASSERT_EQ(c.final_width(), 4u);
    CircuitIR d = CircuitIR::parse(c.str());
    ASSERT_EQ(c.str(), d.str());
    ASSERT_THROW(CircuitIR::parse("qubits 1\ngate FOO 0\n"), std::invalid_argument);
    ASSERT_THROW(CircuitIR::parse("gate H 0\n"), std::invalid_argument);
    ASSERT_THROW(CircuitIR::parse("qubits 1\ninject T -> 0\n"), std::invalid_argument);
    ASSERT_THROW(CircuitIR::parse("qubits 1\nmeasure ZZ 0 -> branch\n"), std::invalid_argument);
    auto bs = simulate(c);
    // Qubit 3 is |+>, so the post-selection is certain.
    ASSERT_EQ(total_probability(bs), CycNumber(1));
}

TEST(simulator, tally) {
    CircuitIR c(1);
    c.gate("T", {0}).gate("TDG", {0}).rz(2, 3, 0).rz(1, 3, 0).rz(4, 3, 0).inject("CCZ").gate("CCZ", {1, 2, 3});
    auto bs = simulate(c);
    ASSERT_EQ(bs.size(), 1u);
    std::map<std::string, int64_t> expect = {{"T", 3}, {"sqrtT", 1}, {"CCZ", 2}};
    ASSERT_EQ(bs[0].tally, expect);
}

TEST(simulator, apply_gate_vs_dense) {
    std::mt19937_64 rng(19);
    for (const char *g : {"H", "S", "SDG", "X", "Y", "Z", "CX", "CZ", "SWAP"}) {
        ExactState s = mb_test::random_state(3, 2, rng);
        std::vector<size_t> qs = clifford_gate_arity(g) == 1 ? std::vector<size_t>{1} : std::vector<size_t>{2, 0};
        Vec expect = mb_test::dense_gate(g, qs, 3) * mb_test::dense_state(s);
        ASSERT_LT((mb_test::dense_state(apply_gate(s, g, qs)) - expect).norm(), 1e-9) << g;
    }
}
