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

#include "magicbound/canonical.h"

#include <random>

#include "gtest/gtest.h"
#include "magicbound/extent.h"
#include "test_util.h"

using namespace mb;

namespace {

const char *CLIFFORD_1Q[] = {"H", "S", "SDG", "X", "Z"};
const char *CLIFFORD_2Q[] = {"CX", "CZ", "SWAP"};

CircuitIR random_clifford(size_t n, size_t gates, std::mt19937_64 &rng) {
    CircuitIR c(n);
    for (size_t g = 0; g < gates; g++) {
        size_t a = rng() % n;
        if (n > 1 && rng() % 2) {
            size_t b = (a + 1 + rng() % (n - 1)) % n;
            c.gate(CLIFFORD_2Q[rng() % 3], {a, b});
        } else {
            c.gate(CLIFFORD_1Q[rng() % 5], {a});
        }
    }
    return c;
}

mb_test::Mat dense_circuit(const CircuitIR &c) {
    size_t n = c.num_qubits;
    mb_test::Mat u = mb_test::Mat::Identity(1 << n, 1 << n);
    for (const auto &inst : c.instructions) {
        u = mb_test::dense_gate(inst.name, inst.qubits, n) * u;
    }
    return u;
}

ExactState random_input(std::mt19937_64 &rng, size_t max_qubits) {
    const char *pool[] = {"T", "CS", "CCZ", "sqrtT", "plus:1", "zero:1", "T", "CS"};
    ExactState s;
    bool have = false;
    while (true) {
        ExactState t = resource_state(pool[rng() % 8]);
        size_t w = (have ? s.num_qubits() : 0) + t.num_qubits();
        if (w > max_qubits) {
            if (have) {
                break;
            }
            continue;
        }
        s = have ? tensor(s, t) : t;
        have = true;
        if (rng() % 3 == 0) {
            break;
        }
    }
    return s;
}

CircuitIR random_post_selected(size_t n, size_t allocs, size_t measurements, std::mt19937_64 &rng) {
    CircuitIR c(n);
    size_t width = n;
    size_t placed_allocs = 0;
    for (size_t m = 0; m < measurements; m++) {
        if (placed_allocs < allocs && rng() % 2) {
            c.alloc(rng() % 2);
            width++;
            placed_allocs++;
        }
        c.append(random_clifford(width, rng() % 4, rng));
        size_t weight = 1 + rng() % std::min<size_t>(width, 3);
        std::vector<size_t> qs;
        while (qs.size() < weight) {
            size_t q = rng() % width;
            if (std::find(qs.begin(), qs.end(), q) == qs.end()) {
                qs.push_back(q);
            }
        }
        std::string p;
        for (size_t i = 0; i < weight; i++) {
            p += "XYZ"[rng() % 3];
        }
        c.measure(p, qs, rng() % 2 ? MeasureMode::POST_PLUS : MeasureMode::POST_MINUS);
    }
    while (placed_allocs < allocs) {
        c.alloc(false);
        width++;
        placed_allocs++;
    }
    c.append(random_clifford(width, rng() % 4, rng));
    return c;
}

}  // namespace

TEST(canonical, clifford_to_z_maps_generators) {
    std::mt19937_64 rng(5);
    for (size_t n = 1; n <= 4; n++) {
        auto descs = enumerate_stabilizer_states(n);
        for (int trial = 0; trial < 40; trial++) {
            ExactState s = descs[rng() % descs.size()].state();
            auto gens = stabilizer_group(s);
            size_t keep = rng() % (gens.size() + 1);
            gens.resize(keep);
            CircuitIR w = clifford_to_z(gens, n);
            CliffordTableau t = tableau_of(w);
            for (size_t i = 0; i < gens.size(); i++) {
                PauliOperator img = t.conjugate(gens[i]);
                ASSERT_EQ(img.sign(), 1) << gens[i];
                ASSERT_EQ(img.x, 0u);
                ASSERT_TRUE(img.z & PauliOperator::single(n, i, 'Z').z) << img;
                ASSERT_EQ(img.z >> (n - 1 - i) << (n - 1 - i), img.z) << img;
            }
        }
    }
}

TEST(canonical, rotation_circuit_matches_tableau_and_dense) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 60; trial++) {
        size_t n = 1 + rng() % 3;
        PauliOperator h = mb_test::random_pauli(n, rng, true);
        if (h.is_identity_up_to_phase()) {
            continue;
        }
        PauliOperator r = h * PauliOperator(n, 0, 0, 1);
        CircuitIR c = rotation_circuit(r);
        ASSERT_EQ(tableau_of(c), CliffordTableau::pauli_rotation(r));
        mb_test::Mat expect =
            (mb_test::Mat::Identity(1 << n, 1 << n) + mb_test::dense_pauli(r)) / std::sqrt(2.0);
        mb_test::Mat got = dense_circuit(c);
        // Equal up to a global phase.
        std::complex<double> ratio = 0;
        for (Eigen::Index i = 0; i < got.size() && ratio == 0.0; i++) {
            if (std::abs(expect(i)) > 1e-9) {
                ratio = got(i) / expect(i);
            }
        }
        ASSERT_NEAR(std::abs(ratio), 1, 1e-9);
        ASSERT_LT((got - ratio * expect).norm(), 1e-9) << r;
    }
}

TEST(canonical, inverse_clifford) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 30; trial++) {
        CircuitIR c = random_clifford(3, 15, rng);
        ASSERT_TRUE(tableau_of(c).then(tableau_of(inverse_clifford(c))).is_identity());
    }
}

TEST(canonical, trivialize_examples) {
    Trivialization t = trivialize_stabilizer(resource_state("plus:3"));
    ASSERT_EQ(t.r, 3u);
    ASSERT_EQ(t.residual.num_qubits(), 0u);

    ExactState zt = resource_state("zero:1,T");
    t = trivialize_stabilizer(zt);
    ASSERT_EQ(t.r, 1u);
    ASSERT_TRUE(equal_up_to_phase(t.residual, resource_state("T")));
    ASSERT_EQ(apply_circuit(t.clifford, tensor(ExactState(1), t.residual)), zt);

    std::mt19937_64 rng(4);
    ExactState ccz = resource_state("CCZ");
    for (int trial = 0; trial < 20; trial++) {
        CircuitIR scramble = random_clifford(4, 25, rng);
        ExactState s = apply_circuit(scramble, tensor(ExactState(1), ccz));
        t = trivialize_stabilizer(s);
        ASSERT_EQ(t.r, 1u);
        ASSERT_EQ(apply_circuit(t.clifford, tensor(ExactState(1), t.residual)), s);
        ASSERT_EQ(stabilizer_nullity(t.residual), 3u);
        // Clifford-invariant fingerprints of |CCZ>.
        ASSERT_EQ(pauli_spectrum(t.residual).entries.size(), pauli_spectrum(ccz).entries.size());
        ASSERT_EQ(dyadic_monotone(t.residual), dyadic_monotone(ccz));
        ASSERT_NEAR(extent(t.residual).value, 16.0 / 9, 1e-6);
    }
}

TEST(canonical, measurement_in_stabilizer_is_dropped) {
    CircuitIR c(2);
    c.measure("Z", {0}, MeasureMode::POST_PLUS);
    CanonicalForm f = normalize_measurements(c, resource_state("zero:1,T"));
    ASSERT_EQ(f.k(), 0u);
    ASSERT_EQ(f.dropped, 1u);
    ASSERT_TRUE(f.tableau.is_identity());
    ASSERT_TRUE(f.clifford.instructions.empty());
}

TEST(canonical, anticommuting_measurement_becomes_clifford) {
    CircuitIR c(1);
    c.measure("X", {0}, MeasureMode::POST_PLUS);
    CanonicalForm f = normalize_measurements(c, ExactState(1));
    ASSERT_EQ(f.k(), 0u);
    ASSERT_EQ(f.converted, 1u);
    ASSERT_TRUE(equal_up_to_phase(f.apply(ExactState(1)), resource_state("plus:1")));
}

TEST(canonical, annihilation_is_reported) {
    CircuitIR c(2);
    c.measure("Z", {0}, MeasureMode::POST_MINUS);
    CanonicalForm f = normalize_measurements(c, resource_state("zero:1,T"));
    ASSERT_TRUE(f.annihilated);
    ASSERT_THROW(simulate(c, resource_state("zero:1,T")), SimulationError);
}

TEST(canonical, identity_circuit) {
    CanonicalForm f = canonical_form(CircuitIR(3), resource_state("CCZ"));
    ASSERT_EQ(f.k(), 0u);
    ASSERT_TRUE(f.tableau.is_identity());
    ASSERT_EQ(f.nullity_in, f.nullity_out);
}

TEST(canonical, rejects_non_post_selected) {
    CircuitIR c(1);
    c.measure("Z", {0}, MeasureMode::BRANCH);
    ASSERT_THROW(normalize_measurements(c, ExactState(1)), std::invalid_argument);
    CircuitIR d(1);
    d.gate("T", {0});
    ASSERT_THROW(normalize_measurements(d, ExactState(1)), std::invalid_argument);
}

TEST(canonical, random_circuits_vs_direct_simulation) {
    std::mt19937_64 rng(2026);
    size_t checked = 0, annihilated = 0;
    for (int trial = 0; trial < 200; trial++) {
        ExactState input = random_input(rng, 4);
        size_t allocs = input.num_qubits() < 5 ? rng() % 2 : 0;
        CircuitIR c = random_post_selected(input.num_qubits(), allocs, 1 + rng() % 6, rng);
        CanonicalForm f = canonical_form(c, input);
        std::vector<Branch> direct;
        try {
            direct = simulate(c, input);
        } catch (const SimulationError &) {
            ASSERT_TRUE(f.annihilated) << c.str();
            annihilated++;
            continue;
        }
        ASSERT_FALSE(f.annihilated) << c.str();
        ASSERT_EQ(direct.size(), 1u);
        const ExactState &out = direct[0].state;
        ASSERT_TRUE(equal_up_to_phase(f.apply(input), out)) << c.str();
        ASSERT_EQ(f.k(), f.nullity_in - stabilizer_nullity(out)) << c.str();
        ASSERT_EQ(f.nullity_out, stabilizer_nullity(out));

        ExactState ext = f.n_out > f.n_in ? tensor(input, ExactState(f.n_out - f.n_in)) : input;
        for (size_t i = 0; i < f.k(); i++) {
            for (size_t j = 0; j < f.k(); j++) {
                ASSERT_TRUE(commutes(f.measurements[i], f.measurements[j]));
            }
            CycNumber e = pauli_sandwich(ext, f.measurements[i]);
            ASSERT_NE(e, ext.norm_sq()) << "retained measurement lies in the input stabilizer";
        }
        ASSERT_EQ(independent_generators(f.measurements).size(), f.k());

        // Restricted measurements reproduce the projection on the residual register.
        ASSERT_EQ(f.restricted.size(), f.k());
        Trivialization t = trivialize_stabilizer(ext);
        ExactState reduced = t.residual;
        for (const auto &p : f.restricted) {
            reduced = project(reduced, p, +1).first;
        }
        ExactState lifted = apply_circuit(t.clifford, tensor(ExactState(t.r), reduced));
        ASSERT_TRUE(equal_up_to_phase(apply_circuit(f.clifford, lifted), out));
        checked++;
    }
    EXPECT_GT(checked, 100u);
    EXPECT_GT(annihilated, 0u);
}

TEST(canonical, idempotent) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 40; trial++) {
        ExactState input = random_input(rng, 4);
        CircuitIR c = random_post_selected(input.num_qubits(), 0, 1 + rng() % 5, rng);
        CanonicalForm f = canonical_form(c, input);
        if (f.annihilated) {
            continue;
        }
        CanonicalForm g = canonical_form(f.to_circuit(), input);
        ASSERT_FALSE(g.annihilated);
        ASSERT_EQ(g.k(), f.k());
        std::vector<PauliOperator> both = f.measurements;
        both.insert(both.end(), g.measurements.begin(), g.measurements.end());
        ExactState ext = input;
        auto stab = stabilizer_group(ext);
        std::vector<PauliOperator> with_stab = stab;
        with_stab.insert(with_stab.end(), both.begin(), both.end());
        std::vector<PauliOperator> f_stab = stab;
        f_stab.insert(f_stab.end(), f.measurements.begin(), f.measurements.end());
        ASSERT_EQ(independent_generators(with_stab).size(), independent_generators(f_stab).size());
        ASSERT_TRUE(equal_up_to_phase(g.apply(input), f.apply(input)));
    }
}
