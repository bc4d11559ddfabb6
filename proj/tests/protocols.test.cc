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

#include "magicbound/protocols.h"

#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace mb;

namespace {

std::string describe(const VerificationReport &r) {
    std::string out = r.name;
    for (const auto &[k, v] : r.params) {
        out += " " + k + "=" + std::to_string(v);
    }
    for (const auto &f : r.failures) {
        out += "\n  " + f;
    }
    return out;
}

// Register value with qubit 0 as the most significant bit.
uint64_t pack(uint64_t a, uint64_t b, size_t n) {
    return (a << n) | b;
}

void check_addition(size_t n, uint64_t a, uint64_t b) {
    CircuitIR c = adder_circuit(n);
    auto branches = simulate(c, ExactState::basis(2 * n, pack(a, b, n)));
    ExactState want = ExactState::basis(2 * n, pack(a, (a + b) % (uint64_t{1} << n), n));
    for (const auto &br : branches) {
        ASSERT_TRUE(equal_up_to_phase(br.state, want)) << n << " " << a << " " << b;
        ASSERT_EQ(br.tally.at("CCZ"), (int64_t)n - 1);
    }
}

}  // namespace

TEST(protocols, every_catalog_instance_verifies) {
    auto reports = verify_catalog();
    size_t count = 0;
    for (const auto &e : catalog()) {
        count += e.instances.size();
    }
    ASSERT_EQ(reports.size(), count);
    for (const auto &r : reports) {
        EXPECT_TRUE(r.passed) << describe(r);
        EXPECT_TRUE(r.total_probability_one) << r.name;
        EXPECT_LE(r.max_qubits, MAX_PROTOCOL_QUBITS) << r.name;
    }
}

TEST(protocols, catalog_is_broad) {
    ASSERT_GE(catalog().size(), 17u);
    ASSERT_THROW(make_protocol("nope"), std::invalid_argument);
    ASSERT_THROW(make_protocol("wn_reduction", {{"m", 3}}), std::invalid_argument);
    ASSERT_THROW(make_protocol("wn_reduction", {{"n", 1}}), std::invalid_argument);
}

TEST(protocols, cs_catalysis_declaration) {
    VerificationReport r = verify(make_protocol("cs_catalysis"));
    ASSERT_TRUE(r.passed) << describe(r);
    ASSERT_EQ(r.branches.size(), 2u);
    ASSERT_TRUE(r.catalyst_intact);
    ASSERT_NEAR(r.average.at("CS"), 1, 1e-12);
    ASSERT_EQ(r.nullity_in, 2);
    ASSERT_EQ(r.nullity_out, 1);
}

TEST(protocols, measure_control_is_a_coin_flip) {
    VerificationReport r = verify(make_protocol("measure_control", {{"n", 3}, {"s", 0}}));
    ASSERT_TRUE(r.passed) << describe(r);
    ASSERT_EQ(r.branches.size(), 2u);
    for (const auto &b : r.branches) {
        ASSERT_NEAR(b.probability, 0.5, 1e-12);
        ASSERT_FALSE(b.probability_exact.empty());
    }
}

TEST(protocols, many_sqrt_t_consumption) {
    VerificationReport r = verify(make_protocol("many_sqrt_t", {{"k", 2}}));
    ASSERT_TRUE(r.passed) << describe(r);
    ASSERT_NEAR(r.average.at("T"), 2.5, 1e-12);
    ASSERT_NEAR(r.worst.at("T"), 3, 1e-12);
    ASSERT_NEAR(r.average.at("CCZ"), 2, 1e-12);
}

TEST(protocols, dyadic_ccz_counts) {
    for (auto [d, k] : std::vector<std::pair<int64_t, int64_t>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
        VerificationReport r = verify(make_protocol("dyadic_power", {{"d", d}, {"k", k}, {"j", 1}}));
        int64_t b = ((int64_t{1} << (d - 1)) - 1) * (k - 1) + d - 1;
        ASSERT_TRUE(r.passed) << describe(r);
        ASSERT_NEAR(r.worst.at("CCZ"), (double)b, 1e-12) << d << " " << k;
        ASSERT_NEAR(r.average.at("CCZ"), (double)b, 1e-12) << d << " " << k;
    }
}

TEST(protocols, wrong_declaration_fails) {
    ProtocolSpec p = make_protocol("ccz_to_cs");
    p.average["CCZ"] = 2;
    VerificationReport r = verify(p);
    ASSERT_FALSE(r.passed);
    ProtocolSpec q = make_protocol("ccz_to_cs");
    q.circuit = CircuitIR(3);
    q.circuit.measure("Y", {0}, MeasureMode::BRANCH, "m").discard(0);
    ASSERT_FALSE(verify(q).passed);
}

TEST(protocols, adder_exhaustive_small) {
    for (size_t n = 2; n <= 3; n++) {
        for (uint64_t a = 0; a < (uint64_t{1} << n); a++) {
            for (uint64_t b = 0; b < (uint64_t{1} << n); b++) {
                check_addition(n, a, b);
            }
        }
    }
}

TEST(protocols, adder_sampled_large) {
    std::mt19937_64 rng(5);
    for (size_t n = 4; n <= 5; n++) {
        for (int trial = 0; trial < 8; trial++) {
            uint64_t mask = (uint64_t{1} << n) - 1;
            check_addition(n, rng() & mask, rng() & mask);
        }
    }
}

TEST(protocols, adder_t_variants_agree) {
    for (AndMode mode : {AndMode::T_GATES, AndMode::T_INJECTED}) {
        CircuitIR c = adder_circuit(2, mode);
        auto branches = simulate(c, ExactState::basis(4, pack(3, 2, 2)));
        for (const auto &br : branches) {
            ASSERT_TRUE(equal_up_to_phase(br.state, ExactState::basis(4, pack(3, 1, 2))));
            ASSERT_EQ(br.tally.at("T"), 4);
        }
    }
}

TEST(protocols, adder_to_cnz_nullity) {
    CnzReport two = adder_to_cnz(2);
    ASSERT_TRUE(two.report.passed) << describe(two.report);
    ASSERT_EQ(two.nullity, 3u);
    CnzReport three = adder_to_cnz(3);
    ASSERT_TRUE(three.report.passed) << describe(three.report);
    ASSERT_EQ(three.nullity, 4u);
    CnzReport off = adder_to_cnz(2, true);
    ASSERT_TRUE(off.report.passed) << describe(off.report);
    ASSERT_EQ(off.nullity, 0u);
}

TEST(protocols, qubit_cap_is_enforced) {
    ProtocolSpec p = make_protocol("ccz_to_cs");
    for (int i = 0; i < 13; i++) {
        p.circuit.alloc();
    }
    ASSERT_THROW(verify(p), std::out_of_range);
}
