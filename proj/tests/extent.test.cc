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

#include "magicbound/extent.h"

#include <cmath>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "magicbound/simulator.h"
#include "test_util.h"

using namespace mb;

namespace {

// Phase-canonical key for a complex vector: divide by the first nonzero amplitude.
std::vector<std::pair<long, long>> key(const std::vector<std::complex<double>> &v) {
    std::complex<double> ref = 0;
    for (auto a : v) {
        if (std::abs(a) > 1e-9) {
            ref = a / std::abs(a);
            break;
        }
    }
    std::vector<std::pair<long, long>> out;
    for (auto a : v) {
        auto b = a / ref * 1e6;
        out.emplace_back(std::lround(b.real()), std::lround(b.imag()));
    }
    return out;
}

}  // namespace

TEST(extent, stabilizer_counts) {
    ASSERT_EQ(stabilizer_state_count(1), 6u);
    ASSERT_EQ(stabilizer_state_count(2), 60u);
    ASSERT_EQ(stabilizer_state_count(3), 1080u);
    ASSERT_EQ(stabilizer_state_count(4), 36720u);
    ASSERT_EQ(stabilizer_state_count(5), 2423520u);
    for (size_t n = 0; n <= 4; n++) {
        uint64_t count = 0;
        for_each_stabilizer_state(n, [&](const StabilizerDescriptor &) { count++; });
        ASSERT_EQ(count, stabilizer_state_count(n)) << n;
        ASSERT_EQ((uint64_t)stabilizer_matrix(n).cols(), stabilizer_state_count(n));
    }
    ASSERT_THROW(for_each_stabilizer_state(6, [](const StabilizerDescriptor &) {}), std::out_of_range);
    ASSERT_THROW(stabilizer_matrix(5), std::out_of_range);
}

TEST(extent, enumeration_is_stabilizer_and_distinct) {
    for (size_t n = 1; n <= 3; n++) {
        std::set<std::vector<std::pair<long, long>>> seen;
        for (const auto &d : enumerate_stabilizer_states(n)) {
            ExactState s = d.state();
            ASSERT_TRUE(s.is_normalized()) << d.str();
            ASSERT_EQ(stabilizer_nullity(s), 0u) << d.str();
            auto amps = s.to_complex();
            auto fast = d.amplitudes();
            for (size_t i = 0; i < amps.size(); i++) {
                ASSERT_LT(std::abs(amps[i] - fast[i]), 1e-12);
            }
            ASSERT_TRUE(seen.insert(key(fast)).second) << d.str();
        }
    }
    // n=4 distinctness only (nullity spot-checked).
    std::set<std::vector<std::pair<long, long>>> seen;
    size_t k = 0;
    for_each_stabilizer_state(4, [&](const StabilizerDescriptor &d) {
        ASSERT_TRUE(seen.insert(key(d.amplitudes())).second);
        if (k++ % 997 == 0) {
            ASSERT_EQ(stabilizer_nullity(d.state()), 0u);
        }
    });
}

TEST(extent, enumeration_covers_clifford_orbit) {
    // Random Clifford circuits applied to |0...0> must land on an enumerated state.
    std::mt19937_64 rng(7);
    const char *one[] = {"H", "S", "X"};
    for (size_t n = 1; n <= 3; n++) {
        std::set<std::vector<std::pair<long, long>>> all;
        for_each_stabilizer_state(n, [&](const StabilizerDescriptor &d) { all.insert(key(d.amplitudes())); });
        for (int trial = 0; trial < 100; trial++) {
            ExactState s(n);
            for (int g = 0; g < 20; g++) {
                size_t a = rng() % n;
                if (n > 1 && rng() % 3 == 0) {
                    size_t b = (a + 1 + rng() % (n - 1)) % n;
                    s = apply_gate(s, "CX", {a, b});
                } else {
                    s = apply_gate(s, one[rng() % 3], {a});
                }
            }
            ASSERT_TRUE(all.count(key(s.to_complex())));
        }
    }
}

TEST(extent, known_values) {
    struct Case {
        const char *expr;
        double value;
    };
    double r2 = std::sqrt(2.0);
    std::vector<Case> cases = {
        {"T", 4 / (2 + r2)},
        {"CS", 8.0 / 5},
        {"CCZ", 16.0 / 9},
        {"CCS", 41.0 / 20},
        {"W:3", 16.0 / 9},
        {"sqrtT", 2 - r2 + 1 / std::sqrt(2 + r2)},
        {"C3S", 9.0 / 8 + 1 / r2},
        {"zero:3", 1},
        {"plus:2", 1},
    };
    for (const auto &c : cases) {
        ExtentResult r = extent(resource_state(c.expr));
        EXPECT_TRUE(r.converged) << c.expr;
        EXPECT_NEAR(r.value, c.value, 1e-6) << c.expr;
        EXPECT_LE(r.gap, 1e-6) << c.expr;
        EXPECT_LE(r.lower, r.value + 1e-12) << c.expr;
        EXPECT_LT(r.residual, 1e-9) << c.expr;
    }
}

TEST(extent, certificates_are_independent) {
    // Recompute both bounds from the returned data with a separate dense build.
    for (const char *expr : {"T", "CCZ", "CS,T"}) {
        ExactState s = resource_state(expr);
        ExtentResult r = extent(s);
        auto descs = enumerate_stabilizer_states(s.num_qubits());
        std::vector<std::complex<double>> sum(s.size());
        double l1 = 0;
        for (auto [i, c] : r.coefficients) {
            auto a = descs[i].amplitudes();
            for (size_t x = 0; x < a.size(); x++) {
                sum[x] += c * a[x];
            }
            l1 += std::abs(c);
        }
        auto psi = s.to_complex();
        for (size_t x = 0; x < psi.size(); x++) {
            ASSERT_LT(std::abs(sum[x] - psi[x]), 1e-9) << expr;
        }
        ASSERT_NEAR(l1 * l1, r.value, 1e-9) << expr;

        double best = 0;
        for (const auto &d : descs) {
            std::complex<double> ip = 0;
            auto a = d.amplitudes();
            for (size_t x = 0; x < a.size(); x++) {
                ip += std::conj(a[x]) * r.witness[x];
            }
            best = std::max(best, std::norm(ip));
        }
        ASSERT_NEAR(best, max_stabilizer_overlap(r.witness), 1e-12);
        ASSERT_NEAR(witness_lower_bound(s, r.witness), r.lower, 1e-9) << expr;
    }
}

TEST(extent, clifford_invariance) {
    std::mt19937_64 rng(11);
    ExactState s = resource_state("CCZ");
    double base = extent(s).value;
    for (int trial = 0; trial < 5; trial++) {
        ExactState t = s;
        for (int g = 0; g < 10; g++) {
            size_t a = rng() % 3, b = (a + 1) % 3;
            switch (rng() % 3) {
                case 0:
                    t = apply_gate(t, "H", {a});
                    break;
                case 1:
                    t = apply_gate(t, "S", {a});
                    break;
                default:
                    t = apply_gate(t, "CX", {a, b});
            }
        }
        EXPECT_NEAR(extent(t).value, base, 1e-6);
    }
}

TEST(extent, submultiplicative_and_multiplicative_small) {
    ExactState t = resource_state("T");
    ExactState cs = resource_state("CS");
    double xt = extent(t).value, xcs = extent(cs).value;
    double joint = extent(tensor(t, cs)).value;
    EXPECT_LE(joint, xt * xcs + 1e-6);
    // Multiplicative for factors of at most three qubits.
    EXPECT_NEAR(joint, xt * xcs, 1e-6);
    EXPECT_NEAR(extent(resource_state("T*4")).value, std::pow(xt, 4), 1e-6);

    MultiplicativeExtent m = multiplicative_extent({t, cs, resource_state("CCZ")});
    EXPECT_TRUE(m.valid);
    EXPECT_NEAR(m.value, xt * xcs * 16.0 / 9, 1e-6);
}

TEST(extent, four_qubit_factor_validity) {
    MultiplicativeExtent m = multiplicative_extent({resource_state("C3S")});
    ASSERT_EQ(m.factors.size(), 1u);
    EXPECT_NEAR(m.value, 9.0 / 8 + 1 / std::sqrt(2.0), 1e-6);
    // The flag must agree with a direct check of the returned witness.
    ExtentResult r = extent(resource_state("C3S"));
    bool expect = max_stabilizer_overlap(r.witness) >= 0.25 - 1e-12;
    EXPECT_EQ(m.valid, expect);
}

TEST(extent, witness_bound_below_extent_for_random_witnesses) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    ExactState s = resource_state("CCS");
    double x = extent(s).value;
    for (int trial = 0; trial < 50; trial++) {
        std::vector<std::complex<double>> w(8);
        for (auto &a : w) {
            a = {nd(rng), nd(rng)};
        }
        double norm = 0;
        for (auto a : w) {
            norm += std::norm(a);
        }
        for (auto &a : w) {
            a /= std::sqrt(norm);
        }
        EXPECT_LE(witness_lower_bound(s, w), x + 1e-9);
    }
}

TEST(extent, caps) {
    ASSERT_THROW(extent(resource_state("C4Z")), std::out_of_range);
}
