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

#include "magicbound/bounds.h"

#include <cmath>

#include "gtest/gtest.h"
#include "magicbound/protocols.h"
#include "magicbound/states.h"
#include "test_util.h"

using namespace mb;

namespace {

void expect_rel(double got, double want, double tol = 5e-5) {
    EXPECT_LE(std::abs(got - want) / std::abs(want), tol) << got << " vs " << want;
}

}  // namespace

TEST(bounds, printed_conversion_bounds) {
    BoundReport t_ccz = conversion_bounds("T", "CCZ");
    expect_rel(t_ccz.lower, 3.63356);
    ASSERT_TRUE(t_ccz.lower_star);
    expect_rel(conversion_bounds("T", "CS").lower, 2.96818);
    expect_rel(conversion_bounds("T", "CnS:3").lower, 4.53328);
    expect_rel(conversion_bounds("T", "CnZ:4").lower, 5.12122);
    expect_rel(conversion_bounds("T", "W:4").lower, 4.99907);
    expect_rel(conversion_bounds("sqrtT", "T").upper, 0.754933);
    expect_rel(conversion_bounds("T", "CCZ").upper, 0.275212);
    expect_rel(conversion_bounds("CCZ", "W:4").lower, 1.3758);
    BoundReport back = conversion_bounds("CCZ", "T");
    ASSERT_DOUBLE_EQ(back.upper, 3);
    ASSERT_FALSE(back.upper_star);
    // Round trip T -> CCZ -> T loses states.
    ASSERT_LT(back.upper, t_ccz.lower);
}

TEST(bounds, dyadic_column) {
    expect_rel(conversion_bounds("CCZ", "T").lower_dagger, 0.5, 1e-12);
    expect_rel(conversion_bounds("CCZ", "sqrtT").lower_dagger, 0.75, 1e-12);
    expect_rel(conversion_bounds("CCZ", "W:5").lower_dagger, 2, 1e-12);
}

TEST(bounds, format6_rounding) {
    ASSERT_EQ(format6(3.633561), "3.63356");
    ASSERT_EQ(format6(1.0 / 3), "0.333333");
    ASSERT_EQ(format6(3), "3");
    ASSERT_EQ(format6(1.375802), "1.3758");
    ASSERT_EQ(format6(2.5), "2.5");
    // Exact ties go to even.
    ASSERT_EQ(format6(1234565), "1.23456e+06");
    ASSERT_EQ(format6(1234575), "1.23458e+06");
}

TEST(bounds, tables_render) {
    for (const auto &name : table_names()) {
        Table t = table(name);
        ASSERT_EQ(t.rows.size(), table_states().size()) << name;
        ASSERT_NE(t.to_markdown().find("|T>"), std::string::npos);
        ASSERT_NE(t.to_csv().find("state"), std::string::npos);
        ASSERT_NE(t.to_json().find("\"rows\""), std::string::npos);
    }
    Table t = table("t_conversion");
    ASSERT_EQ(t.rows[3][2].back(), '*');
    expect_rel(std::stod(t.rows[3][2]), 4.53328);
    Table c = table("ccz_conversion");
    ASSERT_EQ(c.rows[1][5], "0.275212*");
    Table m = table("mu2_values");
    ASSERT_EQ(m.rows[10][2], "2");
    ASSERT_THROW(table("nope"), std::invalid_argument);
}

TEST(bounds, solved_extents_match_closed_forms) {
    for (const char *expr : {"T", "sqrtT", "CS", "CnS:3", "CCZ", "W:3"}) {
        const MonotoneValues &m = monotone_values(expr);
        ASSERT_TRUE(m.extent_solved) << expr;
        ASSERT_LE(m.extent_gap, 1e-6);
    }
    expect_rel(monotone_values("CS").extent, 1.6, 1e-6);
    expect_rel(monotone_values("CCZ").extent, 16.0 / 9, 1e-6);
    ASSERT_FALSE(monotone_values("W:5").extent_solved);
    ASSERT_THROW(monotone_values("QFT:1:5"), std::out_of_range);
}

TEST(bounds, synthesis_formulas) {
    SynthesisBound t = synthesis_bound(SynthFamily::T, std::ldexp(1.0, -20), 2);
    ASSERT_NEAR(t.value, 20.0 / 6 - 1.0 / 6 - 1, 1e-12);
    ASSERT_EQ(format6(t.value), "2.16667");
    ASSERT_DOUBLE_EQ(t.probability, 0.5);
    ASSERT_NEAR(t.average, 0.5 * t.value, 1e-12);
    SynthesisBound ccz = synthesis_bound(SynthFamily::CCZ, std::ldexp(1.0, -12), 2, SynthForm::STATE);
    ASSERT_NEAR(ccz.value, 2.5, 1e-12);
    SynthesisBound gen = synthesis_bound(SynthFamily::GENERAL, std::ldexp(1.0, -14), 2, SynthForm::STATE, 2);
    ASSERT_NEAR(gen.value, 6, 1e-12);
    ASSERT_THROW(synthesis_bound(SynthFamily::T, 1e-2, 2), std::out_of_range);
    ASSERT_THROW(synthesis_bound(SynthFamily::T, 0.2, 2, SynthForm::STATE), std::out_of_range);
    ASSERT_THROW(synthesis_bound(SynthFamily::GENERAL, 1e-6, 2), std::invalid_argument);
    ASSERT_THROW(parse_synth_family("X"), std::invalid_argument);
}

TEST(bounds, random_paulis_commute_and_are_independent) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; trial++) {
        size_t n = 1 + rng() % 4;
        size_t k = 1 + rng() % n;
        auto ps = random_commuting_paulis(n, k, rng);
        ASSERT_EQ(ps.size(), k);
        for (size_t i = 0; i < k; i++) {
            ASSERT_TRUE(ps[i].is_hermitian());
            for (size_t j = 0; j < i; j++) {
                ASSERT_TRUE(commutes(ps[i], ps[j]));
            }
        }
        // Independent: no nonempty product is proportional to the identity.
        for (uint64_t sub = 1; sub < (uint64_t{1} << k); sub++) {
            PauliOperator prod(n);
            for (size_t i = 0; i < k; i++) {
                if ((sub >> i) & 1) {
                    prod = prod * ps[i];
                }
            }
            ASSERT_FALSE(prod.is_identity_up_to_phase());
        }
    }
}

TEST(bounds, probability_floors) {
    FloorReport t2 = probability_floor_check("T,T", FloorRule::T_STATES, 300, 1);
    ASSERT_EQ(t2.violations, 0u) << t2.witnesses.front();
    ASSERT_LT(t2.zeros, t2.trials);
    FloorReport cs = probability_floor_check("CS,CS", FloorRule::GAUSSIAN, 300, 2);
    ASSERT_EQ(cs.violations, 0u);
    FloorReport ccz = probability_floor_check("CCZ", FloorRule::GAUSSIAN, 300, 3);
    ASSERT_EQ(ccz.violations, 0u);
    FloorReport sq = probability_floor_check("sqrtT,sqrtT", FloorRule::DYADIC, 300, 4);
    ASSERT_EQ(sq.violations, 0u);
    ASSERT_GE(sq.min_nonzero, std::ldexp(1.0, -10));
}

TEST(bounds, floor_check_detects_violations) {
    // |T>^3 is not level one; products of sin^2(pi/8) factors drop below 2^-(k+n).
    FloorReport r = probability_floor_check("T*3", FloorRule::GAUSSIAN, 200, 9);
    ASSERT_GT(r.violations, 0u);
    ASSERT_EQ(r.violations, r.witnesses.size());
    ASSERT_LT(r.min_log2_margin, 0);
}

TEST(bounds, catalog_rates_respect_bounds) {
    size_t checked = 0;
    for (const auto &r : verify_catalog()) {
        ProtocolSpec p = make_protocol(r.name, r.params);
        if (p.average.size() != 1 || p.produced.size() != 1) {
            continue;
        }
        auto [src, used] = *p.average.begin();
        auto [dst, made] = *p.produced.begin();
        if (src == dst) {
            continue;
        }
        BoundReport b;
        try {
            b = conversion_bounds(src, dst);
        } catch (const std::exception &) {
            continue;
        }
        EXPECT_LE(made / used, b.upper + 1e-9) << r.name << " " << src << " -> " << dst;
        checked++;
    }
    ASSERT_GE(checked, 8u);
}
