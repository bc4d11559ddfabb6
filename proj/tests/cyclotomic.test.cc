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

#include "magicbound/cyclotomic.h"

#include "gtest/gtest.h"
#include "test_util.h"

using namespace mb;

TEST(cyclotomic, zeta_arithmetic) {
    CycNumber z8 = CycNumber::zeta(2, 1);
    CycNumber prod = (CycNumber(1) + z8) * (CycNumber(1) - z8);
    // 1 - zeta_8^2 = 1 - i.
    ASSERT_EQ(prod, CycNumber(1) - CycNumber::imag_unit());
    ASSERT_EQ(prod.level(), 1);

    ASSERT_EQ(z8.conj(), -CycNumber::zeta(2, 3));
    ASSERT_EQ(CycNumber::zeta(3, 16), CycNumber(1));
    ASSERT_EQ(CycNumber::zeta(3, 8), CycNumber(-1));
    ASSERT_EQ(CycNumber::zeta(3, 4), CycNumber::imag_unit());
    ASSERT_EQ(CycNumber::zeta(0, 1), CycNumber(-1));
}

TEST(cyclotomic, reduced_form) {
    CycNumber a = CycNumber::from_coeffs(2, {2, 0, 4, 0}, 3);
    // (2 + 4i)/8 = (1 + 2i)/4.
    ASSERT_EQ(a.level(), 1);
    ASSERT_EQ(a.denom_exp(), 2);
    ASSERT_EQ(a.coeffs(), (std::vector<mpz_class>{1, 2}));

    CycNumber zero = CycNumber::from_coeffs(3, std::vector<mpz_class>(8), 5);
    ASSERT_TRUE(zero.is_zero());
    ASSERT_EQ(zero.level(), 0);
    ASSERT_EQ(zero.denom_exp(), 0);

    ASSERT_EQ(CycNumber(6).scaled(-1), CycNumber(3));
    ASSERT_EQ(CycNumber::sqrt2() * CycNumber::sqrt2(), CycNumber(2));
    ASSERT_EQ(CycNumber::inv_sqrt2() * CycNumber::sqrt2(), CycNumber(1));
}

TEST(cyclotomic, random_field_axioms_vs_float) {
    std::mt19937_64 rng(7);
    for (int d = 0; d <= 4; d++) {
        for (int t = 0; t < 2000; t++) {
            CycNumber a = mb_test::random_cyc(d, rng);
            CycNumber b = mb_test::random_cyc(d, rng);
            CycNumber c = mb_test::random_cyc(d, rng);
            ASSERT_EQ(a * (b + c), a * b + a * c);
            ASSERT_EQ((a * b) * c, a * (b * c));
            ASSERT_LT(std::abs((a * b).to_complex() - a.to_complex() * b.to_complex()), 1e-10);
            ASSERT_LT(std::abs((a + b).to_complex() - (a.to_complex() + b.to_complex())), 1e-10);
            ASSERT_LT(std::abs(a.conj().to_complex() - std::conj(a.to_complex())), 1e-10);
            ASSERT_EQ(a - a, CycNumber());
        }
    }
}

TEST(cyclotomic, mixed_levels) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 500; t++) {
        int da = (int)(rng() % 5);
        int db = (int)(rng() % 5);
        CycNumber a = mb_test::random_cyc(da, rng);
        CycNumber b = mb_test::random_cyc(db, rng);
        ASSERT_LT(std::abs((a * b).to_complex() - a.to_complex() * b.to_complex()), 1e-10);
        ASSERT_LT(std::abs((a + b).to_complex() - (a.to_complex() + b.to_complex())), 1e-10);
    }
}

TEST(cyclotomic, float_round_trip) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; t++) {
        std::vector<mpz_class> c(8);
        std::vector<double> cd(8);
        for (int j = 0; j < 8; j++) {
            int64_t v = (int64_t)(rng() % (uint64_t{1} << 40)) - (int64_t{1} << 39);
            c[j] = (long)v;
            cd[j] = (double)v;
        }
        CycNumber x = CycNumber::from_coeffs(3, c);
        std::complex<double> expect = 0;
        for (int j = 0; j < 8; j++) {
            expect += cd[j] * std::polar(1.0, M_PI * j / 8);
        }
        ASSERT_LT(std::abs(x.to_complex() - expect), 1e-12 * std::max(1.0, std::abs(expect)) * 1e4);
    }
}

TEST(cyclotomic, sigma) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 300; t++) {
        CycNumber x = mb_test::random_cyc(3, rng);
        CycNumber y = mb_test::random_cyc(3, rng);
        ASSERT_EQ(x.sigma(1), x);
        ASSERT_EQ(x.sigma(-1), x.conj());
        ASSERT_EQ(x.sigma(5).sigma(3), x.sigma(15));
        ASSERT_EQ((x * y).sigma(7), x.sigma(7) * y.sigma(7));
        ASSERT_EQ((x + y).sigma(9), x.sigma(9) + y.sigma(9));
    }
    ASSERT_THROW(CycNumber(1).sigma(2), std::invalid_argument);
}

TEST(cyclotomic, norm_values) {
    for (int d = 1; d <= 4; d++) {
        ASSERT_EQ(norm(CycNumber::zeta(d, 1), d), Dyadic(1));
        for (int j = 0; j < 5; j++) {
            CycNumber x = CycNumber(1) - CycNumber::zeta(d, 2 * j + 1);
            ASSERT_EQ(norm(x, d), Dyadic(2)) << d << " " << j;
        }
    }
    CycNumber g = CycNumber::from_coeffs(1, {3, 4});
    ASSERT_EQ(norm(g), Dyadic(25));
    ASSERT_EQ(norm(CycNumber::inv_sqrt2()), Dyadic(1, 2));
}

TEST(cyclotomic, norm_tower_and_product_oracle) {
    std::mt19937_64 rng(13);
    for (int d = 0; d <= 4; d++) {
        for (int t = 0; t < 100; t++) {
            CycNumber x = mb_test::random_cyc(d, rng);
            if (x.is_zero()) {
                continue;
            }
            int lv = x.level();
            Dyadic nd = norm(x, lv);
            ASSERT_EQ(nd, norm_by_product(x, lv));
            if (lv + 1 <= MAX_LEVEL) {
                ASSERT_EQ(norm(x, lv + 1), nd * nd);
            }
            for (int k = 1; k < (2 << lv); k += 2) {
                ASSERT_EQ(norm(x.sigma(k), lv), nd);
            }
        }
    }
}

TEST(cyclotomic, v2_values) {
    ASSERT_TRUE(v2(CycNumber()).infinite);
    ASSERT_EQ(v2(CycNumber(12)).value, Dyadic(2));
    ASSERT_EQ(v2(CycNumber::inv_sqrt2()).value, Dyadic(-1, 1));
    ASSERT_EQ(v2(CycNumber(3).scaled(-5)).value, Dyadic(-5));
    for (int d = 2; d <= 4; d++) {
        // 1/2^(d-1) - 1.
        Dyadic expect = Dyadic(1, d - 1) - Dyadic(1);
        for (int k = 1; k < 40; k += 2) {
            ASSERT_EQ(v2(trig_constant(TrigKind::SIN, k, d)).value, expect) << d << " " << k;
            ASSERT_EQ(v2(trig_constant(TrigKind::COS, k, d)).value, expect) << d << " " << k;
        }
    }
}

TEST(cyclotomic, v2_properties) {
    std::mt19937_64 rng(17);
    for (int d = 1; d <= 4; d++) {
        for (int t = 0; t < 1000; t++) {
            CycNumber a = mb_test::random_nonzero_cyc(d, rng);
            CycNumber b = mb_test::random_nonzero_cyc(d, rng);
            ASSERT_EQ(v2(a * b), v2(a) + v2(b));
            ASSERT_TRUE(min(v2(a), v2(b)) <= v2(a + b));
        }
    }
}

TEST(cyclotomic, trig_constants) {
    ASSERT_EQ(trig_constant(TrigKind::EXP, 0, 3), CycNumber(1));
    CycNumber c = trig_constant(TrigKind::COS, 1, 2);
    ASSERT_EQ(c, (CycNumber::zeta(2, 1) + CycNumber::zeta(2, -1)).scaled(-1));
    ASSERT_EQ(c, CycNumber::inv_sqrt2());
    ASSERT_NEAR(c.to_complex().real(), 0.7071067811865476, 1e-15);
    for (int d = 0; d <= 5; d++) {
        for (int j = -5; j < 20; j++) {
            double t = M_PI * j / std::pow(2.0, d);
            ASSERT_LT(std::abs(trig_constant(TrigKind::COS, j, d).to_complex() - std::cos(t)), 1e-12);
            ASSERT_LT(std::abs(trig_constant(TrigKind::SIN, j, d).to_complex() - std::sin(t)), 1e-12);
            ASSERT_LT(std::abs(trig_constant(TrigKind::EXP, j, d).to_complex() - std::polar(1.0, t)), 1e-12);
        }
    }
}

TEST(cyclotomic, units) {
    for (int d = 1; d <= 4; d++) {
        for (int j = 1; j <= 6; j++) {
            CycNumber u = unit_u(j, d);
            CycNumber inv = unit_u_inverse(j, d);
            ASSERT_EQ(u * inv, CycNumber(1)) << d << " " << j;
            // u_j (1 - zeta) = 1 - zeta^(2j-1).
            ASSERT_EQ(u * (CycNumber(1) - CycNumber::zeta(d, 1)), CycNumber(1) - CycNumber::zeta(d, 2 * j - 1));
            ASSERT_EQ(norm(u, d), Dyadic(1));
        }
    }
}

TEST(cyclotomic, dyadic_format) {
    ASSERT_EQ(Dyadic(17, 3).str(), "17/2^3");
    ASSERT_EQ(Dyadic(17, 3).mixed_str(), "2+1/8");
    ASSERT_EQ(Dyadic(-1, 1).mixed_str(), "-1/2");
    ASSERT_EQ(Dyadic(12, 2).str(), "3");
    ASSERT_EQ(Dyadic::from_str("17/2^3"), Dyadic(17, 3));
    ASSERT_EQ(Dyadic::from_str("3/4"), Dyadic(3, 2));
    ASSERT_EQ(Dyadic::from_str("-5"), Dyadic(-5));
    ASSERT_TRUE(Dyadic(1, 2) < Dyadic(1, 1));
}
