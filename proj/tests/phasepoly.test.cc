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

#include "magicbound/phasepoly.h"

#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace mb;

namespace {

PhasePolynomial random_poly(size_t n, size_t terms, std::mt19937_64 &rng, bool even_rows = false) {
    PhasePolynomial pp(n);
    for (size_t k = 0; k < terms; k++) {
        uint64_t lambda = 0;
        while (lambda == 0) {
            lambda = rng() & ((uint64_t{1} << n) - 1);
        }
        pp.add((int)(rng() % 8), lambda);
    }
    if (even_rows) {
        // Pair every odd term with a copy on a second functional so each row flips twice.
        PhasePolynomial out(n);
        for (const auto &t : pp.terms) {
            out.add(t.coeff & ~1, t.lambda);
        }
        for (size_t k = 0; k < terms; k++) {
            uint64_t lambda = 0;
            while (lambda == 0) {
                lambda = rng() & ((uint64_t{1} << n) - 1);
            }
            out.add(1, lambda);
            out.add(1, lambda);
        }
        return out;
    }
    return pp;
}

// Direct evaluation of exp(i pi f(x)/4) with f summed term by term.
std::complex<double> direct_phase(const PhasePolynomial &pp, uint64_t x) {
    double angle = 0;
    for (const auto &t : pp.terms) {
        angle += t.coeff * (double)(__builtin_popcountll(t.lambda & x) & 1);
    }
    return std::polar(1.0, M_PI * angle / 4);
}

}  // namespace

TEST(phasepoly, canonicalize_examples) {
    PhasePolynomial pp(2);
    pp.add(1, "10").add(7, "10");
    ASSERT_TRUE(canonicalize(pp).terms.empty());
    PhasePolynomial even(2);
    even.add(4, "11");
    ASSERT_EQ(canonicalize(even).terms.size(), 1u);
    ASSERT_EQ(canonicalize(even).terms[0].coeff, 4);
}

TEST(phasepoly, canonicalize_preserves_unitary) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 1 + rng() % 5;
        PhasePolynomial pp = random_poly(n, rng() % 12, rng);
        PhasePolynomial c = canonicalize(pp);
        ASSERT_EQ(to_diagonal_unitary(pp), to_diagonal_unitary(c));
        ASSERT_EQ(canonicalize(c), c);
        for (size_t i = 1; i < c.terms.size(); i++) {
            ASSERT_LT(c.terms[i - 1].lambda, c.terms[i].lambda);
        }
        for (uint64_t x = 0; x < (uint64_t{1} << n); x++) {
            ASSERT_LT(std::abs(to_diagonal_unitary(pp)[x].to_complex() - direct_phase(pp, x)), 1e-12);
        }
    }
}

TEST(phasepoly, distinct_canonical_forms_can_share_a_unitary) {
    // 4(x1 + x2 + x1^x2) = 8 x1 x2 = 0 mod 8.
    PhasePolynomial pp(2);
    pp.add(4, "10").add(4, "01").add(4, "11");
    PhasePolynomial c = canonicalize(pp);
    ASSERT_EQ(c.terms.size(), 3u);
    ASSERT_EQ(to_diagonal_unitary(c), to_diagonal_unitary(PhasePolynomial(2)));
}

TEST(phasepoly, single_term_is_t) {
    PhasePolynomial pp(1);
    pp.add(1, "1");
    auto d = to_diagonal_unitary(pp);
    ASSERT_EQ(d[0], CycNumber(1));
    ASSERT_EQ(d[1], CycNumber::zeta(2, 1));
    ASSERT_TRUE(equal_up_to_phase(phase_state(pp), resource_state("T")));
    auto empty = to_diagonal_unitary(PhasePolynomial(3));
    for (const auto &v : empty) {
        ASSERT_EQ(v, CycNumber(1));
    }
}

TEST(phasepoly, w_polynomial_matches_w_state) {
    for (size_t n = 2; n <= 5; n++) {
        ASSERT_EQ(phase_state(PhasePolynomial::w(n)), resource_state("W:" + std::to_string(n))) << n;
    }
}

TEST(phasepoly, clifford_split_reconstructs) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; trial++) {
        PhasePolynomial pp = random_poly(3, rng() % 10, rng);
        auto [g, h] = clifford_split(pp);
        for (const auto &t : g.terms) {
            ASSERT_EQ(t.coeff, 1);
        }
        auto fg = to_diagonal_unitary(g), f2h = to_diagonal_unitary(doubled(h)), f = to_diagonal_unitary(pp);
        for (size_t x = 0; x < f.size(); x++) {
            ASSERT_EQ(fg[x] * f2h[x], f[x]);
        }
        ASSERT_EQ(canonicalize(sum(g, doubled(h))), canonicalize(pp));
    }
    PhasePolynomial even(2);
    even.add(2, "10").add(6, "11");
    ASSERT_TRUE(clifford_split(even).first.terms.empty());
    // T (x) S.
    PhasePolynomial ts(2);
    ts.add(1, "10").add(2, "01");
    auto [g, h] = clifford_split(ts);
    ASSERT_EQ(g.terms.size(), 1u);
    ASSERT_EQ(g.terms[0].lambda, 2u);
    ASSERT_EQ(h.terms.size(), 1u);
    ASSERT_EQ(h.terms[0].lambda, 1u);
    ASSERT_EQ(h.terms[0].coeff, 1);
}

TEST(phasepoly, tau_upper_values) {
    for (size_t n = 2; n <= 6; n++) {
        ASSERT_EQ(tau_upper(PhasePolynomial::w(n)), n + 1);
    }
    for (size_t n = 1; n <= 6; n++) {
        ASSERT_EQ(tau_upper(PhasePolynomial::t_layer(n)), n);
    }
    PhasePolynomial even(3);
    even.add(2, "110").add(4, "111");
    ASSERT_EQ(tau_upper(even), 0u);
}

TEST(phasepoly, even_rows_and_ring_level) {
    for (size_t n = 2; n <= 6; n++) {
        ASSERT_TRUE(even_row_weight(PhasePolynomial::w(n)));
    }
    ASSERT_FALSE(even_row_weight(PhasePolynomial::t_layer(1)));
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; trial++) {
        PhasePolynomial pp = random_poly(1 + rng() % 5, rng() % 5, rng, true);
        ASSERT_TRUE(even_row_weight(pp));
        ASSERT_LE(ring_level(phase_state(pp)), 1);
    }
}

TEST(phasepoly, rank_at_least_nullity) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 60; trial++) {
        size_t n = 1 + rng() % 5;
        PhasePolynomial pp = random_poly(n, rng() % 9, rng);
        auto g = clifford_split(pp).first;
        ASSERT_GE(odd_rank(pp), stabilizer_nullity(phase_state(g)));
    }
}

TEST(phasepoly, text_round_trip) {
    PhasePolynomial pp = PhasePolynomial::w(3);
    PhasePolynomial back = PhasePolynomial::parse("# W_3\n" + pp.str());
    ASSERT_EQ(back, pp);
    ASSERT_THROW(PhasePolynomial::parse("1 : 10\n1 : 101\n"), std::invalid_argument);
    ASSERT_THROW(PhasePolynomial::parse("x : 10\n"), std::invalid_argument);
    ASSERT_THROW(PhasePolynomial::parse("1 : 00\n"), std::invalid_argument);
    ASSERT_THROW(PhasePolynomial::parse(""), std::invalid_argument);
}

TEST(phasepoly, catalytic_counts) {
    CatalyticReport w3 = catalytic_conversion(PhasePolynomial::w(3));
    ASSERT_EQ(w3.catalyst, 1);
    ASSERT_EQ(w3.produced, 2);
    for (size_t n = 2; n <= 5; n++) {
        CatalyticReport r = catalytic_conversion(PhasePolynomial::w(n));
        ASSERT_EQ(r.catalyst, 1) << n;
        ASSERT_EQ(r.produced, (int64_t)n - 1) << n;
        ASSERT_EQ(r.rank, n);
        ASSERT_EQ(r.nullity, n);
    }
    for (size_t n = 1; n <= 4; n++) {
        CatalyticReport r = catalytic_conversion(PhasePolynomial::t_layer(n));
        ASSERT_EQ(r.catalyst, 0);
        ASSERT_EQ(r.produced, (int64_t)n);
    }
}

TEST(phasepoly, catalytic_circuits_simulate) {
    std::vector<PhasePolynomial> cases;
    for (size_t n = 2; n <= 4; n++) {
        cases.push_back(PhasePolynomial::w(n));
    }
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; trial++) {
        cases.push_back(random_poly(1 + rng() % 4, 1 + rng() % 5, rng));
    }
    for (const auto &pp : cases) {
        CatalyticReport r = catalytic_conversion(pp);
        ExactState input = phase_state(pp);
        auto branches = simulate(r.circuit, input);
        CycNumber total(0);
        for (const auto &b : branches) {
            ASSERT_TRUE(equal_up_to_phase(b.state, r.target)) << pp.str() << r.circuit.str();
            int64_t t = b.tally.count("T") ? b.tally.at("T") : 0;
            ASSERT_EQ((size_t)t, r.circuit_t_consumed);
            total = total + b.probability;
        }
        ASSERT_EQ(total, CycNumber(1));
        ASSERT_EQ(r.circuit_t_consumed, r.tau - r.rank);
        ASSERT_EQ(r.circuit_t_output, r.rank);
    }
}
