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

#ifndef MAGICBOUND_PHASEPOLY_H
#define MAGICBOUND_PHASEPOLY_H

#include <string>
#include <utility>
#include <vector>

#include "magicbound/simulator.h"
#include "magicbound/states.h"

namespace mb {

constexpr size_t MAX_PHASEPOLY_QUBITS = 10;

/// a * lambda(x) with lambda(x) = popcount(lambda & x) mod 2. Qubit q is bit
/// n-1-q of lambda, matching basis indices.
struct PhaseTerm {
    int coeff = 0;
    uint64_t lambda = 0;

    bool operator==(const PhaseTerm &other) const {
        return coeff == other.coeff && lambda == other.lambda;
    }
};

/// f(x) = sum_k a_k lambda_k(x) mod 8, giving U_f = sum_x exp(i pi f(x)/4)|x><x|.
struct PhasePolynomial {
    size_t n = 0;
    std::vector<PhaseTerm> terms;

    PhasePolynomial() = default;
    explicit PhasePolynomial(size_t num_qubits) : n(num_qubits) {
    }
    /// Adds a term. `bits` lists lambda as a string over qubits 0..n-1.
    PhasePolynomial &add(int coeff, const std::string &bits);
    PhasePolynomial &add(int coeff, uint64_t lambda);

    /// f(x) mod 8.
    int evaluate(uint64_t x) const;
    bool operator==(const PhasePolynomial &other) const {
        return n == other.n && terms == other.terms;
    }

    /// Lines "a : bits"; '#' starts a comment.
    std::string str() const;
    static PhasePolynomial parse(const std::string &text);

    /// Identity columns plus an all-ones column, all coefficients 1.
    static PhasePolynomial w(size_t n);
    /// One T per qubit.
    static PhasePolynomial t_layer(size_t n);
};

/// Merges equal functionals mod 8, drops zero terms, sorts by functional.
PhasePolynomial canonicalize(const PhasePolynomial &pp);

/// Diagonal of U_f as level-2 cyclotomic numbers.
std::vector<CycNumber> to_diagonal_unitary(const PhasePolynomial &pp);
/// U_f |+>^n.
ExactState phase_state(const PhasePolynomial &pp);

/// f = g + 2h with g the odd terms (coefficient 1) and h = the b_k with a_k = 2 b_k + c_k.
std::pair<PhasePolynomial, PhasePolynomial> clifford_split(const PhasePolynomial &pp);
/// Polynomial with every coefficient doubled (U_{2h} from h).
PhasePolynomial doubled(const PhasePolynomial &pp);
/// Pointwise sum of two polynomials on the same qubits (U_{f+g} = U_f U_g).
PhasePolynomial sum(const PhasePolynomial &a, const PhasePolynomial &b);

/// Number of odd-coefficient terms of the canonical form.
size_t tau_upper(const PhasePolynomial &pp);
/// GF(2) rank of the odd-part matrix P (rows = qubits, columns = odd terms).
size_t odd_rank(const PhasePolynomial &pp);
/// Every qubit row of the odd-part matrix has even weight.
bool even_row_weight(const PhasePolynomial &pp);

struct CatalyticReport {
    size_t n = 0;
    size_t tau = 0;
    size_t nullity = 0;
    size_t rank = 0;
    /// Counts stated in terms of tau and the nullity: catalyst tau - nu, net output 2 nu - tau.
    int64_t catalyst = 0;
    int64_t produced = 0;
    /// Circuit on |U> (n qubits) that consumes tau - rank injected |T> states and
    /// leaves |T>^rank (x) |+>^(n - rank) on the n qubits.
    CircuitIR circuit;
    size_t circuit_t_consumed = 0;
    size_t circuit_t_output = 0;
    /// Expected output of the circuit.
    ExactState target;
};
CatalyticReport catalytic_conversion(const PhasePolynomial &pp);

/// Appends gates applying U_{a lambda} (via a CNOT cascade onto one qubit).
/// Odd a uses an injected |T> with a measured correction; label names the measurement.
void append_phase_term(CircuitIR &c, size_t n, int coeff, uint64_t lambda, const std::string &label);

}  // namespace mb

#endif
