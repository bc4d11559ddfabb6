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

#ifndef MAGICBOUND_CANONICAL_H
#define MAGICBOUND_CANONICAL_H

#include <string>
#include <vector>

#include "magicbound/pauli.h"
#include "magicbound/simulator.h"
#include "magicbound/states.h"

namespace mb {

/// Gates (on n qubits) whose conjugation maps the group generated by the
/// commuting, independent Hermitian Paulis gens onto <Z_0, ..., Z_{r-1}>.
/// gens[i] goes to +Z_i times a product of Z_a with a < i.
CircuitIR clifford_to_z(const std::vector<PauliOperator> &gens, size_t n);

/// Gates implementing (I + R)/sqrt(2) up to global phase, R anti-Hermitian.
CircuitIR rotation_circuit(const PauliOperator &r);

/// Inverse of a circuit of Clifford gates.
CircuitIR inverse_clifford(const CircuitIR &c);

/// Tableau of a circuit of Clifford gates.
CliffordTableau tableau_of(const CircuitIR &c);

/// Applies a unitary circuit (Clifford or diagonal gates) to a state.
ExactState apply_circuit(const CircuitIR &c, const ExactState &s);

struct Trivialization {
    /// C with C(|0>^r (x) residual) = s exactly.
    CircuitIR clifford;
    size_t r = 0;
    /// State on n - r qubits with trivial stabilizer.
    ExactState residual;
};
Trivialization trivialize_stabilizer(const ExactState &s);

struct CanonicalForm {
    size_t n_in = 0;
    /// Width after allocations (the form acts on input (x) |0>^(n_out - n_in)).
    size_t n_out = 0;
    /// Commuting independent Paulis on the n_out-qubit input register, in order.
    std::vector<PauliOperator> measurements;
    /// Applied after the projectors.
    CircuitIR clifford;
    CliffordTableau tableau;
    bool annihilated = false;
    size_t nullity_in = 0;
    size_t nullity_out = 0;
    size_t dropped = 0;
    size_t converted = 0;

    /// Set by canonical_form: input = T(|0>^r (x) residual) and the retained
    /// measurements restricted to the residual register.
    size_t r = 0;
    std::vector<PauliOperator> restricted;
    CircuitIR trivializer;

    size_t k() const {
        return measurements.size();
    }
    /// C M_{P_k} ... M_{P_1} (input (x) |0...0>), unnormalized.
    ExactState apply(const ExactState &input) const;
    /// The form as a circuit: post-selected measurements, then the Clifford.
    CircuitIR to_circuit() const;
};

/// Pushes Cliffords to the end and classifies each post-selected measurement.
/// The circuit may contain Clifford gates, allocations and post-selected
/// measurements only.
CanonicalForm normalize_measurements(const CircuitIR &c, const ExactState &input);

/// normalize_measurements plus trivialization of the input stabilizer.
CanonicalForm canonical_form(const CircuitIR &c, const ExactState &input);

}  // namespace mb

#endif
