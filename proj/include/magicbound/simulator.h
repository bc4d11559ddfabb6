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

#ifndef MAGICBOUND_SIMULATOR_H
#define MAGICBOUND_SIMULATOR_H

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "magicbound/cyclotomic.h"
#include "magicbound/pauli.h"
#include "magicbound/states.h"

namespace mb {

/// Raised for annihilating post-selection, tree-guard overflow, entangled
/// discards and other conditions that stop a simulation.
struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class InstKind { ALLOC, CLIFFORD, DIAGONAL, INJECT, MEASURE, DISCARD };
enum class MeasureMode { POST_PLUS, POST_MINUS, BRANCH, SAMPLE };

/// Runs the instruction only when the XOR of the named outcome bits equals value.
struct Condition {
    std::vector<std::string> labels;
    int value = 1;
};

struct Instruction {
    InstKind kind = InstKind::CLIFFORD;
    /// Gate name (CLIFFORD, DIAGONAL) or state expression (INJECT).
    std::string name;
    std::vector<size_t> qubits;
    /// RZ parameters: exp(i pi j / 2^d) on |1>.
    int64_t j = 0;
    int d = 0;
    /// ALLOC: |+> instead of |0>.
    bool plus = false;
    /// MEASURE: Pauli on the listed qubits (its own qubit count is qubits.size()).
    PauliOperator pauli;
    MeasureMode mode = MeasureMode::BRANCH;
    std::string label;
    std::optional<Condition> cond;

    std::string str() const;
};

/// Linear instruction list. Qubits allocated or injected are appended at the
/// end; discarding qubit q shifts the higher indices down by one.
struct CircuitIR {
    size_t num_qubits = 0;
    std::vector<Instruction> instructions;

    CircuitIR() = default;
    explicit CircuitIR(size_t n) : num_qubits(n) {
    }

    /// Builder helpers. Each returns *this so calls can be chained.
    CircuitIR &alloc(bool plus = false);
    CircuitIR &gate(const std::string &name, std::vector<size_t> qubits);
    CircuitIR &rz(int64_t j, int d, size_t q);
    CircuitIR &inject(const std::string &expr);
    CircuitIR &measure(const std::string &pauli, std::vector<size_t> qubits, MeasureMode mode = MeasureMode::BRANCH,
                       const std::string &label = "");
    CircuitIR &discard(size_t q);
    /// Puts a condition on the most recently added instruction.
    CircuitIR &when(std::vector<std::string> labels, int value = 1);
    /// Appends all instructions of `other`, which must start at the current width.
    CircuitIR &append(const CircuitIR &other);

    /// Qubit count after all instructions.
    size_t final_width() const;
    /// True when the circuit has no measurement, alloc, inject or discard.
    bool is_unitary() const;

    /// Text form; parse(str()) reproduces the circuit.
    std::string str() const;
    static CircuitIR parse(const std::string &text);
};

/// True for the names accepted as diagonal gates: T, TDG, RZ, CS, CSDG, CCZ, CNZ, CNS, CNSDG.
bool is_diagonal_gate_name(const std::string &name);
/// Resource name charged for a diagonal gate, or "" when it is Clifford.
std::string diagonal_gate_resource(const Instruction &inst);

struct Branch {
    /// Outcome bits in measurement order, e.g. "m1=0 m2=1".
    std::string outcomes;
    std::map<std::string, int> bits;
    /// Exact probability of this branch (squared norm of the tracked vector).
    CycNumber probability;
    /// Every measurement on the path had probability exactly 1/2.
    bool is_half = true;
    /// Number of non-deterministic measurements on the path.
    size_t branchings = 0;
    /// Output state, normalized when the probability is a power of two.
    ExactState state;
    /// Injected resource states and non-Clifford gates applied, by name.
    std::map<std::string, int64_t> tally;
};

struct SimOptions {
    /// Largest number of branching measurements on any path.
    size_t tree_guard = 14;
    /// Required for SAMPLE measurements.
    std::optional<uint64_t> seed;
};

/// Simulates the circuit on `input` (which must be normalized and have
/// c.num_qubits qubits) and returns every branch with nonzero probability.
std::vector<Branch> simulate(const CircuitIR &c, const ExactState &input, const SimOptions &options = {});
/// Simulates on |0...0>.
std::vector<Branch> simulate(const CircuitIR &c, const SimOptions &options = {});

/// The n-qubit operator that acts as `p` on the listed qubits.
PauliOperator embed_pauli(const PauliOperator &p, const std::vector<size_t> &qubits, size_t n);

/// ((I + sign P)/2)|s> and <s|(I + sign P)/2|s>.
std::pair<ExactState, CycNumber> project(const ExactState &s, const PauliOperator &p, int sign);

struct MeasureProbability {
    /// Probability of the +1 outcome, relative to <s|s>.
    CycNumber value;
    bool is_half = false;
};
/// Requires <s|s> to be a power of two, so the ratio stays in the ring.
MeasureProbability measurement_probability(const ExactState &s, const PauliOperator &p);

/// Removes qubit q, which must factor out of the state. The factor must be a
/// basis state or have equal weight on |0> and |1>, so the norm is kept exactly.
ExactState discard(const ExactState &s, size_t q);

/// Applies a Clifford or diagonal gate to a state.
ExactState apply_gate(const ExactState &s, const std::string &name, const std::vector<size_t> &qubits, int64_t j = 0,
                      int d = 0);

/// (U x I) applied to n Bell pairs; system qubits first, reference qubits after.
ExactState choi_state(const CircuitIR &c);

}  // namespace mb

#endif
