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

#ifndef MAGICBOUND_PAULI_H
#define MAGICBOUND_PAULI_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mb {

/// Largest supported qubit count for Pauli operators and tableaux.
constexpr size_t MAX_PAULI_QUBITS = 24;

/// The operator i^phase_exp * X^x * Z^z on n qubits.
///
/// Qubit q is stored at bit (n - 1 - q) of the masks, so masks line up with
/// computational-basis indices where qubit 0 is the leftmost tensor factor.
struct PauliOperator {
    size_t n = 0;
    uint64_t x = 0;
    uint64_t z = 0;
    uint8_t phase_exp = 0;

    PauliOperator() = default;
    explicit PauliOperator(size_t num_qubits);
    PauliOperator(size_t num_qubits, uint64_t x_mask, uint64_t z_mask, int phase);

    /// Parses "+XYZ", "-ZZ", "iX", "-i_Z". '_' and 'I' are identity letters.
    static PauliOperator from_str(const std::string &text);
    /// A single letter (X, Y or Z) on qubit q, with sign +1.
    static PauliOperator single(size_t num_qubits, size_t q, char letter);
    /// The Hermitian Pauli with the given masks and sign (+1 or -1) in letter form.
    static PauliOperator hermitian(size_t num_qubits, uint64_t x_mask, uint64_t z_mask, int sign = 1);

    uint64_t bit(size_t q) const {
        return uint64_t{1} << (n - 1 - q);
    }
    bool x_at(size_t q) const {
        return x & bit(q);
    }
    bool z_at(size_t q) const {
        return z & bit(q);
    }
    char letter(size_t q) const;
    size_t weight() const;

    bool is_hermitian() const;
    bool is_identity_up_to_phase() const {
        return x == 0 && z == 0;
    }
    /// Phase in letter form: the operator equals i^letter_phase() times the
    /// tensor product of its I/X/Y/Z letters.
    int letter_phase() const;
    /// +1 or -1 for a Hermitian operator.
    int sign() const;

    std::string str() const;

    PauliOperator operator*(const PauliOperator &other) const;
    PauliOperator operator-() const;
    bool operator==(const PauliOperator &other) const;
    bool operator!=(const PauliOperator &other) const;
    bool operator<(const PauliOperator &other) const;
};

PauliOperator multiply(const PauliOperator &p, const PauliOperator &q);
bool commutes(const PauliOperator &p, const PauliOperator &q);

/// A Clifford unitary C stored by the images C X_q C^dag and C Z_q C^dag.
class CliffordTableau {
   public:
    CliffordTableau() = default;
    explicit CliffordTableau(size_t n);

    static CliffordTableau identity(size_t n) {
        return CliffordTableau(n);
    }
    /// Gate names: H, S, SDG, X, Y, Z, CX, CZ, SWAP.
    static CliffordTableau for_gate(const std::string &name, const std::vector<size_t> &qubits, size_t n);
    /// The tableau of (I + R)/sqrt(2) for an anti-Hermitian Pauli R (R^2 = -I).
    static CliffordTableau pauli_rotation(const PauliOperator &r);

    size_t num_qubits() const {
        return n_;
    }
    const PauliOperator &x_image(size_t q) const {
        return xs_[q];
    }
    const PauliOperator &z_image(size_t q) const {
        return zs_[q];
    }
    void set_images(size_t q, PauliOperator x_img, PauliOperator z_img);

    /// C P C^dag.
    PauliOperator conjugate(const PauliOperator &p) const;
    /// The tableau of this Clifford followed by `gate`.
    CliffordTableau then(const CliffordTableau &next) const;
    CliffordTableau inverse() const;

    bool is_identity() const;
    bool preserves_commutation() const;
    bool operator==(const CliffordTableau &other) const;
    std::string str() const;

   private:
    size_t n_ = 0;
    std::vector<PauliOperator> xs_;
    std::vector<PauliOperator> zs_;
};

/// The Clifford c2 * c1 (apply c1 first).
CliffordTableau compose(const CliffordTableau &c2, const CliffordTableau &c1);
PauliOperator conjugate(const CliffordTableau &c, const PauliOperator &p);
CliffordTableau tableau_for_gate(const std::string &name, const std::vector<size_t> &qubits, size_t n);

/// True for the gate names accepted by CliffordTableau::for_gate.
bool is_clifford_gate_name(const std::string &name);
/// Number of qubits the named Clifford gate acts on.
size_t clifford_gate_arity(const std::string &name);

std::ostream &operator<<(std::ostream &out, const PauliOperator &p);
std::ostream &operator<<(std::ostream &out, const CliffordTableau &c);

}  // namespace mb

#endif
