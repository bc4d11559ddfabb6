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

#ifndef MAGICBOUND_STATES_H
#define MAGICBOUND_STATES_H

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "magicbound/cyclotomic.h"
#include "magicbound/pauli.h"

namespace mb {

/// Largest qubit count for exact state vectors.
constexpr size_t MAX_STATE_QUBITS = 16;
/// Default cap for full Pauli-spectrum enumeration (4^n Paulis).
constexpr size_t SPECTRUM_QUBIT_CAP = 8;

/// An n-qubit state vector with exact amplitudes. Not necessarily normalized;
/// the exact squared norm is kept alongside as a certificate.
class ExactState {
   public:
    ExactState() = default;
    /// |0...0> on n qubits (n may be 0, giving the scalar 1).
    explicit ExactState(size_t n);
    static ExactState from_amps(size_t n, std::vector<CycNumber> amps);
    static ExactState basis(size_t n, uint64_t index);

    size_t num_qubits() const {
        return n_;
    }
    size_t size() const {
        return amps_.size();
    }
    const CycNumber &amp(uint64_t i) const {
        return amps_[i];
    }
    const std::vector<CycNumber> &amps() const {
        return amps_;
    }
    /// Mutable amplitudes. Call refresh_norm() after editing.
    std::vector<CycNumber> &mutable_amps() {
        return amps_;
    }
    void refresh_norm();
    const CycNumber &norm_sq() const {
        return norm_sq_;
    }
    bool is_normalized() const {
        return norm_sq_ == CycNumber(1);
    }
    /// Max cyclotomic level over the amplitudes.
    int level() const;

    /// Multiplies every amplitude by c.
    ExactState scaled(const CycNumber &c) const;
    /// Normalized complex amplitudes.
    std::vector<std::complex<double>> to_complex(bool normalize = true) const;
    std::string str() const;

    bool operator==(const ExactState &other) const;

   private:
    size_t n_ = 0;
    std::vector<CycNumber> amps_;
    CycNumber norm_sq_;
};

ExactState tensor(const ExactState &a, const ExactState &b);
ExactState conj(const ExactState &s);

/// 2^(-n/2) sum_x exp(i pi e(x) / 2^level) |x>: a diagonal phase applied to |+>^n.
ExactState diagonal_phase_state(size_t n, int level, const std::function<int64_t(uint64_t)> &exponent);

/// Parses and builds a state expression such as "T*3,CCZ" or "QFT:1:4".
///
/// Terms: T, sqrtT, rot:j:d, CS, CCS, CCZ, CnZ:n, CnS:n, CnSdg:n, W:n, QFT:a:n,
/// CCZ123145, plus:n, zero:n, ket:bits. Commas form tensor products; "*k" repeats.
ExactState resource_state(const std::string &expr);

/// <psi|P|psi>, no normalization.
CycNumber pauli_sandwich(const ExactState &s, const PauliOperator &p);
/// <psi|P|psi> / <psi|psi> for a state whose squared norm is a power of two.
CycNumber pauli_expectation(const ExactState &s, const PauliOperator &p);
/// P|psi>.
ExactState apply_pauli(const ExactState &s, const PauliOperator &p);

/// One distinct absolute expectation value and its multiplicity.
struct SpectrumEntry {
    CycNumber value;
    uint64_t multiplicity = 0;
    double approx = 0;
};

struct SpectrumReport {
    size_t n = 0;
    /// Sorted by decreasing approximate value.
    std::vector<SpectrumEntry> entries;
    /// Unsigned Paulis with |<P>| = 1.
    uint64_t unit_count = 0;
    size_t nullity = 0;
    /// Signed stabilizers (all of them, not just generators).
    std::vector<PauliOperator> stabilizers;
    /// max over Paulis of -(v2(<P>) - v2(<psi|psi>)).
    Dyadic mu2;
    uint64_t total() const;
};

/// Full spectrum via the parallel Walsh-Hadamard kernel.
SpectrumReport pauli_spectrum(const ExactState &s, size_t cap = SPECTRUM_QUBIT_CAP);
/// Same report computed Pauli by Pauli with CycNumber arithmetic. Slow reference.
SpectrumReport pauli_spectrum_reference(const ExactState &s, size_t cap = SPECTRUM_QUBIT_CAP);

size_t stabilizer_nullity(const ExactState &s);
/// An independent generating set (size n - nullity) of Stab|psi>, in a
/// deterministic order.
std::vector<PauliOperator> stabilizer_group(const ExactState &s);
/// Reduces signed group elements to independent generators.
std::vector<PauliOperator> independent_generators(const std::vector<PauliOperator> &elements);
Dyadic dyadic_monotone(const ExactState &s);
int ring_level(const ExactState &s);
bool equal_up_to_phase(const ExactState &a, const ExactState &b);
/// <a|b>.
CycNumber inner(const ExactState &a, const ExactState &b);

std::ostream &operator<<(std::ostream &out, const ExactState &s);

}  // namespace mb

#endif
