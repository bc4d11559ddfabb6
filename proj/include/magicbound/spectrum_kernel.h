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

#ifndef MAGICBOUND_SPECTRUM_KERNEL_H
#define MAGICBOUND_SPECTRUM_KERNEL_H

#include <utility>
#include <vector>

#include "magicbound/cyclotomic.h"
#include "magicbound/pauli.h"

namespace mb {

class ExactState;

namespace kernel {

/// Raw Pauli-spectrum tally: each distinct |<psi|P|psi>| (not divided by the
/// norm, sign not resolved) with its multiplicity, plus the signed stabilizers.
struct SpectrumTally {
    std::vector<std::pair<CycNumber, uint64_t>> values;
    uint64_t unit_count = 0;
    std::vector<PauliOperator> stabilizers;
    /// True when the 64-bit integer path was used.
    bool used_machine_words = false;
};

/// For each X-part a, forms c_w = conj(psi[w^a]) psi[w] as integer polynomials
/// in zeta and Walsh-Hadamard transforms over w. The loop over a runs under OpenMP.
SpectrumTally spectrum_parallel(const ExactState &s);
/// The same algorithm on one thread.
SpectrumTally spectrum_serial(const ExactState &s);
/// Forces the arbitrary-precision path (for testing the fallback).
SpectrumTally spectrum_parallel_bigint(const ExactState &s);

}  // namespace kernel
}  // namespace mb

#endif
