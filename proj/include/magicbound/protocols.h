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

#ifndef MAGICBOUND_PROTOCOLS_H
#define MAGICBOUND_PROTOCOLS_H

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "magicbound/simulator.h"
#include "magicbound/states.h"

namespace mb {

constexpr size_t MAX_PROTOCOL_QUBITS = 14;

using Params = std::map<std::string, int64_t>;

/// A state returned unchanged by a protocol, and where it sits in the output.
struct Catalyst {
    std::string expr;
    std::vector<size_t> qubits;
};

struct ProtocolSpec {
    std::string name;
    Params params;
    std::string summary;
    ExactState input;
    /// Resource states sitting in the input register that the protocol uses up.
    std::map<std::string, int64_t> input_resources;
    std::vector<Catalyst> catalysts;
    /// Declared consumption: input resources plus injected states and
    /// non-Clifford gates, averaged over branches and worst case.
    std::map<std::string, double> average;
    std::map<std::string, double> worst;
    /// Declared net output (expected counts).
    std::map<std::string, double> produced;
    /// Output differs between branches.
    bool probabilistic = false;
    /// Every measurement is expected to have probability exactly 1/2.
    bool half_only = true;
    CircuitIR circuit;
    /// Expected output (up to phase) of a branch.
    std::function<ExactState(const Branch &)> expected;
};

struct BranchReport {
    std::string outcomes;
    double probability = 0;
    std::string probability_exact;
    bool is_half = true;
    bool matches = false;
    bool catalyst_intact = false;
    std::map<std::string, int64_t> tally;
};

struct VerificationReport {
    std::string name;
    Params params;
    bool passed = false;
    std::vector<std::string> failures;
    std::vector<BranchReport> branches;
    size_t max_qubits = 0;
    bool total_probability_one = false;
    bool all_half = false;
    bool catalyst_intact = false;
    std::map<std::string, double> average;
    std::map<std::string, double> worst;
    /// Nullity and dyadic monotone of consumed vs produced resources (catalysts cancel).
    /// The dyadic audit only applies when every measurement had probability 1/2.
    double nullity_in = 0, nullity_out = 0;
    double mu2_in = 0, mu2_out = 0;
    bool monotone_ok = false;
    double seconds = 0;
};

struct CatalogEntry {
    std::string name;
    std::string summary;
    std::vector<std::string> param_names;
    /// The smallest instances, checked by verify_catalog.
    std::vector<Params> instances;
};

/// Every protocol family, in a fixed order.
const std::vector<CatalogEntry> &catalog();
/// Builds one instance. Missing parameters take the values of the first instance.
ProtocolSpec make_protocol(const std::string &name, const Params &params = {});
/// Simulates every branch and checks it against the declaration.
VerificationReport verify(const ProtocolSpec &p);
/// verify() on every catalog instance (independent runs in parallel).
std::vector<VerificationReport> verify_catalog();

/// How a temporary logical AND onto a fresh |0> is computed.
enum class AndMode { CCZ_GATE, T_GATES, T_INJECTED };

/// In-place modular adder |i>|j> -> |i>|i + j mod 2^n>, registers of n qubits
/// each with qubit 0 of a register its most significant bit. Carries live on
/// temporary AND ancillas that are removed by X measurement and a conditional CZ.
CircuitIR adder_circuit(size_t n, AndMode mode = AndMode::CCZ_GATE);

struct CnzReport {
    VerificationReport report;
    /// Nullity of the output.
    size_t nullity = 0;
};
/// Controlled increment through the adder on |0..0 c>|0 +..+>, with c = |+>
/// (output Clifford-equivalent to |C^n Z>) or c = |0> (output stabilizer).
CnzReport adder_to_cnz(size_t n, bool control_zero = false);

}  // namespace mb

#endif
