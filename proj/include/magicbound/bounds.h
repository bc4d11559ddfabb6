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

#ifndef MAGICBOUND_BOUNDS_H
#define MAGICBOUND_BOUNDS_H

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "magicbound/cyclotomic.h"
#include "magicbound/pauli.h"

namespace mb {

/// Largest state whose extent is solved rather than looked up.
constexpr size_t MAX_SOLVED_EXTENT_QUBITS = 3;

struct MonotoneValues {
    std::string expr;
    size_t qubits = 0;
    size_t nullity = 0;
    Dyadic mu2;
    double extent = 1;
    /// False when the extent is a closed-form constant rather than a solver result.
    bool extent_solved = false;
    /// Certified duality gap of the solve (0 for constants).
    double extent_gap = 0;
    /// Closed form, when one is known.
    std::string extent_exact;
};

/// Nullity, dyadic monotone and extent of a state expression. Cached; thread-safe.
/// Throws std::out_of_range when the extent is neither solvable nor tabulated.
const MonotoneValues &monotone_values(const std::string &expr);

/// Bounds on converting `source` states into `target` states.
struct BoundReport {
    std::string source;
    std::string target;
    /// nu_t / nu_s, log xi_t / log xi_s and mu2_t / mu2_s.
    double nullity_ratio = 0;
    double extent_ratio = 0;
    double mu2_ratio = 0;
    /// Both extents came from the solver.
    bool extent_solved = false;

    /// Sources consumed per target produced is at least `lower`: the max of the
    /// nullity and extent ratios. `lower_star` marks the extent as the binding term.
    double lower = 0;
    bool lower_star = false;
    /// Targets produced per source consumed is at most `upper` (min of the inverse ratios).
    double upper = 0;
    bool upper_star = false;
    /// Dyadic-monotone versions. Only valid for protocols whose measurements all
    /// have probability 1/2.
    double lower_dagger = 0;
    double upper_dagger = 0;
};
BoundReport conversion_bounds(const std::string &source, const std::string &target);

/// 6 significant digits, ties to even, trailing zeros dropped.
std::string format6(double v);

struct Table {
    std::string name;
    std::string caption;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string to_markdown() const;
    std::string to_csv() const;
    std::string to_json() const;
};

/// t_conversion, ccz_conversion, ccz_extended, extent_values, mu2_values or nullity_values.
Table table(const std::string &name);
const std::vector<std::string> &table_names();

/// The states listed in the conversion tables, as (label, expression).
const std::vector<std::pair<std::string, std::string>> &table_states();

enum class SynthFamily { T, CS, CCZ, MIXED_SQRT_T, GENERAL };
enum class SynthForm { UNITARY, STATE };

struct SynthesisBound {
    double value = 0;
    /// Probability that the bound holds (unitary form), 1 for the state form.
    double probability = 1;
    /// probability * value: a bound on the expected count.
    double average = 0;
    std::string formula;
};
/// Lower bound on resource count for approximating to precision epsilon.
/// Unitary form needs epsilon < 1/(2^8 C); state form needs epsilon < 1/8.
/// GENERAL takes the ring level d and bounds mu2 + nu of the input (state form only).
SynthesisBound synthesis_bound(SynthFamily family, double epsilon, double C = 2, SynthForm form = SynthForm::UNITARY,
                               int d = 2);
SynthFamily parse_synth_family(const std::string &text);

enum class FloorRule {
    /// |T>^n: p = 0 or p >= 2^-(2k+n).
    T_STATES,
    /// Entries in Z[i, 1/2]: p = 0 or p >= 2^-(k+qubits).
    GAUSSIAN,
    /// Level-d entries: log2 p >= -2^(d-1) (k + mu2).
    DYADIC,
};

struct FloorReport {
    std::string expr;
    FloorRule rule = FloorRule::T_STATES;
    size_t trials = 0;
    size_t zeros = 0;
    size_t violations = 0;
    /// Smallest nonzero p and log2 of its floor, at the trial that came closest.
    double min_nonzero = 1;
    double min_log2_margin = 0;
    uint64_t seed = 0;
    std::vector<std::string> witnesses;
};

/// Random independent commuting Pauli sets (k drawn from 1..qubits) and the
/// exact probability that all of them measure +1.
FloorReport probability_floor_check(const std::string &expr, FloorRule rule, size_t trials, uint64_t seed);

/// A random list of k independent, pairwise commuting Hermitian Paulis on n qubits.
std::vector<PauliOperator> random_commuting_paulis(size_t n, size_t k, std::mt19937_64 &rng);

}  // namespace mb

#endif
