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

#ifndef MAGICBOUND_EXTENT_H
#define MAGICBOUND_EXTENT_H

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "magicbound/states.h"

namespace mb {

/// Hard cap for stabilizer-state enumeration.
constexpr size_t MAX_ENUMERATION_QUBITS = 5;
/// Cap for extent solves.
constexpr size_t MAX_EXTENT_QUBITS = 4;

/// 2^(-k/2) sum_{y in F2^k} i^(l.y) (-1)^(q(y)) |shift + sum_j y_j basis_j>.
///
/// The basis is in reduced row-echelon form over qubit columns, the shift is
/// zero on pivot columns, l is a vector over Z4 and q is strictly upper
/// triangular. Distinct descriptors give distinct states.
struct StabilizerDescriptor {
    size_t n = 0;
    std::vector<uint64_t> basis;
    uint64_t shift = 0;
    std::vector<uint8_t> linear;
    /// quad[i] has bit j set (j > i) when y_i y_j enters q.
    std::vector<uint64_t> quad;

    size_t dim() const {
        return basis.size();
    }
    ExactState state() const;
    std::vector<std::complex<double>> amplitudes() const;
    std::string str() const;
};

/// 2^n prod_{j=1..n} (2^j + 1).
uint64_t stabilizer_state_count(size_t n);
void for_each_stabilizer_state(size_t n, const std::function<void(const StabilizerDescriptor &)> &fn);
std::vector<StabilizerDescriptor> enumerate_stabilizer_states(size_t n);
/// Columns are the stabilizer states in enumeration order. Built once per n.
const Eigen::MatrixXcd &stabilizer_matrix(size_t n);

struct ExtentOptions {
    /// Target for upper - lower on the extent.
    double gap_tol = 1e-8;
    /// Cap on Newton steps.
    size_t max_iter = 200000;
};

struct ExtentResult {
    /// Certified upper bound: the squared 1-norm of a feasible decomposition.
    double value = 0;
    /// Certified lower bound from the dual witness.
    double lower = 0;
    double gap = 0;
    /// |psi - sum c_a phi_a| of the returned decomposition.
    double residual = 0;
    bool converged = false;
    size_t iterations = 0;
    /// Nonzero coefficients as (column index, coefficient).
    std::vector<std::pair<size_t, std::complex<double>>> coefficients;
    /// Unit-norm dual witness.
    std::vector<std::complex<double>> witness;
};

/// Stabilizer extent by a log-barrier Newton method on the dual program.
ExtentResult extent(const ExactState &s, const ExtentOptions &options = {});

/// max_phi |<omega|phi>|^2 over stabilizer states, for unit-norm omega.
double max_stabilizer_overlap(const std::vector<std::complex<double>> &omega);
/// |<psi|omega>|^2 / max_phi |<omega|phi>|^2, a lower bound on the extent for any nonzero omega.
double witness_lower_bound(const ExactState &s, const std::vector<std::complex<double>> &omega);

struct MultiplicativeExtent {
    double value = 1;
    /// True when every factor satisfies a sufficient condition for multiplicativity.
    bool valid = true;
    std::vector<double> factors;
    std::vector<std::string> notes;
};

/// Product of the factor extents. Each factor must have at most three qubits,
/// or a witness omega with |<omega|phi>|^2 >= 1/4 at the maximizing stabilizer
/// state that attains its extent. Otherwise the product is still returned (an
/// upper bound by submultiplicativity) and `valid` is false.
MultiplicativeExtent multiplicative_extent(const std::vector<ExactState> &states, const ExtentOptions &options = {});

}  // namespace mb

#endif
