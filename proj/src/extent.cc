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

#include "magicbound/extent.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace mb {

namespace {

using cd = std::complex<double>;

const std::array<cd, 4> I_POW{cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};

// Phase exponent (mod 4) and basis index of term y.
std::pair<int, uint64_t> term(const StabilizerDescriptor &d, uint64_t y) {
    uint64_t x = d.shift;
    int e = 0;
    size_t k = d.dim();
    for (size_t i = 0; i < k; i++) {
        if (!((y >> i) & 1)) {
            continue;
        }
        x ^= d.basis[i];
        e += d.linear[i];
        e += 2 * __builtin_popcountll(d.quad[i] & y);
    }
    return {e & 3, x};
}

void enumerate_subspaces(size_t n, size_t k, const std::function<void(const std::vector<uint64_t> &, uint64_t)> &fn) {
    // Pivot of each row is its highest set bit. Rows are zero on other pivots.
    std::vector<size_t> pivots(k);
    std::function<void(size_t, size_t)> choose = [&](size_t row, size_t next_bit) {
        if (row == k) {
            uint64_t pivot_mask = 0;
            for (size_t p : pivots) {
                pivot_mask |= uint64_t{1} << p;
            }
            // Free slots per row: non-pivot bits below the pivot.
            std::vector<std::vector<size_t>> slots(k);
            size_t total = 0;
            for (size_t r = 0; r < k; r++) {
                for (size_t b = 0; b < pivots[r]; b++) {
                    if (!((pivot_mask >> b) & 1)) {
                        slots[r].push_back(b);
                    }
                }
                total += slots[r].size();
            }
            std::vector<uint64_t> basis(k);
            for (uint64_t assign = 0; assign < (uint64_t{1} << total); assign++) {
                size_t at = 0;
                for (size_t r = 0; r < k; r++) {
                    uint64_t v = uint64_t{1} << pivots[r];
                    for (size_t b : slots[r]) {
                        if ((assign >> at++) & 1) {
                            v |= uint64_t{1} << b;
                        }
                    }
                    basis[r] = v;
                }
                fn(basis, pivot_mask);
            }
            return;
        }
        for (size_t b = next_bit; b < n; b++) {
            pivots[row] = b;
            choose(row + 1, b + 1);
        }
    };
    choose(0, 0);
}

}  // namespace

ExactState StabilizerDescriptor::state() const {
    size_t k = dim();
    std::vector<CycNumber> amps(uint64_t{1} << n);
    CycNumber scale = CycNumber(1);
    for (size_t i = 0; i < k; i++) {
        scale = scale * CycNumber::inv_sqrt2();
    }
    for (uint64_t y = 0; y < (uint64_t{1} << k); y++) {
        auto [e, x] = term(*this, y);
        amps[x] = scale.times_zeta(1, e);
    }
    return ExactState::from_amps(n, std::move(amps));
}

std::vector<std::complex<double>> StabilizerDescriptor::amplitudes() const {
    size_t k = dim();
    std::vector<cd> out(uint64_t{1} << n);
    double scale = std::pow(2.0, -0.5 * (double)k);
    for (uint64_t y = 0; y < (uint64_t{1} << k); y++) {
        auto [e, x] = term(*this, y);
        out[x] = scale * I_POW[e];
    }
    return out;
}

std::string StabilizerDescriptor::str() const {
    std::stringstream out;
    out << "n=" << n << " shift=" << shift << " basis=[";
    for (size_t i = 0; i < basis.size(); i++) {
        out << (i ? "," : "") << basis[i];
    }
    out << "] l=[";
    for (size_t i = 0; i < linear.size(); i++) {
        out << (i ? "," : "") << (int)linear[i];
    }
    out << "] q=[";
    for (size_t i = 0; i < quad.size(); i++) {
        out << (i ? "," : "") << quad[i];
    }
    out << "]";
    return out.str();
}

uint64_t stabilizer_state_count(size_t n) {
    uint64_t c = uint64_t{1} << n;
    for (size_t j = 1; j <= n; j++) {
        c *= (uint64_t{1} << j) + 1;
    }
    return c;
}

void for_each_stabilizer_state(size_t n, const std::function<void(const StabilizerDescriptor &)> &fn) {
    if (n > MAX_ENUMERATION_QUBITS) {
        throw std::out_of_range("stabilizer enumeration is capped at " + std::to_string(MAX_ENUMERATION_QUBITS) +
                                " qubits");
    }
    StabilizerDescriptor d;
    d.n = n;
    for (size_t k = 0; k <= n; k++) {
        size_t pairs = k * (k - (k > 0)) / 2;
        enumerate_subspaces(n, k, [&](const std::vector<uint64_t> &basis, uint64_t pivot_mask) {
            d.basis = basis;
            d.linear.assign(k, 0);
            d.quad.assign(k, 0);
            std::vector<size_t> free_bits;
            for (size_t b = 0; b < n; b++) {
                if (!((pivot_mask >> b) & 1)) {
                    free_bits.push_back(b);
                }
            }
            for (uint64_t s = 0; s < (uint64_t{1} << free_bits.size()); s++) {
                d.shift = 0;
                for (size_t i = 0; i < free_bits.size(); i++) {
                    if ((s >> i) & 1) {
                        d.shift |= uint64_t{1} << free_bits[i];
                    }
                }
                for (uint64_t l = 0; l < (uint64_t{1} << (2 * k)); l++) {
                    for (size_t i = 0; i < k; i++) {
                        d.linear[i] = (uint8_t)((l >> (2 * i)) & 3);
                    }
                    for (uint64_t q = 0; q < (uint64_t{1} << pairs); q++) {
                        size_t at = 0;
                        for (size_t i = 0; i < k; i++) {
                            d.quad[i] = 0;
                            for (size_t j = i + 1; j < k; j++) {
                                if ((q >> at++) & 1) {
                                    d.quad[i] |= uint64_t{1} << j;
                                }
                            }
                        }
                        fn(d);
                    }
                }
            }
        });
    }
}

std::vector<StabilizerDescriptor> enumerate_stabilizer_states(size_t n) {
    std::vector<StabilizerDescriptor> out;
    out.reserve(stabilizer_state_count(std::min(n, MAX_ENUMERATION_QUBITS)));
    for_each_stabilizer_state(n, [&](const StabilizerDescriptor &d) {
        out.push_back(d);
    });
    return out;
}

const Eigen::MatrixXcd &stabilizer_matrix(size_t n) {
    if (n > MAX_EXTENT_QUBITS) {
        throw std::out_of_range("stabilizer matrix is capped at " + std::to_string(MAX_EXTENT_QUBITS) + " qubits");
    }
    static std::mutex lock;
    static std::array<std::unique_ptr<Eigen::MatrixXcd>, MAX_EXTENT_QUBITS + 1> cache;
    std::lock_guard<std::mutex> guard(lock);
    if (!cache[n]) {
        auto m = std::make_unique<Eigen::MatrixXcd>(Eigen::MatrixXcd::Zero(Eigen::Index{1} << n,
                                                                           (Eigen::Index)stabilizer_state_count(n)));
        Eigen::Index col = 0;
        for_each_stabilizer_state(n, [&](const StabilizerDescriptor &d) {
            auto a = d.amplitudes();
            for (size_t i = 0; i < a.size(); i++) {
                (*m)(i, col) = a[i];
            }
            col++;
        });
        cache[n] = std::move(m);
    }
    return *cache[n];
}

namespace {

// Largest |<phi_a|w>|^2 over the columns.
double max_overlap(const Eigen::MatrixXcd &A, const Eigen::VectorXcd &w, Eigen::Index *arg = nullptr) {
    Eigen::VectorXcd s = A.adjoint() * w;
    double best = 0;
    Eigen::Index best_i = 0;
#pragma omp parallel
    {
        double local = 0;
        Eigen::Index local_i = 0;
#pragma omp for nowait
        for (Eigen::Index i = 0; i < s.size(); i++) {
            double v = std::norm(s[i]);
            if (v > local) {
                local = v;
                local_i = i;
            }
        }
#pragma omp critical
        {
            if (local > best || (local == best && local_i < best_i)) {
                best = local;
                best_i = local_i;
            }
        }
    }
    if (arg) {
        *arg = best_i;
    }
    return best;
}

// Real form of the dual restricted to a set of columns:
// w = [Re omega; Im omega], <phi|omega> = a.w + i b.w.
struct Dual {
    Eigen::MatrixXd Ar, Br;
    Eigen::VectorXd g;

    Dual(const Eigen::MatrixXcd &A, const std::vector<Eigen::Index> &cols, const Eigen::VectorXcd &psi) {
        Eigen::Index D = A.rows(), N = (Eigen::Index)cols.size();
        Ar.resize(2 * D, N);
        Br.resize(2 * D, N);
        for (Eigen::Index j = 0; j < N; j++) {
            auto col = A.col(cols[j]);
            Ar.col(j) << col.real(), col.imag();
            Br.col(j) << -col.imag(), col.real();
        }
        g.resize(2 * D);
        g << psi.real(), psi.imag();
    }

    void overlaps(const Eigen::VectorXd &w, Eigen::VectorXd &sr, Eigen::VectorXd &si) const {
        sr.noalias() = Ar.transpose() * w;
        si.noalias() = Br.transpose() * w;
    }
};

double barrier(const Dual &p, double t, const Eigen::VectorXd &w, bool *feasible) {
    Eigen::VectorXd sr, si;
    p.overlaps(w, sr, si);
    double f = -t * p.g.dot(w);
    *feasible = true;
    for (Eigen::Index i = 0; i < sr.size(); i++) {
        double u = sr[i] * sr[i] + si[i] * si[i];
        if (u >= 1) {
            *feasible = false;
            return 0;
        }
        f -= std::log1p(-u);
    }
    return f;
}

// Newton centering of -t g.w - sum log(1 - |s_a|^2).
void center(const Dual &p, double t, Eigen::VectorXd &w, size_t &iterations, size_t max_iter) {
    Eigen::Index N = p.Ar.cols();
    Eigen::VectorXd sr, si, d(N), e(N);
    for (int step = 0; step < 100 && iterations < max_iter; step++) {
        iterations++;
        p.overlaps(w, sr, si);
        for (Eigen::Index i = 0; i < N; i++) {
            double slack = 1 - (sr[i] * sr[i] + si[i] * si[i]);
            d[i] = 2 / slack;
            e[i] = 4 / (slack * slack);
        }
        Eigen::VectorXd grad = -t * p.g + p.Ar * d.cwiseProduct(sr) + p.Br * d.cwiseProduct(si);
        Eigen::VectorXd sd = d.cwiseSqrt(), se = e.cwiseSqrt();
        Eigen::MatrixXd As = p.Ar * sd.asDiagonal();
        Eigen::MatrixXd Bs = p.Br * sd.asDiagonal();
        Eigen::MatrixXd Vs = p.Ar * (sr.cwiseProduct(se)).asDiagonal();
        Vs.noalias() += p.Br * (si.cwiseProduct(se)).asDiagonal();
        Eigen::MatrixXd H = As * As.transpose();
        H.noalias() += Bs * Bs.transpose();
        H.noalias() += Vs * Vs.transpose();
        Eigen::VectorXd dir = -H.ldlt().solve(grad);
        double decrement = -grad.dot(dir);
        if (!(decrement > 1e-12)) {
            return;
        }
        bool feasible;
        double f0 = barrier(p, t, w, &feasible);
        double alpha = 1;
        Eigen::VectorXd trial;
        while (true) {
            trial = w + alpha * dir;
            double f = barrier(p, t, trial, &feasible);
            if (feasible && f <= f0 - 0.25 * alpha * decrement) {
                break;
            }
            alpha *= 0.5;
            if (alpha < 1e-12) {
                return;
            }
        }
        w = trial;
        if (decrement < 1e-9) {
            return;
        }
    }
}

// Largest |s|^2 over the restricted columns.
double restricted_max(const Dual &p, const Eigen::VectorXd &w) {
    Eigen::VectorXd sr, si;
    p.overlaps(w, sr, si);
    return (sr.cwiseAbs2() + si.cwiseAbs2()).maxCoeff();
}

// Lawson-Hanson nonnegative least squares.
Eigen::VectorXd nnls(const Eigen::MatrixXd &M, const Eigen::VectorXd &b) {
    Eigen::Index K = M.cols();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(K);
    std::vector<char> passive(K, 0);
    auto solve_passive = [&]() {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index j = 0; j < K; j++) {
            if (passive[j]) {
                idx.push_back(j);
            }
        }
        Eigen::MatrixXd MP(M.rows(), (Eigen::Index)idx.size());
        for (size_t j = 0; j < idx.size(); j++) {
            MP.col(j) = M.col(idx[j]);
        }
        Eigen::VectorXd zp = MP.completeOrthogonalDecomposition().solve(b);
        Eigen::VectorXd z = Eigen::VectorXd::Zero(K);
        for (size_t j = 0; j < idx.size(); j++) {
            z[idx[j]] = zp[j];
        }
        return z;
    };
    for (Eigen::Index outer = 0; outer < 3 * K; outer++) {
        Eigen::VectorXd grad = M.transpose() * (b - M * x);
        Eigen::Index pick = -1;
        double best = 1e-13;
        for (Eigen::Index j = 0; j < K; j++) {
            if (!passive[j] && grad[j] > best) {
                best = grad[j];
                pick = j;
            }
        }
        if (pick < 0) {
            break;
        }
        passive[pick] = 1;
        for (Eigen::Index inner = 0; inner < 3 * K; inner++) {
            Eigen::VectorXd z = solve_passive();
            double alpha = 1;
            bool clipped = false;
            for (Eigen::Index j = 0; j < K; j++) {
                if (passive[j] && z[j] <= 0) {
                    alpha = std::min(alpha, x[j] / (x[j] - z[j]));
                    clipped = true;
                }
            }
            if (!clipped) {
                x = z;
                break;
            }
            x += alpha * (z - x);
            for (Eigen::Index j = 0; j < K; j++) {
                if (passive[j] && x[j] <= 1e-15) {
                    passive[j] = 0;
                    x[j] = 0;
                }
            }
        }
    }
    return x;
}

// Decomposition supported on the stabilizer states where the witness attains
// its maximum, with coefficient phases aligned to the witness. Any exact
// nonnegative solution there is optimal.
bool polish(const Eigen::MatrixXcd &A, const Eigen::VectorXcd &psi, const Eigen::VectorXcd &s, double smax,
            Eigen::VectorXcd &c) {
    Eigen::Index D = A.rows(), N = A.cols();
    std::vector<Eigen::Index> face;
    for (Eigen::Index j = 0; j < N; j++) {
        if (std::norm(s[j]) >= smax * (1 - 1e-6)) {
            face.push_back(j);
        }
    }
    if (face.empty() || face.size() > (size_t)(64 * D)) {
        return false;
    }
    Eigen::MatrixXd M(2 * D, (Eigen::Index)face.size());
    for (size_t k = 0; k < face.size(); k++) {
        Eigen::VectorXcd col = A.col(face[k]) * (s[face[k]] / std::abs(s[face[k]]));
        M.col(k) << col.real(), col.imag();
    }
    Eigen::VectorXd b(2 * D);
    b << psi.real(), psi.imag();
    Eigen::VectorXd lambda = nnls(M, b);
    c = Eigen::VectorXcd::Zero(N);
    for (size_t k = 0; k < face.size(); k++) {
        c[face[k]] = lambda[k] * (s[face[k]] / std::abs(s[face[k]]));
    }
    // Leftover residual goes on the computational basis states (the first D columns).
    Eigen::VectorXcd r = psi - A * c;
    if (r.norm() > 1e-8) {
        return false;
    }
    c.head(D) += r;
    return true;
}

}  // namespace

ExtentResult extent(const ExactState &s, const ExtentOptions &options) {
    size_t n = s.num_qubits();
    if (n > MAX_EXTENT_QUBITS) {
        throw std::out_of_range("extent is capped at " + std::to_string(MAX_EXTENT_QUBITS) + " qubits");
    }
    if (s.norm_sq().is_zero()) {
        throw std::invalid_argument("extent of the zero vector");
    }
    const Eigen::MatrixXcd &A = stabilizer_matrix(n);
    Eigen::Index D = A.rows(), N = A.cols();
    auto psi_c = s.to_complex(true);
    Eigen::VectorXcd psi = Eigen::Map<Eigen::VectorXcd>(psi_c.data(), D);

    // Working set: basis states (always feasible for the primal) plus the
    // columns with the largest overlap with psi.
    std::vector<char> in_set(N, 0);
    std::vector<Eigen::Index> cols;
    auto add = [&](Eigen::Index j) {
        if (!in_set[j]) {
            in_set[j] = 1;
            cols.push_back(j);
        }
    };
    for (Eigen::Index j = 0; j < D; j++) {
        add(j);
    }
    auto add_top = [&](const Eigen::VectorXd &score, Eigen::Index count, double floor) {
        std::vector<Eigen::Index> order;
        for (Eigen::Index j = 0; j < N; j++) {
            if (!in_set[j] && score[j] > floor) {
                order.push_back(j);
            }
        }
        count = std::min<Eigen::Index>(count, (Eigen::Index)order.size());
        std::partial_sort(order.begin(), order.begin() + count, order.end(),
                          [&](Eigen::Index a, Eigen::Index b) { return score[a] > score[b] || (score[a] == score[b] && a < b); });
        for (Eigen::Index j = 0; j < count; j++) {
            add(order[j]);
        }
        return count;
    };
    add_top((A.adjoint() * psi).cwiseAbs2(), 4 * D, 0);

    ExtentResult result;
    double best_upper = INFINITY, best_lower = 0;
    Eigen::VectorXcd best_c = Eigen::VectorXcd::Zero(N), best_w;
    Eigen::VectorXd w;
    for (int round = 0; round < 64 && result.iterations < options.max_iter; round++) {
        Dual p(A, cols, psi);
        Eigen::Index M = (Eigen::Index)cols.size();
        if (w.size() == 0) {
            w = Eigen::VectorXd::Zero(2 * D);
        } else {
            // Pull the previous witness strictly inside the enlarged set.
            double m = restricted_max(p, w);
            if (m >= 1) {
                w *= 0.5 / std::sqrt(m);
            }
        }

        Eigen::VectorXcd c(M);
        double restricted_gap = INFINITY;
        for (double t = 1; t < 1e13 && result.iterations < options.max_iter; t *= 8) {
            center(p, t, w, result.iterations, options.max_iter);

            // Primal point on the central path, projected back onto A_S c = psi.
            Eigen::VectorXd sr, si;
            p.overlaps(w, sr, si);
            for (Eigen::Index i = 0; i < M; i++) {
                double u = sr[i] * sr[i] + si[i] * si[i];
                c[i] = cd(sr[i], si[i]) * (2 / (t * (1 - u)));
            }
            Eigen::MatrixXcd AS(D, M);
            for (Eigen::Index i = 0; i < M; i++) {
                AS.col(i) = A.col(cols[i]);
            }
            Eigen::VectorXcd r = psi - AS * c;
            Eigen::MatrixXcd gram = AS * AS.adjoint();
            c += AS.adjoint() * gram.ldlt().solve(r);
            double l1 = c.cwiseAbs().sum();
            double upper = l1 * l1;
            double gw = p.g.dot(w);
            double lower = gw * gw / restricted_max(p, w);
            if (upper < best_upper && (psi - AS * c).norm() < 1e-10) {
                best_upper = upper;
                best_c.setZero();
                for (Eigen::Index i = 0; i < M; i++) {
                    best_c[cols[i]] = c[i];
                }
            }
            restricted_gap = upper - lower;
            if (restricted_gap <= options.gap_tol / 4) {
                break;
            }
        }

        // Price every stabilizer state against the witness.
        Eigen::VectorXcd omega(D);
        for (Eigen::Index i = 0; i < D; i++) {
            omega[i] = cd(w[i], w[D + i]);
        }
        Eigen::VectorXcd sw = A.adjoint() * omega;
        Eigen::VectorXd u = sw.cwiseAbs2();
        double global_max = u.maxCoeff();
        double lower = std::norm(psi.dot(omega)) / global_max;
        if (lower > best_lower) {
            best_lower = lower;
            best_w = omega;
        }
        Eigen::VectorXcd polished;
        if (polish(A, psi, sw, global_max, polished)) {
            double l1 = polished.cwiseAbs().sum();
            if (l1 * l1 < best_upper) {
                best_upper = l1 * l1;
                best_c = polished;
            }
        }
        if (best_upper - best_lower <= options.gap_tol) {
            result.converged = true;
            break;
        }
        double local_max = restricted_max(p, w);
        if (add_top(u, 4 * D, local_max * (1 - 1e-6)) == 0) {
            // No new columns would help; the restricted problem is as good as it gets.
            result.converged = best_upper - best_lower <= options.gap_tol;
            break;
        }
    }

    result.value = best_upper;
    result.lower = best_lower;
    result.gap = best_upper - best_lower;
    result.residual = (psi - A * best_c).norm();
    double cut = 1e-12 * best_c.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < N; i++) {
        if (std::abs(best_c[i]) > cut) {
            result.coefficients.emplace_back((size_t)i, best_c[i]);
        }
    }
    if (best_w.size()) {
        best_w.normalize();
        result.witness.assign(best_w.data(), best_w.data() + D);
    }
    return result;
}

double max_stabilizer_overlap(const std::vector<std::complex<double>> &omega) {
    size_t n = 0;
    while ((size_t{1} << n) < omega.size()) {
        n++;
    }
    if ((size_t{1} << n) != omega.size()) {
        throw std::invalid_argument("witness length is not a power of two");
    }
    Eigen::VectorXcd w = Eigen::Map<const Eigen::VectorXcd>(omega.data(), (Eigen::Index)omega.size());
    return max_overlap(stabilizer_matrix(n), w);
}

double witness_lower_bound(const ExactState &s, const std::vector<std::complex<double>> &omega) {
    if (omega.size() != s.size()) {
        throw std::invalid_argument("witness size does not match the state");
    }
    auto psi = s.to_complex(true);
    cd ip = 0;
    for (size_t i = 0; i < psi.size(); i++) {
        ip += std::conj(psi[i]) * omega[i];
    }
    double m = max_stabilizer_overlap(omega);
    if (m == 0) {
        throw std::invalid_argument("zero witness");
    }
    return std::norm(ip) / m;
}

MultiplicativeExtent multiplicative_extent(const std::vector<ExactState> &states, const ExtentOptions &options) {
    MultiplicativeExtent out;
    for (size_t k = 0; k < states.size(); k++) {
        const ExactState &s = states[k];
        ExtentResult r = extent(s, options);
        out.factors.push_back(r.value);
        out.value *= r.value;
        if (s.num_qubits() <= 3) {
            continue;
        }
        // The witness attains the extent up to the solver gap; check the overlap
        // with the stabilizer state where its maximum is reached.
        bool ok = false;
        if (!r.witness.empty() && r.value - r.lower <= 10 * options.gap_tol + 1e-9) {
            ok = max_stabilizer_overlap(r.witness) >= 0.25 - 1e-12;
        }
        if (!ok) {
            out.valid = false;
            out.notes.push_back("factor " + std::to_string(k) + " (" + std::to_string(s.num_qubits()) +
                                " qubits) has no witness certifying multiplicativity");
        }
    }
    return out;
}

}  // namespace mb
