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

#include "magicbound/spectrum_kernel.h"

#include <omp.h>

#include <bit>
#include <map>

#include "magicbound/states.h"

namespace mb {
namespace kernel {

namespace {

template <typename T>
mpz_class to_mpz(const T &v) {
    if constexpr (std::is_same_v<T, mpz_class>) {
        return v;
    } else {
        return mpz_class((long)v);
    }
}

template <typename T>
T from_mpz(const mpz_class &v) {
    if constexpr (std::is_same_v<T, mpz_class>) {
        return v;
    } else {
        return (T)v.get_si();
    }
}

template <typename T>
struct SparsePoly {
    std::vector<std::pair<uint32_t, T>> terms;
};

/// Integer data for the state: all amplitudes at a shared level and denominator.
template <typename T>
struct Prepared {
    size_t n;
    size_t num;
    int level;
    size_t half;
    int64_t denom;
    std::vector<SparsePoly<T>> amps;
    std::vector<SparsePoly<T>> conj_amps;
};

template <typename T>
Prepared<T> prepare(const ExactState &s, int level, int64_t denom) {
    Prepared<T> p;
    p.n = s.num_qubits();
    p.num = s.size();
    p.level = level;
    p.half = size_t{1} << level;
    p.denom = denom;
    p.amps.resize(p.num);
    p.conj_amps.resize(p.num);
    for (size_t w = 0; w < p.num; w++) {
        const CycNumber &a = s.amp(w);
        if (a.is_zero()) {
            continue;
        }
        std::vector<mpz_class> c = a.coeffs_at(level);
        int64_t shift = denom - a.denom_exp();
        for (size_t j = 0; j < p.half; j++) {
            if (c[j] == 0) {
                continue;
            }
            mpz_class v = c[j] << shift;
            p.amps[w].terms.push_back({(uint32_t)j, from_mpz<T>(v)});
            if (j == 0) {
                p.conj_amps[w].terms.push_back({0, from_mpz<T>(v)});
            } else {
                p.conj_amps[w].terms.push_back({(uint32_t)(p.half - j), from_mpz<T>(mpz_class(-v))});
            }
        }
    }
    return p;
}

/// out += a * b modulo zeta^half + 1.
template <typename T>
void mul_acc(const SparsePoly<T> &a, const SparsePoly<T> &b, T *out, size_t half) {
    for (const auto &[i, x] : a.terms) {
        for (const auto &[j, y] : b.terms) {
            size_t e = i + j;
            if (e < half) {
                out[e] += x * y;
            } else {
                out[e - half] -= x * y;
            }
        }
    }
}

template <typename T>
SpectrumTally run(const ExactState &s, bool parallel, int level, int64_t denom) {
    Prepared<T> p = prepare<T>(s, level, denom);
    size_t num = p.num;
    size_t half = p.half;

    std::vector<T> norm_poly(half, T(0));
    for (size_t w = 0; w < num; w++) {
        mul_acc(p.conj_amps[w], p.amps[w], norm_poly.data(), half);
    }
    std::vector<T> neg_norm_poly(half);
    for (size_t j = 0; j < half; j++) {
        neg_norm_poly[j] = -norm_poly[j];
    }

    std::map<std::vector<T>, uint64_t> merged;
    std::vector<PauliOperator> stabilizers;
    uint64_t unit_count = 0;

#pragma omp parallel if (parallel)
    {
        std::map<std::vector<T>, uint64_t> local;
        std::vector<PauliOperator> local_stab;
        uint64_t local_units = 0;
        std::vector<T> c(num * half);
        std::vector<T> v(half);

#pragma omp for schedule(dynamic, 1)
        for (size_t a = 0; a < num; a++) {
            std::fill(c.begin(), c.end(), T(0));
            for (size_t w = 0; w < num; w++) {
                const auto &lhs = p.conj_amps[w ^ a];
                const auto &rhs = p.amps[w];
                if (!lhs.terms.empty() && !rhs.terms.empty()) {
                    mul_acc(lhs, rhs, &c[w * half], half);
                }
            }
            // Walsh-Hadamard over w: R[b] = sum_w (-1)^(b.w) c[w].
            for (size_t h = 1; h < num; h <<= 1) {
                for (size_t i = 0; i < num; i += 2 * h) {
                    for (size_t w = i; w < i + h; w++) {
                        T *x = &c[w * half];
                        T *y = &c[(w + h) * half];
                        for (size_t j = 0; j < half; j++) {
                            T u = x[j];
                            x[j] = u + y[j];
                            y[j] = u - y[j];
                        }
                    }
                }
            }
            for (size_t b = 0; b < num; b++) {
                // Multiply by i^popcount(a & b) = zeta^(half/2 * popcount).
                size_t shift = (half / 2) * (size_t)(std::popcount(a & b) % 4);
                const T *r = &c[b * half];
                for (size_t j = 0; j < half; j++) {
                    size_t e = j + shift;
                    if (e < half) {
                        v[e] = r[j];
                    } else if (e < 2 * half) {
                        v[e - half] = -r[j];
                    } else {
                        v[e - 2 * half] = r[j];
                    }
                }
                if (v == norm_poly) {
                    local_stab.push_back(PauliOperator::hermitian(p.n, a, b, +1));
                    local_units++;
                } else if (v == neg_norm_poly) {
                    local_stab.push_back(PauliOperator::hermitian(p.n, a, b, -1));
                    local_units++;
                }
                // Sign-normalize: the first nonzero coefficient is positive.
                bool flip = false;
                for (size_t j = 0; j < half; j++) {
                    if (v[j] != 0) {
                        flip = v[j] < 0;
                        break;
                    }
                }
                if (flip) {
                    for (auto &x : v) {
                        x = -x;
                    }
                }
                local[v]++;
            }
        }

#pragma omp critical
        {
            for (auto &[key, count] : local) {
                merged[key] += count;
            }
            stabilizers.insert(stabilizers.end(), local_stab.begin(), local_stab.end());
            unit_count += local_units;
        }
    }

    SpectrumTally out;
    out.unit_count = unit_count;
    out.stabilizers = std::move(stabilizers);
    out.used_machine_words = !std::is_same_v<T, mpz_class>;
    for (const auto &[key, count] : merged) {
        std::vector<mpz_class> coeffs(half);
        for (size_t j = 0; j < half; j++) {
            coeffs[j] = to_mpz(key[j]);
        }
        out.values.push_back({CycNumber::from_coeffs(level, std::move(coeffs), 2 * denom), count});
    }
    return out;
}

SpectrumTally dispatch(const ExactState &s, bool parallel, bool force_big) {
    int level = std::max(1, s.level());
    int64_t denom = 0;
    for (const auto &a : s.amps()) {
        denom = std::max(denom, a.denom_exp());
    }
    size_t max_bits = 0;
    for (const auto &a : s.amps()) {
        if (a.is_zero()) {
            continue;
        }
        for (const auto &c : a.coeffs()) {
            if (c != 0) {
                max_bits = std::max(max_bits, mpz_sizeinbase(c.get_mpz_t(), 2) + (size_t)(denom - a.denom_exp()));
            }
        }
    }
    // |coefficient| <= 2^(n + level + 2 * max_bits) after the transform.
    bool fits = s.num_qubits() + (size_t)level + 2 * max_bits + 2 <= 62;
    if (fits && !force_big) {
        return run<int64_t>(s, parallel, level, denom);
    }
    return run<mpz_class>(s, parallel, level, denom);
}

}  // namespace

SpectrumTally spectrum_parallel(const ExactState &s) {
    return dispatch(s, true, false);
}

SpectrumTally spectrum_serial(const ExactState &s) {
    return dispatch(s, false, false);
}

SpectrumTally spectrum_parallel_bigint(const ExactState &s) {
    return dispatch(s, true, true);
}

}  // namespace kernel
}  // namespace mb
