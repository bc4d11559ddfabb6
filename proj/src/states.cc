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

#include "magicbound/states.h"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "magicbound/spectrum_kernel.h"

namespace mb {

namespace {

void check_qubits(size_t n) {
    if (n > MAX_STATE_QUBITS) {
        throw std::out_of_range("state has " + std::to_string(n) + " qubits; cap is " +
                                std::to_string(MAX_STATE_QUBITS));
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// ExactState

ExactState::ExactState(size_t n) : n_(n), amps_(size_t{1} << n), norm_sq_(1) {
    check_qubits(n);
    amps_[0] = CycNumber(1);
}

ExactState ExactState::from_amps(size_t n, std::vector<CycNumber> amps) {
    check_qubits(n);
    if (amps.size() != (size_t{1} << n)) {
        throw std::invalid_argument("amplitude vector length must be 2^n");
    }
    ExactState s;
    s.n_ = n;
    s.amps_ = std::move(amps);
    s.refresh_norm();
    return s;
}

ExactState ExactState::basis(size_t n, uint64_t index) {
    ExactState s(n);
    if (index >= s.amps_.size()) {
        throw std::out_of_range("basis index out of range");
    }
    s.amps_[0] = CycNumber();
    s.amps_[index] = CycNumber(1);
    return s;
}

void ExactState::refresh_norm() {
    CycNumber acc;
    for (const auto &a : amps_) {
        if (!a.is_zero()) {
            acc += a.abs2();
        }
    }
    norm_sq_ = acc;
}

int ExactState::level() const {
    int d = 0;
    for (const auto &a : amps_) {
        d = std::max(d, a.level());
    }
    return d;
}

ExactState ExactState::scaled(const CycNumber &c) const {
    ExactState r = *this;
    for (auto &a : r.amps_) {
        if (!a.is_zero()) {
            a = a * c;
        }
    }
    r.norm_sq_ = norm_sq_ * c.abs2();
    return r;
}

std::vector<std::complex<double>> ExactState::to_complex(bool normalize) const {
    std::vector<std::complex<double>> out(amps_.size());
    for (size_t i = 0; i < amps_.size(); i++) {
        out[i] = amps_[i].to_complex();
    }
    if (normalize) {
        double nrm = 0;
        for (const auto &v : out) {
            nrm += std::norm(v);
        }
        nrm = std::sqrt(nrm);
        if (nrm > 0) {
            for (auto &v : out) {
                v /= nrm;
            }
        }
    }
    return out;
}

std::string ExactState::str() const {
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < amps_.size(); i++) {
        if (amps_[i].is_zero()) {
            continue;
        }
        if (!first) {
            out << " + ";
        }
        first = false;
        std::string bits;
        for (size_t q = 0; q < n_; q++) {
            bits += ((i >> (n_ - 1 - q)) & 1) ? '1' : '0';
        }
        out << amps_[i].str() << "|" << bits << ">";
    }
    return first ? "0" : out.str();
}

bool ExactState::operator==(const ExactState &other) const {
    return n_ == other.n_ && amps_ == other.amps_;
}

ExactState tensor(const ExactState &a, const ExactState &b) {
    size_t n = a.num_qubits() + b.num_qubits();
    check_qubits(n);
    std::vector<CycNumber> amps(size_t{1} << n);
    size_t nb = b.size();
    for (size_t i = 0; i < a.size(); i++) {
        if (a.amp(i).is_zero()) {
            continue;
        }
        for (size_t j = 0; j < nb; j++) {
            if (!b.amp(j).is_zero()) {
                amps[i * nb + j] = a.amp(i) * b.amp(j);
            }
        }
    }
    return ExactState::from_amps(n, std::move(amps));
}

ExactState conj(const ExactState &s) {
    std::vector<CycNumber> amps = s.amps();
    for (auto &a : amps) {
        a = a.conj();
    }
    return ExactState::from_amps(s.num_qubits(), std::move(amps));
}

ExactState diagonal_phase_state(size_t n, int level, const std::function<int64_t(uint64_t)> &exponent) {
    check_qubits(n);
    CycNumber pre = (n % 2 == 0) ? CycNumber(1).scaled(-(int64_t)(n / 2))
                                 : CycNumber::inv_sqrt2().scaled(-(int64_t)(n / 2));
    std::vector<CycNumber> amps(size_t{1} << n);
    for (uint64_t x = 0; x < amps.size(); x++) {
        amps[x] = pre.times_zeta(level, exponent(x));
    }
    return ExactState::from_amps(n, std::move(amps));
}

// ---------------------------------------------------------------------------
// State expressions

namespace {

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

int64_t parse_int(const std::string &text, const std::string &context) {
    try {
        size_t used = 0;
        long long v = std::stoll(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument("");
        }
        return v;
    } catch (const std::exception &) {
        throw std::invalid_argument("expected an integer in '" + context + "', got '" + text + "'");
    }
}

uint64_t all_ones(size_t n) {
    return (uint64_t{1} << n) - 1;
}

ExactState build_term(const std::string &term) {
    std::vector<std::string> parts = split(term, ':');
    const std::string &name = parts[0];
    auto want = [&](size_t count) {
        if (parts.size() != count + 1) {
            throw std::invalid_argument("state '" + name + "' takes " + std::to_string(count) + " parameter(s): '" +
                                        term + "'");
        }
    };
    auto param = [&](size_t i) { return parse_int(parts[i], term); };
    auto qubit_count = [&](size_t i, int64_t min_n) {
        int64_t n = param(i);
        if (n < min_n) {
            throw std::invalid_argument(name + " requires n ≥ " + std::to_string(min_n));
        }
        if (n > (int64_t)MAX_STATE_QUBITS) {
            throw std::invalid_argument(name + " qubit count exceeds cap");
        }
        return (size_t)n;
    };
    auto cns = [](size_t n, bool dagger) {
        uint64_t ones = all_ones(n);
        return diagonal_phase_state(n, 1, [=](uint64_t x) { return x == ones ? (dagger ? -1 : 1) : 0; });
    };
    auto cnz = [](size_t n) {
        uint64_t ones = all_ones(n);
        return diagonal_phase_state(n, 0, [=](uint64_t x) { return x == ones ? 1 : 0; });
    };
    if (name == "T") {
        want(0);
        return diagonal_phase_state(1, 2, [](uint64_t x) { return (int64_t)x; });
    }
    if (name == "sqrtT") {
        want(0);
        return diagonal_phase_state(1, 3, [](uint64_t x) { return (int64_t)x; });
    }
    if (name == "rot") {
        want(2);
        int64_t j = param(1);
        int64_t d = param(2);
        if (d < 0 || d > MAX_LEVEL) {
            throw std::invalid_argument("rot level must lie in [0, " + std::to_string(MAX_LEVEL) + "]");
        }
        return diagonal_phase_state(1, (int)d, [=](uint64_t x) { return j * (int64_t)x; });
    }
    if (name == "CS") {
        want(0);
        return cns(2, false);
    }
    if (name == "CCS") {
        want(0);
        return cns(3, false);
    }
    if (name == "C3S") {
        want(0);
        return cns(4, false);
    }
    if (name == "CCZ") {
        want(0);
        return cnz(3);
    }
    if (name == "C3Z") {
        want(0);
        return cnz(4);
    }
    if (name == "C4Z") {
        want(0);
        return cnz(5);
    }
    if (name == "CnZ") {
        want(1);
        return cnz(qubit_count(1, 1));
    }
    if (name == "CnS") {
        want(1);
        return cns(qubit_count(1, 1), false);
    }
    if (name == "CnSdg") {
        want(1);
        return cns(qubit_count(1, 1), true);
    }
    if (name == "W") {
        want(1);
        size_t n = qubit_count(1, 2);
        return diagonal_phase_state(n, 2, [](uint64_t x) {
            int w = std::popcount(x);
            return (int64_t)(w + (w & 1));
        });
    }
    if (name == "QFT") {
        want(2);
        int64_t a = param(1);
        size_t n = qubit_count(2, 1);
        if ((int64_t)n - 1 > MAX_LEVEL) {
            throw std::invalid_argument("QFT qubit count exceeds the cyclotomic level cap");
        }
        return diagonal_phase_state(n, (int)n - 1, [=](uint64_t x) { return a * (int64_t)x; });
    }
    if (name == "CCZ123145") {
        want(0);
        return diagonal_phase_state(5, 0, [](uint64_t x) {
            auto b = [&](int q) { return (int64_t)((x >> (4 - q)) & 1); };
            return b(0) * b(1) * b(2) + b(0) * b(3) * b(4);
        });
    }
    if (name == "plus") {
        want(1);
        return diagonal_phase_state(qubit_count(1, 1), 0, [](uint64_t) { return 0; });
    }
    if (name == "zero") {
        want(1);
        return ExactState(qubit_count(1, 1));
    }
    if (name == "ket") {
        want(1);
        const std::string &bits = parts[1];
        if (bits.empty() || bits.size() > MAX_STATE_QUBITS) {
            throw std::invalid_argument("ket needs 1.." + std::to_string(MAX_STATE_QUBITS) + " bits");
        }
        uint64_t index = 0;
        for (char c : bits) {
            if (c != '0' && c != '1') {
                throw std::invalid_argument("ket bits must be 0 or 1: '" + bits + "'");
            }
            index = (index << 1) | (uint64_t)(c == '1');
        }
        return ExactState::basis(bits.size(), index);
    }
    throw std::invalid_argument("unknown state '" + name + "'");
}

}  // namespace

ExactState resource_state(const std::string &expr) {
    std::string text = trim(expr);
    if (text.empty()) {
        throw std::invalid_argument("empty state expression");
    }
    ExactState acc;
    bool have = false;
    for (const std::string &raw : split(text, ',')) {
        std::string term = trim(raw);
        if (term.empty()) {
            throw std::invalid_argument("empty term in state expression '" + expr + "'");
        }
        int64_t reps = 1;
        auto star = term.find('*');
        if (star != std::string::npos) {
            reps = parse_int(trim(term.substr(star + 1)), term);
            term = trim(term.substr(0, star));
            if (reps < 1) {
                throw std::invalid_argument("repetition count must be positive in '" + raw + "'");
            }
        }
        ExactState one = build_term(term);
        for (int64_t r = 0; r < reps; r++) {
            acc = have ? tensor(acc, one) : one;
            have = true;
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Pauli expectations

ExactState apply_pauli(const ExactState &s, const PauliOperator &p) {
    if (p.n != s.num_qubits()) {
        throw std::invalid_argument("Pauli/state size mismatch");
    }
    std::vector<CycNumber> out(s.size());
    for (uint64_t w = 0; w < s.size(); w++) {
        if (s.amp(w).is_zero()) {
            continue;
        }
        int ph = p.phase_exp + 2 * (std::popcount(p.z & w) & 1);
        out[w ^ p.x] = s.amp(w).times_zeta(1, ph);
    }
    return ExactState::from_amps(s.num_qubits(), std::move(out));
}

CycNumber pauli_sandwich(const ExactState &s, const PauliOperator &p) {
    if (p.n != s.num_qubits()) {
        throw std::invalid_argument("Pauli/state size mismatch");
    }
    CycNumber acc;
    for (uint64_t w = 0; w < s.size(); w++) {
        const CycNumber &a = s.amp(w);
        const CycNumber &b = s.amp(w ^ p.x);
        if (a.is_zero() || b.is_zero()) {
            continue;
        }
        int ph = 2 * (std::popcount(p.z & w) & 1);
        acc += (b.conj() * a).times_zeta(1, ph);
    }
    return acc.times_zeta(1, p.phase_exp);
}

namespace {

/// Returns e with norm == 2^e, or throws.
int64_t power_of_two_exponent(const CycNumber &norm) {
    if (!norm.is_rational()) {
        throw std::domain_error("state norm is not rational");
    }
    Dyadic d = norm.to_dyadic();
    if (d.num <= 0 || mpz_popcount(d.num.get_mpz_t()) != 1) {
        throw std::domain_error("state norm " + d.str() + " is not a power of two; use pauli_sandwich");
    }
    return (int64_t)mpz_scan1(d.num.get_mpz_t(), 0) - d.exp;
}

}  // namespace

CycNumber pauli_expectation(const ExactState &s, const PauliOperator &p) {
    if (!p.is_hermitian()) {
        throw std::invalid_argument("pauli_expectation needs a Hermitian Pauli, got " + p.str());
    }
    int64_t e = power_of_two_exponent(s.norm_sq());
    return pauli_sandwich(s, p).scaled(-e);
}

// ---------------------------------------------------------------------------
// Spectra

uint64_t SpectrumReport::total() const {
    uint64_t t = 0;
    for (const auto &e : entries) {
        t += e.multiplicity;
    }
    return t;
}

namespace {

void finish_report(SpectrumReport &r, const CycNumber &norm_sq) {
    // Express values relative to the norm when it is a power of two.
    int64_t e = 0;
    bool dyadic_norm = true;
    try {
        e = power_of_two_exponent(norm_sq);
    } catch (const std::domain_error &) {
        dyadic_norm = false;
    }
    Valuation vn = v2(norm_sq);
    Dyadic best(0);
    for (auto &entry : r.entries) {
        Valuation v = v2(entry.value);
        if (!v.infinite) {
            Dyadic m = -(v.value - vn.value);
            if (m > best) {
                best = m;
            }
        }
        if (dyadic_norm) {
            entry.value = entry.value.scaled(-e);
        }
        entry.approx = std::abs(entry.value.to_complex().real());
    }
    r.mu2 = best;
    std::sort(r.entries.begin(), r.entries.end(), [](const SpectrumEntry &a, const SpectrumEntry &b) {
        if (a.approx != b.approx) {
            return a.approx > b.approx;
        }
        return a.value.str() < b.value.str();
    });
    uint64_t count = r.unit_count;
    if (count == 0 || (count & (count - 1)) != 0) {
        throw std::logic_error("stabilizer count " + std::to_string(count) + " is not a power of two");
    }
    r.nullity = r.n - (size_t)std::countr_zero(count);
    std::sort(r.stabilizers.begin(), r.stabilizers.end());
}

CycNumber absolute(const CycNumber &x) {
    return x.to_complex().real() < 0 ? -x : x;
}

}  // namespace

SpectrumReport pauli_spectrum(const ExactState &s, size_t cap) {
    if (s.num_qubits() == 0 || s.num_qubits() > cap) {
        throw std::out_of_range("spectrum needs 1.." + std::to_string(cap) + " qubits, got " +
                                std::to_string(s.num_qubits()));
    }
    if (s.norm_sq().is_zero()) {
        throw std::invalid_argument("spectrum of the zero vector");
    }
    kernel::SpectrumTally tally = kernel::spectrum_parallel(s);
    SpectrumReport r;
    r.n = s.num_qubits();
    r.unit_count = tally.unit_count;
    r.stabilizers = std::move(tally.stabilizers);
    for (auto &[value, mult] : tally.values) {
        r.entries.push_back({absolute(value), mult, 0});
    }
    finish_report(r, s.norm_sq());
    return r;
}

SpectrumReport pauli_spectrum_reference(const ExactState &s, size_t cap) {
    size_t n = s.num_qubits();
    if (n == 0 || n > cap) {
        throw std::out_of_range("spectrum qubit count out of range");
    }
    const CycNumber &nrm = s.norm_sq();
    SpectrumReport r;
    r.n = n;
    std::vector<std::pair<CycNumber, uint64_t>> values;
    for (uint64_t x = 0; x < (uint64_t{1} << n); x++) {
        for (uint64_t z = 0; z < (uint64_t{1} << n); z++) {
            PauliOperator p = PauliOperator::hermitian(n, x, z);
            CycNumber e = absolute(pauli_sandwich(s, p));
            CycNumber signed_e = pauli_sandwich(s, p);
            if (signed_e == nrm) {
                r.stabilizers.push_back(p);
                r.unit_count++;
            } else if (signed_e == -nrm) {
                r.stabilizers.push_back(-p);
                r.unit_count++;
            }
            auto it = std::find_if(values.begin(), values.end(), [&](const auto &v) { return v.first == e; });
            if (it == values.end()) {
                values.push_back({e, 1});
            } else {
                it->second++;
            }
        }
    }
    for (auto &[v, m] : values) {
        r.entries.push_back({v, m, 0});
    }
    finish_report(r, nrm);
    return r;
}

size_t stabilizer_nullity(const ExactState &s) {
    return pauli_spectrum(s).nullity;
}

std::vector<PauliOperator> independent_generators(const std::vector<PauliOperator> &elements) {
    std::vector<PauliOperator> gens;
    std::vector<std::pair<uint64_t, uint64_t>> basis;  // reduced vector, pivot bit
    for (const auto &p : elements) {
        if (p.is_identity_up_to_phase()) {
            continue;
        }
        uint64_t v = (p.x << p.n) | p.z;
        for (const auto &[b, pivot] : basis) {
            if (v & pivot) {
                v ^= b;
            }
        }
        if (v == 0) {
            continue;
        }
        uint64_t pivot = uint64_t{1} << (63 - std::countl_zero(v));
        for (auto &[b, pv] : basis) {
            if (b & pivot) {
                b ^= v;
            }
        }
        basis.push_back({v, pivot});
        gens.push_back(p);
    }
    return gens;
}

std::vector<PauliOperator> stabilizer_group(const ExactState &s) {
    SpectrumReport r = pauli_spectrum(s);
    std::vector<PauliOperator> gens = independent_generators(r.stabilizers);
    if (gens.size() != r.n - r.nullity) {
        throw std::logic_error("stabilizer generators inconsistent with nullity");
    }
    return gens;
}

Dyadic dyadic_monotone(const ExactState &s) {
    return pauli_spectrum(s).mu2;
}

int ring_level(const ExactState &s) {
    const CycNumber *ref = nullptr;
    for (const auto &a : s.amps()) {
        if (!a.is_zero()) {
            ref = &a;
            break;
        }
    }
    if (ref == nullptr) {
        throw std::invalid_argument("ring level of the zero vector");
    }
    CycNumber rc = ref->conj();
    int d = 1;
    for (const auto &a : s.amps()) {
        if (!a.is_zero()) {
            d = std::max(d, (a * rc).level());
        }
    }
    return d;
}

CycNumber inner(const ExactState &a, const ExactState &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("inner product size mismatch");
    }
    CycNumber acc;
    for (size_t i = 0; i < a.size(); i++) {
        if (!a.amp(i).is_zero() && !b.amp(i).is_zero()) {
            acc += a.amp(i).conj() * b.amp(i);
        }
    }
    return acc;
}

bool equal_up_to_phase(const ExactState &a, const ExactState &b) {
    if (a.num_qubits() != b.num_qubits()) {
        return false;
    }
    if (a.norm_sq().is_zero() || b.norm_sq().is_zero()) {
        return a.norm_sq().is_zero() && b.norm_sq().is_zero();
    }
    CycNumber ov = inner(a, b);
    return ov.abs2() == a.norm_sq() * b.norm_sq();
}

std::ostream &operator<<(std::ostream &out, const ExactState &s) {
    return out << s.str();
}

}  // namespace mb
