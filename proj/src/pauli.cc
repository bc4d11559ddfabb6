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

#include "magicbound/pauli.h"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace mb {

namespace {

void check_size(size_t n) {
    if (n == 0 || n > MAX_PAULI_QUBITS) {
        throw std::out_of_range("qubit count " + std::to_string(n) + " outside [1, " +
                                std::to_string(MAX_PAULI_QUBITS) + "]");
    }
}

void check_same(const PauliOperator &p, const PauliOperator &q) {
    if (p.n != q.n) {
        throw std::invalid_argument("Pauli size mismatch: " + std::to_string(p.n) + " vs " + std::to_string(q.n));
    }
}

uint64_t full_mask(size_t n) {
    return n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
}

}  // namespace

PauliOperator::PauliOperator(size_t num_qubits) : n(num_qubits) {
    check_size(n);
}

PauliOperator::PauliOperator(size_t num_qubits, uint64_t x_mask, uint64_t z_mask, int phase)
    : n(num_qubits), x(x_mask), z(z_mask), phase_exp((uint8_t)(((phase % 4) + 4) % 4)) {
    check_size(n);
    if ((x | z) & ~full_mask(n)) {
        throw std::invalid_argument("Pauli mask has bits beyond the qubit count");
    }
}

PauliOperator PauliOperator::from_str(const std::string &text) {
    size_t pos = 0;
    int phase = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') {
            phase += 2;
        }
        pos++;
    }
    if (pos < text.size() && text[pos] == 'i') {
        phase += 1;
        pos++;
    }
    size_t n = text.size() - pos;
    if (n == 0) {
        throw std::invalid_argument("empty Pauli literal: '" + text + "'");
    }
    check_size(n);
    PauliOperator p(n);
    for (size_t q = 0; q < n; q++) {
        char c = text[pos + q];
        uint64_t b = p.bit(q);
        switch (c) {
            case 'I':
            case '_':
                break;
            case 'X':
                p.x |= b;
                break;
            case 'Z':
                p.z |= b;
                break;
            case 'Y':
                p.x |= b;
                p.z |= b;
                phase += 1;
                break;
            default:
                throw std::invalid_argument("bad Pauli letter '" + std::string(1, c) + "' at position " +
                                            std::to_string(pos + q) + " in '" + text + "'");
        }
    }
    p.phase_exp = (uint8_t)(phase % 4);
    return p;
}

PauliOperator PauliOperator::single(size_t num_qubits, size_t q, char letter) {
    if (q >= num_qubits) {
        throw std::out_of_range("qubit index out of range");
    }
    std::string s(num_qubits, 'I');
    s[q] = letter;
    return from_str(s);
}

PauliOperator PauliOperator::hermitian(size_t num_qubits, uint64_t x_mask, uint64_t z_mask, int sign) {
    int phase = std::popcount(x_mask & z_mask) + (sign < 0 ? 2 : 0);
    return PauliOperator(num_qubits, x_mask, z_mask, phase);
}

char PauliOperator::letter(size_t q) const {
    bool a = x_at(q);
    bool b = z_at(q);
    return a ? (b ? 'Y' : 'X') : (b ? 'Z' : 'I');
}

size_t PauliOperator::weight() const {
    return std::popcount(x | z);
}

bool PauliOperator::is_hermitian() const {
    return (phase_exp + std::popcount(x & z)) % 2 == 0;
}

int PauliOperator::letter_phase() const {
    return (int)((phase_exp + 4 * 16 - std::popcount(x & z)) % 4);
}

int PauliOperator::sign() const {
    if (!is_hermitian()) {
        throw std::domain_error("sign of a non-Hermitian Pauli");
    }
    return letter_phase() == 0 ? 1 : -1;
}

std::string PauliOperator::str() const {
    static const char *prefixes[4] = {"+", "+i", "-", "-i"};
    std::string out = prefixes[letter_phase()];
    for (size_t q = 0; q < n; q++) {
        out += letter(q);
    }
    return out;
}

PauliOperator PauliOperator::operator*(const PauliOperator &other) const {
    check_same(*this, other);
    PauliOperator r(n);
    r.x = x ^ other.x;
    r.z = z ^ other.z;
    r.phase_exp = (uint8_t)((phase_exp + other.phase_exp + 2 * std::popcount(z & other.x)) % 4);
    return r;
}

PauliOperator PauliOperator::operator-() const {
    PauliOperator r = *this;
    r.phase_exp = (uint8_t)((phase_exp + 2) % 4);
    return r;
}

bool PauliOperator::operator==(const PauliOperator &other) const {
    return n == other.n && x == other.x && z == other.z && phase_exp == other.phase_exp;
}

bool PauliOperator::operator!=(const PauliOperator &other) const {
    return !(*this == other);
}

bool PauliOperator::operator<(const PauliOperator &other) const {
    if (n != other.n) {
        return n < other.n;
    }
    if (x != other.x) {
        return x < other.x;
    }
    if (z != other.z) {
        return z < other.z;
    }
    return phase_exp < other.phase_exp;
}

PauliOperator multiply(const PauliOperator &p, const PauliOperator &q) {
    return p * q;
}

bool commutes(const PauliOperator &p, const PauliOperator &q) {
    check_same(p, q);
    return (std::popcount(p.x & q.z) + std::popcount(q.x & p.z)) % 2 == 0;
}

// ---------------------------------------------------------------------------
// CliffordTableau

CliffordTableau::CliffordTableau(size_t n) : n_(n) {
    check_size(n);
    for (size_t q = 0; q < n; q++) {
        xs_.push_back(PauliOperator::single(n, q, 'X'));
        zs_.push_back(PauliOperator::single(n, q, 'Z'));
    }
}

bool is_clifford_gate_name(const std::string &name) {
    return name == "H" || name == "S" || name == "SDG" || name == "X" || name == "Y" || name == "Z" ||
           name == "CX" || name == "CZ" || name == "SWAP";
}

size_t clifford_gate_arity(const std::string &name) {
    if (name == "CX" || name == "CZ" || name == "SWAP") {
        return 2;
    }
    if (is_clifford_gate_name(name)) {
        return 1;
    }
    throw std::invalid_argument("unknown Clifford gate '" + name + "'");
}

CliffordTableau CliffordTableau::for_gate(const std::string &name, const std::vector<size_t> &qubits, size_t n) {
    size_t arity = clifford_gate_arity(name);
    if (qubits.size() != arity) {
        throw std::invalid_argument("gate " + name + " takes " + std::to_string(arity) + " qubits");
    }
    for (size_t q : qubits) {
        if (q >= n) {
            throw std::out_of_range("gate " + name + " qubit " + std::to_string(q) + " out of range for n=" +
                                    std::to_string(n));
        }
    }
    if (arity == 2 && qubits[0] == qubits[1]) {
        throw std::invalid_argument("gate " + name + " needs distinct qubits");
    }
    CliffordTableau t(n);
    auto P = [&](size_t q, char c) { return PauliOperator::single(n, q, c); };
    size_t a = qubits[0];
    if (name == "H") {
        t.xs_[a] = P(a, 'Z');
        t.zs_[a] = P(a, 'X');
    } else if (name == "S") {
        t.xs_[a] = P(a, 'Y');
    } else if (name == "SDG") {
        t.xs_[a] = -P(a, 'Y');
    } else if (name == "X") {
        t.zs_[a] = -P(a, 'Z');
    } else if (name == "Y") {
        t.xs_[a] = -P(a, 'X');
        t.zs_[a] = -P(a, 'Z');
    } else if (name == "Z") {
        t.xs_[a] = -P(a, 'X');
    } else {
        size_t b = qubits[1];
        if (name == "CX") {
            t.xs_[a] = P(a, 'X') * P(b, 'X');
            t.zs_[b] = P(a, 'Z') * P(b, 'Z');
        } else if (name == "CZ") {
            t.xs_[a] = P(a, 'X') * P(b, 'Z');
            t.xs_[b] = P(a, 'Z') * P(b, 'X');
        } else {
            std::swap(t.xs_[a], t.xs_[b]);
            std::swap(t.zs_[a], t.zs_[b]);
        }
    }
    return t;
}

CliffordTableau CliffordTableau::pauli_rotation(const PauliOperator &r) {
    if (r.is_hermitian()) {
        throw std::invalid_argument("rotation generator must be anti-Hermitian");
    }
    CliffordTableau t(r.n);
    for (size_t q = 0; q < r.n; q++) {
        if (!commutes(r, t.xs_[q])) {
            t.xs_[q] = r * t.xs_[q];
        }
        if (!commutes(r, t.zs_[q])) {
            t.zs_[q] = r * t.zs_[q];
        }
    }
    return t;
}

void CliffordTableau::set_images(size_t q, PauliOperator x_img, PauliOperator z_img) {
    xs_.at(q) = std::move(x_img);
    zs_.at(q) = std::move(z_img);
}

PauliOperator CliffordTableau::conjugate(const PauliOperator &p) const {
    if (p.n != n_) {
        throw std::invalid_argument("tableau/Pauli size mismatch");
    }
    PauliOperator out(n_, 0, 0, p.phase_exp);
    for (size_t q = 0; q < n_; q++) {
        if (p.x_at(q)) {
            out = out * xs_[q];
        }
    }
    for (size_t q = 0; q < n_; q++) {
        if (p.z_at(q)) {
            out = out * zs_[q];
        }
    }
    return out;
}

CliffordTableau CliffordTableau::then(const CliffordTableau &next) const {
    return compose(next, *this);
}

CliffordTableau CliffordTableau::inverse() const {
    // Express each X_q, Z_q as a product of images, tracking which images were used.
    struct Row {
        uint64_t vec;
        uint64_t comb;
    };
    auto encode = [&](const PauliOperator &p) { return (p.x << n_) | p.z; };
    std::vector<Row> basis;
    for (size_t j = 0; j < 2 * n_; j++) {
        const PauliOperator &img = j < n_ ? xs_[j] : zs_[j - n_];
        Row r{encode(img), uint64_t{1} << j};
        for (const auto &b : basis) {
            if (r.vec & (uint64_t{1} << (63 - std::countl_zero(b.vec)))) {
                r.vec ^= b.vec;
                r.comb ^= b.comb;
            }
        }
        if (r.vec == 0) {
            throw std::domain_error("tableau images are not independent");
        }
        // Keep the basis fully reduced so a single pass suffices.
        uint64_t pivot = uint64_t{1} << (63 - std::countl_zero(r.vec));
        for (auto &b : basis) {
            if (b.vec & pivot) {
                b.vec ^= r.vec;
                b.comb ^= r.comb;
            }
        }
        basis.push_back(r);
    }
    auto solve = [&](const PauliOperator &target) {
        uint64_t v = encode(target);
        uint64_t comb = 0;
        for (const auto &b : basis) {
            if (v & (uint64_t{1} << (63 - std::countl_zero(b.vec)))) {
                v ^= b.vec;
                comb ^= b.comb;
            }
        }
        // Bits 0..n-1 of comb select X images; bits n..2n-1 select Z images.
        // Convert to masks in qubit-bit convention.
        uint64_t xm = 0, zm = 0;
        for (size_t q = 0; q < n_; q++) {
            if (comb & (uint64_t{1} << q)) {
                xm |= uint64_t{1} << (n_ - 1 - q);
            }
            if (comb & (uint64_t{1} << (n_ + q))) {
                zm |= uint64_t{1} << (n_ - 1 - q);
            }
        }
        PauliOperator pre(n_, xm, zm, 0);
        PauliOperator img = conjugate(pre);
        pre.phase_exp = (uint8_t)((target.phase_exp + 4 - img.phase_exp) % 4);
        return pre;
    };
    CliffordTableau inv(n_);
    for (size_t q = 0; q < n_; q++) {
        inv.xs_[q] = solve(PauliOperator::single(n_, q, 'X'));
        inv.zs_[q] = solve(PauliOperator::single(n_, q, 'Z'));
    }
    return inv;
}

bool CliffordTableau::is_identity() const {
    return *this == CliffordTableau(n_);
}

bool CliffordTableau::preserves_commutation() const {
    for (size_t a = 0; a < n_; a++) {
        if (!xs_[a].is_hermitian() || !zs_[a].is_hermitian()) {
            return false;
        }
        for (size_t b = 0; b < n_; b++) {
            bool same = a == b;
            if (commutes(xs_[a], zs_[b]) == same) {
                return false;
            }
            if (!commutes(xs_[a], xs_[b]) || !commutes(zs_[a], zs_[b])) {
                return false;
            }
        }
    }
    return true;
}

bool CliffordTableau::operator==(const CliffordTableau &other) const {
    return n_ == other.n_ && xs_ == other.xs_ && zs_ == other.zs_;
}

std::string CliffordTableau::str() const {
    std::ostringstream out;
    for (size_t q = 0; q < n_; q++) {
        out << "X" << q << " -> " << xs_[q].str() << "\n";
        out << "Z" << q << " -> " << zs_[q].str() << "\n";
    }
    return out.str();
}

CliffordTableau compose(const CliffordTableau &c2, const CliffordTableau &c1) {
    size_t n = c1.num_qubits();
    if (c2.num_qubits() != n) {
        throw std::invalid_argument("tableau size mismatch");
    }
    CliffordTableau out(n);
    for (size_t q = 0; q < n; q++) {
        out.set_images(q, c2.conjugate(c1.x_image(q)), c2.conjugate(c1.z_image(q)));
    }
    return out;
}

PauliOperator conjugate(const CliffordTableau &c, const PauliOperator &p) {
    return c.conjugate(p);
}

CliffordTableau tableau_for_gate(const std::string &name, const std::vector<size_t> &qubits, size_t n) {
    return CliffordTableau::for_gate(name, qubits, n);
}

std::ostream &operator<<(std::ostream &out, const PauliOperator &p) {
    return out << p.str();
}

std::ostream &operator<<(std::ostream &out, const CliffordTableau &c) {
    return out << c.str();
}

}  // namespace mb
