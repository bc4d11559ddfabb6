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

#include "magicbound/phasepoly.h"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mb {

namespace {

int mod8(int64_t a) {
    return (int)(((a % 8) + 8) % 8);
}

void check_width(size_t n) {
    if (n == 0 || n > MAX_PHASEPOLY_QUBITS) {
        throw std::out_of_range("phase polynomials need 1.." + std::to_string(MAX_PHASEPOLY_QUBITS) + " qubits");
    }
}

bool bit_of(uint64_t lambda, size_t n, size_t q) {
    return (lambda >> (n - 1 - q)) & 1;
}

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

PhasePolynomial &PhasePolynomial::add(int coeff, uint64_t lambda) {
    check_width(n);
    if (lambda == 0 || (lambda >> n) != 0) {
        throw std::invalid_argument("functional must be a nonzero " + std::to_string(n) + "-bit vector");
    }
    terms.push_back({mod8(coeff), lambda});
    return *this;
}

PhasePolynomial &PhasePolynomial::add(int coeff, const std::string &bits) {
    if (bits.size() != n) {
        throw std::invalid_argument("functional '" + bits + "' does not have " + std::to_string(n) + " bits");
    }
    uint64_t lambda = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("functional bits must be 0 or 1: '" + bits + "'");
        }
        lambda = (lambda << 1) | (uint64_t)(c == '1');
    }
    return add(coeff, lambda);
}

int PhasePolynomial::evaluate(uint64_t x) const {
    int64_t f = 0;
    for (const auto &t : terms) {
        f += t.coeff * (std::popcount(t.lambda & x) & 1);
    }
    return mod8(f);
}

std::string PhasePolynomial::str() const {
    std::stringstream out;
    for (const auto &t : terms) {
        out << t.coeff << " : ";
        for (size_t q = 0; q < n; q++) {
            out << (bit_of(t.lambda, n, q) ? '1' : '0');
        }
        out << "\n";
    }
    return out.str();
}

PhasePolynomial PhasePolynomial::parse(const std::string &text) {
    PhasePolynomial pp;
    std::stringstream in(text);
    std::string line;
    size_t line_no = 0;
    bool have_width = false;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 'a : bits'");
        }
        std::string a = trim(line.substr(0, colon));
        std::string bits = trim(line.substr(colon + 1));
        int coeff;
        try {
            size_t used;
            coeff = std::stoi(a, &used);
            if (used != a.size()) {
                throw std::invalid_argument(a);
            }
        } catch (const std::exception &) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": bad coefficient '" + a + "'");
        }
        if (!have_width) {
            pp.n = bits.size();
            check_width(pp.n);
            have_width = true;
        }
        try {
            pp.add(coeff, bits);
        } catch (const std::exception &e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_width) {
        throw std::invalid_argument("empty phase polynomial (width unknown)");
    }
    return pp;
}

PhasePolynomial PhasePolynomial::w(size_t n) {
    PhasePolynomial pp(n);
    for (size_t q = 0; q < n; q++) {
        pp.add(1, uint64_t{1} << (n - 1 - q));
    }
    pp.add(1, (uint64_t{1} << n) - 1);
    return pp;
}

PhasePolynomial PhasePolynomial::t_layer(size_t n) {
    PhasePolynomial pp(n);
    for (size_t q = 0; q < n; q++) {
        pp.add(1, uint64_t{1} << (n - 1 - q));
    }
    return pp;
}

PhasePolynomial canonicalize(const PhasePolynomial &pp) {
    std::map<uint64_t, int> merged;
    for (const auto &t : pp.terms) {
        merged[t.lambda] = mod8(merged[t.lambda] + t.coeff);
    }
    PhasePolynomial out(pp.n);
    for (const auto &[lambda, a] : merged) {
        if (a != 0) {
            out.terms.push_back({a, lambda});
        }
    }
    return out;
}

std::vector<CycNumber> to_diagonal_unitary(const PhasePolynomial &pp) {
    check_width(pp.n);
    std::vector<CycNumber> diag(uint64_t{1} << pp.n);
    for (uint64_t x = 0; x < diag.size(); x++) {
        diag[x] = CycNumber::zeta(2, pp.evaluate(x));
    }
    return diag;
}

ExactState phase_state(const PhasePolynomial &pp) {
    check_width(pp.n);
    return diagonal_phase_state(pp.n, 2, [&](uint64_t x) { return (int64_t)pp.evaluate(x); });
}

std::pair<PhasePolynomial, PhasePolynomial> clifford_split(const PhasePolynomial &pp) {
    PhasePolynomial g(pp.n), h(pp.n);
    for (const auto &t : canonicalize(pp).terms) {
        if (t.coeff & 1) {
            g.terms.push_back({1, t.lambda});
        }
        if (t.coeff >> 1) {
            h.terms.push_back({t.coeff >> 1, t.lambda});
        }
    }
    return {g, h};
}

PhasePolynomial doubled(const PhasePolynomial &pp) {
    PhasePolynomial out(pp.n);
    for (const auto &t : pp.terms) {
        if (mod8(2 * t.coeff)) {
            out.terms.push_back({mod8(2 * t.coeff), t.lambda});
        }
    }
    return out;
}

PhasePolynomial sum(const PhasePolynomial &a, const PhasePolynomial &b) {
    if (a.n != b.n) {
        throw std::invalid_argument("phase polynomial width mismatch");
    }
    PhasePolynomial out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return canonicalize(out);
}

size_t tau_upper(const PhasePolynomial &pp) {
    return clifford_split(pp).first.terms.size();
}

size_t odd_rank(const PhasePolynomial &pp) {
    // Column rank equals row rank.
    std::vector<uint64_t> basis;
    for (const auto &t : clifford_split(pp).first.terms) {
        uint64_t v = t.lambda;
        for (uint64_t b : basis) {
            v = std::min(v, v ^ b);
        }
        if (v) {
            basis.push_back(v);
            std::sort(basis.rbegin(), basis.rend());
        }
    }
    return basis.size();
}

bool even_row_weight(const PhasePolynomial &pp) {
    auto g = clifford_split(pp).first;
    for (size_t q = 0; q < pp.n; q++) {
        size_t w = 0;
        for (const auto &t : g.terms) {
            w += bit_of(t.lambda, pp.n, q);
        }
        if (w & 1) {
            return false;
        }
    }
    return true;
}

void append_phase_term(CircuitIR &c, size_t n, int coeff, uint64_t lambda, const std::string &label) {
    coeff = mod8(coeff);
    if (coeff == 0) {
        return;
    }
    std::vector<size_t> support;
    for (size_t q = 0; q < n; q++) {
        if (bit_of(lambda, n, q)) {
            support.push_back(q);
        }
    }
    if (support.empty()) {
        throw std::invalid_argument("empty functional");
    }
    size_t pivot = support[0];
    for (size_t i = 1; i < support.size(); i++) {
        c.gate("CX", {support[i], pivot});
    }
    int b = coeff >> 1;
    if (coeff & 1) {
        size_t anc = c.final_width();
        c.inject("T");
        c.gate("CX", {pivot, anc});
        c.measure("Z", {anc}, MeasureMode::BRANCH, label);
        c.gate("S", {pivot}).when({label}, 1);
        c.discard(anc);
    }
    static const char *S_POWER[4] = {nullptr, "S", "Z", "SDG"};
    if (b) {
        c.gate(S_POWER[b], {pivot});
    }
    for (size_t i = support.size(); i-- > 1;) {
        c.gate("CX", {support[i], pivot});
    }
}

CatalyticReport catalytic_conversion(const PhasePolynomial &pp) {
    check_width(pp.n);
    size_t n = pp.n;
    auto [g, h] = clifford_split(pp);
    CatalyticReport rep;
    rep.n = n;
    rep.tau = g.terms.size();
    rep.rank = odd_rank(pp);
    rep.nullity = stabilizer_nullity(phase_state(pp));
    if (rep.rank < rep.nullity) {
        throw std::logic_error("odd-part rank below the stabilizer nullity");
    }
    rep.catalyst = (int64_t)rep.tau - (int64_t)rep.nullity;
    rep.produced = 2 * (int64_t)rep.nullity - (int64_t)rep.tau;

    CircuitIR c(n);
    // Strip the Clifford part U_{2h}.
    for (const auto &t : h.terms) {
        append_phase_term(c, n, -2 * t.coeff, t.lambda, "");
    }
    // Row-reduce the odd part with CNOTs and SWAPs. Row i += row j is CX(i -> j).
    std::vector<uint64_t> cols;
    for (const auto &t : g.terms) {
        cols.push_back(t.lambda);
    }
    auto row_bit = [&](uint64_t col, size_t row) { return bit_of(col, n, row); };
    auto flip = [&](uint64_t &col, size_t row) { col ^= uint64_t{1} << (n - 1 - row); };
    std::vector<char> pivot_col(cols.size(), 0);
    size_t r = 0;
    for (size_t k = 0; k < cols.size() && r < n; k++) {
        size_t p = r;
        while (p < n && !row_bit(cols[k], p)) {
            p++;
        }
        if (p == n) {
            continue;
        }
        if (p != r) {
            c.gate("SWAP", {p, r});
            for (auto &col : cols) {
                bool a = row_bit(col, p), b = row_bit(col, r);
                if (a != b) {
                    flip(col, p);
                    flip(col, r);
                }
            }
        }
        for (size_t i = 0; i < n; i++) {
            if (i != r && row_bit(cols[k], i)) {
                c.gate("CX", {i, r});
                for (auto &col : cols) {
                    if (row_bit(col, r)) {
                        flip(col, i);
                    }
                }
            }
        }
        pivot_col[k] = 1;
        r++;
    }
    if (r != rep.rank) {
        throw std::logic_error("row reduction rank mismatch");
    }
    // Undo each non-pivot column with an inverse T on its functional.
    size_t used = 0;
    for (size_t k = 0; k < cols.size(); k++) {
        if (!pivot_col[k]) {
            append_phase_term(c, n, 7, cols[k], "t" + std::to_string(++used));
        }
    }
    rep.circuit = c;
    rep.circuit_t_consumed = used;
    rep.circuit_t_output = r;
    std::string target;
    if (r > 0) {
        target = "T*" + std::to_string(r);
    }
    if (r < n) {
        target += (target.empty() ? "" : ",") + std::string("plus:") + std::to_string(n - r);
    }
    rep.target = resource_state(target);
    return rep;
}

}  // namespace mb
