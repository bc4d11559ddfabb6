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

#include "magicbound/canonical.h"

#include <stdexcept>

namespace mb {

CircuitIR clifford_to_z(const std::vector<PauliOperator> &gens, size_t n) {
    CircuitIR out(n);
    std::vector<PauliOperator> g = gens;
    for (const auto &p : g) {
        if (p.n != n || !p.is_hermitian()) {
            throw std::invalid_argument("clifford_to_z needs Hermitian Paulis on " + std::to_string(n) + " qubits");
        }
    }
    if (g.size() > n) {
        throw std::invalid_argument("more generators than qubits");
    }
    auto push = [&](const std::string &name, std::vector<size_t> qs) {
        CliffordTableau t = CliffordTableau::for_gate(name, qs, n);
        for (auto &p : g) {
            p = t.conjugate(p);
        }
        out.gate(name, std::move(qs));
    };
    for (size_t i = 0; i < g.size(); i++) {
        // Earlier generators are +Z_a; later ones commute with them, so only Z parts remain below i.
        for (size_t j = i; j < g.size(); j++) {
            for (size_t a = 0; a < i; a++) {
                if (g[j].letter(a) == 'Z') {
                    g[j] = g[j] * g[a];
                } else if (g[j].letter(a) != 'I') {
                    throw std::invalid_argument("generators do not commute");
                }
            }
        }
        size_t q = i;
        while (q < n && g[i].letter(q) == 'I') {
            q++;
        }
        if (q == n) {
            throw std::invalid_argument("generators are not independent");
        }
        if (q != i) {
            push("SWAP", {i, q});
        }
        if (g[i].letter(i) == 'Z') {
            push("H", {i});
        } else if (g[i].letter(i) == 'Y') {
            push("SDG", {i});
        }
        for (size_t b = i + 1; b < n; b++) {
            char l = g[i].letter(b);
            if (l == 'Y') {
                push("SDG", {b});
                l = 'X';
            }
            if (l == 'X') {
                push("CX", {i, b});
            } else if (l == 'Z') {
                push("CZ", {i, b});
            }
        }
        push("H", {i});
        if (g[i].sign() < 0) {
            push("X", {i});
        }
    }
    return out;
}

CircuitIR rotation_circuit(const PauliOperator &r) {
    if (r.is_hermitian()) {
        throw std::invalid_argument("rotation generator must be anti-Hermitian");
    }
    // (I + iH)/sqrt(2) = W^dag exp(i pi/4 Z_0) W, and exp(i pi/4 Z) ~ SDG.
    PauliOperator h = r * PauliOperator(r.n, 0, 0, 3);
    CircuitIR w = clifford_to_z({h}, r.n);
    CircuitIR out(r.n);
    out.append(w);
    out.gate("SDG", {0});
    out.append(inverse_clifford(w));
    return out;
}

CircuitIR inverse_clifford(const CircuitIR &c) {
    CircuitIR out(c.num_qubits);
    for (auto it = c.instructions.rbegin(); it != c.instructions.rend(); ++it) {
        if (it->kind != InstKind::CLIFFORD) {
            throw std::invalid_argument("inverse_clifford: not a Clifford gate: " + it->str());
        }
        std::string name = it->name;
        if (name == "S") {
            name = "SDG";
        } else if (name == "SDG") {
            name = "S";
        }
        out.gate(name, it->qubits);
    }
    return out;
}

CliffordTableau tableau_of(const CircuitIR &c) {
    size_t n = c.num_qubits;
    CliffordTableau t = CliffordTableau::identity(n);
    for (const auto &inst : c.instructions) {
        if (inst.kind != InstKind::CLIFFORD) {
            throw std::invalid_argument("tableau_of: not a Clifford gate: " + inst.str());
        }
        t = t.then(CliffordTableau::for_gate(inst.name, inst.qubits, n));
    }
    return t;
}

ExactState apply_circuit(const CircuitIR &c, const ExactState &s) {
    if (s.num_qubits() != c.num_qubits) {
        throw std::invalid_argument("apply_circuit: width mismatch");
    }
    ExactState out = s;
    for (const auto &inst : c.instructions) {
        if ((inst.kind != InstKind::CLIFFORD && inst.kind != InstKind::DIAGONAL) || inst.cond) {
            throw std::invalid_argument("apply_circuit: not a unitary gate: " + inst.str());
        }
        out = apply_gate(out, inst.name, inst.qubits, inst.j, inst.d);
    }
    return out;
}

Trivialization trivialize_stabilizer(const ExactState &s) {
    size_t n = s.num_qubits();
    std::vector<PauliOperator> gens = stabilizer_group(s);
    CircuitIR w = clifford_to_z(gens, n);
    ExactState moved = apply_circuit(w, s);
    Trivialization out;
    out.r = gens.size();
    out.clifford = inverse_clifford(w);
    size_t rest = n - out.r;
    std::vector<CycNumber> amps(uint64_t{1} << rest);
    for (uint64_t i = 0; i < amps.size(); i++) {
        amps[i] = moved.amp(i);
    }
    out.residual = ExactState::from_amps(rest, std::move(amps));
    if (out.residual.norm_sq() != s.norm_sq()) {
        throw std::logic_error("trivialization lost weight");
    }
    return out;
}

ExactState CanonicalForm::apply(const ExactState &input) const {
    if (input.num_qubits() != n_in) {
        throw std::invalid_argument("canonical form input width mismatch");
    }
    ExactState s = n_out > n_in ? tensor(input, ExactState(n_out - n_in)) : input;
    for (const auto &p : measurements) {
        s = project(s, p, +1).first;
    }
    return apply_circuit(clifford, s);
}

CircuitIR CanonicalForm::to_circuit() const {
    CircuitIR out(n_in);
    for (size_t q = n_in; q < n_out; q++) {
        out.alloc(false);
    }
    std::vector<size_t> all(n_out);
    for (size_t q = 0; q < n_out; q++) {
        all[q] = q;
    }
    for (const auto &p : measurements) {
        out.measure(p.str(), all, MeasureMode::POST_PLUS);
    }
    for (const auto &inst : clifford.instructions) {
        out.gate(inst.name, inst.qubits);
    }
    return out;
}

namespace {

size_t rank_of(const std::vector<PauliOperator> &ps) {
    return independent_generators(ps).size();
}

}  // namespace

CanonicalForm normalize_measurements(const CircuitIR &c, const ExactState &input) {
    if (input.num_qubits() != c.num_qubits) {
        throw std::invalid_argument("input has " + std::to_string(input.num_qubits()) + " qubits, circuit expects " +
                                    std::to_string(c.num_qubits));
    }
    for (const auto &inst : c.instructions) {
        bool ok = inst.kind == InstKind::CLIFFORD || inst.kind == InstKind::ALLOC ||
                  (inst.kind == InstKind::MEASURE &&
                   (inst.mode == MeasureMode::POST_PLUS || inst.mode == MeasureMode::POST_MINUS));
        if (!ok || inst.cond) {
            throw std::invalid_argument("canonical form needs Clifford gates, allocations and post-selected "
                                        "measurements only; got: " +
                                        inst.str());
        }
    }
    CanonicalForm f;
    f.n_in = c.num_qubits;
    f.n_out = c.final_width();
    size_t n = f.n_out;
    ExactState psi = n > f.n_in ? tensor(input, ExactState(n - f.n_in)) : input;
    f.nullity_in = stabilizer_nullity(psi);
    std::vector<PauliOperator> gens = stabilizer_group(psi);

    f.clifford = CircuitIR(n);
    CliffordTableau u = CliffordTableau::identity(n);
    size_t width = f.n_in;
    auto push_gate = [&](const std::string &name, const std::vector<size_t> &qs) {
        f.clifford.gate(name, qs);
        u = u.then(CliffordTableau::for_gate(name, qs, n));
    };
    for (const auto &inst : c.instructions) {
        if (inst.kind == InstKind::ALLOC) {
            if (inst.plus) {
                push_gate("H", {width});
            }
            width++;
            continue;
        }
        if (inst.kind == InstKind::CLIFFORD) {
            push_gate(inst.name, inst.qubits);
            continue;
        }
        PauliOperator p = embed_pauli(inst.pauli, inst.qubits, n);
        if (inst.mode == MeasureMode::POST_MINUS) {
            p = -p;
        }
        PauliOperator q = u.inverse().conjugate(p);
        CycNumber e = pauli_sandwich(psi, q);
        if (e == psi.norm_sq()) {
            f.dropped++;
            continue;
        }
        if (e == -psi.norm_sq()) {
            f.annihilated = true;
            break;
        }
        const PauliOperator *partner = nullptr;
        for (const auto &g : gens) {
            if (!commutes(g, q)) {
                partner = &g;
                break;
            }
        }
        if (partner) {
            // M_Q psi = (I + QR)/sqrt(2) psi / sqrt(2); the unitary runs before the current Clifford.
            CircuitIR v = rotation_circuit(q * *partner);
            CircuitIR merged(n);
            merged.append(v);
            merged.append(f.clifford);
            f.clifford = merged;
            u = tableau_of(v).then(u);
            f.converted++;
            continue;
        }
        std::vector<PauliOperator> span = gens;
        span.push_back(q);
        f.measurements.push_back(q);
        psi = project(psi, q, +1).first;
        gens = stabilizer_group(psi);
        // Projection can enlarge the stabilizer beyond <old, Q>; the extra
        // generators act trivially on the projected state.
        size_t rank = rank_of(span);
        for (const auto &g : gens) {
            span.push_back(g);
            size_t next = rank_of(span);
            if (next > rank) {
                f.measurements.push_back(g);
                rank = next;
            } else {
                span.pop_back();
            }
        }
    }
    f.tableau = u;
    f.nullity_out = f.annihilated ? 0 : stabilizer_nullity(psi);
    return f;
}

CanonicalForm canonical_form(const CircuitIR &c, const ExactState &input) {
    CanonicalForm f = normalize_measurements(c, input);
    if (f.annihilated) {
        return f;
    }
    ExactState ext = f.n_out > f.n_in ? tensor(input, ExactState(f.n_out - f.n_in)) : input;
    Trivialization t = trivialize_stabilizer(ext);
    f.r = t.r;
    f.trivializer = t.clifford;
    CliffordTableau back = tableau_of(t.clifford).inverse();
    size_t rest = f.n_out - t.r;
    uint64_t mask = rest == 64 ? ~uint64_t{0} : (uint64_t{1} << rest) - 1;
    for (const auto &p : f.measurements) {
        PauliOperator moved = back.conjugate(p);
        for (size_t q = 0; q < t.r; q++) {
            char l = moved.letter(q);
            if (l != 'I' && l != 'Z') {
                throw std::logic_error("retained measurement does not commute with the input stabilizer");
            }
        }
        f.restricted.push_back(PauliOperator::hermitian(rest, moved.x & mask, moved.z & mask, moved.sign()));
    }
    return f;
}

}  // namespace mb
