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

#include "magicbound/simulator.h"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <sstream>

namespace mb {

namespace {

const std::set<std::string> DIAGONAL_NAMES = {"T", "TDG", "RZ", "CS", "CSDG", "CCZ", "CNZ", "CNS", "CNSDG"};

/// 2^(-e/2).
CycNumber pow_inv_sqrt2(int64_t e) {
    if (e % 2 == 0) {
        return CycNumber(1).scaled(-e / 2);
    }
    return CycNumber::inv_sqrt2().scaled(-(e - 1) / 2);
}

/// The simulated vector is amps * 2^(-half_exp/2). It is never renormalized, so
/// its squared norm is the probability of the path that produced it.
struct Tracked {
    size_t n = 0;
    std::vector<CycNumber> amps;
    int64_t half_exp = 0;

    uint64_t bit(size_t q) const {
        return uint64_t{1} << (n - 1 - q);
    }

    CycNumber norm_sq() const {
        CycNumber total;
        for (const auto &a : amps) {
            if (!a.is_zero()) {
                total += a.abs2();
            }
        }
        return total.scaled(-half_exp);
    }

    static Tracked from_state(const ExactState &s) {
        return {s.num_qubits(), s.amps(), 0};
    }

    ExactState to_state(int64_t extra_half_exp = 0) const {
        CycNumber f = pow_inv_sqrt2(half_exp + extra_half_exp);
        std::vector<CycNumber> out = amps;
        for (auto &a : out) {
            if (!a.is_zero()) {
                a *= f;
            }
        }
        return ExactState::from_amps(n, std::move(out));
    }
};

void apply_clifford(Tracked &t, const std::string &name, const std::vector<size_t> &qs) {
    size_t num = t.amps.size();
    auto &amps = t.amps;
    if (name == "H") {
        uint64_t m = t.bit(qs[0]);
        for (uint64_t x = 0; x < num; x++) {
            if (x & m) {
                continue;
            }
            CycNumber &a = amps[x];
            CycNumber &b = amps[x | m];
            if (a.is_zero() && b.is_zero()) {
                continue;
            }
            CycNumber s = a + b;
            b = a - b;
            a = std::move(s);
        }
        t.half_exp += 1;
    } else if (name == "S" || name == "SDG" || name == "Z") {
        uint64_t m = t.bit(qs[0]);
        int64_t k = name == "S" ? 1 : name == "SDG" ? 3 : 2;
        for (uint64_t x = 0; x < num; x++) {
            if ((x & m) && !amps[x].is_zero()) {
                amps[x] = amps[x].times_zeta(1, k);
            }
        }
    } else if (name == "X" || name == "Y") {
        uint64_t m = t.bit(qs[0]);
        for (uint64_t x = 0; x < num; x++) {
            if (x & m) {
                continue;
            }
            std::swap(amps[x], amps[x | m]);
            if (name == "Y") {
                // Y|0> = i|1>, Y|1> = -i|0>.
                amps[x | m] = amps[x | m].times_zeta(1, 1);
                amps[x] = amps[x].times_zeta(1, 3);
            }
        }
    } else if (name == "CX") {
        uint64_t c = t.bit(qs[0]);
        uint64_t g = t.bit(qs[1]);
        for (uint64_t x = 0; x < num; x++) {
            if ((x & c) && !(x & g)) {
                std::swap(amps[x], amps[x | g]);
            }
        }
    } else if (name == "CZ") {
        uint64_t m = t.bit(qs[0]) | t.bit(qs[1]);
        for (uint64_t x = 0; x < num; x++) {
            if ((x & m) == m && !amps[x].is_zero()) {
                amps[x] = -amps[x];
            }
        }
    } else if (name == "SWAP") {
        uint64_t a = t.bit(qs[0]);
        uint64_t b = t.bit(qs[1]);
        for (uint64_t x = 0; x < num; x++) {
            if ((x & a) && !(x & b)) {
                std::swap(amps[x], amps[(x ^ a) | b]);
            }
        }
    } else {
        throw std::invalid_argument("unknown Clifford gate " + name);
    }
}

void apply_diagonal(Tracked &t, const std::string &name, const std::vector<size_t> &qs, int64_t j, int d) {
    uint64_t mask = 0;
    for (size_t q : qs) {
        mask |= t.bit(q);
    }
    int level = 0;
    int64_t power = 1;
    if (name == "T" || name == "TDG") {
        level = 2;
        power = name == "T" ? 1 : -1;
    } else if (name == "RZ") {
        level = d;
        power = j;
    } else if (name == "CS" || name == "CNS") {
        level = 1;
    } else if (name == "CSDG" || name == "CNSDG") {
        level = 1;
        power = -1;
    }
    for (uint64_t x = 0; x < t.amps.size(); x++) {
        if ((x & mask) == mask && !t.amps[x].is_zero()) {
            t.amps[x] = t.amps[x].times_zeta(level, power);
        }
    }
}

/// P|v> for an n-qubit Pauli.
std::vector<CycNumber> pauli_image(const Tracked &t, const PauliOperator &p) {
    std::vector<CycNumber> out(t.amps.size());
    for (uint64_t w = 0; w < t.amps.size(); w++) {
        if (t.amps[w].is_zero()) {
            continue;
        }
        // X^x Z^z |w> = (-1)^(z.w) |w ^ x>.
        int k = p.phase_exp + 2 * (std::popcount(p.z & w) & 1);
        out[w ^ p.x] = t.amps[w].times_zeta(1, k % 4);
    }
    return out;
}

/// (v + sign P v) / 2.
Tracked projected(const Tracked &t, const std::vector<CycNumber> &pv, int sign) {
    Tracked r{t.n, std::vector<CycNumber>(t.amps.size()), t.half_exp + 2};
    for (uint64_t w = 0; w < t.amps.size(); w++) {
        r.amps[w] = sign > 0 ? t.amps[w] + pv[w] : t.amps[w] - pv[w];
    }
    return r;
}

void do_alloc(Tracked &t, bool plus) {
    if (t.n + 1 > MAX_STATE_QUBITS) {
        throw SimulationError("qubit cap exceeded by alloc");
    }
    std::vector<CycNumber> out(t.amps.size() * 2);
    for (uint64_t x = 0; x < t.amps.size(); x++) {
        if (t.amps[x].is_zero()) {
            continue;
        }
        out[2 * x] = t.amps[x];
        if (plus) {
            out[2 * x + 1] = t.amps[x];
        }
    }
    t.amps = std::move(out);
    t.n += 1;
    if (plus) {
        t.half_exp += 1;
    }
}

void do_inject(Tracked &t, const ExactState &r) {
    if (t.n + r.num_qubits() > MAX_STATE_QUBITS) {
        throw SimulationError("qubit cap exceeded by inject");
    }
    size_t rs = r.size();
    std::vector<CycNumber> out(t.amps.size() * rs);
    for (uint64_t x = 0; x < t.amps.size(); x++) {
        if (t.amps[x].is_zero()) {
            continue;
        }
        for (uint64_t y = 0; y < rs; y++) {
            if (!r.amp(y).is_zero()) {
                out[x * rs + y] = t.amps[x] * r.amp(y);
            }
        }
    }
    t.amps = std::move(out);
    t.n += r.num_qubits();
}

void do_discard(Tracked &t, size_t q) {
    uint64_t m = t.bit(q);
    size_t half = t.amps.size() / 2;
    // Index maps: remaining bits with bit q removed.
    auto full = [&](uint64_t i, bool one) {
        uint64_t low = i & (m - 1);
        uint64_t high = (i & ~(m - 1)) << 1;
        return high | low | (one ? m : 0);
    };
    int64_t pivot = -1;
    for (uint64_t i = 0; i < half; i++) {
        if (!t.amps[full(i, false)].is_zero() || !t.amps[full(i, true)].is_zero()) {
            pivot = (int64_t)i;
            break;
        }
    }
    if (pivot < 0) {
        throw SimulationError("discard on a zero vector");
    }
    CycNumber a = t.amps[full(pivot, false)];
    CycNumber b = t.amps[full(pivot, true)];
    for (uint64_t i = 0; i < half; i++) {
        const CycNumber &r0 = t.amps[full(i, false)];
        const CycNumber &r1 = t.amps[full(i, true)];
        if (r0.is_zero() && r1.is_zero()) {
            continue;
        }
        if (b * r0 != a * r1) {
            throw SimulationError("discarded qubit " + std::to_string(q) + " is entangled with the rest");
        }
    }
    bool keep_one = a.is_zero();
    int64_t adjust = 0;
    if (!a.is_zero() && !b.is_zero()) {
        if (a.abs2() != b.abs2()) {
            throw SimulationError("discarded qubit " + std::to_string(q) +
                                  " has unequal weights on |0> and |1>; its norm cannot be removed exactly");
        }
        adjust = -1;
    }
    std::vector<CycNumber> out(half);
    for (uint64_t i = 0; i < half; i++) {
        out[i] = std::move(t.amps[full(i, keep_one)]);
    }
    t.amps = std::move(out);
    t.n -= 1;
    t.half_exp += adjust;
}

size_t diag_arity(const std::string &name) {
    if (name == "T" || name == "TDG" || name == "RZ") {
        return 1;
    }
    if (name == "CS" || name == "CSDG") {
        return 2;
    }
    if (name == "CCZ") {
        return 3;
    }
    return 0;
}

void check_qubits(const std::vector<size_t> &qs, size_t width, const std::string &what) {
    for (size_t i = 0; i < qs.size(); i++) {
        if (qs[i] >= width) {
            throw std::invalid_argument(what + ": qubit " + std::to_string(qs[i]) + " out of range (width " +
                                        std::to_string(width) + ")");
        }
        for (size_t k = 0; k < i; k++) {
            if (qs[k] == qs[i]) {
                throw std::invalid_argument(what + ": repeated qubit " + std::to_string(qs[i]));
            }
        }
    }
}

/// Checks indices, arities and condition labels. Returns the final width.
size_t validate(const CircuitIR &c) {
    size_t width = c.num_qubits;
    std::set<std::string> labels;
    for (size_t i = 0; i < c.instructions.size(); i++) {
        const Instruction &inst = c.instructions[i];
        std::string where = "instruction " + std::to_string(i) + " (" + inst.str() + ")";
        if (inst.cond) {
            for (const auto &l : inst.cond->labels) {
                if (!labels.count(l)) {
                    throw std::invalid_argument(where + ": undefined outcome label '" + l + "'");
                }
            }
        }
        switch (inst.kind) {
            case InstKind::ALLOC:
                width++;
                break;
            case InstKind::INJECT:
                width += resource_state(inst.name).num_qubits();
                break;
            case InstKind::CLIFFORD:
                if (!is_clifford_gate_name(inst.name)) {
                    throw std::invalid_argument(where + ": unknown Clifford gate");
                }
                if (inst.qubits.size() != clifford_gate_arity(inst.name)) {
                    throw std::invalid_argument(where + ": wrong number of qubits");
                }
                check_qubits(inst.qubits, width, where);
                break;
            case InstKind::DIAGONAL: {
                if (!is_diagonal_gate_name(inst.name)) {
                    throw std::invalid_argument(where + ": unknown diagonal gate");
                }
                size_t a = diag_arity(inst.name);
                if ((a && inst.qubits.size() != a) || inst.qubits.empty()) {
                    throw std::invalid_argument(where + ": wrong number of qubits");
                }
                if (inst.name == "RZ" && (inst.d < 0 || inst.d > MAX_LEVEL)) {
                    throw std::invalid_argument(where + ": RZ level out of range");
                }
                check_qubits(inst.qubits, width, where);
                break;
            }
            case InstKind::MEASURE:
                if (inst.pauli.n != inst.qubits.size() || inst.qubits.empty()) {
                    throw std::invalid_argument(where + ": Pauli length does not match the qubit list");
                }
                if (!inst.pauli.is_hermitian()) {
                    throw std::invalid_argument(where + ": measured Pauli must be Hermitian");
                }
                check_qubits(inst.qubits, width, where);
                if (!inst.label.empty()) {
                    labels.insert(inst.label);
                }
                break;
            case InstKind::DISCARD:
                check_qubits(inst.qubits, width, where);
                if (width == 0) {
                    throw std::invalid_argument(where + ": nothing to discard");
                }
                width--;
                break;
        }
        if (width > MAX_STATE_QUBITS) {
            throw std::invalid_argument(where + ": width exceeds the " + std::to_string(MAX_STATE_QUBITS) +
                                        "-qubit cap");
        }
    }
    return width;
}

struct Runner {
    const CircuitIR &c;
    const SimOptions &opt;
    std::vector<std::string> resource_names;
    std::vector<ExactState> resources;
    std::mt19937_64 rng;
    std::vector<Branch> out;

    Runner(const CircuitIR &circuit, const SimOptions &options) : c(circuit), opt(options) {
        resources.resize(c.instructions.size());
        for (size_t i = 0; i < c.instructions.size(); i++) {
            if (c.instructions[i].kind == InstKind::INJECT) {
                resources[i] = resource_state(c.instructions[i].name);
            }
        }
        rng.seed(opt.seed.value_or(0));
    }

    static bool condition_holds(const Instruction &inst, const Branch &b) {
        if (!inst.cond) {
            return true;
        }
        int v = 0;
        for (const auto &l : inst.cond->labels) {
            v ^= b.bits.at(l);
        }
        return v == (inst.cond->value & 1);
    }

    void record(Branch &b, const Instruction &inst, size_t index, int bit) {
        std::string label = inst.label.empty() ? "#" + std::to_string(index) : inst.label;
        if (!b.outcomes.empty()) {
            b.outcomes += " ";
        }
        b.outcomes += label + "=" + std::to_string(bit);
        if (!inst.label.empty()) {
            b.bits[inst.label] = bit;
        }
    }

    void run(size_t pc, Tracked t, Branch b) {
        for (; pc < c.instructions.size(); pc++) {
            const Instruction &inst = c.instructions[pc];
            if (!condition_holds(inst, b)) {
                continue;
            }
            switch (inst.kind) {
                case InstKind::ALLOC:
                    do_alloc(t, inst.plus);
                    break;
                case InstKind::INJECT:
                    do_inject(t, resources[pc]);
                    b.tally[inst.name]++;
                    break;
                case InstKind::CLIFFORD:
                    apply_clifford(t, inst.name, inst.qubits);
                    break;
                case InstKind::DIAGONAL: {
                    apply_diagonal(t, inst.name, inst.qubits, inst.j, inst.d);
                    std::string r = diagonal_gate_resource(inst);
                    if (!r.empty()) {
                        b.tally[r]++;
                    }
                    break;
                }
                case InstKind::DISCARD:
                    do_discard(t, inst.qubits[0]);
                    break;
                case InstKind::MEASURE: {
                    PauliOperator p = embed_pauli(inst.pauli, inst.qubits, t.n);
                    std::vector<CycNumber> pv = pauli_image(t, p);
                    CycNumber before = t.norm_sq();
                    Tracked plus = projected(t, pv, +1);
                    CycNumber p_plus = plus.norm_sq();
                    CycNumber p_minus = before - p_plus;
                    bool half = p_plus.scaled(1) == before;
                    auto take = [&](int bit, Tracked &&next) {
                        record(b, inst, pc, bit);
                        b.is_half = b.is_half && half;
                        t = std::move(next);
                    };
                    if (inst.mode == MeasureMode::POST_PLUS || inst.mode == MeasureMode::POST_MINUS) {
                        bool want_plus = inst.mode == MeasureMode::POST_PLUS;
                        if ((want_plus ? p_plus : p_minus).is_zero()) {
                            throw SimulationError("post-selected outcome of '" + inst.str() + "' has probability 0");
                        }
                        take(want_plus ? 0 : 1, want_plus ? std::move(plus) : projected(t, pv, -1));
                        break;
                    }
                    if (p_minus.is_zero()) {
                        take(0, std::move(plus));
                        break;
                    }
                    if (p_plus.is_zero()) {
                        take(1, projected(t, pv, -1));
                        break;
                    }
                    if (inst.mode == MeasureMode::SAMPLE) {
                        if (!opt.seed) {
                            throw SimulationError("sample-mode measurement requires a seed");
                        }
                        double pr = p_plus.to_complex().real() / before.to_complex().real();
                        bool pick_plus = std::uniform_real_distribution<double>(0, 1)(rng) < pr;
                        take(pick_plus ? 0 : 1, pick_plus ? std::move(plus) : projected(t, pv, -1));
                        break;
                    }
                    if (b.branchings + 1 > opt.tree_guard) {
                        throw SimulationError("more than " + std::to_string(opt.tree_guard) +
                                              " branching measurements on one path");
                    }
                    b.branchings++;
                    Branch b0 = b;
                    record(b0, inst, pc, 0);
                    b0.is_half = b0.is_half && half;
                    run(pc + 1, std::move(plus), std::move(b0));
                    take(1, projected(t, pv, -1));
                    break;
                }
            }
        }
        finish(std::move(t), std::move(b));
    }

    void finish(Tracked t, Branch b) {
        b.probability = t.norm_sq();
        int64_t extra = 0;
        if (b.probability.is_rational()) {
            Dyadic p = b.probability.to_dyadic();
            if (p.num == 1) {
                // Probability 2^-k: rescale by 2^(k/2) so the state is normalized.
                extra = -p.exp;
            }
        }
        b.state = t.to_state(extra);
        out.push_back(std::move(b));
    }
};

std::string join_qubits(const std::vector<size_t> &qs) {
    std::string s;
    for (size_t q : qs) {
        s += " " + std::to_string(q);
    }
    return s;
}

std::vector<std::string> tokens(const std::string &line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) {
        out.push_back(w);
    }
    return out;
}

int64_t parse_int(const std::string &s, const std::string &ctx) {
    try {
        size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument("");
        }
        return v;
    } catch (const std::exception &) {
        throw std::invalid_argument(ctx + ": expected an integer, got '" + s + "'");
    }
}

std::string upper(std::string s) {
    for (auto &ch : s) {
        ch = (char)std::toupper((unsigned char)ch);
    }
    return s;
}

}  // namespace

std::string Instruction::str() const {
    std::string s;
    if (cond) {
        s += "cond ";
        for (size_t i = 0; i < cond->labels.size(); i++) {
            s += (i ? "^" : "") + cond->labels[i];
        }
        s += "=" + std::to_string(cond->value) + " ";
    }
    switch (kind) {
        case InstKind::ALLOC:
            return s + (plus ? "alloc |+" : "alloc |0");
        case InstKind::CLIFFORD:
            return s + "gate " + name + join_qubits(qubits);
        case InstKind::DIAGONAL:
            if (name == "RZ") {
                return s + "gate RZ " + std::to_string(j) + " " + std::to_string(d) + join_qubits(qubits);
            }
            return s + "gate " + name + join_qubits(qubits);
        case InstKind::INJECT:
            return s + "inject " + name;
        case InstKind::MEASURE: {
            const char *m = mode == MeasureMode::POST_PLUS    ? "post+"
                            : mode == MeasureMode::POST_MINUS ? "post-"
                            : mode == MeasureMode::BRANCH     ? "branch"
                                                              : "sample";
            s += "measure " + pauli.str() + join_qubits(qubits) + " -> " + m;
            if (!label.empty()) {
                s += " AS " + label;
            }
            return s;
        }
        case InstKind::DISCARD:
            return s + "discard" + join_qubits(qubits);
    }
    return s;
}

CircuitIR &CircuitIR::alloc(bool plus) {
    Instruction i;
    i.kind = InstKind::ALLOC;
    i.plus = plus;
    instructions.push_back(std::move(i));
    return *this;
}

CircuitIR &CircuitIR::gate(const std::string &name, std::vector<size_t> qubits) {
    Instruction i;
    i.name = upper(name);
    if (i.name == "CNOT") {
        i.name = "CX";
    }
    i.kind = is_diagonal_gate_name(i.name) ? InstKind::DIAGONAL : InstKind::CLIFFORD;
    i.qubits = std::move(qubits);
    instructions.push_back(std::move(i));
    return *this;
}

CircuitIR &CircuitIR::rz(int64_t j, int d, size_t q) {
    Instruction i;
    i.kind = InstKind::DIAGONAL;
    i.name = "RZ";
    i.j = j;
    i.d = d;
    i.qubits = {q};
    instructions.push_back(std::move(i));
    return *this;
}

CircuitIR &CircuitIR::inject(const std::string &expr) {
    Instruction i;
    i.kind = InstKind::INJECT;
    i.name = expr;
    instructions.push_back(std::move(i));
    return *this;
}

CircuitIR &CircuitIR::measure(const std::string &pauli, std::vector<size_t> qubits, MeasureMode mode,
                              const std::string &label) {
    Instruction i;
    i.kind = InstKind::MEASURE;
    i.pauli = PauliOperator::from_str(pauli);
    i.qubits = std::move(qubits);
    i.mode = mode;
    i.label = label;
    instructions.push_back(std::move(i));
    return *this;
}

CircuitIR &CircuitIR::discard(size_t q) {
    Instruction i;
    i.kind = InstKind::DISCARD;
    i.qubits = {q};
    instructions.push_back(std::move(i));
    return *this;
}

CircuitIR &CircuitIR::when(std::vector<std::string> labels, int value) {
    if (instructions.empty()) {
        throw std::logic_error("when() needs a preceding instruction");
    }
    instructions.back().cond = Condition{std::move(labels), value};
    return *this;
}

CircuitIR &CircuitIR::append(const CircuitIR &other) {
    if (other.num_qubits != final_width()) {
        throw std::invalid_argument("append: width mismatch");
    }
    instructions.insert(instructions.end(), other.instructions.begin(), other.instructions.end());
    return *this;
}

size_t CircuitIR::final_width() const {
    return validate(*this);
}

bool CircuitIR::is_unitary() const {
    for (const auto &i : instructions) {
        if (i.kind != InstKind::CLIFFORD && i.kind != InstKind::DIAGONAL) {
            return false;
        }
        if (i.cond) {
            return false;
        }
    }
    return true;
}

std::string CircuitIR::str() const {
    std::string s = "qubits " + std::to_string(num_qubits) + "\n";
    for (const auto &i : instructions) {
        s += i.str() + "\n";
    }
    return s;
}

CircuitIR CircuitIR::parse(const std::string &text) {
    CircuitIR c;
    bool have_width = false;
    std::istringstream in(text);
    std::string raw;
    size_t line_no = 0;
    while (std::getline(in, raw)) {
        line_no++;
        std::string line = raw.substr(0, raw.find('#'));
        std::vector<std::string> tk = tokens(line);
        if (tk.empty()) {
            continue;
        }
        std::string ctx = "line " + std::to_string(line_no);
        auto fail = [&](const std::string &msg) { throw std::invalid_argument(ctx + ": " + msg + ": '" + raw + "'"); };
        size_t pos = 0;
        std::optional<Condition> cond;
        if (tk[0] == "cond") {
            if (tk.size() < 3) {
                fail("incomplete cond");
            }
            size_t eq = tk[1].find('=');
            if (eq == std::string::npos) {
                fail("cond needs label=value");
            }
            Condition cd;
            std::string lhs = tk[1].substr(0, eq);
            size_t start = 0;
            while (true) {
                size_t caret = lhs.find('^', start);
                cd.labels.push_back(lhs.substr(start, caret - start));
                if (caret == std::string::npos) {
                    break;
                }
                start = caret + 1;
            }
            cd.value = (int)parse_int(tk[1].substr(eq + 1), ctx);
            if (cd.value != 0 && cd.value != 1) {
                fail("cond value must be 0 or 1");
            }
            cond = cd;
            pos = 2;
        }
        const std::string &op = tk[pos];
        std::vector<std::string> args(tk.begin() + (long)pos + 1, tk.end());
        auto qubit_list = [&](size_t from, size_t to) {
            std::vector<size_t> qs;
            for (size_t i = from; i < to; i++) {
                int64_t q = parse_int(args[i], ctx);
                if (q < 0) {
                    fail("negative qubit index");
                }
                qs.push_back((size_t)q);
            }
            return qs;
        };
        if (op == "qubits") {
            if (have_width || !c.instructions.empty() || args.size() != 1 || cond) {
                fail("'qubits N' must come first, once");
            }
            int64_t n = parse_int(args[0], ctx);
            if (n < 0 || n > (int64_t)MAX_STATE_QUBITS) {
                fail("qubit count out of range");
            }
            c.num_qubits = (size_t)n;
            have_width = true;
            continue;
        }
        if (op == "alloc") {
            // "alloc |0", "alloc |+", or with a leading "+" append marker.
            if (args.empty() || args.size() > 2 || (args.size() == 2 && args[0] != "+")) {
                fail("expected 'alloc |0' or 'alloc |+'");
            }
            const std::string &k = args.back();
            if (k != "|0" && k != "|+" && k != "|0>" && k != "|+>") {
                fail("alloc takes |0 or |+");
            }
            c.alloc(k[1] == '+');
        } else if (op == "gate") {
            if (args.empty()) {
                fail("gate needs a name");
            }
            std::string name = upper(args[0]);
            if (name == "RZ") {
                if (args.size() != 4) {
                    fail("expected 'gate RZ j d q'");
                }
                int64_t d = parse_int(args[2], ctx);
                if (d < 0 || d > MAX_LEVEL) {
                    fail("RZ level out of range");
                }
                c.rz(parse_int(args[1], ctx), (int)d, qubit_list(3, 4)[0]);
            } else {
                if (!is_clifford_gate_name(name) && !is_diagonal_gate_name(name) && name != "CNOT") {
                    fail("unknown gate '" + args[0] + "'");
                }
                c.gate(name, qubit_list(1, args.size()));
            }
        } else if (op == "inject") {
            if (args.empty()) {
                fail("inject needs a state expression");
            }
            std::vector<std::string> expr_tokens = args;
            std::optional<size_t> at;
            if (args.size() >= 3 && args[args.size() - 2] == "->") {
                at = (size_t)parse_int(args.back(), ctx);
                expr_tokens.resize(args.size() - 2);
            }
            std::string expr;
            for (const auto &t : expr_tokens) {
                expr += t;
            }
            c.inject(expr);
            if (at && *at != validate(CircuitIR(c)) - resource_state(expr).num_qubits()) {
                fail("inject target must be the next free qubit");
            }
        } else if (op == "measure") {
            auto arrow = std::find(args.begin(), args.end(), "->");
            if (args.size() < 2) {
                fail("measure needs a Pauli and qubits");
            }
            size_t qend = (size_t)(arrow - args.begin());
            MeasureMode mode = MeasureMode::BRANCH;
            std::string label;
            if (arrow != args.end()) {
                if (qend + 1 >= args.size()) {
                    fail("missing measurement mode");
                }
                const std::string &m = args[qend + 1];
                if (m == "post+") {
                    mode = MeasureMode::POST_PLUS;
                } else if (m == "post-") {
                    mode = MeasureMode::POST_MINUS;
                } else if (m == "branch") {
                    mode = MeasureMode::BRANCH;
                } else if (m == "sample") {
                    mode = MeasureMode::SAMPLE;
                } else {
                    fail("unknown measurement mode '" + m + "'");
                }
                if (qend + 2 < args.size()) {
                    if (qend + 4 != args.size() || args[qend + 2] != "AS") {
                        fail("expected 'AS label'");
                    }
                    label = args[qend + 3];
                }
            }
            try {
                c.measure(args[0], qubit_list(1, qend), mode, label);
            } catch (const std::invalid_argument &e) {
                fail(e.what());
            }
        } else if (op == "discard") {
            if (args.size() != 1) {
                fail("expected 'discard q'");
            }
            c.discard(qubit_list(0, 1)[0]);
        } else {
            fail("unknown instruction '" + op + "'");
        }
        if (cond) {
            c.instructions.back().cond = cond;
        }
    }
    if (!have_width) {
        throw std::invalid_argument("circuit is missing 'qubits N'");
    }
    validate(c);
    return c;
}

bool is_diagonal_gate_name(const std::string &name) {
    return DIAGONAL_NAMES.count(name) > 0;
}

std::string diagonal_gate_resource(const Instruction &inst) {
    const std::string &name = inst.name;
    size_t m = inst.qubits.size();
    if (name == "T" || name == "TDG") {
        return "T";
    }
    if (name == "RZ") {
        int64_t modulus = int64_t{2} << inst.d;
        int64_t j = ((inst.j % modulus) + modulus) % modulus;
        int d = inst.d;
        if (j == 0) {
            return "";
        }
        while (d > 0 && j % 2 == 0) {
            j /= 2;
            d--;
        }
        if (d <= 1) {
            return "";
        }
        if (d == 2) {
            return "T";
        }
        if (d == 3) {
            return "sqrtT";
        }
        return "rot:" + std::to_string(d);
    }
    if (name == "CS" || name == "CSDG") {
        return "CS";
    }
    if (name == "CCZ") {
        return "CCZ";
    }
    if (name == "CNZ") {
        return m <= 2 ? "" : m == 3 ? "CCZ" : "CnZ:" + std::to_string(m);
    }
    if (name == "CNS" || name == "CNSDG") {
        return m <= 1 ? "" : m == 2 ? "CS" : m == 3 ? "CCS" : "CnS:" + std::to_string(m);
    }
    return "";
}

std::vector<Branch> simulate(const CircuitIR &c, const ExactState &input, const SimOptions &options) {
    validate(c);
    if (input.num_qubits() != c.num_qubits) {
        throw std::invalid_argument("input has " + std::to_string(input.num_qubits()) + " qubits; circuit declares " +
                                    std::to_string(c.num_qubits));
    }
    if (!input.is_normalized()) {
        throw std::invalid_argument("input state must be normalized");
    }
    Runner r(c, options);
    r.run(0, Tracked::from_state(input), Branch{});
    return std::move(r.out);
}

std::vector<Branch> simulate(const CircuitIR &c, const SimOptions &options) {
    return simulate(c, ExactState(c.num_qubits), options);
}

PauliOperator embed_pauli(const PauliOperator &p, const std::vector<size_t> &qubits, size_t n) {
    if (p.n != qubits.size()) {
        throw std::invalid_argument("embed_pauli: Pauli length does not match the qubit list");
    }
    PauliOperator out(n);
    out.phase_exp = p.phase_exp;
    for (size_t i = 0; i < qubits.size(); i++) {
        if (qubits[i] >= n) {
            throw std::out_of_range("embed_pauli: qubit out of range");
        }
        if (p.x_at(i)) {
            out.x |= out.bit(qubits[i]);
        }
        if (p.z_at(i)) {
            out.z |= out.bit(qubits[i]);
        }
    }
    return out;
}

std::pair<ExactState, CycNumber> project(const ExactState &s, const PauliOperator &p, int sign) {
    if (!p.is_hermitian()) {
        throw std::invalid_argument("project: Pauli must be Hermitian");
    }
    if (p.n != s.num_qubits()) {
        throw std::invalid_argument("project: size mismatch");
    }
    Tracked t = Tracked::from_state(s);
    Tracked r = projected(t, pauli_image(t, p), sign);
    CycNumber w = r.norm_sq();
    return {r.to_state(), w};
}

MeasureProbability measurement_probability(const ExactState &s, const PauliOperator &p) {
    auto [proj, w] = project(s, p, +1);
    const CycNumber &total = s.norm_sq();
    MeasureProbability out;
    out.is_half = w.scaled(1) == total;
    if (!total.is_rational() || total.to_dyadic().num != 1) {
        throw std::invalid_argument("measurement_probability: state norm must be a power of two");
    }
    out.value = w.scaled(total.to_dyadic().exp);
    return out;
}

ExactState discard(const ExactState &s, size_t q) {
    if (q >= s.num_qubits()) {
        throw std::out_of_range("discard: qubit out of range");
    }
    Tracked t = Tracked::from_state(s);
    do_discard(t, q);
    return t.to_state();
}

ExactState apply_gate(const ExactState &s, const std::string &name, const std::vector<size_t> &qubits, int64_t j,
                      int d) {
    CircuitIR c(s.num_qubits());
    if (upper(name) == "RZ") {
        c.rz(j, d, qubits.at(0));
    } else {
        c.gate(name, qubits);
    }
    validate(c);
    Tracked t = Tracked::from_state(s);
    const Instruction &inst = c.instructions[0];
    if (inst.kind == InstKind::CLIFFORD) {
        apply_clifford(t, inst.name, inst.qubits);
    } else {
        apply_diagonal(t, inst.name, inst.qubits, inst.j, inst.d);
    }
    return t.to_state();
}

ExactState choi_state(const CircuitIR &c) {
    if (!c.is_unitary()) {
        throw std::invalid_argument("choi_state: circuit has non-unitary instructions");
    }
    validate(c);
    size_t n = c.num_qubits;
    if (2 * n > MAX_STATE_QUBITS) {
        throw std::invalid_argument("choi_state: 2n exceeds the qubit cap");
    }
    Tracked t{2 * n, std::vector<CycNumber>(size_t{1} << (2 * n)), (int64_t)n};
    for (uint64_t x = 0; x < (uint64_t{1} << n); x++) {
        t.amps[(x << n) | x] = CycNumber(1);
    }
    for (const auto &inst : c.instructions) {
        if (inst.kind == InstKind::CLIFFORD) {
            apply_clifford(t, inst.name, inst.qubits);
        } else {
            apply_diagonal(t, inst.name, inst.qubits, inst.j, inst.d);
        }
    }
    return t.to_state();
}

}  // namespace mb
