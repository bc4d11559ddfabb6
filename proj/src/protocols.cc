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

#include "magicbound/protocols.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <set>
#include <stdexcept>

namespace mb {

namespace {

struct Ctx {
    CircuitIR c;
    size_t labels = 0;

    explicit Ctx(size_t n) : c(n) {
    }
    std::string label(const std::string &prefix = "m") {
        return prefix + std::to_string(++labels);
    }
    size_t alloc(bool plus = false) {
        size_t q = c.final_width();
        c.alloc(plus);
        return q;
    }
};

// Injects |T> onto a fresh top qubit and teleports T (or T^dagger) onto q.
void inject_t(Ctx &x, size_t q, bool dagger) {
    size_t a = x.c.final_width();
    x.c.inject("T");
    x.c.gate("CX", {q, a});
    std::string m = x.label();
    x.c.measure("Z", {a}, MeasureMode::BRANCH, m);
    x.c.gate("S", {q}).when({m});
    x.c.discard(a);
    if (dagger) {
        x.c.gate("SDG", {q});
    }
}

void t_gate(Ctx &x, size_t q, bool dagger, AndMode mode) {
    if (mode == AndMode::T_INJECTED) {
        inject_t(x, q, dagger);
    } else {
        x.c.gate(dagger ? "TDG" : "T", {q});
    }
}

// Temporary AND of a and b on a fresh |0>. The T variants use the phase
// polynomial t - (a^t) - (b^t) + (a^b^t), which leaves a CS^dagger(a, b) to undo.
size_t and_compute(Ctx &x, size_t a, size_t b, AndMode mode) {
    size_t t = x.alloc();
    x.c.gate("H", {t});
    if (mode == AndMode::CCZ_GATE) {
        x.c.gate("CCZ", {a, b, t});
        x.c.gate("H", {t});
        return t;
    }
    t_gate(x, t, false, mode);
    for (size_t q : {a, b}) {
        x.c.gate("CX", {q, t});
        t_gate(x, t, true, mode);
        x.c.gate("CX", {q, t});
    }
    x.c.gate("CX", {a, t});
    x.c.gate("CX", {b, t});
    t_gate(x, t, false, mode);
    x.c.gate("CX", {b, t});
    x.c.gate("CX", {a, t});
    x.c.gate("H", {t});
    x.c.gate("S", {t});
    return t;
}

// t holds a AND b and must be the top qubit.
void and_uncompute(Ctx &x, size_t a, size_t b, size_t t) {
    std::string r = x.label("x");
    x.c.measure("X", {t}, MeasureMode::BRANCH, r);
    x.c.gate("CZ", {a, b}).when({r});
    x.c.discard(t);
}

struct HwFrame {
    size_t a, b, c, anc;
};
struct HammingWeight {
    /// Holds the parity of all inputs (weight 1 in the angle sum).
    size_t r1 = 0;
    /// Majority ancillas (weight 2 each).
    std::vector<size_t> r2;
    std::vector<HwFrame> frames;
};

// For an odd number of qubits, rewrites the register so that
// R(theta) on r1 and R(2 theta) on each r2 equals R(theta) on every input.
HammingWeight hw_compute(Ctx &x, std::vector<size_t> qs, AndMode mode) {
    HammingWeight h;
    while (qs.size() > 1) {
        size_t a = qs[0], b = qs[1], c = qs[2];
        x.c.gate("CX", {a, b});
        x.c.gate("CX", {a, c});
        size_t anc = and_compute(x, b, c, mode);
        x.c.gate("CX", {a, anc});
        x.c.gate("CX", {b, c});
        x.c.gate("CX", {a, c});
        h.frames.push_back({a, b, c, anc});
        h.r2.push_back(anc);
        std::vector<size_t> rest{c};
        rest.insert(rest.end(), qs.begin() + 3, qs.end());
        qs = rest;
    }
    h.r1 = qs[0];
    return h;
}

void hw_uncompute(Ctx &x, const HammingWeight &h) {
    for (size_t i = h.frames.size(); i-- > 0;) {
        const HwFrame &f = h.frames[i];
        x.c.gate("CX", {f.a, f.c});
        x.c.gate("CX", {f.b, f.c});
        x.c.gate("CX", {f.a, f.anc});
        and_uncompute(x, f.b, f.c, f.anc);
        x.c.gate("CX", {f.a, f.c});
        x.c.gate("CX", {f.a, f.b});
    }
}

void apply_rotations(Ctx &x, const std::vector<size_t> &slots, int64_t j, int d, const std::map<int, size_t> &cats,
                     AndMode mode);

// R(pi j / 2^d) on an even number of slots, using the level-d catalyst once
// (it is consumed and regrown on a fresh |+>) and R(pi j / 2^(d-1)) on half
// the slots plus one.
void power_reduction(Ctx &x, const std::vector<size_t> &slots, int64_t j, int d, const std::map<int, size_t> &cats,
                     AndMode mode) {
    size_t cat = cats.at(d);
    size_t f = x.alloc(true);
    std::vector<size_t> qs = slots;
    qs.push_back(f);
    HammingWeight h = hw_compute(x, qs, mode);

    x.c.gate("CX", {h.r1, cat});
    std::string m = x.label();
    x.c.measure("Z", {cat}, MeasureMode::BRANCH, m);
    x.c.gate("X", {cat}).when({m});

    std::vector<size_t> next = h.r2;
    bool direct = d - 1 <= 1 || !cats.count(d - 1);
    if (direct) {
        x.c.rz(j, d - 1, h.r1).when({m});
    } else {
        // The emptied catalyst qubit stands in for r1 when a correction is due, else it holds |0>.
        x.c.gate("SWAP", {h.r1, cat}).when({m});
        next.push_back(cat);
    }
    apply_rotations(x, next, j, d - 1, cats, mode);
    if (!direct) {
        x.c.gate("SWAP", {h.r1, cat}).when({m});
    }
    hw_uncompute(x, h);
    x.c.gate("SWAP", {cat, f});
    x.c.discard(f);
}

void apply_rotations(Ctx &x, const std::vector<size_t> &slots, int64_t j, int d, const std::map<int, size_t> &cats,
                     AndMode mode) {
    if (slots.empty()) {
        return;
    }
    if (d <= 1 || !cats.count(d)) {
        for (size_t q : slots) {
            x.c.rz(j, d, q);
        }
        return;
    }
    if (slots.size() % 2) {
        throw std::logic_error("catalysed rotations need an even slot count");
    }
    if (d == 2) {
        // Pairs one after another: same CCZ count as the parallel form, fewer live qubits.
        for (size_t i = 0; i < slots.size(); i += 2) {
            power_reduction(x, {slots[i], slots[i + 1]}, j, d, cats, mode);
        }
        return;
    }
    power_reduction(x, slots, j, d, cats, mode);
}

size_t max_width(const CircuitIR &c) {
    size_t w = c.num_qubits, best = w;
    for (const auto &inst : c.instructions) {
        if (inst.kind == InstKind::ALLOC) {
            w++;
        } else if (inst.kind == InstKind::INJECT) {
            w += resource_state(inst.name).num_qubits();
        } else if (inst.kind == InstKind::DISCARD) {
            w--;
        }
        best = std::max(best, w);
    }
    return best;
}

ExactState identity_choi(size_t n) {
    return choi_state(CircuitIR(n));
}

std::function<ExactState(const Branch &)> always(ExactState s) {
    return [s](const Branch &) { return s; };
}

int64_t get(const Params &p, const std::string &key) {
    auto it = p.find(key);
    if (it == p.end()) {
        throw std::invalid_argument("missing parameter '" + key + "'");
    }
    return it->second;
}

void need(bool ok, const std::string &message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

std::string num(int64_t v) {
    return std::to_string(v);
}

// |CS_{01} CS_{02}>: phase i^{x0 (x1 + x2)}.
ExactState cs01cs02() {
    return diagonal_phase_state(3, 1, [](uint64_t x) {
        int64_t a = (x >> 2) & 1, b = (x >> 1) & 1, c = x & 1;
        return a * (b + c);
    });
}

// |CCZ CS_{12}>.
ExactState ccz_cs12() {
    return diagonal_phase_state(3, 1, [](uint64_t x) {
        int64_t a = (x >> 2) & 1, b = (x >> 1) & 1, c = x & 1;
        return 2 * a * b * c + b * c;
    });
}

void ccz_to_cs01cs02(CircuitIR &c) {
    c.gate("H", {1}).gate("SDG", {1}).gate("H", {1});
    c.gate("S", {0}).gate("X", {2}).gate("CX", {1, 2});
}

void cs01cs02_to_ccz(CircuitIR &c) {
    c.gate("CX", {1, 2}).gate("X", {2}).gate("SDG", {0});
    c.gate("H", {1}).gate("S", {1}).gate("H", {1});
}

ProtocolSpec base(const std::string &name, const Params &params, const std::string &summary) {
    ProtocolSpec p;
    p.name = name;
    p.params = params;
    p.summary = summary;
    return p;
}

// ---- builders ----

ProtocolSpec cs_catalysis(const Params &ps) {
    ProtocolSpec p = base("cs_catalysis", ps, "|CS> + |T> (catalyst) -> |T>|T>");
    p.input = resource_state("CS,T");
    Ctx x(3);
    x.c.gate("CX", {0, 1});
    x.c.gate("CX", {1, 2});
    x.c.measure("Z", {2}, MeasureMode::BRANCH, "m");
    x.c.gate("S", {1}).when({"m"});
    x.c.gate("X", {2}).when({"m"});
    x.c.discard(2);
    x.c.gate("CX", {0, 1});
    p.circuit = x.c;
    p.input_resources = {{"CS", 1}};
    p.average = p.worst = {{"CS", 1}};
    p.catalysts = {{"T", {1}}};
    p.produced = {{"T", 1}};
    p.expected = always(resource_state("T,T"));
    return p;
}

ProtocolSpec wn_catalysis(const Params &ps) {
    int64_t n = get(ps, "n");
    need(n >= 2 && n <= 8, "wn_catalysis needs 2 <= n <= 8");
    ProtocolSpec p = base("wn_catalysis", ps, "|W_n> + |T> (catalyst) -> |T>^n");
    p.input = resource_state("W:" + num(n) + ",T");
    size_t cat = n;
    CircuitIR c(n + 1);
    for (int64_t i = 1; i < n; i++) {
        c.gate("CX", {(size_t)i, 0});
    }
    // T^dagger on the parity, paid for with the catalyst.
    c.gate("CX", {0, cat});
    c.measure("Z", {cat}, MeasureMode::BRANCH, "m");
    c.gate("S", {0}).when({"m"});
    c.gate("SDG", {0});
    c.gate("X", {cat}).when({"m"});
    c.discard(cat);
    for (int64_t i = n - 1; i >= 1; i--) {
        c.gate("CX", {(size_t)i, 0});
    }
    // Hand the catalyst back on the last qubit.
    p.circuit = c;
    p.input_resources = {{"W:" + num(n), 1}};
    p.average = p.worst = {{"W:" + num(n), 1}};
    p.catalysts = {{"T", {(size_t)n - 1}}};
    p.produced = {{"T", (double)(n - 1)}};
    p.expected = always(resource_state("T*" + num(n)));
    return p;
}

ProtocolSpec wn_reduction(const Params &ps) {
    int64_t n = get(ps, "n");
    need(n >= 3 && n <= 10, "wn_reduction needs 3 <= n <= 10");
    ProtocolSpec p = base("wn_reduction", ps, "|W_n> -> |W_{n-1}>");
    p.input = resource_state("W:" + num(n));
    CircuitIR c(n);
    size_t last = n - 1;
    c.measure("Z", {last}, MeasureMode::BRANCH, "m");
    for (size_t i = 1; i < last; i++) {
        c.gate("CX", {i, 0});
    }
    c.gate("S", {0}).when({"m"});
    for (size_t i = last - 1; i >= 1; i--) {
        c.gate("CX", {i, 0});
    }
    c.discard(last);
    p.circuit = c;
    p.input_resources = {{"W:" + num(n), 1}};
    p.average = p.worst = {{"W:" + num(n), 1}};
    p.produced = {{"W:" + num(n - 1), 1}};
    p.expected = always(resource_state("W:" + num(n - 1)));
    return p;
}

ProtocolSpec ccz_from_4t(const Params &ps) {
    ProtocolSpec p = base("ccz_from_4t", ps, "4|T> -> |CCZ> (temporary AND, CZ, measured uncompute)");
    p.input = resource_state("plus:3");
    Ctx x(3);
    size_t t = and_compute(x, 0, 1, AndMode::T_INJECTED);
    x.c.gate("CZ", {t, 2});
    and_uncompute(x, 0, 1, t);
    p.circuit = x.c;
    p.average = p.worst = {{"T", 4}};
    p.produced = {{"CCZ", 1}};
    p.expected = always(resource_state("CCZ"));
    return p;
}

ProtocolSpec ccz_to_cs(const Params &ps) {
    ProtocolSpec p = base("ccz_to_cs", ps, "|CCZ> -> |CS> (Y measurement, CZ fix)");
    p.input = resource_state("CCZ");
    CircuitIR c(3);
    c.measure("Y", {0}, MeasureMode::BRANCH, "m");
    c.gate("CZ", {1, 2}).when({"m"});
    c.discard(0);
    p.circuit = c;
    p.input_resources = {{"CCZ", 1}};
    p.average = p.worst = {{"CCZ", 1}};
    p.produced = {{"CS", 1}};
    p.expected = always(resource_state("CS"));
    return p;
}

ProtocolSpec two_cs_to_ccz(const Params &ps) {
    ProtocolSpec p = base("two_cs_to_ccz", ps, "2|CS> -> |CCZ> (merge to |CS_01 CS_02>, then Clifford)");
    p.input = resource_state("CS,CS");
    CircuitIR c(4);
    c.measure("ZZ", {0, 2}, MeasureMode::BRANCH, "m");
    c.gate("X", {2}).when({"m"});
    c.gate("SDG", {3}).when({"m"});
    c.gate("CZ", {2, 3}).when({"m"});
    c.gate("CX", {0, 2});
    c.discard(2);
    cs01cs02_to_ccz(c);
    p.circuit = c;
    p.input_resources = {{"CS", 2}};
    p.average = p.worst = {{"CS", 2}};
    p.produced = {{"CCZ", 1}};
    p.expected = always(resource_state("CCZ"));
    return p;
}

ProtocolSpec ccz_two_way(const Params &ps) {
    int64_t v = get(ps, "variant");
    need(v >= 0 && v <= 3, "ccz_two_way variant must be 0..3");
    static const char *SUMMARY[4] = {"|CCZ> -> |CS_01 CS_02>", "|CS_01 CS_02> -> |CCZ>", "|CCZ> -> |CCZ CS_12>",
                                     "|CCZ CS_12> -> |CCZ>"};
    ProtocolSpec p = base("ccz_two_way", ps, SUMMARY[v]);
    ExactState ccz = resource_state("CCZ");
    ExactState other = v < 2 ? cs01cs02() : ccz_cs12();
    bool forward = v % 2 == 0;
    p.input = forward ? ccz : other;
    CircuitIR c(3);
    if (v == 0) {
        ccz_to_cs01cs02(c);
    } else if (v == 1) {
        cs01cs02_to_ccz(c);
    } else {
        c.gate("H", {0}).gate(v == 2 ? "S" : "SDG", {0}).gate("H", {0});
    }
    p.circuit = c;
    // The intermediate states are Clifford images of |CCZ>, so they are accounted as CCZ.
    p.input_resources = {{"CCZ", 1}};
    p.average = p.worst = {{"CCZ", 1}};
    p.produced = {{"CCZ", 1}};
    p.expected = always(forward ? other : ccz);
    return p;
}

ProtocolSpec ccz123145(const Params &ps) {
    int64_t dir = get(ps, "dir");
    need(dir == 0 || dir == 1, "ccz123145 dir must be 0 or 1");
    ProtocolSpec p = base("ccz123145", ps, dir == 0 ? "2|CCZ> -> |CCZ_{123,145}>" : "|CCZ_{123,145}> -> |CCZ>");
    if (dir == 0) {
        p.input = resource_state("CCZ,CCZ");
        CircuitIR c(6);
        c.measure("ZZ", {0, 3}, MeasureMode::BRANCH, "m");
        c.gate("X", {3}).when({"m"});
        c.gate("CZ", {4, 5}).when({"m"});
        c.gate("CX", {0, 3});
        c.discard(3);
        p.circuit = c;
        p.input_resources = {{"CCZ", 2}};
        p.average = p.worst = {{"CCZ", 2}};
        p.produced = {{"CCZ123145", 1}};
        p.expected = always(resource_state("CCZ123145"));
    } else {
        p.input = resource_state("CCZ123145");
        CircuitIR c(5);
        c.measure("Z", {3}, MeasureMode::BRANCH, "m");
        c.gate("CZ", {0, 4}).when({"m"});
        c.discard(3);
        c.discard(3);
        p.circuit = c;
        p.input_resources = {{"CCZ123145", 1}};
        p.average = p.worst = {{"CCZ123145", 1}};
        p.produced = {{"CCZ", 1}};
        p.expected = always(resource_state("CCZ"));
    }
    return p;
}

ProtocolSpec measure_control(const Params &ps) {
    int64_t n = get(ps, "n");
    int64_t s = get(ps, "s");
    need(n >= 2 && n <= 10, "measure_control needs 2 <= n <= 10");
    need(s == 0 || s == 1, "measure_control s must be 0 (C^nZ) or 1 (C^nS)");
    std::string fam = s ? "CnS:" : "CnZ:";
    ProtocolSpec p = base("measure_control", ps, "|" + fam + num(n) + "> -> |" + fam + num(n - 1) +
                                                     "> with probability 1/2, else |+>^(n-1)");
    p.input = resource_state(fam + num(n));
    CircuitIR c(n);
    c.measure("Z", {0}, MeasureMode::BRANCH, "m");
    c.discard(0);
    p.circuit = c;
    p.probabilistic = true;
    p.input_resources = {{fam + num(n), 1}};
    p.average = p.worst = {{fam + num(n), 1}};
    p.produced = {{fam + num(n - 1), 0.5}};
    ExactState hit = resource_state(fam + num(n - 1));
    ExactState miss = resource_state("plus:" + num(n - 1));
    p.expected = [hit, miss](const Branch &b) { return b.bits.at("m") ? hit : miss; };
    return p;
}

ProtocolSpec multi_ccz_to_cs(const Params &ps) {
    int64_t n = get(ps, "n");
    need(n >= 0 && n <= 8, "multi_ccz_to_cs needs 0 <= n <= 8");
    std::string in = "CnZ:" + num(n + 2);
    ProtocolSpec p = base("multi_ccz_to_cs", ps,
                          "|" + in + "> -> |CnS:" + num(n + 1) + "> or |CnSdg:" + num(n + 1) + ">, probability 1/2 each");
    p.input = resource_state(in);
    CircuitIR c(n + 2);
    c.measure("Y", {0}, MeasureMode::BRANCH, "m");
    c.discard(0);
    p.circuit = c;
    p.probabilistic = true;
    p.input_resources = {{in, 1}};
    p.average = p.worst = {{in, 1}};
    p.produced = {{"CnS:" + num(n + 1), 0.5}, {"CnSdg:" + num(n + 1), 0.5}};
    ExactState plus = resource_state("CnS:" + num(n + 1));
    ExactState minus = resource_state("CnSdg:" + num(n + 1));
    p.expected = [plus, minus](const Branch &b) { return b.bits.at("m") ? minus : plus; };
    return p;
}

ProtocolSpec three_sqrt_t(const Params &ps) {
    int64_t toffoli = get(ps, "t_gates");
    need(toffoli == 0 || toffoli == 1, "three_sqrt_t t_gates must be 0 or 1");
    AndMode mode = toffoli ? AndMode::T_GATES : AndMode::CCZ_GATE;
    ProtocolSpec p = base("three_sqrt_t", ps,
                          toffoli ? "three sqrt(T) gates from |sqrtT> + 5.5 |T> on average"
                                  : "three sqrt(T) gates from |sqrtT> + |CCZ> + 1.5 |T> on average");
    // Qubits 0..2 data, 3..5 their Bell partners, 6 the consumed |sqrtT>.
    p.input = tensor(identity_choi(3), resource_state("sqrtT"));
    Ctx x(7);
    HammingWeight h = hw_compute(x, {0, 1, 2}, mode);
    x.c.gate("CX", {h.r1, 6});
    x.c.measure("Z", {6}, MeasureMode::BRANCH, "m");
    x.c.gate("T", {h.r1}).when({"m"});
    x.c.gate("T", {h.r2[0]});
    hw_uncompute(x, h);
    x.c.gate("X", {6}).when({"m"});
    x.c.discard(6);
    p.circuit = x.c;
    p.input_resources = {{"sqrtT", 1}};
    if (toffoli) {
        p.average = {{"sqrtT", 1}, {"T", 5.5}};
        p.worst = {{"sqrtT", 1}, {"T", 6}};
    } else {
        p.average = {{"sqrtT", 1}, {"T", 1.5}, {"CCZ", 1}};
        p.worst = {{"sqrtT", 1}, {"T", 2}, {"CCZ", 1}};
    }
    p.produced = {{"sqrtT", 3}};
    CircuitIR u(3);
    u.rz(1, 3, 0).rz(1, 3, 1).rz(1, 3, 2);
    p.expected = always(choi_state(u));
    return p;
}

ProtocolSpec many_sqrt_t(const Params &ps) {
    int64_t k = get(ps, "k");
    need(k >= 1 && k <= 3, "many_sqrt_t needs 1 <= k <= 3");
    ProtocolSpec p = base("many_sqrt_t", ps, "k|CCZ> + (k+1/2)|T> -> 2k|sqrtT>, catalysed by |sqrtT>");
    size_t m = 2 * k;
    p.input = resource_state("plus:" + num(m) + ",sqrtT");
    Ctx x(m + 1);
    std::vector<size_t> slots;
    for (size_t i = 0; i < m; i++) {
        slots.push_back(i);
    }
    apply_rotations(x, slots, 1, 3, {{3, m}}, AndMode::CCZ_GATE);
    p.circuit = x.c;
    p.average = {{"CCZ", (double)k}, {"T", k + 0.5}};
    p.worst = {{"CCZ", (double)k}, {"T", (double)k + 1}};
    p.catalysts = {{"sqrtT", {m}}};
    p.produced = {{"sqrtT", (double)m}};
    p.expected = always(resource_state("sqrtT*" + num(m + 1)));
    return p;
}

int64_t a_dk(int64_t d, int64_t k) {
    return (int64_t{1} << (d - 1)) * (k - 1) + 2;
}

int64_t b_dk(int64_t d, int64_t k) {
    return ((int64_t{1} << (d - 1)) - 1) * (k - 1) + d - 1;
}

ProtocolSpec dyadic_power(const Params &ps) {
    int64_t d = get(ps, "d"), k = get(ps, "k"), j = get(ps, "j");
    need(d >= 2 && d <= 6, "dyadic_power needs 2 <= d <= 6");
    need(k >= 1 && k <= 4, "dyadic_power needs 1 <= k <= 4");
    need(j % 2 != 0, "dyadic_power needs odd j");
    int64_t a = a_dk(d, k), b = b_dk(d, k);
    std::string rot = "rot:" + num(j) + ":" + num(d);
    ProtocolSpec p =
        base("dyadic_power", ps, num(b) + "|CCZ> -> " + num(a) + "|" + rot + ">, catalysed by rot:j:d..rot:j:2");
    std::string in = "plus:" + num(a);
    std::string out = rot + "*" + num(a);
    std::map<int, size_t> cats;
    for (int64_t level = d; level >= 2; level--) {
        std::string e = "rot:" + num(j) + ":" + num(level);
        cats[(int)level] = a + (d - level);
        p.catalysts.push_back({e, {(size_t)(a + (d - level))}});
        in += "," + e;
        out += "," + e;
    }
    p.input = resource_state(in);
    Ctx x(a + d - 1);
    std::vector<size_t> slots;
    for (int64_t i = 0; i < a; i++) {
        slots.push_back(i);
    }
    apply_rotations(x, slots, j, (int)d, cats, AndMode::CCZ_GATE);
    p.circuit = x.c;
    p.average = p.worst = {{"CCZ", (double)b}};
    p.produced = {{rot, (double)a}};
    p.expected = always(resource_state(out));
    return p;
}

ProtocolSpec diagonal_injection(const Params &ps) {
    int64_t u = get(ps, "u");
    static const char *NAMES[4] = {"T", "CS", "CCZ", "sqrtT"};
    need(u >= 0 && u <= 3, "diagonal_injection u must be 0 (T), 1 (CS), 2 (CCZ) or 3 (sqrtT)");
    std::string name = NAMES[u];
    ProtocolSpec p = base("diagonal_injection", ps, "apply " + name + " from |" + name + "> (measured corrections)");
    ExactState res = resource_state(name);
    size_t n = res.num_qubits();
    // Resource on 0..n-1, data on n..2n-1, Bell partners on 2n..3n-1.
    p.input = tensor(res, identity_choi(n));
    CircuitIR c(3 * n);
    std::vector<std::string> m(n);
    for (size_t k = 0; k < n; k++) {
        c.gate("CX", {n + k, k});
    }
    for (size_t k = 0; k < n; k++) {
        m[k] = "m" + num(k + 1);
        c.measure("Z", {k}, MeasureMode::BRANCH, m[k]);
    }
    for (size_t k = 0; k < n; k++) {
        c.gate("X", {n + k}).when({m[k]});
    }
    // U X_k U^dagger, in time order.
    for (size_t k = 0; k < n; k++) {
        size_t q = n + k;
        c.gate("X", {q}).when({m[k]});
        if (name == "T") {
            c.gate("S", {q}).when({m[k]});
        } else if (name == "sqrtT") {
            c.gate("T", {q}).when({m[k]});
        } else if (name == "CS") {
            size_t o = n + (1 - k);
            c.gate("CX", {q, o}).when({m[k]});
            c.gate("S", {q}).when({m[k]});
            c.gate("SDG", {o}).when({m[k]});
            c.gate("CX", {q, o}).when({m[k]});
        } else {
            std::vector<size_t> others;
            for (size_t i = 0; i < n; i++) {
                if (i != k) {
                    others.push_back(n + i);
                }
            }
            c.gate("CZ", others).when({m[k]});
        }
    }
    for (size_t k = 0; k < n; k++) {
        c.gate("X", {k}).when({m[k]});
    }
    for (size_t k = 0; k < n; k++) {
        c.discard(0);
    }
    p.circuit = c;
    p.input_resources = {{name, 1}};
    p.average = p.worst = {{name, 1}};
    if (name == "sqrtT") {
        p.average["T"] = 0.5;
        p.worst["T"] = 1;
    }
    p.produced = {{name, 1}};
    CircuitIR g(n);
    if (name == "T") {
        g.gate("T", {0});
    } else if (name == "sqrtT") {
        g.rz(1, 3, 0);
    } else if (name == "CS") {
        g.gate("CS", {0, 1});
    } else {
        g.gate("CCZ", {0, 1, 2});
    }
    p.expected = always(choi_state(g));
    return p;
}

ProtocolSpec two_sqrt_t_sandwich(const Params &ps) {
    ProtocolSpec p = base("two_sqrt_t_sandwich", ps, "sqrt(T) H sqrt(T) from 5 to 7 |T> (6 on average), catalysed by |sqrtT>");
    // 0 data, 1 its Bell partner, 2 catalyst.
    p.input = tensor(identity_choi(1), resource_state("sqrtT"));
    Ctx x(3);
    size_t f = x.alloc(true), g = x.alloc(true);
    HammingWeight h = hw_compute(x, {0, f, g}, AndMode::T_GATES);
    x.c.gate("CX", {h.r1, 2});
    x.c.measure("Z", {2}, MeasureMode::BRANCH, "m1");
    x.c.gate("T", {h.r1}).when({"m1"});
    x.c.gate("T", {h.r2[0]});
    hw_uncompute(x, h);
    // Data got its first sqrt(T); f and g now hold |sqrtT>.
    x.c.gate("H", {0});
    x.c.gate("CX", {0, f});
    x.c.measure("Z", {f}, MeasureMode::BRANCH, "m2");
    x.c.gate("T", {0}).when({"m2"});
    x.c.gate("X", {2}).when({"m1"});
    x.c.gate("X", {f}).when({"m2"});
    x.c.gate("SWAP", {2, g});
    x.c.discard(g);
    x.c.discard(f);
    p.circuit = x.c;
    p.average = {{"T", 6}};
    p.worst = {{"T", 7}};
    p.catalysts = {{"sqrtT", {2}}};
    p.produced = {{"sqrtT", 2}};
    CircuitIR u(1);
    u.rz(1, 3, 0).gate("H", {0}).rz(1, 3, 0);
    p.expected = always(tensor(choi_state(u), resource_state("sqrtT")));
    return p;
}

ProtocolSpec adder_qft(const Params &ps) {
    int64_t n = get(ps, "n"), b = get(ps, "b");
    need(n >= 2 && n <= 5, "adder_qft needs 2 <= n <= 5");
    ProtocolSpec p = base("adder_qft", ps, "A(|+>^n |QFT^b_n>) = |QFT^-b_n>|QFT^b_n>");
    p.input = resource_state("plus:" + num(n) + ",QFT:" + num(b) + ":" + num(n));
    p.circuit = adder_circuit(n);
    p.average = p.worst = {{"CCZ", (double)(n - 1)}};
    p.produced = {{"QFT:" + num(-b) + ":" + num(n), 1}};
    p.catalysts = {{"QFT:" + num(b) + ":" + num(n), {}}};
    for (int64_t i = 0; i < n; i++) {
        p.catalysts[0].qubits.push_back(n + i);
    }
    p.expected = always(resource_state("QFT:" + num(-b) + ":" + num(n) + ",QFT:" + num(b) + ":" + num(n)));
    return p;
}

ProtocolSpec adder_to_cnz_spec(const Params &ps) {
    int64_t n = get(ps, "n"), zero = get(ps, "control_zero");
    need(n >= 2 && n <= 4, "adder_to_cnz needs 2 <= n <= 4");
    need(zero == 0 || zero == 1, "adder_to_cnz control_zero must be 0 or 1");
    ProtocolSpec p = base("adder_to_cnz", ps, "controlled increment through the adder -> |C^nZ> up to Clifford");
    std::string in = "zero:" + num(n - 1) + (zero ? ",zero:1" : ",plus:1") + ",zero:1,plus:" + num(n - 1);
    p.input = resource_state(in);
    CircuitIR c = adder_circuit(n);
    size_t ctrl = n - 1, msb = n;
    for (int64_t i = 1; i < n; i++) {
        c.gate("CX", {ctrl, (size_t)(n + i)});
    }
    c.gate("H", {msb});
    p.circuit = c;
    p.average = p.worst = {{"CCZ", (double)(n - 1)}};
    std::string out = zero ? "zero:" + num(n) + ",plus:" + num(n) : "zero:" + num(n - 1) + ",CnZ:" + num(n + 1);
    if (!zero) {
        p.produced = {{"CnZ:" + num(n + 1), 1}};
    }
    p.expected = always(resource_state(out));
    return p;
}

ProtocolSpec toffoli_uncompute(const Params &ps) {
    int64_t tg = get(ps, "t_gates");
    need(tg == 0 || tg == 1, "toffoli_uncompute t_gates must be 0 or 1");
    ProtocolSpec p = base("toffoli_uncompute", ps,
                          "AND onto |0> then removal by X measurement and conditional CZ is the identity");
    p.input = identity_choi(2);
    Ctx x(4);
    size_t t = and_compute(x, 0, 1, tg ? AndMode::T_GATES : AndMode::CCZ_GATE);
    and_uncompute(x, 0, 1, t);
    p.circuit = x.c;
    if (tg) {
        p.average = p.worst = {{"T", 4}};
    } else {
        p.average = p.worst = {{"CCZ", 1}};
    }
    p.expected = always(identity_choi(2));
    return p;
}

using Builder = ProtocolSpec (*)(const Params &);

struct Family {
    CatalogEntry entry;
    Builder build;
};

const std::vector<Family> &families() {
    static const std::vector<Family> all = {
        {{"cs_catalysis", "|CS> + catalyst |T> -> 2|T>", {}, {{}}}, cs_catalysis},
        {{"wn_catalysis", "|W_n> + catalyst |T> -> n|T>", {"n"}, {{{"n", 3}}, {{"n", 4}}}}, wn_catalysis},
        {{"wn_reduction", "|W_n> -> |W_{n-1}>", {"n"}, {{{"n", 3}}, {{"n", 4}}}}, wn_reduction},
        {{"ccz_from_4t", "4|T> -> |CCZ>", {}, {{}}}, ccz_from_4t},
        {{"ccz_to_cs", "|CCZ> -> |CS>", {}, {{}}}, ccz_to_cs},
        {{"two_cs_to_ccz", "2|CS> -> |CCZ>", {}, {{}}}, two_cs_to_ccz},
        {{"ccz_two_way",
          "|CCZ> <-> |CS_01 CS_02> and |CCZ> <-> |CCZ CS_12>",
          {"variant"},
          {{{"variant", 0}}, {{"variant", 1}}, {{"variant", 2}}, {{"variant", 3}}}},
         ccz_two_way},
        {{"ccz123145", "2|CCZ> <-> |CCZ_{123,145}>", {"dir"}, {{{"dir", 0}}, {{"dir", 1}}}}, ccz123145},
        {{"measure_control",
          "|CU> -> |U> with probability 1/2",
          {"n", "s"},
          {{{"n", 3}, {"s", 0}}, {{"n", 4}, {"s", 0}}, {{"n", 3}, {"s", 1}}}},
         measure_control},
        {{"multi_ccz_to_cs", "|C^{n+1}Z> -> |C^n S^(+-1)>", {"n"}, {{{"n", 1}}, {{"n", 2}}}}, multi_ccz_to_cs},
        {{"three_sqrt_t", "three sqrt(T) gates for one", {"t_gates"}, {{{"t_gates", 0}}, {{"t_gates", 1}}}},
         three_sqrt_t},
        {{"many_sqrt_t", "k|CCZ> + (k+1/2)|T> -> 2k|sqrtT>", {"k"}, {{{"k", 1}}, {{"k", 2}}}}, many_sqrt_t},
        {{"dyadic_power",
          "b_{d,k}|CCZ> -> a_{d,k}|rot:j:d>",
          {"d", "k", "j"},
          {{{"d", 2}, {"k", 1}, {"j", 1}},
           {{"d", 3}, {"k", 1}, {"j", 1}},
           {{"d", 3}, {"k", 2}, {"j", 1}},
           {{"d", 2}, {"k", 2}, {"j", 3}}}},
         dyadic_power},
        {{"diagonal_injection",
          "diagonal gate from its resource state",
          {"u"},
          {{{"u", 0}}, {{"u", 1}}, {{"u", 2}}, {{"u", 3}}}},
         diagonal_injection},
        {{"two_sqrt_t_sandwich", "sqrt(T) H sqrt(T) from 6 |T> on average", {}, {{}}}, two_sqrt_t_sandwich},
        {{"adder_qft", "adder on |+>^n |QFT^b_n>", {"n", "b"}, {{{"n", 2}, {"b", 1}}, {{"n", 3}, {"b", 1}}}},
         adder_qft},
        {{"adder_to_cnz",
          "controlled increment via the adder -> |C^nZ>",
          {"n", "control_zero"},
          {{{"n", 2}, {"control_zero", 0}}, {{"n", 3}, {"control_zero", 0}}, {{"n", 2}, {"control_zero", 1}}}},
         adder_to_cnz_spec},
        {{"toffoli_uncompute", "temporary AND and its measured removal", {"t_gates"}, {{{"t_gates", 0}}, {{"t_gates", 1}}}},
         toffoli_uncompute},
    };
    return all;
}

struct Monotones {
    double nullity;
    double mu2;
};

Monotones monotones_of(const std::string &expr) {
    static std::mutex mu;
    static std::map<std::string, Monotones> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(expr);
        if (it != cache.end()) {
            return it->second;
        }
    }
    ExactState s = resource_state(expr);
    Monotones m{(double)stabilizer_nullity(s), dyadic_monotone(s).to_double()};
    std::lock_guard<std::mutex> lock(mu);
    cache[expr] = m;
    return m;
}

// (<c|_Q (x) I)|s> reproduces s exactly.
bool factors(const ExactState &s, const std::vector<size_t> &qs, const ExactState &c) {
    size_t n = s.num_qubits(), k = qs.size();
    if (k != c.num_qubits() || k > n) {
        return false;
    }
    std::vector<size_t> rest;
    for (size_t q = 0; q < n; q++) {
        if (std::find(qs.begin(), qs.end(), q) == qs.end()) {
            rest.push_back(q);
        }
    }
    auto split = [&](uint64_t x) {
        uint64_t y = 0, z = 0;
        for (size_t i = 0; i < k; i++) {
            y = (y << 1) | ((x >> (n - 1 - qs[i])) & 1);
        }
        for (size_t q : rest) {
            z = (z << 1) | ((x >> (n - 1 - q)) & 1);
        }
        return std::pair<uint64_t, uint64_t>{y, z};
    };
    std::vector<CycNumber> r(uint64_t{1} << rest.size());
    for (uint64_t x = 0; x < s.size(); x++) {
        if (s.amp(x).is_zero()) {
            continue;
        }
        auto [y, z] = split(x);
        r[z] += c.amp(y).conj() * s.amp(x);
    }
    const CycNumber &cc = c.norm_sq();
    for (uint64_t x = 0; x < s.size(); x++) {
        auto [y, z] = split(x);
        if (s.amp(x) * cc != c.amp(y) * r[z]) {
            return false;
        }
    }
    return true;
}

}  // namespace

const std::vector<CatalogEntry> &catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> out;
        for (const auto &f : families()) {
            out.push_back(f.entry);
        }
        return out;
    }();
    return entries;
}

ProtocolSpec make_protocol(const std::string &name, const Params &params) {
    for (const auto &f : families()) {
        if (f.entry.name != name) {
            continue;
        }
        Params full = f.entry.instances.front();
        for (const auto &[key, value] : params) {
            if (std::find(f.entry.param_names.begin(), f.entry.param_names.end(), key) == f.entry.param_names.end()) {
                throw std::invalid_argument("protocol '" + name + "' has no parameter '" + key + "'");
            }
            full[key] = value;
        }
        return f.build(full);
    }
    throw std::invalid_argument("unknown protocol '" + name + "'");
}

VerificationReport verify(const ProtocolSpec &p) {
    auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.name = p.name;
    rep.params = p.params;
    rep.max_qubits = max_width(p.circuit);
    if (rep.max_qubits > MAX_PROTOCOL_QUBITS) {
        throw std::out_of_range(p.name + " needs " + std::to_string(rep.max_qubits) + " qubits, cap is " +
                                std::to_string(MAX_PROTOCOL_QUBITS));
    }
    SimOptions opt;
    opt.tree_guard = 16;
    std::vector<Branch> branches = simulate(p.circuit, p.input, opt);

    std::vector<ExactState> cat_states;
    for (const auto &cat : p.catalysts) {
        cat_states.push_back(resource_state(cat.expr));
    }
    CycNumber total(0);
    rep.all_half = true;
    rep.catalyst_intact = true;
    bool all_match = true;
    std::map<std::string, double> avg, worst;
    std::set<std::string> keys;
    for (const auto &[k, v] : p.input_resources) {
        keys.insert(k);
    }
    for (const auto &b : branches) {
        for (const auto &[k, v] : b.tally) {
            keys.insert(k);
        }
    }
    for (const auto &b : branches) {
        BranchReport br;
        br.outcomes = b.outcomes;
        br.probability = b.probability.to_complex().real();
        br.probability_exact = b.probability.str();
        br.is_half = b.is_half;
        br.tally = b.tally;
        for (const auto &[k, v] : p.input_resources) {
            br.tally[k] += v;
        }
        ExactState want = p.expected(b);
        br.matches = want.num_qubits() == b.state.num_qubits() && equal_up_to_phase(b.state, want);
        br.catalyst_intact = true;
        for (size_t i = 0; i < p.catalysts.size(); i++) {
            if (!factors(b.state, p.catalysts[i].qubits, cat_states[i])) {
                br.catalyst_intact = false;
            }
        }
        total += b.probability;
        rep.all_half = rep.all_half && b.is_half;
        rep.catalyst_intact = rep.catalyst_intact && br.catalyst_intact;
        all_match = all_match && br.matches;
        for (const auto &k : keys) {
            double v = br.tally.count(k) ? (double)br.tally.at(k) : 0.0;
            avg[k] += br.probability * v;
            worst[k] = std::max(worst[k], v);
        }
        if (!br.matches) {
            rep.failures.push_back("branch '" + b.outcomes + "' output differs from the expected state");
        }
        if (!br.catalyst_intact) {
            rep.failures.push_back("branch '" + b.outcomes + "' does not return the catalyst intact");
        }
        rep.branches.push_back(br);
    }
    rep.average = avg;
    rep.worst = worst;
    rep.total_probability_one = total == CycNumber(1);
    if (!rep.total_probability_one) {
        rep.failures.push_back("branch probabilities sum to " + total.str());
    }
    if (p.half_only && !rep.all_half) {
        rep.failures.push_back("a measurement did not have probability 1/2");
    }
    auto compare = [&](const std::map<std::string, double> &declared, const std::map<std::string, double> &seen,
                       const std::string &what) {
        std::map<std::string, double> all = declared;
        for (const auto &[k, v] : seen) {
            all.emplace(k, 0.0);
        }
        for (const auto &[k, v] : all) {
            double want = declared.count(k) ? declared.at(k) : 0.0;
            double got = seen.count(k) ? seen.at(k) : 0.0;
            if (std::abs(want - got) > 1e-9) {
                rep.failures.push_back(what + " " + k + " is " + std::to_string(got) + ", declared " +
                                       std::to_string(want));
            }
        }
    };
    compare(p.average, avg, "average consumption of");
    compare(p.worst, worst, "worst-case consumption of");

    auto resource_key = [](const std::string &k) {
        if (k.rfind("rot:", 0) == 0 && std::count(k.begin(), k.end(), ':') == 1) {
            return "rot:1:" + k.substr(4);
        }
        return k;
    };
    for (const auto &[k, v] : p.average) {
        Monotones m = monotones_of(resource_key(k));
        rep.nullity_in += v * m.nullity;
        rep.mu2_in += v * m.mu2;
    }
    for (const auto &[k, v] : p.produced) {
        Monotones m = monotones_of(resource_key(k));
        rep.nullity_out += v * m.nullity;
        rep.mu2_out += v * m.mu2;
    }
    rep.monotone_ok = true;
    if (rep.nullity_in < rep.nullity_out - 1e-9) {
        rep.monotone_ok = false;
        rep.failures.push_back("nullity increases");
    }
    if (rep.all_half && rep.mu2_in < rep.mu2_out - 1e-9) {
        rep.monotone_ok = false;
        rep.failures.push_back("dyadic monotone increases");
    }
    rep.passed = rep.failures.empty() && all_match && !branches.empty();
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::vector<VerificationReport> verify_catalog() {
    std::vector<std::pair<std::string, Params>> jobs;
    for (const auto &e : catalog()) {
        for (const auto &ps : e.instances) {
            jobs.emplace_back(e.name, ps);
        }
    }
    std::vector<VerificationReport> out(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < jobs.size(); i++) {
        try {
            out[i] = verify(make_protocol(jobs[i].first, jobs[i].second));
        } catch (const std::exception &e) {
            out[i].name = jobs[i].first;
            out[i].params = jobs[i].second;
            out[i].failures.push_back(e.what());
        }
    }
    return out;
}

CircuitIR adder_circuit(size_t n, AndMode mode) {
    if (n < 2 || n > 5) {
        throw std::out_of_range("adder_circuit needs 2 <= n <= 5");
    }
    Ctx x(2 * n);
    auto A = [&](size_t k) { return n - 1 - k; };
    auto B = [&](size_t k) { return 2 * n - 1 - k; };
    std::vector<size_t> carry(n, 0);
    for (size_t k = 0; k + 1 < n; k++) {
        if (k > 0) {
            x.c.gate("CX", {carry[k], A(k)});
            x.c.gate("CX", {carry[k], B(k)});
        }
        size_t t = and_compute(x, A(k), B(k), mode);
        if (k > 0) {
            x.c.gate("CX", {carry[k], t});
        }
        carry[k + 1] = t;
    }
    x.c.gate("CX", {carry[n - 1], B(n - 1)});
    x.c.gate("CX", {A(n - 1), B(n - 1)});
    for (size_t k = n - 1; k-- > 0;) {
        size_t t = carry[k + 1];
        if (k > 0) {
            x.c.gate("CX", {carry[k], t});
        }
        and_uncompute(x, A(k), B(k), t);
        if (k > 0) {
            x.c.gate("CX", {carry[k], A(k)});
        }
        x.c.gate("CX", {A(k), B(k)});
    }
    return x.c;
}

CnzReport adder_to_cnz(size_t n, bool control_zero) {
    if (n < 2 || n > 4) {
        throw std::out_of_range("adder_to_cnz needs 2 <= n <= 4");
    }
    CnzReport out;
    ProtocolSpec p = make_protocol("adder_to_cnz", {{"n", (int64_t)n}, {"control_zero", control_zero ? 1 : 0}});
    out.report = verify(p);
    std::vector<Branch> branches = simulate(p.circuit, p.input);
    out.nullity = stabilizer_nullity(branches.front().state);
    for (const auto &b : branches) {
        if (stabilizer_nullity(b.state) != out.nullity) {
            out.report.passed = false;
            out.report.failures.push_back("branches disagree on the output nullity");
        }
    }
    return out;
}

}  // namespace mb
