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

#include "magicbound/bounds.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "magicbound/extent.h"
#include "magicbound/simulator.h"
#include "magicbound/states.h"

namespace mb {

namespace {

struct ClosedForm {
    const char *text;
    double value;
};

// Closed forms for the extent. Entries above MAX_SOLVED_EXTENT_QUBITS are used as given.
const std::map<std::string, ClosedForm> &closed_forms() {
    static const std::map<std::string, ClosedForm> forms = {
        {"sqrtT", {"2-sqrt(2)+1/sqrt(2+sqrt(2))", 2 - std::sqrt(2.0) + 1 / std::sqrt(2 + std::sqrt(2.0))}},
        {"T", {"4/(2+sqrt(2))", 4 / (2 + std::sqrt(2.0))}},
        {"CS", {"8/5", 8.0 / 5}},
        {"CnS:3", {"41/20", 41.0 / 20}},
        {"CnS:4", {"9/8+1/sqrt(2)", 9.0 / 8 + 1 / std::sqrt(2.0)}},
        {"CCZ", {"16/9", 16.0 / 9}},
        {"CnZ:3", {"16/9", 16.0 / 9}},
        {"CnZ:4", {"9/4", 9.0 / 4}},
        {"CnZ:5", {"9/8+1/sqrt(2)", 9.0 / 8 + 1 / std::sqrt(2.0)}},
        {"CCZ123145", {"2", 2.0}},
        {"W:3", {"16/9", 16.0 / 9}},
        {"W:4", {"64/29", 64.0 / 29}},
        {"W:5", {"64/25", 64.0 / 25}},
    };
    return forms;
}

std::string sig6(double v, const char *fmt) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

std::string bound_cell(double v, bool star) {
    return format6(v) + (star ? "*" : "");
}

struct ConversionRow {
    const char *consume;
    const char *consume_via;
    const char *produce;
    const char *produce_via;
};

// Best known rates, as (consume rate, how; produce rate, how). Rows follow table_states().
const std::vector<ConversionRow> &t_rows() {
    static const std::vector<ConversionRow> rows = {
        {"2.5 (average)", "catalog:many_sqrt_t", "0.25", "derived"},
        {"1", "identity", "1", "identity"},
        {"3", "catalog:cs_catalysis", "1", "catalog:cs_catalysis"},
        {"7", "external", "0.5", "catalog:measure_control"},
        {"11", "external", "0.25", "catalog:measure_control"},
        {"4", "external", "2", "external"},
        {"6", "external", "1", "derived"},
        {"12", "external", "0.5", "derived"},
        {"8", "derived", "2", "derived"},
        {"4", "derived", "2", "derived"},
        {"5", "catalog:wn_catalysis", "3", "catalog:wn_catalysis"},
        {"6", "catalog:wn_catalysis", "4", "catalog:wn_catalysis"},
    };
    return rows;
}

const std::vector<ConversionRow> &ccz_rows() {
    static const std::vector<ConversionRow> rows = {
        {"0.75 (average)", "catalog:many_sqrt_t", "0.0625", "derived"},
        {"0.5", "external", "0.25", "external"},
        {"1", "catalog:wn_reduction+ccz_to_cs", "0.5", "catalog:two_cs_to_ccz"},
        {"2", "external", "0.25", "catalog:measure_control"},
        {"3", "external", "0.125", "catalog:measure_control"},
        {"1", "identity", "1", "identity"},
        {"2", "external", "0.5", "catalog:measure_control"},
        {"3", "external", "0.25", "catalog:measure_control"},
        {"2", "catalog:ccz123145", "1", "catalog:ccz123145"},
        {"1", "external", "1", "external"},
        {"2.5", "derived", "1", "catalog:wn_reduction"},
        {"3", "derived", "1", "catalog:wn_reduction"},
    };
    return rows;
}

Table conversion_table(const std::string &name) {
    bool t = name == "t_conversion";
    bool extended = name == "ccz_extended";
    std::string src = t ? "T" : "CCZ";
    Table out;
    out.name = name;
    out.caption = "Catalytic conversion rates to and from |" + src +
                  ">: best known rate with the tightest nullity/extent bound in parentheses. * marks an "
                  "extent bound (needs a multiplicative catalyst)." +
                  (extended ? " + marks a dyadic-monotone bound (probability-1/2 measurements only)." : "");
    out.columns = {"state", "consume_best", "consume_bound", "consume_via", "produce_best", "produce_bound",
                   "produce_via"};
    const auto &rows = t ? t_rows() : ccz_rows();
    const auto &states = table_states();
    for (size_t i = 0; i < states.size(); i++) {
        BoundReport in = conversion_bounds(src, states[i].second);
        BoundReport back = conversion_bounds(states[i].second, src);
        std::string lower = bound_cell(in.lower, in.lower_star);
        if (extended && states[i].second != src) {
            lower += ", " + format6(in.lower_dagger) + "+";
        }
        out.rows.push_back({states[i].first, rows[i].consume, lower, rows[i].consume_via, rows[i].produce,
                            bound_cell(back.upper, back.upper_star), rows[i].produce_via});
    }
    return out;
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

}  // namespace

const MonotoneValues &monotone_values(const std::string &expr) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<MonotoneValues>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(expr);
        if (it != cache.end()) {
            return *it->second;
        }
    }
    ExactState s = resource_state(expr);
    auto m = std::make_unique<MonotoneValues>();
    m->expr = expr;
    m->qubits = s.num_qubits();
    m->nullity = stabilizer_nullity(s);
    m->mu2 = dyadic_monotone(s);
    auto form = closed_forms().find(expr);
    if (form != closed_forms().end()) {
        m->extent_exact = form->second.text;
    }
    if (m->qubits <= MAX_SOLVED_EXTENT_QUBITS) {
        ExtentResult r = extent(s);
        if (!r.converged) {
            throw std::runtime_error("extent of " + expr + " did not converge (gap " + std::to_string(r.gap) + ")");
        }
        m->extent = r.value;
        m->extent_gap = r.gap;
        m->extent_solved = true;
    } else if (form != closed_forms().end()) {
        m->extent = form->second.value;
    } else {
        throw std::out_of_range("no extent value for '" + expr + "' (solved up to " +
                                std::to_string(MAX_SOLVED_EXTENT_QUBITS) + " qubits, tabulated above)");
    }
    std::lock_guard<std::mutex> lock(mu);
    auto &slot = cache[expr];
    if (!slot) {
        slot = std::move(m);
    }
    return *slot;
}

BoundReport conversion_bounds(const std::string &source, const std::string &target) {
    const MonotoneValues &s = monotone_values(source);
    const MonotoneValues &t = monotone_values(target);
    if (s.nullity == 0 || t.nullity == 0) {
        throw std::invalid_argument("conversion bounds need non-stabilizer source and target");
    }
    BoundReport r;
    r.source = source;
    r.target = target;
    r.extent_solved = s.extent_solved && t.extent_solved;
    r.nullity_ratio = (double)t.nullity / (double)s.nullity;
    r.extent_ratio = std::log(t.extent) / std::log(s.extent);
    r.mu2_ratio = t.mu2.to_double() / s.mu2.to_double();
    r.lower = std::max(r.nullity_ratio, r.extent_ratio);
    r.lower_star = r.extent_ratio > r.nullity_ratio;
    r.upper = std::min(1 / r.nullity_ratio, 1 / r.extent_ratio);
    r.upper_star = 1 / r.extent_ratio < 1 / r.nullity_ratio;
    r.lower_dagger = r.mu2_ratio;
    r.upper_dagger = 1 / r.mu2_ratio;
    return r;
}

std::string format6(double v) {
    if (v == 0) {
        return "0";
    }
    // glibc printf rounds the exact binary value, ties to even.
    return sig6(v, "%.6g");
}

const std::vector<std::pair<std::string, std::string>> &table_states() {
    static const std::vector<std::pair<std::string, std::string>> states = {
        {"|sqrtT>", "sqrtT"}, {"|T>", "T"},          {"|CS>", "CS"},   {"|CCS>", "CnS:3"},
        {"|C3S>", "CnS:4"},   {"|CCZ>", "CCZ"},      {"|C3Z>", "CnZ:4"}, {"|C4Z>", "CnZ:5"},
        {"|CCZ_{123,145}>", "CCZ123145"}, {"|W3>", "W:3"}, {"|W4>", "W:4"}, {"|W5>", "W:5"},
    };
    return states;
}

const std::vector<std::string> &table_names() {
    static const std::vector<std::string> names = {"t_conversion",  "ccz_conversion", "ccz_extended",
                                                   "extent_values", "mu2_values",     "nullity_values"};
    return names;
}

Table table(const std::string &name) {
    if (name == "t_conversion" || name == "ccz_conversion" || name == "ccz_extended") {
        return conversion_table(name);
    }
    Table out;
    out.name = name;
    const auto &states = table_states();
    if (name == "extent_values") {
        out.caption = "Stabilizer extent: solver value (with certified gap) up to 3 qubits, closed form above.";
        out.columns = {"state", "expr", "closed_form", "value", "source", "gap"};
        for (const auto &[label, expr] : states) {
            const MonotoneValues &m = monotone_values(expr);
            out.rows.push_back({label, expr, m.extent_exact, sig6(m.extent, "%.8f"),
                                m.extent_solved ? "solved" : "closed form", sig6(m.extent_gap, "%.1e")});
        }
    } else if (name == "mu2_values") {
        out.caption = "Dyadic monotone, exact.";
        out.columns = {"state", "expr", "mu2", "decimal"};
        for (const auto &[label, expr] : states) {
            const MonotoneValues &m = monotone_values(expr);
            out.rows.push_back({label, expr, m.mu2.mixed_str(), format6(m.mu2.to_double())});
        }
    } else if (name == "nullity_values") {
        out.caption = "Stabilizer nullity.";
        out.columns = {"state", "expr", "qubits", "nullity"};
        for (const auto &[label, expr] : states) {
            const MonotoneValues &m = monotone_values(expr);
            out.rows.push_back({label, expr, std::to_string(m.qubits), std::to_string(m.nullity)});
        }
    } else {
        throw std::invalid_argument("unknown table '" + name + "'");
    }
    return out;
}

std::string Table::to_markdown() const {
    std::stringstream out;
    out << "| ";
    for (size_t i = 0; i < columns.size(); i++) {
        out << columns[i] << (i + 1 < columns.size() ? " | " : " |\n");
    }
    out << "|";
    for (size_t i = 0; i < columns.size(); i++) {
        out << "---|";
    }
    out << "\n";
    for (const auto &row : rows) {
        out << "| ";
        for (size_t i = 0; i < row.size(); i++) {
            out << row[i] << (i + 1 < row.size() ? " | " : " |\n");
        }
    }
    return out.str();
}

std::string Table::to_csv() const {
    std::stringstream out;
    for (size_t i = 0; i < columns.size(); i++) {
        out << csv_field(columns[i]) << (i + 1 < columns.size() ? "," : "\n");
    }
    for (const auto &row : rows) {
        for (size_t i = 0; i < row.size(); i++) {
            out << csv_field(row[i]) << (i + 1 < row.size() ? "," : "\n");
        }
    }
    return out.str();
}

std::string Table::to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["caption"] = caption;
    j["columns"] = columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto &row : rows) {
        nlohmann::ordered_json r;
        for (size_t i = 0; i < columns.size(); i++) {
            r[columns[i]] = row[i];
        }
        j["rows"].push_back(r);
    }
    return j.dump(2) + "\n";
}

SynthFamily parse_synth_family(const std::string &text) {
    if (text == "T") {
        return SynthFamily::T;
    }
    if (text == "CS") {
        return SynthFamily::CS;
    }
    if (text == "CCZ") {
        return SynthFamily::CCZ;
    }
    if (text == "mixed_sqrtT" || text == "sqrtT") {
        return SynthFamily::MIXED_SQRT_T;
    }
    if (text == "general") {
        return SynthFamily::GENERAL;
    }
    throw std::invalid_argument("unknown family '" + text + "' (T, CS, CCZ, mixed_sqrtT, general)");
}

SynthesisBound synthesis_bound(SynthFamily family, double epsilon, double C, SynthForm form, int d) {
    if (!(epsilon > 0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
    double L = -std::log2(epsilon);
    SynthesisBound b;
    if (form == SynthForm::UNITARY) {
        if (!(C > 1)) {
            throw std::invalid_argument("C must exceed 1");
        }
        if (!(epsilon < 1 / (256 * C))) {
            throw std::out_of_range("out of regime: unitary-form bounds need epsilon < 1/(2^8 C)");
        }
        double lc = std::log2(C);
        switch (family) {
        case SynthFamily::T:
        case SynthFamily::CS:
            b.value = L / 6 - lc / 6 - 1;
            b.formula = "log2(1/eps)/6 - log2(C)/6 - 1";
            break;
        case SynthFamily::CCZ:
            b.value = L / 8 - lc / 8 - 0.75;
            b.formula = "log2(1/eps)/8 - log2(C)/8 - 3/4";
            break;
        case SynthFamily::MIXED_SQRT_T:
            b.value = L / 14 - lc / 14 - 3.0 / 14;
            b.formula = "N_sqrtT + 6/7 N_T >= log2(1/eps)/14 - log2(C)/14 - 3/14";
            break;
        case SynthFamily::GENERAL:
            throw std::invalid_argument("the general level-d bound is state-form only");
        }
        b.probability = (C - 1) / C;
    } else {
        if (!(epsilon < 0.125)) {
            throw std::out_of_range("out of regime: state-form bounds need epsilon < 1/8");
        }
        switch (family) {
        case SynthFamily::T:
        case SynthFamily::CS:
            b.value = L / 3 - 2.0 / 3;
            b.formula = "log2(1/eps)/3 - 2/3";
            break;
        case SynthFamily::CCZ:
            b.value = L / 4 - 0.5;
            b.formula = "log2(1/eps)/4 - 1/2";
            break;
        case SynthFamily::MIXED_SQRT_T:
            b.value = L / 7 - 1.0 / 14;
            b.formula = "N_sqrtT + 6/7 N_T >= log2(1/eps)/7 - 1/14";
            break;
        case SynthFamily::GENERAL:
            if (d < 1) {
                throw std::invalid_argument("level d must be at least 1");
            }
            b.value = L / std::ldexp(1.0, d - 1) - std::ldexp(1.0, 2 - d);
            b.formula = "mu2 + nu >= log2(1/eps)/2^(d-1) - 1/2^(d-2)";
            break;
        }
        b.probability = 1;
    }
    b.average = b.probability * b.value;
    return b;
}

std::vector<PauliOperator> random_commuting_paulis(size_t n, size_t k, std::mt19937_64 &rng) {
    if (k > n) {
        throw std::invalid_argument("at most n independent commuting Paulis exist");
    }
    std::vector<PauliOperator> out;
    // Reduced rows of the symplectic vectors (x << n | z) chosen so far.
    std::vector<uint64_t> basis;
    uint64_t mask = (uint64_t{1} << n) - 1;
    while (out.size() < k) {
        uint64_t x = rng() & mask, z = rng() & mask;
        if ((x | z) == 0) {
            continue;
        }
        PauliOperator p = PauliOperator::hermitian(n, x, z, (rng() & 1) ? 1 : -1);
        bool ok = true;
        for (const auto &q : out) {
            ok = ok && commutes(p, q);
        }
        if (!ok) {
            continue;
        }
        uint64_t v = (x << n) | z;
        for (uint64_t b : basis) {
            v = std::min(v, v ^ b);
        }
        if (v == 0) {
            continue;
        }
        basis.push_back(v);
        std::sort(basis.rbegin(), basis.rend());
        out.push_back(p);
    }
    return out;
}

FloorReport probability_floor_check(const std::string &expr, FloorRule rule, size_t trials, uint64_t seed) {
    ExactState s = resource_state(expr);
    size_t n = s.num_qubits();
    if (n > 4) {
        throw std::out_of_range("probability floors are checked on at most 4 qubits");
    }
    double norm = s.norm_sq().to_complex().real();
    double mu2 = rule == FloorRule::DYADIC ? dyadic_monotone(s).to_double() : 0;
    int d = rule == FloorRule::DYADIC ? ring_level(s) : 0;
    FloorReport rep;
    rep.expr = expr;
    rep.rule = rule;
    rep.trials = trials;
    rep.seed = seed;
    rep.min_log2_margin = INFINITY;
    std::mt19937_64 rng(seed);
    for (size_t t = 0; t < trials; t++) {
        size_t k = 1 + rng() % n;
        auto ps = random_commuting_paulis(n, k, rng);
        ExactState cur = s;
        for (const auto &p : ps) {
            cur = project(cur, p, 1).first;
        }
        if (cur.norm_sq().is_zero()) {
            rep.zeros++;
            continue;
        }
        double p = cur.norm_sq().to_complex().real() / norm;
        double floor_log2 = 0;
        switch (rule) {
        case FloorRule::T_STATES:
            floor_log2 = -(double)(2 * k + n);
            break;
        case FloorRule::GAUSSIAN:
            floor_log2 = -(double)(k + n);
            break;
        case FloorRule::DYADIC:
            floor_log2 = -std::ldexp(1.0, d - 1) * ((double)k + mu2);
            break;
        }
        double margin = std::log2(p) - floor_log2;
        rep.min_nonzero = std::min(rep.min_nonzero, p);
        rep.min_log2_margin = std::min(rep.min_log2_margin, margin);
        if (margin < -1e-9) {
            rep.violations++;
            std::string w;
            for (const auto &q : ps) {
                w += (w.empty() ? "" : " ") + q.str();
            }
            rep.witnesses.push_back(w + " p=" + std::to_string(p));
        }
    }
    return rep;
}

}  // namespace mb
