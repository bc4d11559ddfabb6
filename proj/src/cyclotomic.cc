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

#include "magicbound/cyclotomic.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mb {

namespace {

void check_level(int level) {
    if (level < 0 || level > MAX_LEVEL) {
        throw std::out_of_range("cyclotomic level " + std::to_string(level) + " outside [0, " +
                                std::to_string(MAX_LEVEL) + "]");
    }
}

int64_t floor_mod(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Dyadic

Dyadic::Dyadic(mpz_class n, int64_t e) : num(std::move(n)), exp(e) {
    if (num == 0) {
        exp = 0;
        return;
    }
    if (exp < 0) {
        num <<= -exp;
        exp = 0;
        return;
    }
    if (exp > 0) {
        mp_bitcnt_t tz = mpz_scan1(num.get_mpz_t(), 0);
        int64_t shift = std::min<int64_t>(exp, (int64_t)tz);
        if (shift > 0) {
            mpz_fdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), shift);
            exp -= shift;
        }
    }
}

Dyadic Dyadic::from_str(const std::string &text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Dyadic(mpz_class(text), 0);
    }
    std::string den = text.substr(slash + 1);
    if (den.rfind("2^", 0) == 0) {
        return Dyadic(mpz_class(text.substr(0, slash)), std::stoll(den.substr(2)));
    }
    mpz_class d(den);
    mp_bitcnt_t e = mpz_scan1(d.get_mpz_t(), 0);
    if (d <= 0 || d != (mpz_class(1) << e)) {
        throw std::invalid_argument("not a dyadic rational: " + text);
    }
    return Dyadic(mpz_class(text.substr(0, slash)), (int64_t)e);
}

double Dyadic::to_double() const {
    long e2;
    double m = mpz_get_d_2exp(&e2, num.get_mpz_t());
    return std::ldexp(m, (int)(e2 - exp));
}

std::string Dyadic::str() const {
    if (exp == 0) {
        return num.get_str();
    }
    return num.get_str() + "/2^" + std::to_string(exp);
}

std::string Dyadic::mixed_str() const {
    if (exp == 0) {
        return num.get_str();
    }
    mpz_class whole;
    mpz_tdiv_q_2exp(whole.get_mpz_t(), num.get_mpz_t(), exp);
    mpz_class frac = num - (whole << exp);
    std::string f = mpz_class(abs(frac)).get_str() + "/" + mpz_class(mpz_class(1) << exp).get_str();
    if (whole == 0) {
        return (frac < 0 ? "-" : "") + f;
    }
    return whole.get_str() + (frac < 0 ? "-" : "+") + f;
}

Dyadic Dyadic::operator+(const Dyadic &other) const {
    int64_t e = std::max(exp, other.exp);
    mpz_class a = num << (e - exp);
    mpz_class b = other.num << (e - other.exp);
    return Dyadic(a + b, e);
}

Dyadic Dyadic::operator-(const Dyadic &other) const {
    return *this + (-other);
}

Dyadic Dyadic::operator-() const {
    Dyadic r = *this;
    r.num = -r.num;
    return r;
}

Dyadic Dyadic::operator*(const Dyadic &other) const {
    return Dyadic(num * other.num, exp + other.exp);
}

Dyadic Dyadic::scaled(int64_t e) const {
    return Dyadic(num, exp - e);
}

bool Dyadic::operator==(const Dyadic &other) const {
    return exp == other.exp && num == other.num;
}
bool Dyadic::operator!=(const Dyadic &other) const {
    return !(*this == other);
}
bool Dyadic::operator<(const Dyadic &other) const {
    return (*this - other).num < 0;
}
bool Dyadic::operator<=(const Dyadic &other) const {
    return (*this - other).num <= 0;
}
bool Dyadic::operator>(const Dyadic &other) const {
    return other < *this;
}
bool Dyadic::operator>=(const Dyadic &other) const {
    return other <= *this;
}

Dyadic dyadic_v2(const Dyadic &x) {
    if (x.num == 0) {
        throw std::domain_error("v2 of zero is not a rational");
    }
    return Dyadic((long)mpz_scan1(x.num.get_mpz_t(), 0) - x.exp);
}

// ---------------------------------------------------------------------------
// Valuation

bool Valuation::operator==(const Valuation &other) const {
    if (infinite || other.infinite) {
        return infinite == other.infinite;
    }
    return value == other.value;
}

bool Valuation::operator<(const Valuation &other) const {
    if (infinite) {
        return false;
    }
    if (other.infinite) {
        return true;
    }
    return value < other.value;
}

bool Valuation::operator<=(const Valuation &other) const {
    return !(other < *this);
}

Valuation Valuation::operator+(const Valuation &other) const {
    if (infinite || other.infinite) {
        return inf();
    }
    return of(value + other.value);
}

std::string Valuation::str() const {
    return infinite ? "inf" : value.str();
}

Valuation min(const Valuation &a, const Valuation &b) {
    return b < a ? b : a;
}

// ---------------------------------------------------------------------------
// CycNumber

CycNumber::CycNumber() : level_(0), denom_exp_(0), coeffs_(1) {
}

CycNumber::CycNumber(long v) : level_(0), denom_exp_(0), coeffs_{mpz_class(v)} {
}

CycNumber::CycNumber(const mpz_class &v) : level_(0), denom_exp_(0), coeffs_{v} {
}

CycNumber CycNumber::from_coeffs(int level, std::vector<mpz_class> coeffs, int64_t denom_exp) {
    check_level(level);
    if (coeffs.size() != (size_t{1} << level)) {
        throw std::invalid_argument("coefficient vector length must be 2^level");
    }
    CycNumber r;
    r.level_ = level;
    r.coeffs_ = std::move(coeffs);
    r.denom_exp_ = denom_exp;
    if (denom_exp < 0) {
        for (auto &c : r.coeffs_) {
            c <<= -denom_exp;
        }
        r.denom_exp_ = 0;
    }
    r.reduce();
    return r;
}

CycNumber CycNumber::from_dyadic(const Dyadic &d) {
    return from_coeffs(0, {d.num}, d.exp);
}

CycNumber CycNumber::zeta(int level, int64_t j) {
    check_level(level);
    int64_t half = int64_t{1} << level;
    int64_t e = floor_mod(j, 2 * half);
    std::vector<mpz_class> c(half);
    if (e < half) {
        c[e] = 1;
    } else {
        c[e - half] = -1;
    }
    return from_coeffs(level, std::move(c));
}

CycNumber CycNumber::imag_unit() {
    return zeta(1, 1);
}

CycNumber CycNumber::sqrt2() {
    // zeta_8 + zeta_8^-1 = zeta_8 - zeta_8^3.
    return from_coeffs(2, {0, 1, 0, -1});
}

CycNumber CycNumber::inv_sqrt2() {
    return from_coeffs(2, {0, 1, 0, -1}, 1);
}

bool CycNumber::is_zero() const {
    return level_ == 0 && coeffs_[0] == 0;
}

bool CycNumber::is_real() const {
    return *this == conj();
}

bool CycNumber::is_rational() const {
    return level_ == 0;
}

Dyadic CycNumber::to_dyadic() const {
    if (level_ != 0) {
        throw std::domain_error("cyclotomic number is not rational: " + str());
    }
    return Dyadic(coeffs_[0], denom_exp_);
}

std::vector<mpz_class> CycNumber::coeffs_at(int level) const {
    check_level(level);
    if (level < level_) {
        throw std::invalid_argument("cannot express value at a lower level");
    }
    std::vector<mpz_class> out(size_t{1} << level);
    size_t stride = size_t{1} << (level - level_);
    for (size_t j = 0; j < coeffs_.size(); j++) {
        out[j * stride] = coeffs_[j];
    }
    return out;
}

void CycNumber::reduce() {
    bool all_zero = true;
    for (const auto &c : coeffs_) {
        if (c != 0) {
            all_zero = false;
            break;
        }
    }
    if (all_zero) {
        level_ = 0;
        denom_exp_ = 0;
        coeffs_.assign(1, mpz_class(0));
        return;
    }
    while (level_ > 0) {
        bool odd_zero = true;
        for (size_t j = 1; j < coeffs_.size(); j += 2) {
            if (coeffs_[j] != 0) {
                odd_zero = false;
                break;
            }
        }
        if (!odd_zero) {
            break;
        }
        for (size_t j = 0; j < coeffs_.size() / 2; j++) {
            coeffs_[j] = coeffs_[2 * j];
        }
        coeffs_.resize(coeffs_.size() / 2);
        level_--;
    }
    if (denom_exp_ > 0) {
        mp_bitcnt_t tz = ~mp_bitcnt_t{0};
        for (const auto &c : coeffs_) {
            if (c != 0) {
                tz = std::min(tz, mpz_scan1(c.get_mpz_t(), 0));
            }
        }
        int64_t shift = std::min<int64_t>(denom_exp_, (int64_t)tz);
        if (shift > 0) {
            for (auto &c : coeffs_) {
                mpz_fdiv_q_2exp(c.get_mpz_t(), c.get_mpz_t(), shift);
            }
            denom_exp_ -= shift;
        }
    }
}

CycNumber CycNumber::operator+(const CycNumber &other) const {
    CycNumber r = *this;
    r += other;
    return r;
}

CycNumber &CycNumber::operator+=(const CycNumber &other) {
    if (other.is_zero()) {
        return *this;
    }
    if (is_zero()) {
        return *this = other;
    }
    int level = std::max(level_, other.level_);
    int64_t k = std::max(denom_exp_, other.denom_exp_);
    if (level != level_) {
        coeffs_ = coeffs_at(level);
        level_ = level;
    }
    if (k != denom_exp_) {
        for (auto &c : coeffs_) {
            c <<= (k - denom_exp_);
        }
        denom_exp_ = k;
    }
    size_t stride = size_t{1} << (level - other.level_);
    int64_t shift = k - other.denom_exp_;
    for (size_t j = 0; j < other.coeffs_.size(); j++) {
        if (shift == 0) {
            coeffs_[j * stride] += other.coeffs_[j];
        } else {
            coeffs_[j * stride] += other.coeffs_[j] << shift;
        }
    }
    reduce();
    return *this;
}

CycNumber CycNumber::operator-(const CycNumber &other) const {
    return *this + (-other);
}

CycNumber &CycNumber::operator-=(const CycNumber &other) {
    return *this += -other;
}

CycNumber CycNumber::operator-() const {
    CycNumber r = *this;
    for (auto &c : r.coeffs_) {
        c = -c;
    }
    return r;
}

CycNumber CycNumber::operator*(const CycNumber &other) const {
    if (is_zero() || other.is_zero()) {
        return CycNumber();
    }
    int level = std::max(level_, other.level_);
    size_t half = size_t{1} << level;
    size_t sa = size_t{1} << (level - level_);
    size_t sb = size_t{1} << (level - other.level_);
    std::vector<mpz_class> out(half);
    mpz_class t;
    for (size_t i = 0; i < coeffs_.size(); i++) {
        if (coeffs_[i] == 0) {
            continue;
        }
        for (size_t j = 0; j < other.coeffs_.size(); j++) {
            if (other.coeffs_[j] == 0) {
                continue;
            }
            size_t e = i * sa + j * sb;
            mpz_mul(t.get_mpz_t(), coeffs_[i].get_mpz_t(), other.coeffs_[j].get_mpz_t());
            if (e < half) {
                out[e] += t;
            } else {
                out[e - half] -= t;
            }
        }
    }
    CycNumber r;
    r.level_ = level;
    r.denom_exp_ = denom_exp_ + other.denom_exp_;
    r.coeffs_ = std::move(out);
    r.reduce();
    return r;
}

CycNumber &CycNumber::operator*=(const CycNumber &other) {
    return *this = *this * other;
}

bool CycNumber::operator==(const CycNumber &other) const {
    return level_ == other.level_ && denom_exp_ == other.denom_exp_ && coeffs_ == other.coeffs_;
}

bool CycNumber::operator!=(const CycNumber &other) const {
    return !(*this == other);
}

CycNumber CycNumber::scaled(int64_t e) const {
    if (is_zero()) {
        return *this;
    }
    CycNumber r = *this;
    r.denom_exp_ -= e;
    if (r.denom_exp_ < 0) {
        for (auto &c : r.coeffs_) {
            c <<= -r.denom_exp_;
        }
        r.denom_exp_ = 0;
    }
    r.reduce();
    return r;
}

CycNumber CycNumber::times_zeta(int level, int64_t j) const {
    check_level(level);
    if (is_zero()) {
        return *this;
    }
    int lv = std::max(level, level_);
    int64_t half = int64_t{1} << lv;
    int64_t shift = floor_mod(j << (lv - level), 2 * half);
    std::vector<mpz_class> src = coeffs_at(lv);
    std::vector<mpz_class> out(half);
    for (int64_t i = 0; i < half; i++) {
        if (src[i] == 0) {
            continue;
        }
        int64_t e = (i + shift) % (2 * half);
        if (e < half) {
            out[e] = std::move(src[i]);
        } else {
            out[e - half] = -src[i];
        }
    }
    CycNumber r;
    r.level_ = lv;
    r.denom_exp_ = denom_exp_;
    r.coeffs_ = std::move(out);
    r.reduce();
    return r;
}

CycNumber CycNumber::sigma(int64_t k) const {
    if (k % 2 == 0) {
        throw std::invalid_argument("sigma requires an odd index");
    }
    if (level_ == 0) {
        return *this;
    }
    int64_t half = int64_t{1} << level_;
    std::vector<mpz_class> out(half);
    for (int64_t j = 0; j < half; j++) {
        if (coeffs_[j] == 0) {
            continue;
        }
        int64_t e = floor_mod(j * floor_mod(k, 2 * half), 2 * half);
        if (e < half) {
            out[e] += coeffs_[j];
        } else {
            out[e - half] -= coeffs_[j];
        }
    }
    CycNumber r;
    r.level_ = level_;
    r.denom_exp_ = denom_exp_;
    r.coeffs_ = std::move(out);
    r.reduce();
    return r;
}

CycNumber CycNumber::conj() const {
    return sigma(-1);
}

CycNumber CycNumber::abs2() const {
    return *this * conj();
}

std::complex<double> CycNumber::to_complex() const {
    double re = 0;
    double im = 0;
    double half = (double)(int64_t{1} << level_);
    for (size_t j = 0; j < coeffs_.size(); j++) {
        if (coeffs_[j] == 0) {
            continue;
        }
        long e2;
        double m = mpz_get_d_2exp(&e2, coeffs_[j].get_mpz_t());
        double v = std::ldexp(m, (int)(e2 - denom_exp_));
        double angle = std::numbers::pi * (double)j / half;
        re += v * std::cos(angle);
        im += v * std::sin(angle);
    }
    return {re, im};
}

std::string CycNumber::str() const {
    if (level_ == 0) {
        return to_dyadic().str();
    }
    std::ostringstream out;
    bool first = true;
    out << "(";
    for (size_t j = 0; j < coeffs_.size(); j++) {
        if (coeffs_[j] == 0) {
            continue;
        }
        if (!first) {
            out << (coeffs_[j] < 0 ? " - " : " + ");
        } else if (coeffs_[j] < 0) {
            out << "-";
        }
        first = false;
        mpz_class a = abs(coeffs_[j]);
        if (j == 0) {
            out << a.get_str();
        } else {
            if (a != 1) {
                out << a.get_str() << "*";
            }
            out << "z" << (2 << level_) << "^" << j;
        }
    }
    out << ")";
    if (denom_exp_ > 0) {
        out << "/2^" << denom_exp_;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Norm and valuation

Dyadic norm(const CycNumber &x, int d) {
    check_level(d);
    if (d < x.level()) {
        throw std::invalid_argument("norm level below the number's level");
    }
    // Work with integer coefficients; the denominator contributes 2^(-k 2^d).
    std::vector<mpz_class> c = x.coeffs_at(d);
    int level = d;
    while (level > 0) {
        // x * sigma_{1 + 2^level}(x) = E^2 - O^2 lies one level down.
        size_t half = size_t{1} << level;
        std::vector<mpz_class> even(half / 2), odd(half / 2);
        for (size_t j = 0; j < half; j++) {
            (j % 2 == 0 ? even : odd)[j / 2] = c[j];
        }
        // In the subring, E = sum e_m w^m and O = zeta * sum o_m w^m with w = zeta^2.
        // O^2 = w * (sum o_m w^m)^2.
        size_t sub = half / 2;
        std::vector<mpz_class> e2(sub), o2(sub);
        mpz_class t;
        auto square_into = [&](const std::vector<mpz_class> &v, std::vector<mpz_class> &out) {
            for (size_t i = 0; i < sub; i++) {
                if (v[i] == 0) {
                    continue;
                }
                for (size_t j = 0; j < sub; j++) {
                    if (v[j] == 0) {
                        continue;
                    }
                    mpz_mul(t.get_mpz_t(), v[i].get_mpz_t(), v[j].get_mpz_t());
                    size_t e = i + j;
                    if (e < sub) {
                        out[e] += t;
                    } else {
                        out[e - sub] -= t;
                    }
                }
            }
        };
        square_into(even, e2);
        square_into(odd, o2);
        std::vector<mpz_class> next(sub);
        for (size_t j = 0; j < sub; j++) {
            next[j] = e2[j];
        }
        // Subtract w * o2.
        for (size_t j = 0; j < sub; j++) {
            if (j + 1 < sub) {
                next[j + 1] -= o2[j];
            } else {
                next[0] += o2[j];
            }
        }
        c = std::move(next);
        level--;
    }
    return Dyadic(c[0], x.denom_exp() << d);
}

Dyadic norm_by_product(const CycNumber &x, int d) {
    check_level(d);
    if (d < x.level()) {
        throw std::invalid_argument("norm level below the number's level");
    }
    CycNumber acc(1);
    int64_t count = int64_t{1} << d;
    for (int64_t k = 0; k < count; k++) {
        int64_t half = count;
        std::vector<mpz_class> src = x.coeffs_at(d);
        std::vector<mpz_class> out(half);
        for (int64_t j = 0; j < half; j++) {
            if (src[j] == 0) {
                continue;
            }
            int64_t e = (j * (2 * k + 1)) % (2 * half);
            if (e < half) {
                out[e] += src[j];
            } else {
                out[e - half] -= src[j];
            }
        }
        acc *= CycNumber::from_coeffs(d, std::move(out), x.denom_exp());
    }
    return acc.to_dyadic();
}

Valuation v2(const CycNumber &x) {
    if (x.is_zero()) {
        return Valuation::inf();
    }
    int d = x.level();
    Dyadic n = norm(x, d);
    return Valuation::of(dyadic_v2(n).scaled(-d));
}

// ---------------------------------------------------------------------------
// Constants

CycNumber trig_constant(TrigKind kind, int64_t j, int d) {
    check_level(d);
    if (kind == TrigKind::EXP) {
        return CycNumber::zeta(d, j);
    }
    int lv = std::max(d, 1);
    CycNumber p = CycNumber::zeta(d, j);
    CycNumber m = CycNumber::zeta(d, -j);
    if (kind == TrigKind::COS) {
        return (p + m).scaled(-1);
    }
    // sin = (p - m) / (2i) = -i (p - m) / 2.
    return ((p - m) * CycNumber::zeta(lv, -(int64_t{1} << (lv - 1)))).scaled(-1);
}

CycNumber unit_u(int64_t j, int d) {
    if (j < 1) {
        throw std::invalid_argument("unit index must be positive");
    }
    CycNumber acc;
    for (int64_t k = 0; k <= 2 * j - 2; k++) {
        acc += CycNumber::zeta(d, k);
    }
    return acc;
}

CycNumber unit_u_inverse(int64_t j, int d) {
    if (j < 1) {
        throw std::invalid_argument("unit index must be positive");
    }
    int64_t mod = int64_t{2} << d;
    int64_t a = floor_mod(2 * j - 1, mod);
    int64_t inv = 1;
    while (floor_mod(a * inv, mod) != 1) {
        inv += 2;
    }
    CycNumber acc;
    for (int64_t m = 0; m < inv; m++) {
        acc += CycNumber::zeta(d, a * m);
    }
    return acc;
}

std::ostream &operator<<(std::ostream &out, const Dyadic &x) {
    return out << x.str();
}

std::ostream &operator<<(std::ostream &out, const Valuation &x) {
    return out << x.str();
}

std::ostream &operator<<(std::ostream &out, const CycNumber &x) {
    return out << x.str();
}

}  // namespace mb
