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

#ifndef MAGICBOUND_CYCLOTOMIC_H
#define MAGICBOUND_CYCLOTOMIC_H

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mb {

/// Highest supported cyclotomic level. Level d uses zeta = exp(i pi / 2^d).
constexpr int MAX_LEVEL = 8;

/// An exact rational num / 2^exp, kept reduced (num odd or exp == 0).
struct Dyadic {
    mpz_class num;
    int64_t exp = 0;

    Dyadic() = default;
    Dyadic(long v) : num(v) {
    }
    Dyadic(mpz_class n, int64_t e);

    static Dyadic from_str(const std::string &text);

    bool is_zero() const {
        return num == 0;
    }
    int sign() const {
        return sgn(num);
    }
    double to_double() const;
    /// "a/2^K", or "a" when K == 0.
    std::string str() const;
    /// Integer part plus fractional part, e.g. "2+1/8" or "-1/2".
    std::string mixed_str() const;

    Dyadic operator+(const Dyadic &other) const;
    Dyadic operator-(const Dyadic &other) const;
    Dyadic operator-() const;
    Dyadic operator*(const Dyadic &other) const;
    /// Multiplies by 2^e (e may be negative).
    Dyadic scaled(int64_t e) const;
    bool operator==(const Dyadic &other) const;
    bool operator!=(const Dyadic &other) const;
    bool operator<(const Dyadic &other) const;
    bool operator<=(const Dyadic &other) const;
    bool operator>(const Dyadic &other) const;
    bool operator>=(const Dyadic &other) const;
};

/// The 2-adic valuation of a dyadic rational. The argument must be nonzero.
Dyadic dyadic_v2(const Dyadic &x);

/// A rational 2-adic valuation or +infinity.
struct Valuation {
    bool infinite = true;
    Dyadic value;

    static Valuation inf() {
        return {};
    }
    static Valuation of(Dyadic v) {
        return {false, std::move(v)};
    }
    bool operator==(const Valuation &other) const;
    bool operator<(const Valuation &other) const;
    bool operator<=(const Valuation &other) const;
    Valuation operator+(const Valuation &other) const;
    std::string str() const;
};

Valuation min(const Valuation &a, const Valuation &b);

/// An exact element of Z[zeta, 1/2] with zeta = exp(i pi / 2^level).
///
/// The value is 2^-denom_exp * sum_j coeffs[j] zeta^j over j < 2^level.
/// Values are always reduced: the level is minimal and the denominator
/// exponent is zero or some coefficient is odd. Zero is level 0, exponent 0.
class CycNumber {
   public:
    CycNumber();
    CycNumber(long v);
    CycNumber(const mpz_class &v);
    static CycNumber from_coeffs(int level, std::vector<mpz_class> coeffs, int64_t denom_exp = 0);
    static CycNumber from_dyadic(const Dyadic &d);
    /// exp(i pi j / 2^level).
    static CycNumber zeta(int level, int64_t j);
    static CycNumber imag_unit();
    static CycNumber sqrt2();
    static CycNumber inv_sqrt2();

    int level() const {
        return level_;
    }
    int64_t denom_exp() const {
        return denom_exp_;
    }
    const std::vector<mpz_class> &coeffs() const {
        return coeffs_;
    }
    bool is_zero() const;
    bool is_real() const;
    bool is_rational() const;
    /// Requires is_rational().
    Dyadic to_dyadic() const;

    /// Coefficients of the same value at a level >= level(), not reduced.
    std::vector<mpz_class> coeffs_at(int level) const;

    CycNumber operator+(const CycNumber &other) const;
    CycNumber operator-(const CycNumber &other) const;
    CycNumber operator-() const;
    CycNumber operator*(const CycNumber &other) const;
    CycNumber &operator+=(const CycNumber &other);
    CycNumber &operator-=(const CycNumber &other);
    CycNumber &operator*=(const CycNumber &other);
    bool operator==(const CycNumber &other) const;
    bool operator!=(const CycNumber &other) const;

    /// Multiplies by 2^e.
    CycNumber scaled(int64_t e) const;
    /// Multiplies by exp(i pi j / 2^level).
    CycNumber times_zeta(int level, int64_t j) const;
    CycNumber conj() const;
    /// The Galois map zeta -> zeta^k, k odd.
    CycNumber sigma(int64_t k) const;
    /// |x|^2 as an exact element.
    CycNumber abs2() const;

    std::complex<double> to_complex() const;
    std::string str() const;

   private:
    int level_;
    int64_t denom_exp_;
    std::vector<mpz_class> coeffs_;
    void reduce();
};

/// N_d(x) for d >= level(x), computed through the tower of quadratic extensions.
Dyadic norm(const CycNumber &x, int d);
inline Dyadic norm(const CycNumber &x) {
    return norm(x, x.level());
}
/// Reference N_d(x) as the product of all 2^d Galois conjugates. Test oracle.
Dyadic norm_by_product(const CycNumber &x, int d);

/// v2(x) = v2(N_d(x)) / 2^d, or +infinity for zero.
Valuation v2(const CycNumber &x);

enum class TrigKind { COS, SIN, EXP };
/// cos, sin or exp of (pi j / 2^d).
CycNumber trig_constant(TrigKind kind, int64_t j, int d);

/// u_j = (1 - zeta^(2j-1)) / (1 - zeta) at level d, as sum_{k < 2j-1} zeta^k.
CycNumber unit_u(int64_t j, int d);
/// The inverse of unit_u(j, d).
CycNumber unit_u_inverse(int64_t j, int d);

std::ostream &operator<<(std::ostream &out, const Dyadic &x);
std::ostream &operator<<(std::ostream &out, const Valuation &x);
std::ostream &operator<<(std::ostream &out, const CycNumber &x);

}  // namespace mb

#endif
