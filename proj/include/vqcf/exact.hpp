// Copyright 2026 The vqcf authors
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

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace vqcf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Converts a finite double to the rational it represents exactly
/// (every finite double is a dyadic rational).
inline Rational rational_from_double(double v) {
    if (v == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(v, &exp);
    // 53 bits of mantissa make the scaled value an exact integer.
    auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r(scaled);
    if (exp >= 0) {
        r *= Rational(BigInt(1) << exp);
    } else {
        r /= Rational(BigInt(1) << -exp);
    }
    return r;
}

inline double rational_to_double(const Rational& r) {
    return static_cast<double>(r);
}

/// Exact complex number with rational real and imaginary parts.
/// Closed under all the arithmetic the spectrum computation performs,
/// so zero tests are decidable.
struct ExactComplex {
    Rational re{0};
    Rational im{0};

    ExactComplex() = default;
    ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    explicit ExactComplex(Rational r) : re(std::move(r)) {}
    explicit ExactComplex(const BigInt& r) : re(Rational(r)) {}
    explicit ExactComplex(int r) : re(Rational(r)) {}

    static ExactComplex zero() { return ExactComplex{}; }
    static ExactComplex one() { return ExactComplex{Rational(1), Rational(0)}; }

    /// i^k for any integer k.
    static ExactComplex unit_phase(int k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return {Rational(1), Rational(0)};
            case 1: return {Rational(0), Rational(1)};
            case 2: return {Rational(-1), Rational(0)};
            default: return {Rational(0), Rational(-1)};
        }
    }

    bool is_zero() const { return re == 0 && im == 0; }

    ExactComplex operator+(const ExactComplex& o) const { return {re + o.re, im + o.im}; }
    ExactComplex operator-(const ExactComplex& o) const { return {re - o.re, im - o.im}; }
    ExactComplex operator*(const ExactComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    ExactComplex operator*(const Rational& r) const { return {re * r, im * r}; }
    ExactComplex operator-() const { return {-re, -im}; }
    ExactComplex& operator+=(const ExactComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    ExactComplex& operator*=(const ExactComplex& o) {
        *this = *this * o;
        return *this;
    }
    bool operator==(const ExactComplex& o) const { return re == o.re && im == o.im; }

    ExactComplex conj() const { return {re, -im}; }

    std::complex<double> to_complex() const {
        return {rational_to_double(re), rational_to_double(im)};
    }

    std::string str() const {
        return re.str() + (im < 0 ? "" : "+") + im.str() + "i";
    }
};

inline BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

}  // namespace vqcf
