// Copyright (C) 2026 the pencilops developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>

namespace pencilops::detail {

/// Minimal double-double type: an unevaluated sum hi + lo with
/// |lo| <= ulp(hi)/2. Only the operations the determinant-interpolation
/// oracle needs are provided. Kernels are the classic error-free transforms
/// (Knuth two-sum, FMA-based two-prod).
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    DD() = default;
    DD(double x) : hi(x), lo(0.0) {}
    DD(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi; }
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return DD(s, err);
}

inline DD quick_two_sum(double a, double b) {
    const double s = a + b;
    return DD(s, b - (s - a));
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return DD(p, std::fma(a, b, -p));
}

inline DD operator+(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    const double lo = s.lo + (a.lo + b.lo);
    return quick_two_sum(s.hi, lo);
}

inline DD operator-(DD a) { return DD(-a.hi, -a.lo); }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    const double lo = p.lo + (a.hi * b.lo + a.lo * b.hi);
    return quick_two_sum(p.hi, lo);
}

inline DD operator/(DD a, DD b) {
    const double q1 = a.hi / b.hi;
    DD r = a - b * DD(q1);
    const double q2 = r.hi / b.hi;
    r = r - b * DD(q2);
    const double q3 = r.hi / b.hi;
    DD q = quick_two_sum(q1, q2);
    return q + DD(q3);
}

inline bool operator<(DD a, DD b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(DD a, DD b) { return b < a; }
inline DD abs(DD a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

/// Complex double-double, component-wise.
struct CDD {
    DD re, im;

    CDD() = default;
    CDD(DD r, DD i) : re(r), im(i) {}
    CDD(double r, double i = 0.0) : re(r), im(i) {}
    CDD(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> to_complex() const { return {re.hi + re.lo, im.hi + im.lo}; }
};

inline CDD operator+(CDD a, CDD b) { return CDD(a.re + b.re, a.im + b.im); }
inline CDD operator-(CDD a, CDD b) { return CDD(a.re - b.re, a.im - b.im); }
inline CDD operator-(CDD a) { return CDD(-a.re, -a.im); }

inline CDD operator*(CDD a, CDD b) {
    return CDD(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

inline CDD operator*(DD a, CDD b) { return CDD(a * b.re, a * b.im); }

inline DD abs2(CDD a) { return a.re * a.re + a.im * a.im; }

inline CDD operator/(CDD a, CDD b) {
    const DD d = abs2(b);
    const CDD num = a * CDD(b.re, -b.im);
    return CDD(num.re / d, num.im / d);
}

} // namespace pencilops::detail
