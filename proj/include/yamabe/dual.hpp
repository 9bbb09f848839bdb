#pragma once

#include <cmath>

namespace yamabe {

// Second-order jet in two variables: value, gradient and Hessian of a
// scalar expression with respect to two seed variables (r1, r2).
// Arithmetic propagates derivatives exactly, so chained closed-form maps
// (conformal factors, coordinate changes) keep analytic accuracy.
struct Dual2 {
    double v = 0.0;
    double d1 = 0.0, d2 = 0.0;
    double d11 = 0.0, d12 = 0.0, d22 = 0.0;

    Dual2() = default;
    explicit Dual2(double value) : v(value) {}

    static Dual2 var1(double x) {
        Dual2 d(x);
        d.d1 = 1.0;
        return d;
    }
    static Dual2 var2(double x) {
        Dual2 d(x);
        d.d2 = 1.0;
        return d;
    }
};

inline Dual2 operator+(const Dual2& a, const Dual2& b) {
    Dual2 r;
    r.v = a.v + b.v;
    r.d1 = a.d1 + b.d1;
    r.d2 = a.d2 + b.d2;
    r.d11 = a.d11 + b.d11;
    r.d12 = a.d12 + b.d12;
    r.d22 = a.d22 + b.d22;
    return r;
}

inline Dual2 operator-(const Dual2& a, const Dual2& b) {
    Dual2 r;
    r.v = a.v - b.v;
    r.d1 = a.d1 - b.d1;
    r.d2 = a.d2 - b.d2;
    r.d11 = a.d11 - b.d11;
    r.d12 = a.d12 - b.d12;
    r.d22 = a.d22 - b.d22;
    return r;
}

inline Dual2 operator-(const Dual2& a) {
    Dual2 r;
    r.v = -a.v;
    r.d1 = -a.d1;
    r.d2 = -a.d2;
    r.d11 = -a.d11;
    r.d12 = -a.d12;
    r.d22 = -a.d22;
    return r;
}

inline Dual2 operator*(const Dual2& a, const Dual2& b) {
    Dual2 r;
    r.v = a.v * b.v;
    r.d1 = a.d1 * b.v + a.v * b.d1;
    r.d2 = a.d2 * b.v + a.v * b.d2;
    r.d11 = a.d11 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d11;
    r.d12 = a.d12 * b.v + a.d1 * b.d2 + a.d2 * b.d1 + a.v * b.d12;
    r.d22 = a.d22 * b.v + 2.0 * a.d2 * b.d2 + a.v * b.d22;
    return r;
}

inline Dual2 operator*(double c, const Dual2& a) { return Dual2(c) * a; }
inline Dual2 operator*(const Dual2& a, double c) { return Dual2(c) * a; }
inline Dual2 operator+(const Dual2& a, double c) { return a + Dual2(c); }
inline Dual2 operator+(double c, const Dual2& a) { return a + Dual2(c); }
inline Dual2 operator-(const Dual2& a, double c) { return a - Dual2(c); }
inline Dual2 operator-(double c, const Dual2& a) { return Dual2(c) - a; }

// Unary chain rule: g = f(a) with f', f'' supplied at a.v.
inline Dual2 chain(const Dual2& a, double f, double fp, double fpp) {
    Dual2 r;
    r.v = f;
    r.d1 = fp * a.d1;
    r.d2 = fp * a.d2;
    r.d11 = fpp * a.d1 * a.d1 + fp * a.d11;
    r.d12 = fpp * a.d1 * a.d2 + fp * a.d12;
    r.d22 = fpp * a.d2 * a.d2 + fp * a.d22;
    return r;
}

inline Dual2 inv(const Dual2& a) {
    const double iv = 1.0 / a.v;
    return chain(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Dual2 operator/(const Dual2& a, const Dual2& b) { return a * inv(b); }
inline Dual2 operator/(const Dual2& a, double c) { return a * (1.0 / c); }
inline Dual2 operator/(double c, const Dual2& a) { return c * inv(a); }

inline Dual2 sqrt(const Dual2& a) {
    const double s = std::sqrt(a.v);
    return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

// pow with constant exponent
inline Dual2 pow(const Dual2& a, double e) {
    const double f = std::pow(a.v, e);
    return chain(a, f, e * f / a.v, e * (e - 1.0) * f / (a.v * a.v));
}

inline Dual2 sin(const Dual2& a) {
    return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v));
}

inline Dual2 cos(const Dual2& a) {
    return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v));
}

// atan2(y, x) as a binary map with full second-order chain rule.
inline Dual2 atan2(const Dual2& y, const Dual2& x) {
    const double d = x.v * x.v + y.v * y.v;
    const double fx = -y.v / d;
    const double fy = x.v / d;
    const double fxx = 2.0 * x.v * y.v / (d * d);
    const double fyy = -fxx;
    const double fxy = (y.v * y.v - x.v * x.v) / (d * d);
    Dual2 r;
    r.v = std::atan2(y.v, x.v);
    r.d1 = fx * x.d1 + fy * y.d1;
    r.d2 = fx * x.d2 + fy * y.d2;
    r.d11 = fxx * x.d1 * x.d1 + 2.0 * fxy * x.d1 * y.d1 + fyy * y.d1 * y.d1 + fx * x.d11 + fy * y.d11;
    r.d12 = fxx * x.d1 * x.d2 + fxy * (x.d1 * y.d2 + x.d2 * y.d1) + fyy * y.d1 * y.d2 + fx * x.d12 + fy * y.d12;
    r.d22 = fxx * x.d2 * x.d2 + 2.0 * fxy * x.d2 * y.d2 + fyy * y.d2 * y.d2 + fx * x.d22 + fy * y.d22;
    return r;
}

// Value/gradient/Hessian of a biradial function at a point, in the two
// radial variables. Same layout as Dual2 but used as plain data.
struct Jet2 {
    double v = 0.0;
    double d1 = 0.0, d2 = 0.0;
    double d11 = 0.0, d12 = 0.0, d22 = 0.0;
};

// Compose a second-order jet of f (known at the point (u.v, w.v)) with
// inner maps u(r1,r2), w(r1,r2): returns the jet of f(u, w).
inline Dual2 compose(const Jet2& f, const Dual2& u, const Dual2& w) {
    Dual2 r;
    r.v = f.v;
    r.d1 = f.d1 * u.d1 + f.d2 * w.d1;
    r.d2 = f.d1 * u.d2 + f.d2 * w.d2;
    r.d11 = f.d11 * u.d1 * u.d1 + 2.0 * f.d12 * u.d1 * w.d1 + f.d22 * w.d1 * w.d1 + f.d1 * u.d11 + f.d2 * w.d11;
    r.d12 = f.d11 * u.d1 * u.d2 + f.d12 * (u.d1 * w.d2 + u.d2 * w.d1) + f.d22 * w.d1 * w.d2 + f.d1 * u.d12 +
            f.d2 * w.d12;
    r.d22 = f.d11 * u.d2 * u.d2 + 2.0 * f.d12 * u.d2 * w.d2 + f.d22 * w.d2 * w.d2 + f.d1 * u.d22 + f.d2 * w.d22;
    return r;
}

// One-dimensional inner function t(r1,r2) composed with f given by
// (f, f', f'') at t.v.
inline Dual2 compose1d(double f, double fp, double fpp, const Dual2& t) { return chain(t, f, fp, fpp); }

}  // namespace yamabe
