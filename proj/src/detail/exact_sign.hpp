#pragma once

// Sign of a + b*sqrt(m) + c*sqrt(s) + d*sqrt(t) by nested quadratic comparisons.
// Int needs +, -, * and a sgn() overload; no floating point is involved.

namespace bqsos::detail {

// sign(u + v*sqrt(n)) for a non-square n > 0.
template <class Int>
int sign_quadratic(const Int& u, const Int& v, const Int& n) {
    const int su = sgn(u);
    const int sv = sgn(v);
    if (sv == 0) return su;
    if (su == 0 || su == sv) return sv;
    const Int d = u * u - v * v * n;
    return sgn(d) > 0 ? su : sv;
}

// sqrt(t) = sqrt(m)*sqrt(s)/t0, so t0 * value = A + B*sqrt(s) with
// A = t0*a + t0*b*sqrt(m) and B = t0*c + d*sqrt(m).
template <class Int>
int sign_biquadratic(const Int& a, const Int& b, const Int& c, const Int& d,
                     const Int& m, const Int& s, const Int& t0) {
    const Int u = t0 * a;
    const Int v = t0 * b;
    const Int w = t0 * c;
    const Int& z = d;
    const int sa = sign_quadratic(u, v, m);
    const int sb = sign_quadratic(w, z, m);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // A^2 - s*B^2 = (u^2 + m v^2 - s(w^2 + m z^2)) + 2(uv - s w z) sqrt(m); never zero here.
    const Int two = Int(2);
    const Int ru = u * u + m * v * v - s * (w * w + m * z * z);
    const Int rv = two * (u * v - s * w * z);
    return sign_quadratic(ru, rv, m) > 0 ? sa : sb;
}

// Sign flips of (b, c, d) per embedding index.
inline constexpr int kEmbeddingSigns[4][3] = {
    {+1, +1, +1},
    {-1, +1, -1},
    {+1, -1, -1},
    {-1, -1, +1},
};

}  // namespace bqsos::detail
