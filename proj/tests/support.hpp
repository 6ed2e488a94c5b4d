#pragma once

// Generators and independent oracles shared by the test binaries.

#include <cstdint>
#include <random>
#include <vector>

#include "bqsos/element.hpp"
#include "bqsos/order.hpp"

namespace testsupport {

using namespace bqsos;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240917);
    return gen;
}

inline std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng());
}

inline bool squarefree_naive(std::int64_t n) {
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0) return false;
    return n > 1;
}

inline std::vector<std::int64_t> squarefree_upto(std::int64_t hi) {
    std::vector<std::int64_t> v;
    for (std::int64_t n = 2; n <= hi; ++n)
        if (squarefree_naive(n)) v.push_back(n);
    return v;
}

inline FieldPtr random_biquadratic(std::int64_t hi = 120) {
    static const auto pool = squarefree_upto(hi);
    while (true) {
        const auto p = pool[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(pool.size()) - 1))];
        const auto q = pool[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(pool.size()) - 1))];
        if (p != q) return Field::biquadratic(p, q);
    }
}

// Random algebraic integer: integer combination of the maximal-order basis.
inline Element random_integer(const FieldPtr& f, std::int64_t range = 20) {
    const int rank = f->degree();
    const auto& B = f->scaled_basis();
    Coords c{0, 0, 0, 0};
    for (int i = 0; i < rank; ++i) {
        const std::int64_t k = uniform(-range, range);
        for (int j = 0; j < 4; ++j) c[static_cast<std::size_t>(j)] += BigInt(static_cast<long>(k)) * BigInt(static_cast<long>(B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    }
    return Element(f, c);
}

// Canonical generators from first principles: the third radicand is pq/gcd^2.
inline std::array<std::int64_t, 3> canonical_triple(std::int64_t p, std::int64_t q) {
    std::int64_t g = p, h = q;
    while (h) {
        const auto r = g % h;
        g = h;
        h = r;
    }
    std::array<std::int64_t, 3> v{p, q, p / g * (q / g)};
    std::sort(v.begin(), v.end());
    return v;
}

// Largest integer k with k*k*w <= n.
inline std::int64_t isqrt_div(std::int64_t n, std::int64_t w) {
    std::int64_t k = 0;
    while ((k + 1) * (k + 1) * w <= n) ++k;
    return k;
}

// All x in o with a^2 + b^2 m + c^2 s + d^2 t <= limit over scaled coordinates,
// found by scanning the coordinate box and testing membership.
inline std::vector<Element> brute_box(const OrderLattice& o, std::int64_t limit) {
    const Field& f = o.field();
    const int n = f.degree();
    std::array<std::int64_t, 4> hi{0, 0, 0, 0};
    for (int i = 0; i < n; ++i) hi[static_cast<std::size_t>(i)] = isqrt_div(limit, f.radicand(i));
    std::vector<Element> out;
    for (std::int64_t a = -hi[0]; a <= hi[0]; ++a)
        for (std::int64_t b = -hi[1]; b <= hi[1]; ++b)
            for (std::int64_t c = -hi[2]; c <= hi[2]; ++c)
                for (std::int64_t d = -hi[3]; d <= hi[3]; ++d) {
                    if (a * a + b * b * f.radicand(1) + (n == 4 ? c * c * f.s() + d * d * f.t() : 0) > limit) continue;
                    const Element x(o.field_ptr(), {BigInt(static_cast<long>(a)), BigInt(static_cast<long>(b)),
                                                    BigInt(static_cast<long>(c)), BigInt(static_cast<long>(d))});
                    if (o.contains(x)) out.push_back(x);
                }
    return out;
}

// Totally nonnegative x in o with abs_trace(x) <= cap (integer cap). For such x
// every |g_i| sqrt(n_i) is at most g0, which bounds the scan.
inline std::vector<Element> brute_tnn(const OrderLattice& o, std::int64_t cap) {
    const Field& f = o.field();
    const int n = f.degree();
    const std::int64_t top = f.den() * cap;
    std::array<std::int64_t, 4> hi{top, 0, 0, 0};
    for (int i = 1; i < n; ++i) hi[static_cast<std::size_t>(i)] = isqrt_div(top * top, f.radicand(i));
    std::vector<Element> out;
    for (std::int64_t a = 0; a <= hi[0]; ++a)
        for (std::int64_t b = -hi[1]; b <= hi[1]; ++b)
            for (std::int64_t c = -hi[2]; c <= hi[2]; ++c)
                for (std::int64_t d = -hi[3]; d <= hi[3]; ++d) {
                    const Element x(o.field_ptr(), {BigInt(static_cast<long>(a)), BigInt(static_cast<long>(b)),
                                                    BigInt(static_cast<long>(c)), BigInt(static_cast<long>(d))});
                    if (o.contains(x) && is_totally_nonnegative(x)) out.push_back(x);
                }
    return out;
}

}  // namespace testsupport
