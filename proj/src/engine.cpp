#include "detail/engine.hpp"

#include <cmath>

#include "bqsos/errors.hpp"
#include "detail/exact_sign.hpp"

namespace bqsos::detail {

namespace {

[[noreturn]] void overflow() { throw Error(ErrorCode::Overflow, "coordinates exceed 64-bit search arithmetic"); }

std::int64_t cadd(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) overflow();
    return r;
}

std::int64_t csub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) overflow();
    return r;
}

struct OverflowTag {};

// __int128 that refuses to wrap; only used inside the sign test.
struct C128 {
    __int128 v = 0;
    C128() = default;
    C128(__int128 x) : v(x) {}  // NOLINT(google-explicit-constructor)
    friend C128 operator+(C128 a, C128 b) {
        __int128 r;
        if (__builtin_add_overflow(a.v, b.v, &r)) throw OverflowTag{};
        return r;
    }
    friend C128 operator-(C128 a, C128 b) {
        __int128 r;
        if (__builtin_sub_overflow(a.v, b.v, &r)) throw OverflowTag{};
        return r;
    }
    friend C128 operator*(C128 a, C128 b) {
        __int128 r;
        if (__builtin_mul_overflow(a.v, b.v, &r)) throw OverflowTag{};
        return r;
    }
};

int sgn(const C128& x) { return x.v > 0 ? 1 : (x.v < 0 ? -1 : 0); }

BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

}  // namespace

bool is_zero(const V4& v) noexcept { return v[0] == 0 && v[1] == 0 && v[2] == 0 && v[3] == 0; }

V4 to_v4(const Element& x) {
    V4 v{};
    for (int i = 0; i < 4; ++i) v[static_cast<std::size_t>(i)] = to_int64(x.scaled(i));
    return v;
}

Element from_v4(const FieldPtr& field, const V4& v) {
    return Element(field, Coords{big(v[0]), big(v[1]), big(v[2]), big(v[3])});
}

Arith::Arith(const Field& f)
    : degree_(f.degree()),
      den_(f.den()),
      m_(f.m()),
      s_(f.s()),
      t0_(f.t0()),
      m0_(f.m0()),
      s0_(f.s0()),
      w_{1, f.m(), f.s(), f.t()},
      root_{1.0, std::sqrt(static_cast<double>(f.m())), std::sqrt(static_cast<double>(f.s())),
            std::sqrt(static_cast<double>(f.t()))} {}

V4 Arith::add(const V4& x, const V4& y) const {
    return {cadd(x[0], y[0]), cadd(x[1], y[1]), cadd(x[2], y[2]), cadd(x[3], y[3])};
}

V4 Arith::sub(const V4& x, const V4& y) const {
    return {csub(x[0], y[0]), csub(x[1], y[1]), csub(x[2], y[2]), csub(x[3], y[3])};
}

V4 Arith::mul(const V4& x, const V4& y) const {
    try {
        const C128 a = x[0], b = x[1], c = x[2], d = x[3];
        const C128 e = y[0], g = y[1], h = y[2], k = y[3];
        C128 p[4];
        p[0] = a * e + C128(w_[1]) * b * g + C128(w_[2]) * c * h + C128(w_[3]) * d * k;
        p[1] = a * g + b * e + C128(m0_) * (c * k + d * h);
        p[2] = a * h + c * e + C128(s0_) * (b * k + d * g);
        p[3] = a * k + d * e + C128(t0_) * (b * h + c * g);
        V4 out{};
        for (int i = 0; i < 4; ++i) {
            const __int128 v = p[i].v;
            if (v % den_ != 0) throw Error(ErrorCode::NotRepresentable, "product leaves the fixed scale");
            const __int128 q = v / den_;
            if (q > INT64_MAX || q < INT64_MIN) overflow();
            out[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(q);
        }
        return out;
    } catch (const OverflowTag&) {
        overflow();
    }
}

std::int64_t Arith::norm_form(const V4& x) const {
    __int128 sum = 0;
    for (int i = 0; i < degree_; ++i) {
        const __int128 v = x[static_cast<std::size_t>(i)];
        sum += static_cast<__int128>(w_[static_cast<std::size_t>(i)]) * v * v;
    }
    if (sum > INT64_MAX) overflow();
    return static_cast<std::int64_t>(sum);
}

int Arith::sign(const V4& x, int embedding) const {
    const auto& sg = kEmbeddingSigns[embedding];
    const std::int64_t b = sg[0] * x[1];
    const std::int64_t c = sg[1] * x[2];
    const std::int64_t d = sg[2] * x[3];

    // Floating prefilter; anything close to zero goes to the exact test.
    const double val = static_cast<double>(x[0]) + static_cast<double>(b) * root_[1] +
                       static_cast<double>(c) * root_[2] + static_cast<double>(d) * root_[3];
    const double mag = std::fabs(static_cast<double>(x[0])) + std::fabs(static_cast<double>(b)) * root_[1] +
                       std::fabs(static_cast<double>(c)) * root_[2] + std::fabs(static_cast<double>(d)) * root_[3];
    const double tol = 1e-12 * mag;
    if (val > tol) return 1;
    if (val < -tol) return -1;

    try {
        if (degree_ == 2) return sign_quadratic(C128(x[0]), C128(b), C128(m_));
        return sign_biquadratic(C128(x[0]), C128(b), C128(c), C128(d), C128(m_), C128(s_), C128(t0_));
    } catch (const OverflowTag&) {
        if (degree_ == 2) return sign_quadratic(big(x[0]), big(b), big(m_));
        return sign_biquadratic(big(x[0]), big(b), big(c), big(d), big(m_), big(s_), big(t0_));
    }
}

bool Arith::totally_nonnegative(const V4& x) const {
    for (int i = 0; i < degree_; ++i)
        if (sign(x, i) < 0) return false;
    return true;
}

std::vector<V4> order_rows(const OrderLattice& o) {
    std::vector<V4> rows;
    for (const auto& r : o.rows()) rows.push_back({to_int64(r[0]), to_int64(r[1]), to_int64(r[2]), to_int64(r[3])});
    return rows;
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

struct Enumerator {
    const Arith& arith;
    const std::vector<V4>& rows;
    const std::function<void(const V4&)>& visit;
    int rank;

    void level(int i, const V4& partial, std::int64_t rem) {
        if (i == rank) {
            for (auto c : partial) {
                if (c > 0) {
                    visit(partial);
                    return;
                }
                if (c < 0) return;
            }
            return;
        }
        const auto ii = static_cast<std::size_t>(i);
        const std::int64_t w = arith.weight(i);
        const std::int64_t lim = isqrt(rem / w);
        const std::int64_t h = rows[ii][ii];
        const std::int64_t p = partial[ii];
        const std::int64_t lo = ceil_div(-lim - p, h);
        const std::int64_t hi = floor_div(lim - p, h);
        for (std::int64_t k = lo; k <= hi; ++k) {
            V4 next = partial;
            for (int j = i; j < rank; ++j) {
                const auto jj = static_cast<std::size_t>(j);
                next[jj] = cadd(next[jj], k * rows[ii][jj]);
            }
            const std::int64_t v = next[ii];
            level(i + 1, next, rem - w * v * v);
        }
    }
};

}  // namespace

void enumerate_lattice(const Arith& arith, const std::vector<V4>& rows, std::int64_t bound,
                       const std::function<void(const V4&)>& visit) {
    if (bound <= 0) return;
    Enumerator e{arith, rows, visit, arith.degree()};
    e.level(0, V4{}, bound);
}

}  // namespace bqsos::detail
