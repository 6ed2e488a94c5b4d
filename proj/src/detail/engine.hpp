#pragma once

// Machine-integer arithmetic used by the search code. Coordinates are scaled
// by the field denominator exactly as in Element; overflow throws
// Error(Overflow) instead of wrapping.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "bqsos/element.hpp"
#include "bqsos/order.hpp"

namespace bqsos::detail {

using V4 = std::array<std::int64_t, 4>;

struct V4Hash {
    std::size_t operator()(const V4& v) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (auto x : v) {
            h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
};

V4 to_v4(const Element& x);
Element from_v4(const FieldPtr& field, const V4& v);

class Arith {
public:
    explicit Arith(const Field& field);

    int degree() const noexcept { return degree_; }
    std::int64_t den() const noexcept { return den_; }
    std::int64_t weight(int i) const noexcept { return w_[static_cast<std::size_t>(i)]; }

    V4 add(const V4& x, const V4& y) const;
    V4 sub(const V4& x, const V4& y) const;
    V4 mul(const V4& x, const V4& y) const;
    V4 square(const V4& x) const { return mul(x, x); }

    // sum of w_i v_i^2 = den^2 * atr(x^2).
    std::int64_t norm_form(const V4& x) const;

    int sign(const V4& x, int embedding) const;
    bool totally_nonnegative(const V4& x) const;
    // big - small totally nonnegative.
    bool dominates(const V4& big, const V4& small) const { return totally_nonnegative(sub(big, small)); }

private:
    int degree_;
    std::int64_t den_;
    std::int64_t m_, s_, t0_;
    std::int64_t m0_, s0_;
    std::array<std::int64_t, 4> w_;
    std::array<double, 4> root_;
};

// Lattice rows of an order as machine integers.
std::vector<V4> order_rows(const OrderLattice& o);

// Calls visit(v) for every nonzero lattice vector with norm_form(v) <= bound
// whose first nonzero coordinate is positive.
void enumerate_lattice(const Arith& arith, const std::vector<V4>& rows, std::int64_t bound,
                       const std::function<void(const V4&)>& visit);

bool is_zero(const V4& v) noexcept;

}  // namespace bqsos::detail
