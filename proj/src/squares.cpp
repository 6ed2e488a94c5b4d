#include <algorithm>
#include <numeric>

#include "bqsos/decomposition.hpp"
#include "bqsos/errors.hpp"
#include "detail/search.hpp"

namespace bqsos {

namespace detail {

namespace {

Alphabet sorted(std::vector<std::pair<V4, V4>> items) {
    std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
        if (x.second[0] != y.second[0]) return x.second[0] > y.second[0];
        return x.second < y.second;
    });
    Alphabet a;
    for (auto& [root, sq] : items) {
        a.roots.push_back(root);
        a.squares.push_back(sq);
    }
    return a;
}

}  // namespace

Alphabet dominated_alphabet(const Arith& arith, const std::vector<V4>& rows, const V4& alpha) {
    std::vector<std::pair<V4, V4>> items;
    if (alpha[0] <= 0) return {};
    enumerate_lattice(arith, rows, arith.den() * alpha[0], [&](const V4& x) {
        const V4 sq = arith.square(x);
        if (arith.dominates(alpha, sq)) items.emplace_back(x, sq);
    });
    return sorted(std::move(items));
}

Alphabet bounded_alphabet(const Arith& arith, const std::vector<V4>& rows, std::int64_t scaled_bound) {
    std::vector<std::pair<V4, V4>> items;
    enumerate_lattice(arith, rows, scaled_bound, [&](const V4& x) { items.emplace_back(x, arith.square(x)); });
    return sorted(std::move(items));
}

}  // namespace detail

namespace {

SquareSet to_square_set(const OrderLattice& o, const Rational& bound, const detail::Alphabet& a) {
    SquareSet out{o.label(), bound, {}};
    for (std::size_t i = 0; i < a.roots.size(); ++i)
        out.squares.push_back({detail::from_v4(o.field_ptr(), a.roots[i]), detail::from_v4(o.field_ptr(), a.squares[i])});
    return out;
}

}  // namespace

SquareSet enumerate_squares_dominated(const OrderLattice& o, const Element& alpha) {
    if (!(alpha.field() == o.field())) throw Error(ErrorCode::FieldMismatch, alpha.field().label() + " vs " + o.field().label());
    if (!is_totally_nonnegative(alpha)) throw Error(ErrorCode::NotTotallyNonnegative, pretty(alpha));
    const detail::Arith arith(o.field());
    return to_square_set(o, abs_trace(alpha), detail::dominated_alphabet(arith, detail::order_rows(o), detail::to_v4(alpha)));
}

SquareSet enumerate_squares_bounded(const OrderLattice& o, const Rational& bound) {
    const detail::Arith arith(o.field());
    const Rational scaled = bound * Rational(static_cast<long>(arith.den() * arith.den()));
    const BigInt fl = floor(scaled);
    return to_square_set(o, bound, detail::bounded_alphabet(arith, detail::order_rows(o), sgn(fl) < 0 ? 0 : to_int64(fl)));
}

Element sum_of_squares(const FieldPtr& field, const std::vector<Element>& roots) {
    Element acc = Element::zero(field);
    for (const auto& r : roots) acc += r * r;
    return acc;
}

}  // namespace bqsos
