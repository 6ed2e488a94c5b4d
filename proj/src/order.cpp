#include "bqsos/order.hpp"

#include <utility>

#include "bqsos/errors.hpp"

namespace bqsos {

namespace {

constexpr int kClosureRounds = 16;

void fnv_mix(std::uint64_t& h, const std::string& text) {
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
}

std::array<BigInt, 4> scaled_row(const std::array<std::int64_t, 4>& r) {
    return {BigInt(static_cast<long>(r[0])), BigInt(static_cast<long>(r[1])), BigInt(static_cast<long>(r[2])),
            BigInt(static_cast<long>(r[3]))};
}

// Floor division for mpz.
BigInt fdiv(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Coefficients of x against the rows; nullopt when x is not in the row lattice.
std::optional<std::vector<BigInt>> solve(const std::vector<std::array<BigInt, 4>>& rows, int rank,
                                         std::array<BigInt, 4> v) {
    std::vector<BigInt> k(static_cast<std::size_t>(rank));
    for (int i = 0; i < rank; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        const BigInt& piv = row[static_cast<std::size_t>(i)];
        if (!mpz_divisible_p(v[static_cast<std::size_t>(i)].get_mpz_t(), piv.get_mpz_t())) return std::nullopt;
        BigInt c = v[static_cast<std::size_t>(i)] / piv;
        for (int j = i; j < rank; ++j) v[static_cast<std::size_t>(j)] -= c * row[static_cast<std::size_t>(j)];
        k[static_cast<std::size_t>(i)] = std::move(c);
    }
    for (int j = 0; j < 4; ++j)
        if (sgn(v[static_cast<std::size_t>(j)]) != 0) return std::nullopt;
    return k;
}

}  // namespace

namespace {

// Row echelon form by integer column reduction. Columns without a pivot are
// skipped when loose is set, otherwise they raise NotFullRank.
std::vector<std::array<BigInt, 4>> echelon(std::vector<std::array<BigInt, 4>> vecs, int rank, bool loose) {
    std::vector<std::array<BigInt, 4>> out;
    for (int col = 0; col < rank; ++col) {
        const auto c = static_cast<std::size_t>(col);
        // Euclid on column col until at most one vector is nonzero there.
        while (true) {
            std::size_t best = vecs.size();
            std::size_t nonzero = 0;
            for (std::size_t i = 0; i < vecs.size(); ++i) {
                if (sgn(vecs[i][c]) == 0) continue;
                ++nonzero;
                if (best == vecs.size() || abs(vecs[i][c]) < abs(vecs[best][c])) best = i;
            }
            if (nonzero == 0) {
                if (loose) break;
                throw Error(ErrorCode::NotFullRank, "lattice has rank below " + std::to_string(rank));
            }
            if (nonzero == 1) {
                auto pivot = vecs[best];
                if (sgn(pivot[c]) < 0)
                    for (auto& x : pivot) x = -x;
                vecs.erase(vecs.begin() + static_cast<std::ptrdiff_t>(best));
                out.push_back(std::move(pivot));
                break;
            }
            for (std::size_t i = 0; i < vecs.size(); ++i) {
                if (i == best || sgn(vecs[i][c]) == 0) continue;
                BigInt q;
                mpz_tdiv_q(q.get_mpz_t(), vecs[i][c].get_mpz_t(), vecs[best][c].get_mpz_t());
                for (int j = col; j < rank; ++j) vecs[i][static_cast<std::size_t>(j)] -= q * vecs[best][static_cast<std::size_t>(j)];
            }
        }
        std::erase_if(vecs, [&](const auto& v) {
            for (int j = col; j < rank; ++j)
                if (sgn(v[static_cast<std::size_t>(j)]) != 0) return false;
            return true;
        });
    }
    return out;
}

}  // namespace

std::vector<std::array<BigInt, 4>> hermite_normal_form(std::vector<std::array<BigInt, 4>> vecs, int rank) {
    auto out = echelon(std::move(vecs), rank, false);
    for (int j = 1; j < rank; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        for (int i = 0; i < j; ++i) {
            auto& row = out[static_cast<std::size_t>(i)];
            const BigInt q = fdiv(row[jj], out[jj][jj]);
            if (sgn(q) == 0) continue;
            for (int k = j; k < rank; ++k) row[static_cast<std::size_t>(k)] -= q * out[jj][static_cast<std::size_t>(k)];
        }
    }
    return out;
}

OrderLattice make_order(FieldPtr field, std::vector<std::array<BigInt, 4>> rows, OrderKind kind, std::string label,
                        std::optional<QuadraticOrderDescriptor> quad) {
    OrderLattice o;
    o.field_ = std::move(field);
    o.kind_ = kind;
    o.label_ = std::move(label);
    o.quadratic_ = quad;
    o.rows_ = hermite_normal_form(std::move(rows), o.rank());
    if (!o.contains(Element::integer(o.field_, 1)))
        throw Error(ErrorCode::NotIntegral, "lattice does not contain 1");
    const auto basis = o.basis();
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j)
            if (!o.contains(basis[i] * basis[j]))
                throw Error(ErrorCode::NotClosedWithinBudget, o.label_ + " is not closed under multiplication");
    return o;
}

std::vector<Element> OrderLattice::basis() const {
    std::vector<Element> out;
    for (const auto& r : rows_) out.emplace_back(field_, r);
    return out;
}

BigInt OrderLattice::index_in_maximal() const {
    BigInt det = 1;
    for (int i = 0; i < rank(); ++i) det *= rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    const auto max_rows = hermite_normal_form(
        [&] {
            std::vector<std::array<BigInt, 4>> v;
            for (int i = 0; i < rank(); ++i) v.push_back(scaled_row(field_->scaled_basis()[static_cast<std::size_t>(i)]));
            return v;
        }(),
        rank());
    BigInt max_det = 1;
    for (int i = 0; i < rank(); ++i) max_det *= max_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    return det / max_det;
}

std::uint64_t OrderLattice::basis_hash() const {
    std::uint64_t h = 1469598103934665603ull;
    fnv_mix(h, field_->label());
    for (const auto& r : rows_)
        for (int j = 0; j < rank(); ++j) fnv_mix(h, r[static_cast<std::size_t>(j)].get_str());
    return h;
}

bool OrderLattice::contains(const Element& x) const {
    if (!(x.field() == *field_))
        throw Error(ErrorCode::FieldMismatch, x.field().label() + " vs " + field_->label());
    return solve(rows_, rank(), x.scaled()).has_value();
}

bool contains(const OrderLattice& o, const Element& x) { return o.contains(x); }

OrderLattice maximal_order(const FieldPtr& field) {
    std::vector<std::array<BigInt, 4>> rows;
    for (int i = 0; i < field->degree(); ++i) rows.push_back(scaled_row(field->scaled_basis()[static_cast<std::size_t>(i)]));
    return make_order(field, std::move(rows), OrderKind::Maximal, "O_K", std::nullopt);
}

OrderLattice custom_order(const FieldPtr& field, const std::vector<Element>& generators) {
    const OrderLattice ok = maximal_order(field);
    std::vector<std::array<BigInt, 4>> vecs;
    vecs.push_back(Element::integer(field, 1).scaled());
    for (const auto& g : generators) {
        if (!(g.field() == *field)) throw Error(ErrorCode::FieldMismatch, g.field().label() + " vs " + field->label());
        if (!ok.contains(g)) throw Error(ErrorCode::NotIntegral, pretty(g) + " is not an algebraic integer");
        vecs.push_back(g.scaled());
    }
    const int rank = field->degree();
    auto rows = echelon(vecs, rank, true);
    for (int round = 0; round < kClosureRounds; ++round) {
        if (static_cast<int>(rows.size()) < rank) {
            // Grow the rational span first; a span closed under products never reaches full rank.
            std::vector<std::array<BigInt, 4>> next = rows;
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t j = i; j < rows.size(); ++j)
                    next.push_back((Element(field, rows[i]) * Element(field, rows[j])).scaled());
            auto grown = echelon(std::move(next), rank, true);
            if (grown.size() == rows.size())
                throw Error(ErrorCode::NotFullRank, "generators span a proper subalgebra");
            rows = std::move(grown);
            if (static_cast<int>(rows.size()) == rank) rows = hermite_normal_form(std::move(rows), rank);
            continue;
        }
        std::vector<std::array<BigInt, 4>> next = rows;
        bool closed = true;
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = i; j < rows.size(); ++j) {
                const Element prod = Element(field, rows[i]) * Element(field, rows[j]);
                if (!solve(rows, field->degree(), prod.scaled())) {
                    closed = false;
                    next.push_back(prod.scaled());
                }
            }
        if (closed) return make_order(field, std::move(rows), OrderKind::Custom, "custom", std::nullopt);
        rows = hermite_normal_form(std::move(next), field->degree());
    }
    throw Error(ErrorCode::NotClosedWithinBudget, "product closure did not stabilize in 16 rounds");
}

namespace {

OrderLattice quadratic_common(std::int64_t N, QuadraticForm form) {
    const auto desc = describe_quadratic_order(N, form);
    if (desc.n == 1) throw Error(ErrorCode::SquareN, std::to_string(N) + " is a square");
    auto field = Field::quadratic(desc.n);
    const BigInt f(static_cast<long>(desc.f));
    std::vector<std::array<BigInt, 4>> rows;
    rows.push_back({2, 0, 0, 0});
    std::string label;
    if (form == QuadraticForm::Sqrt) {
        rows.push_back({0, 2 * f, 0, 0});
        label = "Z[sqrt(" + std::to_string(N) + ")]";
    } else {
        rows.push_back({1, f, 0, 0});
        label = "Z[(1+sqrt(" + std::to_string(N) + "))/2]";
    }
    return make_order(std::move(field), std::move(rows), OrderKind::Quadratic, std::move(label), desc);
}

}  // namespace

OrderLattice quadratic_order(std::int64_t N) { return quadratic_common(N, QuadraticForm::Sqrt); }
OrderLattice quadratic_order_half(std::int64_t N) { return quadratic_common(N, QuadraticForm::Half); }

}  // namespace bqsos
