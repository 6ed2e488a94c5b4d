#include "bqsos/field.hpp"

#include <algorithm>
#include <numeric>

#include "bqsos/errors.hpp"

namespace bqsos {

namespace {

int mod4(std::int64_t n) { return static_cast<int>(((n % 4) + 4) % 4); }

void check_generator(std::int64_t n) {
    if (n <= 1) throw Error(ErrorCode::OutOfRange, "generator must be > 1, got " + std::to_string(n));
    if (!is_squarefree(n)) throw Error(ErrorCode::NotSquarefree, std::to_string(n) + " is not squarefree");
}

}  // namespace

std::string_view basis_type_name(BasisType type) {
    switch (type) {
        case BasisType::B1: return "B1";
        case BasisType::B2: return "B2";
        case BasisType::B3: return "B3";
        case BasisType::B4a: return "B4a";
        case BasisType::B4b: return "B4b";
    }
    return "?";
}

FieldPtr Field::biquadratic(std::int64_t p, std::int64_t q) {
    check_generator(p);
    check_generator(q);
    if (p == q) throw Error(ErrorCode::EqualGenerators, "generators must be distinct");

    const std::int64_t g = std::gcd(p, q);
    const std::int64_t r = (p / g) * (q / g);
    std::array<std::int64_t, 3> mst{p, q, r};
    std::sort(mst.begin(), mst.end());

    auto field = std::shared_ptr<Field>(new Field());
    Field& f = *field;
    f.degree_ = 4;
    f.input_p_ = p;
    f.input_q_ = q;
    f.m_ = mst[0];
    f.s_ = mst[1];
    f.t_ = mst[2];
    f.m0_ = std::gcd(f.s_, f.t_);
    f.s0_ = std::gcd(f.m_, f.t_);
    f.t0_ = std::gcd(f.m_, f.s_);
    f.radicands_ = {1, f.m_, f.s_, f.t_};

    // Residues of (m, s, t) decide the type; roles index into (1, m, s, t).
    std::array<int, 3> res{mod4(f.m_), mod4(f.s_), mod4(f.t_)};
    auto count = [&](int residue) { return std::count(res.begin(), res.end(), residue); };
    auto first_with = [&](int residue, int skip = 0) {
        int seen = 0;
        for (int i = 0; i < 3; ++i)
            if (res[static_cast<std::size_t>(i)] == residue && seen++ == skip) return i + 1;
        return 0;
    };

    auto& rows = f.scaled_basis_;
    rows = {};
    rows[0] = {4, 0, 0, 0};
    if (count(1) == 3) {
        f.roles_ = {1, 2, 3};
        f.basis_type_ = mod4(f.t0_) == 1 ? BasisType::B4a : BasisType::B4b;
        rows[1] = {2, 2, 0, 0};
        rows[2] = {2, 0, 2, 0};
        if (*f.basis_type_ == BasisType::B4a)
            rows[3] = {1, 1, 1, 1};
        else
            rows[3] = {1, -1, 1, 1};
    } else {
        int q_residue = 0;
        int pr_residue = 0;
        if (count(2) == 2 && count(3) == 1) {
            f.basis_type_ = BasisType::B1;
            q_residue = 3;
            pr_residue = 2;
        } else if (count(2) == 2 && count(1) == 1) {
            f.basis_type_ = BasisType::B2;
            q_residue = 1;
            pr_residue = 2;
        } else if (count(3) == 2 && count(1) == 1) {
            f.basis_type_ = BasisType::B3;
            q_residue = 1;
            pr_residue = 3;
        } else {
            throw Error(ErrorCode::OutOfRange, "impossible residue pattern for " + f.label());
        }
        f.roles_ = {first_with(pr_residue), first_with(q_residue), first_with(pr_residue, 1)};
        const auto P = static_cast<std::size_t>(f.roles_.p);
        const auto Q = static_cast<std::size_t>(f.roles_.q);
        const auto R = static_cast<std::size_t>(f.roles_.r);
        rows[1] = {};
        rows[1][P] = 4;
        rows[2] = {};
        if (*f.basis_type_ == BasisType::B1) {
            rows[2][Q] = 4;
        } else {
            rows[2][0] = 2;
            rows[2][Q] = 2;
        }
        rows[3] = {};
        rows[3][P] = 2;
        rows[3][R] = 2;
    }
    for (std::size_t col = 0; col < 4; ++col)
        for (std::size_t i = 0; i < 4; ++i) f.basis_matrix_[i][col] = Rational(rows[col][i], 4);
    return field;
}

FieldPtr Field::quadratic(std::int64_t n) {
    check_generator(n);
    auto field = std::shared_ptr<Field>(new Field());
    Field& f = *field;
    f.degree_ = 2;
    f.input_p_ = n;
    f.m_ = n;
    f.radicands_ = {1, n, 0, 0};
    f.scaled_basis_ = {};
    f.scaled_basis_[0] = {2, 0, 0, 0};
    if (mod4(n) == 1)
        f.scaled_basis_[1] = {1, 1, 0, 0};
    else
        f.scaled_basis_[1] = {0, 2, 0, 0};
    for (std::size_t col = 0; col < 2; ++col)
        for (std::size_t i = 0; i < 2; ++i) f.basis_matrix_[i][col] = Rational(f.scaled_basis_[col][i], 2);
    return field;
}

int Field::radicand_index(std::int64_t n) const noexcept {
    for (int i = 0; i < degree_; ++i)
        if (radicands_[static_cast<std::size_t>(i)] == n) return i;
    return -1;
}

std::string Field::label() const {
    if (degree_ == 2) return "Q(sqrt(" + std::to_string(m_) + "))";
    return "BQ(" + std::to_string(m_) + "," + std::to_string(s_) + ")";
}

FieldPtr classify_field(std::int64_t p, std::int64_t q) { return Field::biquadratic(p, q); }

QuadraticOrderDescriptor describe_quadratic_order(std::int64_t N, QuadraticForm form) {
    if (N <= 1) throw Error(ErrorCode::OutOfRange, "quadratic order needs N > 1");
    if (is_perfect_square(N)) throw Error(ErrorCode::SquareN, std::to_string(N) + " is a square");
    if (form == QuadraticForm::Half && mod4(N) != 1)
        throw Error(ErrorCode::BadCongruence, "Z[(1+sqrt(N))/2] needs N = 1 mod 4, got " + std::to_string(N));
    const auto parts = squarefree_parts(N);
    return {N, form, parts.f, parts.core};
}

}  // namespace bqsos
