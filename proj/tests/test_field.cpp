#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <mpfr.h>

#include "bqsos/element.hpp"
#include "bqsos/errors.hpp"
#include "bqsos/parse.hpp"
#include "support.hpp"

using namespace bqsos;
using namespace testsupport;

namespace {

Element E(const FieldPtr& f, const char* expr) { return parse_element(expr, f); }

Element sq(const FieldPtr& f, std::int64_t n) { return Element::sqrt_of(f, n); }

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::Overflow;
}

// Determinant of a 4x4 rational matrix by elimination.
Rational det4(std::array<std::array<Rational, 4>, 4> a) {
    Rational d = 1;
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        while (piv < 4 && a[piv][c] == 0) ++piv;
        if (piv == 4) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (int r = c + 1; r < 4; ++r) {
            const Rational k = a[r][c] / a[c][c];
            for (int j = c; j < 4; ++j) a[r][j] -= k * a[c][j];
        }
    }
    return d;
}

// Integral iff the characteristic polynomial over Q has integer coefficients:
// e_k of the four conjugates must be integers.
bool algebraic_integer_by_conjugates(const Element& x) {
    const auto cs = conjugates(x);
    const FieldPtr f = x.field_ptr();
    const std::size_t n = cs.size();
    std::vector<Element> e(n + 1, Element::zero(f));
    e[0] = Element::integer(f, 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k >= 1; --k) e[k] = e[k] + e[k - 1] * cs[i];
    for (std::size_t k = 1; k <= n; ++k) {
        for (int j = 1; j < 4; ++j)
            if (e[k].coefficient(j) != 0) return false;
        if (e[k].coefficient(0).get_den() != 1) return false;
    }
    return true;
}

// sigma_i(x) at 128 bits; returns 0 when the rounding error could reach zero.
int mpfr_sign(const Element& x, int embedding) {
    static const int kSigns[4][3] = {{1, 1, 1}, {-1, 1, -1}, {1, -1, -1}, {-1, -1, 1}};
    mpfr_t acc, term, root, mag;
    mpfr_inits2(128, acc, term, root, mag, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_z(acc, x.scaled(0).get_mpz_t(), MPFR_RNDN);
    mpfr_abs(mag, acc, MPFR_RNDU);
    const int terms = x.field().degree() == 4 ? 4 : 2;
    for (int i = 1; i < terms; ++i) {
        mpfr_sqrt_ui(root, static_cast<unsigned long>(x.field().radicand(i)), MPFR_RNDN);
        mpfr_mul_z(term, root, x.scaled(i).get_mpz_t(), MPFR_RNDN);
        if (kSigns[embedding][i - 1] < 0) mpfr_neg(term, term, MPFR_RNDN);
        mpfr_add(acc, acc, term, MPFR_RNDN);
        mpfr_abs(term, term, MPFR_RNDU);
        mpfr_add(mag, mag, term, MPFR_RNDU);
    }
    mpfr_mul_2si(mag, mag, -120, MPFR_RNDU);
    mpfr_abs(term, acc, MPFR_RNDN);
    int result = 0;
    if (mpfr_cmp(term, mag) > 0) result = mpfr_sgn(acc) > 0 ? 1 : -1;
    mpfr_clears(acc, term, root, mag, static_cast<mpfr_ptr>(nullptr));
    return result;
}

}  // namespace

TEST_CASE("classify_field examples") {
    auto f = Field::biquadratic(2, 3);
    CHECK(f->m() == 2);
    CHECK(f->s() == 3);
    CHECK(f->t() == 6);
    CHECK(*f->basis_type() == BasisType::B1);

    f = Field::biquadratic(5, 13);
    CHECK(f->t() == 65);
    CHECK(f->t0() == 1);
    CHECK(*f->basis_type() == BasisType::B4a);

    f = Field::biquadratic(10, 15);
    CHECK(f->m() == 6);
    CHECK(f->s() == 10);
    CHECK(f->t() == 15);
    CHECK(*f->basis_type() == BasisType::B1);
    CHECK(f->role_value(f->roles().p) == 6);
    CHECK(f->role_value(f->roles().r) == 10);
    CHECK(f->role_value(f->roles().q) == 15);

    f = Field::biquadratic(3, 7);
    CHECK(f->t() == 21);
    CHECK(*f->basis_type() == BasisType::B3);
    CHECK(f->role_value(f->roles().q) == 21);

    CHECK(code_of([] { Field::biquadratic(4, 3); }) == ErrorCode::NotSquarefree);
    CHECK(code_of([] { Field::biquadratic(3, 3); }) == ErrorCode::EqualGenerators);
    CHECK(code_of([] { Field::biquadratic(1, 3); }) == ErrorCode::OutOfRange);
}

TEST_CASE("classification is symmetric and invariant under substituting t") {
    for (int i = 0; i < 300; ++i) {
        const auto f = random_biquadratic();
        const auto g = Field::biquadratic(f->s(), f->m());
        const auto h = Field::biquadratic(f->t(), f->m());
        const auto k = Field::biquadratic(f->s(), f->t());
        CHECK(*f == *g);
        CHECK(*f == *h);
        CHECK(*f == *k);
        CHECK(f->basis_type() == h->basis_type());
    }
}

TEST_CASE("field descriptor invariants") {
    for (std::int64_t p : squarefree_upto(60))
        for (std::int64_t q : squarefree_upto(60)) {
            if (p >= q) continue;
            const auto f = Field::biquadratic(p, q);
            const auto tri = canonical_triple(p, q);
            REQUIRE(f->m() == tri[0]);
            REQUIRE(f->s() == tri[1]);
            REQUIRE(f->t() == tri[2]);
            CHECK(f->m() == f->s0() * f->t0());
            CHECK(f->s() == f->m0() * f->t0());
            CHECK(f->t() == f->m0() * f->s0());
            CHECK(f->m0() > f->s0());
            CHECK(f->s0() > f->t0());

            // Type from the residue table.
            int r1 = 0, r2 = 0, r3 = 0;
            for (auto n : tri) {
                const int r = static_cast<int>(n % 4);
                r1 += r == 1;
                r2 += r == 2;
                r3 += r == 3;
            }
            const BasisType bt = *f->basis_type();
            if (r1 == 3) {
                CHECK((bt == (f->t0() % 4 == 1 ? BasisType::B4a : BasisType::B4b)));
            } else if (r2 == 2 && r3 == 1) {
                CHECK(bt == BasisType::B1);
            } else if (r2 == 2 && r1 == 1) {
                CHECK(bt == BasisType::B2);
            } else {
                REQUIRE(r3 == 2);
                REQUIRE(r1 == 1);
                CHECK(bt == BasisType::B3);
            }

            // The basis columns are algebraic integers, and the index of
            // Z[1, sqrt m, sqrt s, sqrt t] in O_K is 2, 4, 4 or 16.
            const auto& B = f->basis_matrix();
            std::array<std::array<Rational, 4>, 4> cols{};
            for (int i = 0; i < 4; ++i) {
                std::array<Rational, 4> c{};
                for (int j = 0; j < 4; ++j) c[j] = B[j][i];
                cols[i] = c;
                CHECK(algebraic_integer_by_conjugates(Element::from_rational(f, c)));
            }
            const Rational d = abs(det4(cols));
            if (bt == BasisType::B1)
                CHECK(d == Rational(1, 2));
            else if (bt == BasisType::B2 || bt == BasisType::B3)
                CHECK(d == Rational(1, 4));
            else
                CHECK(d == Rational(1, 16));
        }
}

TEST_CASE("multiplication examples") {
    const auto f = Field::biquadratic(6, 10);
    CHECK(sq(f, 6) * sq(f, 10) == Element::integer(f, 2) * sq(f, 15));

    for (auto pair : std::vector<std::pair<int, int>>{{5, 13}, {2, 5}, {5, 6}}) {
        const auto g = Field::biquadratic(pair.first, pair.second);
        const Element root5 = sq(g, 5);
        const Element half = Element::from_rational(g, {Rational(1, 2), 0, 0, 0});
        const Element golden = half + half * root5;
        CHECK(golden * golden == Element::from_rational(g, {Rational(3, 2), 0, 0, 0}) + half * root5);
        CHECK(E(g, "((1+sqrt(5))/2)^2") == E(g, "(3+sqrt(5))/2"));
    }

    const auto h = Field::biquadratic(2, 3);
    const Element half = Element::from_rational(h, {0, Rational(1, 2), 0, Rational(1, 2)});
    CHECK(half * half == Element::integer(h, 2) + sq(h, 3));
}

TEST_CASE("structure constants") {
    for (int i = 0; i < 200; ++i) {
        const auto f = random_biquadratic();
        CHECK(sq(f, f->m()) * sq(f, f->s()) == Element::integer(f, f->t0()) * sq(f, f->t()));
        CHECK(sq(f, f->m()) * sq(f, f->t()) == Element::integer(f, f->s0()) * sq(f, f->s()));
        CHECK(sq(f, f->s()) * sq(f, f->t()) == Element::integer(f, f->m0()) * sq(f, f->m()));
        for (auto n : {f->m(), f->s(), f->t()}) CHECK(sq(f, n) * sq(f, n) == Element::integer(f, n));
    }
}

TEST_CASE("field mismatch") {
    const auto f = Field::biquadratic(2, 3);
    const auto g = Field::biquadratic(2, 5);
    CHECK(code_of([&] { (void)(Element::integer(f, 1) + Element::integer(g, 1)); }) == ErrorCode::FieldMismatch);
    CHECK(code_of([&] { (void)(Element::integer(f, 1) * Element::integer(g, 1)); }) == ErrorCode::FieldMismatch);
    CHECK(code_of([&] { (void)dominates(Element::integer(f, 1), Element::integer(g, 1)); }) == ErrorCode::FieldMismatch);
}

TEST_CASE("representation is unique and non-integers may be unrepresentable") {
    const auto f = Field::biquadratic(2, 3);
    CHECK(Element::zero(f).is_zero());
    CHECK_FALSE(Element::integer(f, 1).is_zero());
    CHECK(Element::from_rational(f, {Rational(1, 4), 0, 0, 0}).scaled(0) == 1);
    CHECK(code_of([&] { Element::from_rational(f, {Rational(1, 3), 0, 0, 0}); }) == ErrorCode::NotRepresentable);
}

TEST_CASE("conjugates examples") {
    const auto f = Field::biquadratic(2, 3);
    const auto cm = conjugates(sq(f, 2));
    CHECK(cm[0] == sq(f, 2));
    CHECK(cm[1] == -sq(f, 2));
    CHECK(cm[2] == sq(f, 2));
    CHECK(cm[3] == -sq(f, 2));
    for (const auto& c : conjugates(Element::integer(f, 1))) CHECK(c == Element::integer(f, 1));
    const auto ct = conjugates(sq(f, 6));
    CHECK(ct[0] == sq(f, 6));
    CHECK(ct[1] == -sq(f, 6));
    CHECK(ct[2] == -sq(f, 6));
    CHECK(ct[3] == sq(f, 6));
}

TEST_CASE("trace examples") {
    const auto f = Field::biquadratic(2, 3);
    CHECK(abs_trace(E(f, "(1+sqrt(2))^2")) == 3);
    const auto g = Field::biquadratic(17, 19);
    CHECK(abs_trace(E(g, "((1+sqrt(17))/2)^2")) == Rational(9, 2));
    const auto h = Field::biquadratic(10, 11);
    CHECK(abs_trace(E(h, "7+(1+sqrt(10))^2")) == 18);

    const auto k = Field::biquadratic(5, 13);
    CHECK(abs_trace_of_square(E(k, "(1+sqrt(5))/2")) == Rational(3, 2));
    CHECK(abs_trace_of_square(E(h, "(sqrt(10)+sqrt(110))/2")) == 30);
    CHECK(abs_trace_of_square(Element::zero(h)) == 0);
}

TEST_CASE("sign examples") {
    const auto f = Field::biquadratic(2, 3);
    CHECK(sign_at_embedding(E(f, "1-sqrt(2)"), 0) == -1);
    CHECK(sign_at_embedding(Element::zero(f), 0) == 0);
    const auto g = Field::biquadratic(2, 5);
    const Element x = E(g, "7-2*sqrt(10)");
    for (int i = 0; i < 4; ++i) CHECK(sign_at_embedding(x, i) == 1);
    CHECK(x == E(g, "(sqrt(5)-sqrt(2))^2"));

    CHECK(is_totally_positive(E(f, "2+sqrt(3)")));
    CHECK_FALSE(is_totally_positive(E(f, "1+sqrt(2)")));
    CHECK(dominates(Element::integer(f, 2), E(f, "sqrt(2)^2")));
    CHECK_FALSE(dominates(Element::integer(f, 2), E(f, "(2+sqrt(3))^2")));
    CHECK(is_totally_nonnegative(Element::zero(f)));
    CHECK_FALSE(is_totally_positive(Element::zero(f)));
}

TEST_CASE("property: ring axioms on 1000 random triples") {
    for (int i = 0; i < 1000; ++i) {
        const auto f = random_biquadratic();
        const Element x = random_integer(f), y = random_integer(f), z = random_integer(f);
        CHECK((x * y) * z == x * (y * z));
        CHECK((x + y) + z == x + (y + z));
        CHECK(x * y == y * x);
        CHECK(x + y == y + x);
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x - x == Element::zero(f));
        CHECK(x * Element::integer(f, 1) == x);
    }
}

TEST_CASE("property: exact sign agrees with a 128-bit MPFR evaluation") {
    int compared = 0;
    for (int i = 0; i < 1000; ++i) {
        const bool quad = i % 5 == 0;
        const FieldPtr f = quad ? Field::quadratic(squarefree_upto(200)[static_cast<std::size_t>(uniform(0, 100))]) : random_biquadratic(400);
        Element x = random_integer(f, 1000000);
        // Near-cancellation cases: subtract a nearby rational.
        if (i % 3 == 0) x = x * x - Element::integer(f, 1);
        for (int e = 0; e < embedding_count(*f); ++e) {
            const int reference = mpfr_sign(x, e);
            if (reference == 0) continue;
            ++compared;
            CHECK(sign_at_embedding(x, e) == reference);
        }
    }
    CHECK(compared > 3000);
}

TEST_CASE("sign test near zero: convergent differences") {
    // p_k - q_k sqrt(2) from the continued fraction of sqrt 2 alternates in sign.
    const auto f = Field::quadratic(2);
    BigInt p = 1, q = 1;
    int expected = -1;
    for (int k = 0; k < 60; ++k) {
        const Element x(f, {BigInt(2) * p, BigInt(-2) * q, 0, 0});
        CHECK(sign_at_embedding(x, 0) == expected);
        CHECK(sign_at_embedding(x, 1) == 1);
        const BigInt np = p + 2 * q, nq = p + q;
        p = np;
        q = nq;
        expected = -expected;
    }
}

TEST_CASE("property: embeddings are multiplicative and conjugates sum to the trace") {
    for (int i = 0; i < 500; ++i) {
        const auto f = random_biquadratic();
        const Element x = random_integer(f), y = random_integer(f);
        const auto cx = conjugates(x), cy = conjugates(y), cxy = conjugates(x * y);
        Element sum = Element::zero(f);
        for (int e = 0; e < 4; ++e) {
            CHECK(cxy[e] == cx[e] * cy[e]);
            sum += cx[e];
        }
        CHECK(sum == Element::from_rational(f, {abs_trace(x) * 4, 0, 0, 0}));
        CHECK(abs_trace_of_square(x) == abs_trace(x * x));
    }
}

TEST_CASE("property: squares of mixed elements leave the subfield Q(sqrt m)") {
    for (int i = 0; i < 500; ++i) {
        const auto f = random_biquadratic();
        std::int64_t x = uniform(-50, 50), y = uniform(-50, 50), z = 0, w = 0;
        if (x == 0 && y == 0) x = 1;
        while (z == 0 && w == 0) {
            z = uniform(-50, 50);
            w = uniform(-50, 50);
        }
        const Element e(f, {BigInt(4 * x), BigInt(4 * y), BigInt(4 * z), BigInt(4 * w)});
        const Element s = e * e;
        CHECK_FALSE((s.scaled(2) == 0 && s.scaled(3) == 0));
    }
}

TEST_CASE("property: odd quarter coordinates are preserved by squaring in B4 fields") {
    std::vector<FieldPtr> b4;
    for (auto p : squarefree_upto(200))
        for (auto q : squarefree_upto(200))
            if (p < q && p % 4 == 1 && q % 4 == 1) {
                const auto f = Field::biquadratic(p, q);
                if (f->m() == p && f->s() == q) b4.push_back(f);
            }
    REQUIRE(b4.size() > 20);
    for (int i = 0; i < 500; ++i) {
        const auto& f = b4[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(b4.size()) - 1))];
        // Odd multiple of the quarter basis element plus the rest of O_K keeps all coordinates odd.
        const auto& B = f->scaled_basis();
        const std::int64_t k[4] = {uniform(-40, 40), uniform(-40, 40), uniform(-40, 40), 2 * uniform(-40, 40) + 1};
        Coords c{0, 0, 0, 0};
        for (int r = 0; r < 4; ++r)
            for (int j = 0; j < 4; ++j) c[j] += BigInt(static_cast<long>(k[r] * B[r][j]));
        const Element x(f, c);
        for (int j = 0; j < 4; ++j) REQUIRE(x.scaled(j) % 2 != 0);
        const Element s = x * x;
        for (int j = 0; j < 4; ++j) CHECK(s.scaled(j) % 2 != 0);
    }
}
