#include "bqsos/element.hpp"

#include "bqsos/errors.hpp"
#include "detail/exact_sign.hpp"

namespace bqsos {

namespace {

void require_same_field(const Element& x, const Element& y) {
    if (!(x.field() == y.field()))
        throw Error(ErrorCode::FieldMismatch, x.field().label() + " vs " + y.field().label());
}

BigInt exact_div(const BigInt& n, std::int64_t d) {
    const BigInt dd(static_cast<long>(d));
    if (!mpz_divisible_p(n.get_mpz_t(), dd.get_mpz_t()))
        throw Error(ErrorCode::NotRepresentable, "result needs a denominator beyond the fixed scale");
    BigInt q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), dd.get_mpz_t());
    return q;
}

BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

}  // namespace

Element::Element(FieldPtr field, Coords scaled) : field_(std::move(field)), num_(std::move(scaled)) {
    if (field_->degree() == 2 && (sgn(num_[2]) != 0 || sgn(num_[3]) != 0))
        throw Error(ErrorCode::FieldMismatch, "quadratic element with sqrt(s) or sqrt(t) part");
}

Element Element::zero(FieldPtr field) { return Element(std::move(field), Coords{}); }

Element Element::integer(FieldPtr field, std::int64_t value) {
    const std::int64_t den = field->den();
    return Element(std::move(field), Coords{big(value) * big(den), 0, 0, 0});
}

Element Element::from_rational(FieldPtr field, const std::array<Rational, 4>& coords) {
    Coords scaled;
    const Rational den(static_cast<long>(field->den()));
    for (std::size_t i = 0; i < 4; ++i) {
        Rational v = coords[i] * den;
        v.canonicalize();
        if (v.get_den() != 1)
            throw Error(ErrorCode::NotRepresentable,
                        "coefficient " + coords[i].get_str() + " needs a denominator not dividing " +
                            std::to_string(field->den()));
        scaled[i] = v.get_num();
    }
    return Element(std::move(field), std::move(scaled));
}

Element Element::sqrt_of(FieldPtr field, std::int64_t radicand) {
    const int idx = field->radicand_index(radicand);
    if (idx <= 0) throw Error(ErrorCode::ForeignRadical, "sqrt(" + std::to_string(radicand) + ") is not in " + field->label());
    Coords c{};
    c[static_cast<std::size_t>(idx)] = big(field->den());
    return Element(std::move(field), std::move(c));
}

Rational Element::coefficient(int i) const {
    Rational q(scaled(i), BigInt(static_cast<long>(den())));
    q.canonicalize();
    return q;
}

bool Element::is_zero() const {
    for (const auto& c : num_)
        if (sgn(c) != 0) return false;
    return true;
}

Element Element::operator-() const {
    Coords c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = -num_[i];
    return Element(field_, std::move(c));
}

Element operator+(const Element& x, const Element& y) {
    require_same_field(x, y);
    Coords c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = x.num_[i] + y.num_[i];
    return Element(x.field_, std::move(c));
}

Element operator-(const Element& x, const Element& y) {
    require_same_field(x, y);
    Coords c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = x.num_[i] - y.num_[i];
    return Element(x.field_, std::move(c));
}

// sqrt(m)sqrt(s) = t0 sqrt(t), sqrt(m)sqrt(t) = s0 sqrt(s), sqrt(s)sqrt(t) = m0 sqrt(m).
Element operator*(const Element& x, const Element& y) {
    require_same_field(x, y);
    const Field& f = x.field();
    const auto& [a, b, c, d] = x.num_;
    const auto& [e, g, h, k] = y.num_;
    const BigInt m = big(f.m()), s = big(f.s()), t = big(f.t());
    const BigInt m0 = big(f.m0()), s0 = big(f.s0()), t0 = big(f.t0());
    Coords p;
    p[0] = a * e + m * b * g + s * c * h + t * d * k;
    p[1] = a * g + b * e + m0 * (c * k + d * h);
    p[2] = a * h + c * e + s0 * (b * k + d * g);
    p[3] = a * k + d * e + t0 * (b * h + c * g);
    for (auto& v : p) v = exact_div(v, f.den());
    return Element(x.field_, std::move(p));
}

bool operator==(const Element& x, const Element& y) {
    return x.field() == y.field() && x.num_ == y.num_;
}

Element elem_add(const Element& x, const Element& y) { return x + y; }
Element elem_sub(const Element& x, const Element& y) { return x - y; }
Element elem_mul(const Element& x, const Element& y) { return x * y; }
Element elem_square(const Element& x) { return x * x; }

Element power(const Element& x, unsigned exponent) {
    Element result = Element::integer(x.field_ptr(), 1);
    Element base = x;
    while (exponent > 0) {
        if (exponent & 1u) result = result * base;
        exponent >>= 1u;
        if (exponent > 0) base = base * base;
    }
    return result;
}

int embedding_count(const Field& field) noexcept { return field.degree(); }

std::vector<Element> conjugates(const Element& x) {
    std::vector<Element> out;
    const int n = embedding_count(x.field());
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Coords c = x.scaled();
        for (std::size_t j = 0; j < 3; ++j)
            if (detail::kEmbeddingSigns[i][j] < 0) c[j + 1] = -c[j + 1];
        out.emplace_back(x.field_ptr(), std::move(c));
    }
    return out;
}

Rational abs_trace(const Element& x) { return x.coefficient(0); }

Rational abs_trace_of_square(const Element& x) {
    const Field& f = x.field();
    BigInt sum = 0;
    for (int i = 0; i < 4; ++i) sum += big(f.radicand(i)) * x.scaled(i) * x.scaled(i);
    Rational q(sum, big(f.den() * f.den()));
    q.canonicalize();
    return q;
}

int sign_at_embedding(const Element& x, int embedding) {
    const Field& f = x.field();
    if (embedding < 0 || embedding >= embedding_count(f))
        throw Error(ErrorCode::OutOfRange, "embedding index " + std::to_string(embedding));
    const auto& sg = detail::kEmbeddingSigns[embedding];
    const BigInt b = sg[0] * x.scaled(1);
    if (f.degree() == 2) return detail::sign_quadratic(x.scaled(0), b, big(f.m()));
    const BigInt c = sg[1] * x.scaled(2);
    const BigInt d = sg[2] * x.scaled(3);
    return detail::sign_biquadratic(x.scaled(0), b, c, d, big(f.m()), big(f.s()), big(f.t0()));
}

bool is_totally_nonnegative(const Element& x) {
    for (int i = 0; i < embedding_count(x.field()); ++i)
        if (sign_at_embedding(x, i) < 0) return false;
    return true;
}

bool is_totally_positive(const Element& x) {
    for (int i = 0; i < embedding_count(x.field()); ++i)
        if (sign_at_embedding(x, i) <= 0) return false;
    return true;
}

bool dominates(const Element& x, const Element& y) { return is_totally_nonnegative(x - y); }

std::string pretty(const Element& x) {
    std::string out;
    for (int i = 0; i < x.field().degree(); ++i) {
        const Rational g = x.coefficient(i);
        if (sgn(g) == 0) continue;
        Rational mag = abs(g);
        std::string term;
        if (i == 0) {
            term = mag.get_str();
        } else {
            const std::string root = "sqrt(" + std::to_string(x.field().radicand(i)) + ")";
            term = mag == 1 ? root : mag.get_str() + "*" + root;
        }
        if (sgn(g) < 0)
            out += "-";
        else if (!out.empty())
            out += "+";
        out += term;
    }
    return out.empty() ? "0" : out;
}

}  // namespace bqsos
