#include "bqsos/parse.hpp"

#include <cctype>
#include <vector>

#include "bqsos/errors.hpp"

namespace bqsos {

namespace {

using RCoords = std::array<Rational, 4>;

bool is_rational(const RCoords& x) { return sgn(x[1]) == 0 && sgn(x[2]) == 0 && sgn(x[3]) == 0; }

RCoords mul(const Field& f, const RCoords& x, const RCoords& y) {
    const Rational m(static_cast<long>(f.m())), s(static_cast<long>(f.s())), t(static_cast<long>(f.t()));
    const Rational m0(static_cast<long>(f.m0())), s0(static_cast<long>(f.s0())), t0(static_cast<long>(f.t0()));
    const auto& [a, b, c, d] = x;
    const auto& [e, g, h, k] = y;
    return {a * e + m * b * g + s * c * h + t * d * k, a * g + b * e + m0 * (c * k + d * h),
            a * h + c * e + s0 * (b * k + d * g), a * k + d * e + t0 * (b * h + c * g)};
}

class Parser {
public:
    Parser(std::string_view src, const Field& field) : src_(src), field_(field) {}

    RCoords parse() {
        RCoords v = expr();
        skip();
        if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return v;
    }

private:
    std::string_view src_;
    const Field& field_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what, std::size_t at) const {
        throw ParseError(ErrorCode::SyntaxError, at, what);
    }
    [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }

    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char ch) {
        skip();
        if (pos_ < src_.size() && src_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char ch) {
        if (!accept(ch)) fail(std::string("expected '") + ch + "'");
    }

    bool peek_digit() {
        skip();
        return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
    }

    BigInt uint_literal() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an unsigned integer");
        return BigInt(std::string(src_.substr(start, pos_ - start)));
    }

    RCoords expr() {
        RCoords v = term();
        while (true) {
            if (accept('+')) {
                const RCoords w = term();
                for (std::size_t i = 0; i < 4; ++i) v[i] += w[i];
            } else if (accept('-')) {
                const RCoords w = term();
                for (std::size_t i = 0; i < 4; ++i) v[i] -= w[i];
            } else {
                return v;
            }
        }
    }

    RCoords term() {
        RCoords v = factor();
        while (true) {
            if (accept('*')) {
                v = mul(field_, v, factor());
            } else if (accept('/')) {
                const std::size_t at = pos_;
                const RCoords w = factor();
                if (!is_rational(w)) fail("division by an irrational value", at);
                if (sgn(w[0]) == 0) fail("division by zero", at);
                for (auto& c : v) c /= w[0];
            } else {
                return v;
            }
        }
    }

    RCoords factor() {
        RCoords base = atom();
        if (!accept('^')) return base;
        const std::size_t at = pos_;
        const BigInt e = uint_literal();
        if (e > 4096) fail("exponent too large", at);
        RCoords out{1, 0, 0, 0};
        for (unsigned long i = 0, n = e.get_ui(); i < n; ++i) out = mul(field_, out, base);
        return out;
    }

    RCoords atom() {
        skip();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        if (accept('-')) {
            RCoords v = atom();
            for (auto& c : v) c = -c;
            return v;
        }
        if (accept('(')) {
            RCoords v = expr();
            expect(')');
            return v;
        }
        if (peek_digit()) return {Rational(uint_literal()), 0, 0, 0};
        if (src_.substr(pos_, 4) == "sqrt") {
            pos_ += 4;
            expect('(');
            const std::size_t at = pos_;
            const BigInt n = uint_literal();
            expect(')');
            return sqrt_term(n, at);
        }
        fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    }

    RCoords sqrt_term(const BigInt& n, std::size_t at) const {
        if (sgn(n) == 0) return {0, 0, 0, 0};
        if (!fits_int64(n)) throw ParseError(ErrorCode::ForeignRadical, at, "sqrt(" + n.get_str() + ") is not in " + field_.label());
        const auto parts = squarefree_parts(to_int64(n));
        const Rational f(static_cast<long>(parts.f));
        if (parts.core == 1) return {f, 0, 0, 0};
        const int idx = field_.radicand_index(parts.core);
        if (idx <= 0)
            throw ParseError(ErrorCode::ForeignRadical, at, "sqrt(" + n.get_str() + ") is not in " + field_.label());
        RCoords v{0, 0, 0, 0};
        v[static_cast<std::size_t>(idx)] = f;
        return v;
    }
};

}  // namespace

Element parse_element(std::string_view src, const FieldPtr& field) {
    Parser p(src, *field);
    return Element::from_rational(field, p.parse());
}

OrderLattice parse_order(std::string_view desc, const FieldPtr& field) {
    auto number_after = [&](std::size_t prefix) {
        const std::string digits(desc.substr(prefix));
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw Error(ErrorCode::SyntaxError, "bad order description '" + std::string(desc) + "'");
        return std::stoll(digits);
    };
    if (desc == "maximal") return maximal_order(field);
    const bool half = desc.rfind("quad-half:", 0) == 0;
    if (half || desc.rfind("quad:", 0) == 0) {
        const std::int64_t N = number_after(half ? 10 : 5);
        OrderLattice o = half ? quadratic_order_half(N) : quadratic_order(N);
        if (!(o.field() == *field))
            throw Error(ErrorCode::FieldMismatch, o.label() + " does not lie in " + field->label());
        return o;
    }
    if (desc.rfind("gen:", 0) == 0) {
        std::vector<Element> gens;
        std::string_view rest = desc.substr(4);
        while (!rest.empty()) {
            const auto cut = rest.find(';');
            const auto piece = rest.substr(0, cut);
            if (!piece.empty()) gens.push_back(parse_element(piece, field));
            if (cut == std::string_view::npos) break;
            rest = rest.substr(cut + 1);
        }
        return custom_order(field, gens);
    }
    throw Error(ErrorCode::SyntaxError, "bad order description '" + std::string(desc) + "'");
}

}  // namespace bqsos
