#include "bqsos/witness.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "bqsos/errors.hpp"
#include "bqsos/parse.hpp"

namespace bqsos {

namespace {

struct FamilyName {
    Family family;
    std::string_view name;
};

constexpr std::array<FamilyName, 18> kNames{{
    {Family::QuadraticThm31, "QuadraticThm31"},
    {Family::QuadraticObs32, "QuadraticObs32"},
    {Family::B1CoprimeLen6, "B1CoprimeLen6"},
    {Family::B1CoprimeLen7, "B1CoprimeLen7"},
    {Family::B23Coprime, "B23Coprime"},
    {Family::B4Coprime, "B4Coprime"},
    {Family::MIs1, "MIs1"},
    {Family::MNot1, "MNot1"},
    {Family::MPlus4_8_12, "MPlus4_8_12"},
    {Family::Sqrt7, "Sqrt7"},
    {Family::Sqrt6, "Sqrt6"},
    {Family::Sqrt5SIs1, "Sqrt5SIs1"},
    {Family::Sqrt2, "Sqrt2"},
    {Family::Sqrt3, "Sqrt3"},
    {Family::Sqrt5SNot1, "Sqrt5SNot1"},
    {Family::Sqrt13, "Sqrt13"},
    {Family::TwelveBranch, "TwelveBranch"},
    {Family::Tinkova, "Tinkova"},
}};

int mod4(std::int64_t n) { return static_cast<int>(((n % 4) + 4) % 4); }

std::string num(std::int64_t n) { return std::to_string(n); }
std::string rt(std::int64_t n) { return "sqrt(" + num(n) + ")"; }

[[noreturn]] void not_applicable(Family family, const std::string& why) {
    throw Error(ErrorCode::FamilyNotApplicable, std::string(family_name(family)) + ": " + why);
}

void require(bool ok, Family family, const std::string& why) {
    if (!ok) not_applicable(family, why);
}

Witness make(Family family, const FieldPtr& field, std::string variant, std::string expression,
             std::optional<int> expected) {
    Element alpha = parse_element(expression, field);
    return Witness{family, std::move(variant), std::move(expression), std::move(alpha), expected};
}

std::string alpha0_text(std::int64_t m) {
    if (mod4(m) == 1) return "7+((1+" + rt(m) + ")/2)^2";
    return "7+(1+" + rt(m) + ")^2";
}

QuadraticOrderDescriptor quadratic_shape(Family family, const OrderLattice& o) {
    require(o.rank() == 2, family, "needs an order of a quadratic field");
    if (o.quadratic()) return *o.quadratic();
    require(o.kind() == OrderKind::Maximal, family, "needs Z[sqrt(N)], Z[(1+sqrt(N))/2] or a maximal order");
    const std::int64_t n = o.field().m();
    return describe_quadratic_order(n, mod4(n) == 1 ? QuadraticForm::Half : QuadraticForm::Sqrt);
}

Witness thm31(const OrderLattice& o) {
    constexpr Family F = Family::QuadraticThm31;
    const auto d = quadratic_shape(F, o);
    const FieldPtr& field = o.field_ptr();
    const bool half = d.form == QuadraticForm::Half;
    const std::string N = num(d.N);
    if (!half && d.N == 2) return make(F, field, "Z[sqrt(2)]", "1+sqrt(2)^2+(1+sqrt(2))^2", 3);
    if (!half && d.N == 3) return make(F, field, "Z[sqrt(3)]", "2+(2+sqrt(3))^2", 3);
    if (half && d.N == 5) return make(F, field, "Z[(1+sqrt(5))/2]", "2+((1+sqrt(5))/2)^2", 3);
    if (!half && (d.N == 5 || d.N == 6 || d.N == 7))
        return make(F, field, "Z[sqrt(" + N + ")]", "3+(1+sqrt(" + N + "))^2", 4);
    if (half && d.N == 13)
        return make(F, field, "Z[(1+sqrt(13))/2]", "3+((1+sqrt(13))/2)^2+(1+(1+sqrt(13))/2)^2", 5);
    if (half) return make(F, field, "conductor form, half", "7+((" + num(d.f) + "+sqrt(" + N + "))/2)^2", 5);
    if (mod4(d.n) == 1)
        return make(F, field, "conductor form, even conductor", "7+(" + num(d.f) + "+sqrt(" + N + "))^2", 5);
    return make(F, field, "conductor form", "7+(1+sqrt(" + N + "))^2", 5);
}

Witness obs32(const OrderLattice& o) {
    constexpr Family F = Family::QuadraticObs32;
    const auto d = quadratic_shape(F, o);
    const std::string N = num(d.N);
    if (d.form == QuadraticForm::Half) {
        require(d.N >= 17, F, "Z[(1+sqrt(N))/2] needs N >= 17");
        return make(F, o.field_ptr(), "Z[(1+sqrt(N))/2]", "7+((1+sqrt(" + N + "))/2)^2", 5);
    }
    require(d.N >= 8, F, "Z[sqrt(N)] needs N >= 8");
    return make(F, o.field_ptr(), "Z[sqrt(N)]", "7+(1+sqrt(" + N + "))^2", 5);
}

bool in(std::int64_t x, std::initializer_list<std::int64_t> xs) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

std::string twelve_branch(const Field& f, std::string& expr) {
    const std::int64_t m = f.m(), s = f.s(), t = f.t();
    const std::int64_t s0 = f.s0(), t0 = f.t0();
    const BasisType type = *f.basis_type();
    const int q = f.roles().q;
    constexpr Family F = Family::TwelveBranch;
    std::string w;
    std::string branch;
    if (mod4(m) != 1) {
        if (type == BasisType::B1) {
            if (q == 1) {
                require(s0 != 3 * t0, F, "s0 = 3 t0 is not covered");
                if (s0 > 3 * t0) {
                    branch = "1(a)(i)(A)";
                    w = "1+" + rt(s);
                } else {
                    branch = "1(a)(i)(B)";
                    w = "1+(" + rt(s) + "+" + rt(t) + ")/2";
                }
            } else if (q == 2) {
                require(s0 != 4 * t0, F, "s0 = 4 t0 is not covered");
                if (s0 > 4 * t0) {
                    branch = "1(a)(ii)(A)";
                    w = "1+" + rt(s);
                } else {
                    branch = "1(a)(ii)(B)";
                    w = "(" + rt(m) + "+" + rt(t) + ")/2";
                }
            } else {
                branch = "1(a)(iii)";
                w = "(" + rt(m) + "+" + rt(s) + ")/2";
            }
        } else {
            if (q == 2) {
                branch = "1(b)(i)";
                w = "(1+" + rt(s) + ")/2";
            } else {
                branch = "1(b)(ii)";
                w = "(" + rt(m) + "+" + rt(s) + ")/2";
            }
        }
    } else {
        require(s0 != 3 * t0, F, "s0 = 3 t0 is not covered");
        const bool big = s0 > 3 * t0;
        if (type == BasisType::B2 || type == BasisType::B3) {
            branch = big ? "2(a)(i)" : "2(a)(ii)";
            w = big ? "1+" + rt(s) : "1+(" + rt(s) + "+" + rt(t) + ")/2";
        } else if (big) {
            branch = "2(b)(i)";
            w = "(1+" + rt(s) + ")/2";
        } else if (type == BasisType::B4a) {
            branch = "2(b)(ii)(A)";
            w = "(1+" + rt(m) + "+" + rt(s) + "+" + rt(t) + ")/4";
        } else {
            branch = "2(b)(ii)(B)";
            w = "(1+" + rt(m) + "+" + rt(s) + "-" + rt(t) + ")/4";
        }
    }
    expr = alpha0_text(m) + "+(" + w + ")^2";
    return branch;
}

Witness biquadratic(Family F, const OrderLattice& o) {
    require(o.rank() == 4, F, "needs a biquadratic field");
    require(o.kind() == OrderKind::Maximal, F, "needs the maximal order");
    const FieldPtr& field = o.field_ptr();
    const Field& f = *field;
    const std::int64_t m = f.m(), s = f.s(), t = f.t();
    const BasisType type = *f.basis_type();
    const std::int64_t p = f.role_value(f.roles().p);
    const std::int64_t q = f.role_value(f.roles().q);

    switch (F) {
        case Family::B1CoprimeLen6:
        case Family::B1CoprimeLen7: {
            require(type == BasisType::B1, F, "needs type B1");
            require(std::gcd(p, q) == 1, F, "p and q must be coprime");
            require(p >= 10 && q >= 10, F, "needs p, q >= 10");
            std::string e = "7+(1+" + rt(p) + ")^2+(1+" + rt(q) + ")^2";
            if (F == Family::B1CoprimeLen6) return make(F, field, "main", e, 6);
            e += "+((" + rt(p) + "+" + rt(p * q) + ")/2)^2";
            return make(F, field, "main", e, 7);
        }
        case Family::B23Coprime:
            require(type == BasisType::B2 || type == BasisType::B3, F, "needs type B2 or B3");
            require(std::gcd(p, q) == 1, F, "p and q must be coprime");
            require(p >= 10 && q >= 13, F, "needs p >= 10 and q >= 13");
            // With sqrt(13) in the field 7 is a sum of two squares and the length drops.
            require(q != 13, F, "q = 13 is excluded");
            return make(F, field, "main", "7+(1+" + rt(p) + ")^2+((1+" + rt(q) + ")/2)^2", 6);
        case Family::B4Coprime:
            require(type == BasisType::B4a || type == BasisType::B4b, F, "needs type B4");
            require(f.t0() == 1, F, "m and s must be coprime");
            require(m >= 17, F, "needs m, s >= 17");
            return make(F, field, "main", "7+((1+" + rt(m) + ")/2)^2+((1+" + rt(s) + ")/2)^2", 6);
        case Family::MIs1:
            require(mod4(m) == 1, F, "needs m = 1 mod 4");
            require(m != 5 && m != 13, F, "m must not be 5 or 13");
            return make(F, field, "main", alpha0_text(m), 5);
        case Family::MNot1:
            require(mod4(m) != 1, F, "needs m != 1 mod 4");
            require(!in(m, {2, 3, 6, 7}), F, "m must not be 2, 3, 6 or 7");
            require(!in(s - m, {4, 8, 12}), F, "s - m must not be 4, 8 or 12");
            if (s == 13 && (m == 10 || m == 11))
                return make(F, field, "exception", "3+((1+sqrt(13))/2)^2+(1+(1+sqrt(13))/2)^2", 5);
            if (m == 30 && s == 35) return make(F, field, "exception", "7+(1+sqrt(42))^2", 5);
            return make(F, field, "main", alpha0_text(m), 5);
        case Family::MPlus4_8_12: {
            require(mod4(m) != 1, F, "needs m != 1 mod 4");
            require(!in(m, {2, 3, 6, 7}), F, "m must not be 2, 3, 6 or 7");
            const std::int64_t gap = s - m;
            require(in(gap, {4, 8, 12}), F, "needs s - m in {4, 8, 12}");
            const bool exception = (gap == 4 && in(m, {10, 11, 15})) || (gap == 8 && in(m, {14, 22, 26, 11, 15, 23})) ||
                                   (gap == 12 && in(m, {10, 14, 22, 26, 11, 19, 23}));
            const std::string variant = "s=m+" + num(gap);
            if (exception)
                return make(F, field, variant + " exception", "7+((" + rt(m) + "+" + rt(s) + ")/2)^2", 5);
            return make(F, field, variant, (gap == 4 ? "15" : "28") + std::string("+(1+") + rt(m) + ")^2", 5);
        }
        case Family::Sqrt7: {
            require(m == 7, F, "needs m = 7");
            if (s == 11) return make(F, field, "s=11", "3+((sqrt(7)+sqrt(11))/2)^2+(1+(sqrt(7)+sqrt(11))/2)^2", 5);
            const int r = mod4(s);
            const std::string w = r == 1 ? "(1+" + rt(s) + ")/2" : r == 2 ? "1+" + rt(s) : "(sqrt(7)+" + rt(s) + ")/2";
            return make(F, field, "s=" + num(r) + " mod 4", "11+2*sqrt(7)+(" + w + ")^2", 5);
        }
        case Family::Sqrt6: {
            require(m == 6, F, "needs m = 6");
            if (s == 10) return make(F, field, "s=10", "3+(sqrt(6)-(sqrt(6)+sqrt(10))/2)^2+(2+(sqrt(6)+sqrt(10))/2)^2", 5);
            const int r = mod4(s);
            const std::string w = r == 1 ? "(1+" + rt(s) + ")/2" : r == 2 ? "(sqrt(6)+" + rt(s) + ")/2" : "1+" + rt(s);
            return make(F, field, "s=" + num(r) + " mod 4", "10+2*sqrt(6)+(" + w + ")^2", 5);
        }
        case Family::Sqrt5SIs1:
            require(m == 5, F, "needs m = 5");
            require(mod4(s) == 1, F, "needs s = 1 mod 4");
            return make(F, field, "main",
                        "1+1+((1+sqrt(5))/2)^2+((1+" + rt(s) + ")/2)^2+((-sqrt(5)+" + rt(s) + ")/2)^2", 5);
        case Family::Sqrt2: {
            require(m == 2, F, "needs m = 2");
            require(!in(s, {3, 5, 7}), F, "s must not be 3, 5 or 7");
            if (s == 13)
                return make(F, field, "s=13",
                            "1+sqrt(2)^2+(1+sqrt(2))^2+(sqrt(2)+(1+sqrt(13))/2)^2+(2+(1+sqrt(13))/2+(sqrt(2)+sqrt(26))/2)^2",
                            5);
            if (mod4(s) == 1)
                return make(F, field, "s=1 mod 4",
                            "1+(1-sqrt(2))^2+(2-sqrt(2))^2+(1/2+sqrt(2)+" + rt(s) + "/2)^2+((-1+sqrt(2)-" + rt(s) + "+" +
                                rt(t) + ")/2)^2",
                            5);
            return make(F, field, "s=3 mod 4",
                        "1+sqrt(2)^2+(1-sqrt(2))^2+(1+(-sqrt(2)-" + rt(t) + ")/2)^2+(sqrt(2)/2-" + rt(s) + "+" + rt(t) +
                            "/2)^2",
                        5);
        }
        case Family::Sqrt3: {
            require(m == 3, F, "needs m = 3");
            require(!in(s, {5, 7}), F, "s must not be 5 or 7");
            const int r = mod4(s);
            const std::string u = r == 1   ? "(1+" + rt(s) + ")/2"
                                  : r == 2 ? "(" + rt(s) + "+" + rt(t) + ")/2"
                                           : "(sqrt(3)+" + rt(s) + ")/2";
            return make(F, field, "s=" + num(r) + " mod 4", "1+1+(2+sqrt(3))^2+(" + u + ")^2+(1+" + u + ")^2", 5);
        }
        case Family::Sqrt5SNot1: {
            require(m == 5, F, "needs m = 5");
            require(mod4(s) != 1, F, "needs s != 1 mod 4");
            require(!in(s, {6, 7}), F, "s must not be 6 or 7");
            const std::int64_t lo = isqrt(s);
            return make(F, field, "main",
                        "1+2*((1+sqrt(5))/2)^2+(" + num(lo) + "+" + rt(s) + ")^2+(" + num(lo + 1) + "+" + rt(s) + ")^2", 5);
        }
        case Family::Sqrt13: {
            if (s == 13 && in(m, {6, 7, 10, 11}))
                return make(F, field, "n=" + num(m), "12+2*sqrt(13)+(1+" + rt(m) + ")^2", 6);
            require(m == 13, F, "needs m = 13, or s = 13 with m in {6, 7, 10, 11}");
            const std::string w = mod4(s) == 1 ? "(1+" + rt(s) + ")/2" : "1+" + rt(s);
            return make(F, field, mod4(s) == 1 ? "s=1 mod 4" : "s=2,3 mod 4", "12+2*sqrt(13)+(" + w + ")^2", 6);
        }
        case Family::TwelveBranch: {
            require(!in(m, {2, 3, 5, 6, 7, 13}), F, "m must not be 2, 3, 5, 6, 7 or 13");
            std::string expr;
            const std::string branch = twelve_branch(f, expr);
            return make(F, field, branch, expr, std::nullopt);
        }
        case Family::Tinkova: {
            require(type == BasisType::B1, F, "needs p = 2 and q = 3 mod 4 (type B1)");
            const std::int64_t qq = q;
            const std::int64_t pa = p;
            const std::int64_t pb = f.role_value(f.roles().r);
            for (std::int64_t pp : {pa, pb}) {
                const std::int64_t rr = pp == pa ? pb : pa;
                const std::int64_t p0 = std::gcd(qq, rr), q0 = std::gcd(pp, rr), r0 = std::gcd(pp, qq);
                if (q0 > r0 && r0 >= 3 && p0 > 3 * r0)
                    return make(F, field, "p=" + num(pp) + ",q=" + num(qq),
                                "7+(1+" + rt(pp) + ")^2+(1+" + rt(qq) + ")^2", 6);
            }
            not_applicable(F, "needs q0 > r0 >= 3 and p0 > 3 r0");
        }
        default:
            break;
    }
    not_applicable(F, "not a biquadratic family");
}

}  // namespace

std::string_view family_name(Family family) {
    for (const auto& n : kNames)
        if (n.family == family) return n.name;
    return "?";
}

std::optional<Family> parse_family(std::string_view name) {
    for (const auto& n : kNames)
        if (n.name == name) return n.family;
    return std::nullopt;
}

const std::vector<Family>& all_families() {
    static const std::vector<Family> families = [] {
        std::vector<Family> v;
        for (const auto& n : kNames) v.push_back(n.family);
        return v;
    }();
    return families;
}

Witness construct_witness(Family family, const OrderLattice& order) {
    if (family == Family::QuadraticThm31) return thm31(order);
    if (family == Family::QuadraticObs32) return obs32(order);
    return biquadratic(family, order);
}

Element alpha0(const FieldPtr& field) { return parse_element(alpha0_text(field->m()), field); }

AlphaZeroSplit split_alpha0(const FieldPtr& field) {
    const std::int64_t m = field->m(), s = field->s();
    if (field->degree() != 4 || mod4(m) == 1 || !in(s - m, {4, 8, 12}))
        throw Error(ErrorCode::FamilyNotApplicable, "needs m != 1 mod 4 and s - m in {4, 8, 12}");
    AlphaZeroSplit out{parse_element("1+(" + rt(m) + "+" + rt(s) + ")/2", field),
                       parse_element("1+(" + rt(m) + "-" + rt(s) + ")/2", field), {}};
    if (s - m == 4) out.rest.push_back(Element::integer(field, 2));
    if (s - m == 8) out.rest.assign(2, Element::integer(field, 1));
    return out;
}

}  // namespace bqsos
