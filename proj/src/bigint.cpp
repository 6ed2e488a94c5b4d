#include "bqsos/bigint.hpp"

#include <cctype>
#include <limits>
#include <numeric>

#include "bqsos/errors.hpp"

namespace bqsos {

bool is_squarefree(std::int64_t n) {
    if (n <= 0) return false;
    for (std::int64_t p = 2; p <= n / p; ++p) {
        if (n % (p * p) == 0) return false;
        if (n % p == 0) n /= p;
    }
    return true;
}

SquarefreeParts squarefree_parts(std::int64_t n) {
    if (n <= 0) throw Error(ErrorCode::OutOfRange, "squarefree_parts needs n > 0");
    std::int64_t f = 1;
    std::int64_t core = 1;
    for (std::int64_t p = 2; p <= n / p; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) f *= p;
        if (e % 2 == 1) core *= p;
    }
    core *= n;
    return {f, core};
}

std::int64_t isqrt(std::int64_t n) {
    if (n < 0) throw Error(ErrorCode::OutOfRange, "isqrt of a negative number");
    BigInt r;
    BigInt v(static_cast<long>(n));
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r.get_si();
}

BigInt isqrt(const BigInt& n) {
    if (sgn(n) < 0) throw Error(ErrorCode::OutOfRange, "isqrt of a negative number");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(std::int64_t n) {
    if (n < 0) return false;
    const std::int64_t r = isqrt(n);
    return r * r == n;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

BigInt floor(const Rational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

BigInt ceil(const Rational& q) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Rational parse_rational(const std::string& text) {
    std::size_t i = 0;
    auto digits = [&](std::size_t from) {
        std::size_t j = from;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        return j;
    };
    if (i < text.size() && text[i] == '-') ++i;
    std::size_t end = digits(i);
    if (end == i) throw Error(ErrorCode::SyntaxError, "not a rational number: '" + text + "'");
    std::size_t slash = end;
    if (slash < text.size() && text[slash] == '/') {
        end = digits(slash + 1);
        if (end == slash + 1) throw Error(ErrorCode::SyntaxError, "not a rational number: '" + text + "'");
    }
    if (end != text.size()) throw Error(ErrorCode::SyntaxError, "not a rational number: '" + text + "'");
    Rational q;
    if (q.set_str(text, 10) != 0 || sgn(q.get_den()) == 0)
        throw Error(ErrorCode::SyntaxError, "not a rational number: '" + text + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const BigInt& n) { return n.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

bool fits_int64(const BigInt& n) { return n.fits_slong_p(); }

std::int64_t to_int64(const BigInt& n) {
    if (!n.fits_slong_p()) throw Error(ErrorCode::Overflow, "integer does not fit in 64 bits: " + n.get_str());
    return n.get_si();
}

}  // namespace bqsos
