#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace bqsos {

using BigInt = mpz_class;
using Rational = mpq_class;

bool is_squarefree(std::int64_t n);

// n = f^2 * core with core squarefree; requires n > 0.
struct SquarefreeParts {
    std::int64_t f;
    std::int64_t core;
};
SquarefreeParts squarefree_parts(std::int64_t n);

std::int64_t isqrt(std::int64_t n);
BigInt isqrt(const BigInt& n);
bool is_perfect_square(std::int64_t n);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

// Floors/ceilings of exact rationals.
BigInt floor(const Rational& q);
BigInt ceil(const Rational& q);

// Accepts "n", "-n" or "a/b"; throws Error(SyntaxError) otherwise.
Rational parse_rational(const std::string& text);

std::string to_string(const BigInt& n);
std::string to_string(const Rational& q);

bool fits_int64(const BigInt& n);
std::int64_t to_int64(const BigInt& n);

}  // namespace bqsos
