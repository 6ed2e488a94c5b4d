#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bqsos/bigint.hpp"
#include "bqsos/field.hpp"

namespace bqsos {

using Coords = std::array<BigInt, 4>;

/// Exact element (a + b*sqrt(m) + c*sqrt(s) + d*sqrt(t)) / den of a Field.
///
/// The denominator is the field's fixed scale, so equal elements have equal
/// coordinates. Results that cannot be written over that scale throw
/// Error(NotRepresentable); algebraic integers always can.
class Element {
public:
    Element(FieldPtr field, Coords scaled);

    static Element zero(FieldPtr field);
    static Element integer(FieldPtr field, std::int64_t value);
    // Exact conversion from rational power-basis coordinates.
    static Element from_rational(FieldPtr field, const std::array<Rational, 4>& coords);
    // sqrt(radicand) for a radicand among (m, s, t) of the field.
    static Element sqrt_of(FieldPtr field, std::int64_t radicand);

    const Field& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    const Coords& scaled() const noexcept { return num_; }
    const BigInt& scaled(int i) const noexcept { return num_[static_cast<std::size_t>(i)]; }
    std::int64_t den() const noexcept { return field_->den(); }

    // Power-basis coefficient g_i = scaled(i) / den.
    Rational coefficient(int i) const;

    bool is_zero() const;

    Element operator-() const;
    friend Element operator+(const Element& x, const Element& y);
    friend Element operator-(const Element& x, const Element& y);
    friend Element operator*(const Element& x, const Element& y);
    Element& operator+=(const Element& y) { return *this = *this + y; }
    Element& operator-=(const Element& y) { return *this = *this - y; }
    Element& operator*=(const Element& y) { return *this = *this * y; }

    friend bool operator==(const Element& x, const Element& y);
    friend bool operator!=(const Element& x, const Element& y) { return !(x == y); }

private:
    FieldPtr field_;
    Coords num_;
};

Element elem_add(const Element& x, const Element& y);
Element elem_sub(const Element& x, const Element& y);
Element elem_mul(const Element& x, const Element& y);
Element elem_square(const Element& x);
Element power(const Element& x, unsigned exponent);

// Galois images; four for biquadratic fields in the order
// (+,+,+), (-,+,-), (+,-,-), (-,-,+) of the signs of (sqrt m, sqrt s, sqrt t).
// Quadratic fields have two.
std::vector<Element> conjugates(const Element& x);
int embedding_count(const Field& field) noexcept;

Rational abs_trace(const Element& x);
// abs_trace(x*x) from the closed form (a^2 + b^2 m + c^2 s + d^2 t) / den^2.
Rational abs_trace_of_square(const Element& x);

// Exact sign of the i-th embedding, integer arithmetic only.
int sign_at_embedding(const Element& x, int embedding);
bool is_totally_nonnegative(const Element& x);
bool is_totally_positive(const Element& x);
// x - y totally nonnegative.
bool dominates(const Element& x, const Element& y);

// Readable form that parse_element accepts, e.g. "9/2+1/2*sqrt(17)".
std::string pretty(const Element& x);

}  // namespace bqsos
