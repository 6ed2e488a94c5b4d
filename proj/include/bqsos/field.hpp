#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "bqsos/bigint.hpp"

namespace bqsos {

enum class BasisType { B1, B2, B3, B4a, B4b };

std::string_view basis_type_name(BasisType type);

// Which of the canonical generators (1 = m, 2 = s, 3 = t) plays the p, q and r role
// of the integral-basis table. For B1-B3, p and r share a residue mod 4 and p < r.
struct RoleAssignment {
    int p = 1;
    int q = 2;
    int r = 3;
};

/// A totally real field Q(sqrt(m), sqrt(s)) of degree 4, or Q(sqrt(n)) of degree 2.
///
/// Coordinates of elements are taken in the power basis (1, sqrt(m), sqrt(s), sqrt(t));
/// for a quadratic field only the first two are used and s = t = 0.
/// Generators are always canonical: 1 < m < s < t, with m0 = gcd(s,t), s0 = gcd(m,t),
/// t0 = gcd(m,s), so m = s0*t0, s = m0*t0 and t = m0*s0.
class Field {
public:
    static std::shared_ptr<const Field> biquadratic(std::int64_t p, std::int64_t q);
    static std::shared_ptr<const Field> quadratic(std::int64_t n);

    int degree() const noexcept { return degree_; }
    // Fixed coordinate scale: 4 for biquadratic, 2 for quadratic fields.
    std::int64_t den() const noexcept { return degree_ == 4 ? 4 : 2; }

    std::int64_t m() const noexcept { return m_; }
    std::int64_t s() const noexcept { return s_; }
    std::int64_t t() const noexcept { return t_; }
    std::int64_t m0() const noexcept { return m0_; }
    std::int64_t s0() const noexcept { return s0_; }
    std::int64_t t0() const noexcept { return t0_; }

    // User input the field was built from (for quadratic fields p = n and q = 0).
    std::int64_t input_p() const noexcept { return input_p_; }
    std::int64_t input_q() const noexcept { return input_q_; }

    // Radicand of coordinate i: (1, m, s, t).
    std::int64_t radicand(int i) const noexcept { return radicands_[static_cast<std::size_t>(i)]; }
    const std::array<std::int64_t, 4>& radicands() const noexcept { return radicands_; }

    // Only meaningful for degree 4.
    std::optional<BasisType> basis_type() const noexcept { return basis_type_; }
    RoleAssignment roles() const noexcept { return roles_; }
    std::int64_t role_value(int role_index) const noexcept { return radicands_[static_cast<std::size_t>(role_index)]; }

    // Columns are the integral basis of the maximal order in power-basis coordinates.
    // For degree 2 only the top-left 2x2 block is populated.
    const std::array<std::array<Rational, 4>, 4>& basis_matrix() const noexcept { return basis_matrix_; }
    // Same basis as rows of integers scaled by den().
    const std::array<std::array<std::int64_t, 4>, 4>& scaled_basis() const noexcept { return scaled_basis_; }

    // Index of the radicand n among (1, m, s, t), or -1 when n is not one of them.
    int radicand_index(std::int64_t n) const noexcept;

    std::string label() const;

    bool operator==(const Field& other) const noexcept {
        return degree_ == other.degree_ && m_ == other.m_ && s_ == other.s_;
    }

private:
    Field() = default;

    int degree_ = 4;
    std::int64_t m_ = 0, s_ = 0, t_ = 0;
    std::int64_t m0_ = 1, s0_ = 1, t0_ = 1;
    std::int64_t input_p_ = 0, input_q_ = 0;
    std::array<std::int64_t, 4> radicands_{1, 0, 0, 0};
    std::optional<BasisType> basis_type_;
    RoleAssignment roles_;
    std::array<std::array<Rational, 4>, 4> basis_matrix_{};
    std::array<std::array<std::int64_t, 4>, 4> scaled_basis_{};
};

using FieldPtr = std::shared_ptr<const Field>;

// Canonicalizes (p, q) to (m, s, t) and determines the integral basis type.
// Throws Error with NotSquarefree, EqualGenerators or OutOfRange.
FieldPtr classify_field(std::int64_t p, std::int64_t q);

inline bool same_field(const Field& a, const Field& b) noexcept { return a == b; }

enum class QuadraticForm { Sqrt, Half };

/// Order Z[sqrt(N)] or Z[(1+sqrt(N))/2] of a real quadratic field, N = f^2 * n.
struct QuadraticOrderDescriptor {
    std::int64_t N = 0;
    QuadraticForm form = QuadraticForm::Sqrt;
    std::int64_t f = 1;
    std::int64_t n = 0;
};

// Throws Error with SquareN or BadCongruence.
QuadraticOrderDescriptor describe_quadratic_order(std::int64_t N, QuadraticForm form);

}  // namespace bqsos
