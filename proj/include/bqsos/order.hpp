#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bqsos/element.hpp"
#include "bqsos/field.hpp"

namespace bqsos {

enum class OrderKind { Maximal, Quadratic, Custom };

/// A full-rank subring of the ring of integers of a field.
///
/// The lattice is stored as an upper-triangular Hermite normal form over the
/// field's scaled coordinates: row i has zeros left of column i, a positive
/// pivot at column i, and entries above each pivot reduced into [0, pivot).
/// Equal lattices have equal rows.
class OrderLattice {
public:
    const Field& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    int rank() const noexcept { return field_->degree(); }
    OrderKind kind() const noexcept { return kind_; }
    const std::string& label() const noexcept { return label_; }
    const std::optional<QuadraticOrderDescriptor>& quadratic() const noexcept { return quadratic_; }

    // rows()[i][j] for i, j < rank().
    const std::vector<std::array<BigInt, 4>>& rows() const noexcept { return rows_; }
    std::vector<Element> basis() const;
    bool contains_one() const noexcept { return true; }

    // Index [O_K : this].
    BigInt index_in_maximal() const;
    // FNV-1a over the field and the normal form, for cache keys.
    std::uint64_t basis_hash() const;

    bool contains(const Element& x) const;

    friend bool operator==(const OrderLattice& a, const OrderLattice& b) {
        return a.field() == b.field() && a.rows_ == b.rows_;
    }

private:
    friend OrderLattice make_order(FieldPtr, std::vector<std::array<BigInt, 4>>, OrderKind, std::string,
                                   std::optional<QuadraticOrderDescriptor>);
    OrderLattice() = default;

    FieldPtr field_;
    OrderKind kind_ = OrderKind::Maximal;
    std::string label_;
    std::optional<QuadraticOrderDescriptor> quadratic_;
    std::vector<std::array<BigInt, 4>> rows_;
};

OrderLattice maximal_order(const FieldPtr& field);

// Smallest ring containing 1 and the generators. Throws NotIntegral for
// non-integral generators, NotFullRank, or NotClosedWithinBudget.
OrderLattice custom_order(const FieldPtr& field, const std::vector<Element>& generators);

// Z[sqrt(N)] and Z[(1+sqrt(N))/2] inside Q(sqrt(n)), N = f^2 n.
OrderLattice quadratic_order(std::int64_t N);
OrderLattice quadratic_order_half(std::int64_t N);

bool contains(const OrderLattice& o, const Element& x);

// Row HNF of integer vectors of length rank; throws NotFullRank.
std::vector<std::array<BigInt, 4>> hermite_normal_form(std::vector<std::array<BigInt, 4>> vectors, int rank);

}  // namespace bqsos
