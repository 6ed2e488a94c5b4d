#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bqsos/element.hpp"
#include "bqsos/order.hpp"

namespace bqsos {

enum class Family {
    QuadraticThm31,
    QuadraticObs32,
    B1CoprimeLen6,
    B1CoprimeLen7,
    B23Coprime,
    B4Coprime,
    MIs1,
    MNot1,
    MPlus4_8_12,
    Sqrt7,
    Sqrt6,
    Sqrt5SIs1,
    Sqrt2,
    Sqrt3,
    Sqrt5SNot1,
    Sqrt13,
    TwelveBranch,
    Tinkova,
};

std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);
const std::vector<Family>& all_families();

struct Witness {
    Family family;
    // Which case of the construction was taken, e.g. "s=1 mod 4" or "2(b)(ii)(A)".
    std::string variant;
    // The construction in parse_element syntax.
    std::string expression;
    Element alpha;
    // Length the construction is known to reach; empty when only expected
    // up to finitely many exceptions.
    std::optional<int> expected_length;
};

// Throws Error(FamilyNotApplicable) naming the violated condition.
// Biquadratic families need the maximal order; the quadratic families accept
// any quadratic order from quadratic_order, quadratic_order_half or maximal_order.
Witness construct_witness(Family family, const OrderLattice& order);

// 7 + (1+sqrt(m))^2, or 7 + ((1+sqrt(m))/2)^2 when m = 1 mod 4.
Element alpha0(const FieldPtr& field);

// y1 = 1 + (sqrt(m)+sqrt(s))/2 and y2 = 1 + (sqrt(m)-sqrt(s))/2 together with
// the rational roots completing alpha0 when s - m is 4, 8 or 12.
struct AlphaZeroSplit {
    Element y1;
    Element y2;
    std::vector<Element> rest;
};

AlphaZeroSplit split_alpha0(const FieldPtr& field);

}  // namespace bqsos
