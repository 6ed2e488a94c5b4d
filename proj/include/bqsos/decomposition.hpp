#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bqsos/element.hpp"
#include "bqsos/order.hpp"

namespace bqsos {

struct SquareEntry {
    Element root;
    Element square;
};

// Deduplicated squares of a finite alphabet; roots have their first nonzero
// scaled coordinate positive, entries sorted by descending abs_trace of the square.
struct SquareSet {
    std::string order_label;
    Rational bound;
    std::vector<SquareEntry> squares;
};

// All x^2 with x in o, x != 0 and alpha - x^2 totally nonnegative.
// Throws NotTotallyNonnegative.
SquareSet enumerate_squares_dominated(const OrderLattice& o, const Element& alpha);
// All x^2 with x in o, x != 0 and abs_trace(x^2) <= bound.
SquareSet enumerate_squares_bounded(const OrderLattice& o, const Rational& bound);

// Zero limits mean unlimited.
struct Budget {
    std::uint64_t max_nodes = 0;
    double max_seconds = 0;
};

enum class LengthStatus { Exact, NotSumOfSquares, Undetermined };

std::string_view length_status_name(LengthStatus status);

struct LengthResult {
    LengthStatus status = LengthStatus::Undetermined;
    int length = 0;
    // Roots whose squares sum to the query; set for Exact.
    std::vector<Element> witness;
    // For Undetermined: no decomposition with fewer squares exists.
    int lower_bound = 0;
    std::uint64_t nodes = 0;
    double millis = 0;
    std::string note;
};

struct LengthOptions {
    Budget budget;
    int jobs = 1;
    // Stop after refuting max_n squares; the result is then Undetermined.
    std::optional<int> max_n;
};

LengthResult length(const OrderLattice& o, const Element& alpha, const LengthOptions& options = {});

struct NSquaresResult {
    bool representable = false;
    std::vector<Element> witness;
};

// Whether alpha is a sum of at most n squares, decided by meeting two
// half-depth sum sets in the middle.
NSquaresResult is_sum_of_n_squares(const OrderLattice& o, const Element& alpha, int n);

struct ProfileEntry {
    Element value;
    int length = 0;
    std::vector<Element> witness;
};

struct FixedPointOptions {
    // Build sums stratum by stratum of exact trace instead of level by level.
    bool stratified = false;
    Budget budget;
    // Directory for level caches; empty disables caching.
    std::string cache_dir;
};

struct LowerBoundResult {
    int n = 0;
    Rational cap;
    // Elements first reached at level n, each with a witness.
    std::vector<ProfileEntry> witnesses;
    // Size of S(k) \ S(k-1) for k = 1..n.
    std::vector<std::size_t> level_sizes;
    bool from_cache = false;
    double millis = 0;
};

LowerBoundResult pythagoras_lower_bound(const OrderLattice& o, const Rational& cap, const FixedPointOptions& options = {});

struct ProfileResult {
    Rational cap;
    int max_length = 0;
    // Every sum of squares with abs_trace <= cap; witnesses only on maximal-length rows.
    std::vector<ProfileEntry> table;
    std::vector<std::size_t> level_sizes;
    bool from_cache = false;
    double millis = 0;
};

ProfileResult length_profile(const OrderLattice& o, const Rational& cap, const FixedPointOptions& options = {});

// Sum of squares of the roots.
Element sum_of_squares(const FieldPtr& field, const std::vector<Element>& roots);

}  // namespace bqsos
