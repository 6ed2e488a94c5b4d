#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <vector>

#include "bqsos/decomposition.hpp"
#include "detail/engine.hpp"

namespace bqsos::detail {

// Roots and squares, sorted by descending trace of the square.
struct Alphabet {
    std::vector<V4> roots;
    std::vector<V4> squares;
};

Alphabet dominated_alphabet(const Arith& arith, const std::vector<V4>& rows, const V4& alpha);
// Squares with norm_form(root) <= scaled_bound (= den^2 * cap).
Alphabet bounded_alphabet(const Arith& arith, const std::vector<V4>& rows, std::int64_t scaled_bound);

struct BudgetHit {};

class BudgetClock {
public:
    explicit BudgetClock(const Budget& budget)
        : budget_(budget), start_(std::chrono::steady_clock::now()) {}

    // Counts n nodes; throws BudgetHit once a limit is crossed.
    void tick(std::uint64_t n = 1) {
        const std::uint64_t total = nodes_.fetch_add(n, std::memory_order_relaxed) + n;
        if (budget_.max_nodes != 0 && total > budget_.max_nodes) throw BudgetHit{};
        if (budget_.max_seconds > 0 && (total & 1023u) < n && elapsed_ms() > budget_.max_seconds * 1000.0)
            throw BudgetHit{};
    }
    std::uint64_t nodes() const { return nodes_.load(std::memory_order_relaxed); }
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    Budget budget_;
    std::chrono::steady_clock::time_point start_;
    std::atomic<std::uint64_t> nodes_{0};
};

}  // namespace bqsos::detail
