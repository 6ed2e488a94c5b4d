#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "bqsos/decomposition.hpp"
#include "bqsos/errors.hpp"
#include "detail/search.hpp"

namespace bqsos {

using detail::Alphabet;
using detail::Arith;
using detail::V4;
using detail::V4Hash;

namespace {

constexpr std::size_t kMemoLimit = 1u << 23;

struct MemoKey {
    V4 r;
    std::int32_t j;
    std::int32_t k;
    bool operator==(const MemoKey&) const = default;
};

struct MemoHash {
    std::size_t operator()(const MemoKey& key) const noexcept {
        return V4Hash{}(key.r) ^ (static_cast<std::size_t>(key.j) * 0x9e3779b97f4a7c15ull) ^
               (static_cast<std::size_t>(key.k) << 48);
    }
};

using SquareIndex = std::unordered_map<V4, int, V4Hash>;

// Depth-first search for exactly k squares with non-increasing indices.
// The failure memo is only ever filled with refuted (residual, j, k) triples,
// so it stays valid across deepening rounds.
class Dfs {
public:
    Dfs(const Arith& arith, const Alphabet& alphabet, const SquareIndex& index, detail::BudgetClock& clock)
        : arith_(arith), sq_(alphabet.squares), index_(index), clock_(clock) {}

    std::vector<int> path;

    bool search(const V4& r, int j, int k) {
        clock_.tick();
        if (k == 0) return detail::is_zero(r);
        const std::int64_t den = arith_.den();
        const std::int64_t rt = r[0];
        if (rt < k * den) return false;
        const int n = static_cast<int>(sq_.size());
        if (j >= n || rt > k * sq_[static_cast<std::size_t>(j)][0]) return false;
        if (k == 1) {
            const auto it = index_.find(r);
            if (it == index_.end() || it->second < j) return false;
            path.push_back(it->second);
            return true;
        }
        const MemoKey key{r, j, k};
        if (memo_.count(key) != 0) return false;
        for (int i = j; i < n; ++i) {
            if (try_branch(r, i, k)) return true;
            if (sq_[static_cast<std::size_t>(i)][0] * k < rt) break;
        }
        if (memo_.size() < kMemoLimit) memo_.insert(key);
        return false;
    }

    // Takes square i as the largest of the k summands.
    bool try_branch(const V4& r, int i, int k) {
        const V4& sq = sq_[static_cast<std::size_t>(i)];
        if (sq[0] * k < r[0]) return false;
        if (sq[0] > r[0] - (k - 1) * arith_.den()) return false;
        const V4 rest = arith_.sub(r, sq);
        if (!arith_.totally_nonnegative(rest)) return false;
        path.push_back(i);
        if (search(rest, i, k - 1)) return true;
        path.pop_back();
        return false;
    }

private:
    const Arith& arith_;
    const std::vector<V4>& sq_;
    const SquareIndex& index_;
    detail::BudgetClock& clock_;
    std::unordered_set<MemoKey, MemoHash> memo_;
};

SquareIndex index_of(const Alphabet& a) {
    SquareIndex idx;
    for (std::size_t i = 0; i < a.squares.size(); ++i) idx.emplace(a.squares[i], static_cast<int>(i));
    return idx;
}

std::vector<Element> roots_of(const FieldPtr& field, const Alphabet& a, const std::vector<int>& path) {
    std::vector<Element> out;
    for (int i : path) out.push_back(detail::from_v4(field, a.roots[static_cast<std::size_t>(i)]));
    return out;
}

// One deepening round split over workers by top-level index; the smallest
// successful index wins so that the witness does not depend on scheduling.
bool parallel_round(std::vector<Dfs>& workers, const V4& alpha, int k, int n, std::vector<int>& path) {
    std::atomic<int> next{0};
    std::atomic<int> best{n};
    std::vector<std::vector<int>> found(static_cast<std::size_t>(n));
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    for (auto& w : workers) {
        threads.emplace_back([&, wp = &w] {
            try {
                while (true) {
                    const int i = next.fetch_add(1);
                    if (i >= n || i > best.load()) return;
                    wp->path.clear();
                    if (wp->try_branch(alpha, i, k)) {
                        found[static_cast<std::size_t>(i)] = wp->path;
                        int cur = best.load();
                        while (i < cur && !best.compare_exchange_weak(cur, i)) {
                        }
                    }
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
    if (best.load() >= n) return false;
    path = found[static_cast<std::size_t>(best.load())];
    return true;
}

}  // namespace

std::string_view length_status_name(LengthStatus status) {
    switch (status) {
        case LengthStatus::Exact: return "Exact";
        case LengthStatus::NotSumOfSquares: return "NotSumOfSquares";
        case LengthStatus::Undetermined: return "Undetermined";
    }
    return "?";
}

LengthResult length(const OrderLattice& o, const Element& alpha, const LengthOptions& options) {
    if (!(alpha.field() == o.field())) throw Error(ErrorCode::FieldMismatch, alpha.field().label() + " vs " + o.field().label());
    detail::BudgetClock clock(options.budget);
    LengthResult res;
    auto finish = [&](LengthResult r) {
        r.nodes = clock.nodes();
        r.millis = clock.elapsed_ms();
        return r;
    };
    if (alpha.is_zero()) {
        res.status = LengthStatus::Exact;
        return finish(res);
    }
    if (!o.contains(alpha) || !is_totally_nonnegative(alpha)) {
        res.status = LengthStatus::NotSumOfSquares;
        res.note = o.contains(alpha) ? "not totally nonnegative" : "not in the order";
        return finish(res);
    }

    const Arith arith(o.field());
    const V4 a = detail::to_v4(alpha);
    const Alphabet alphabet = detail::dominated_alphabet(arith, detail::order_rows(o), a);
    const SquareIndex index = index_of(alphabet);
    const int n = static_cast<int>(alphabet.squares.size());

    // Every nonzero square has abs_trace >= 1.
    const int cutoff = static_cast<int>(a[0] / arith.den());
    int limit = cutoff;
    if (options.max_n) limit = std::min(limit, *options.max_n);

    const int jobs = std::max(1, options.jobs);
    std::vector<Dfs> workers;
    for (int w = 0; w < jobs; ++w) workers.emplace_back(arith, alphabet, index, clock);

    int k = 1;
    try {
        for (; k <= limit; ++k) {
            std::vector<int> path;
            bool ok = false;
            if (jobs == 1 || k == 1) {
                workers[0].path.clear();
                ok = workers[0].search(a, 0, k);
                path = workers[0].path;
            } else {
                ok = parallel_round(workers, a, k, n, path);
            }
            if (ok) {
                res.status = LengthStatus::Exact;
                res.length = k;
                res.witness = roots_of(o.field_ptr(), alphabet, path);
                return finish(res);
            }
        }
    } catch (const detail::BudgetHit&) {
        res.status = LengthStatus::Undetermined;
        res.lower_bound = k;
        res.note = "budget exhausted while testing " + std::to_string(k) + " squares";
        return finish(res);
    }
    if (limit < cutoff) {
        res.status = LengthStatus::Undetermined;
        res.lower_bound = limit + 1;
        res.note = "no decomposition with at most " + std::to_string(limit) + " squares";
        return finish(res);
    }
    res.status = LengthStatus::NotSumOfSquares;
    res.note = "no decomposition with at most " + std::to_string(cutoff) + " squares";
    return finish(res);
}

NSquaresResult is_sum_of_n_squares(const OrderLattice& o, const Element& alpha, int n) {
    if (n < 0) throw Error(ErrorCode::OutOfRange, "n must be nonnegative");
    if (!(alpha.field() == o.field())) throw Error(ErrorCode::FieldMismatch, alpha.field().label() + " vs " + o.field().label());
    NSquaresResult res;
    if (alpha.is_zero()) {
        res.representable = true;
        return res;
    }
    if (n == 0 || !o.contains(alpha) || !is_totally_nonnegative(alpha)) return res;

    const Arith arith(o.field());
    const V4 a = detail::to_v4(alpha);
    const Alphabet alphabet = detail::dominated_alphabet(arith, detail::order_rows(o), a);

    // Sums of at most `level` squares that alpha dominates, with one back pointer each.
    struct Node {
        int prev;
        int square;
        int level;
    };
    std::vector<V4> values{V4{}};
    std::vector<Node> nodes{{-1, -1, 0}};
    std::unordered_map<V4, int, V4Hash> where{{V4{}, 0}};
    const int lo = n / 2;
    const int hi = n - lo;
    std::size_t frontier_begin = 0;
    for (int level = 1; level <= hi; ++level) {
        const std::size_t frontier_end = values.size();
        for (std::size_t f = frontier_begin; f < frontier_end; ++f) {
            for (std::size_t i = 0; i < alphabet.squares.size(); ++i) {
                const V4 v = arith.add(values[f], alphabet.squares[i]);
                if (v[0] > a[0] || where.count(v) != 0) continue;
                if (!arith.dominates(a, v)) continue;
                where.emplace(v, static_cast<int>(values.size()));
                values.push_back(v);
                nodes.push_back({static_cast<int>(f), static_cast<int>(i), level});
            }
        }
        frontier_begin = frontier_end;
    }

    auto unwind = [&](int id, std::vector<int>& out) {
        while (nodes[static_cast<std::size_t>(id)].prev >= 0) {
            out.push_back(nodes[static_cast<std::size_t>(id)].square);
            id = nodes[static_cast<std::size_t>(id)].prev;
        }
    };
    for (std::size_t id = 0; id < values.size(); ++id) {
        if (nodes[id].level > lo) break;
        const auto it = where.find(arith.sub(a, values[id]));
        if (it == where.end()) continue;
        res.representable = true;
        std::vector<int> path;
        unwind(static_cast<int>(id), path);
        unwind(it->second, path);
        std::sort(path.begin(), path.end());
        res.witness = roots_of(o.field_ptr(), alphabet, path);
        return res;
    }
    return res;
}

}  // namespace bqsos
