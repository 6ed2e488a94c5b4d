#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "bqsos/decomposition.hpp"
#include "bqsos/errors.hpp"
#include "detail/search.hpp"

namespace bqsos {

using detail::Alphabet;
using detail::Arith;
using detail::V4;
using detail::V4Hash;

namespace {

constexpr int kCacheVersion = 1;

struct Record {
    int level;
    // Index into the ascending alphabet of one square whose removal drops a level.
    int square;
};

bool trace_less(const V4& x, const V4& y) { return x[0] != y[0] ? x[0] < y[0] : x < y; }

struct Levels {
    const Arith* arith = nullptr;
    std::vector<V4> sq;     // squares, ascending trace
    std::vector<V4> roots;  // matching roots
    std::unordered_map<V4, int, V4Hash> sq_index;
    std::int64_t cap = 0;   // scaled: v[0] <= cap
    std::unordered_map<V4, Record, V4Hash> seen;
    std::vector<std::vector<V4>> levels;
    bool complete = false;

    void add_level(std::vector<V4> fresh) {
        std::sort(fresh.begin(), fresh.end(), trace_less);
        levels.push_back(std::move(fresh));
    }

    std::vector<int> witness(V4 v) const {
        std::vector<int> path;
        while (true) {
            const Record& rec = seen.at(v);
            path.push_back(rec.square);
            if (rec.level == 1) break;
            v = arith->sub(v, sq[static_cast<std::size_t>(rec.square)]);
        }
        std::sort(path.begin(), path.end());
        return path;
    }

    // Record for a value known to sit at the given level.
    Record locate(const V4& v, int level) const {
        if (level == 1) return {1, sq_index.at(v)};
        for (std::size_t i = 0; i < sq.size() && sq[i][0] < v[0]; ++i) {
            const auto it = seen.find(arith->sub(v, sq[i]));
            if (it != seen.end() && it->second.level == level - 1) return {level, static_cast<int>(i)};
        }
        throw Error(ErrorCode::CacheMismatch, "cached level entry has no decomposition");
    }
};

void expand_levels(Levels& L, detail::BudgetClock& clock) {
    if (L.levels.empty()) {
        std::vector<V4> first;
        for (std::size_t i = 0; i < L.sq.size(); ++i) {
            if (L.sq[i][0] > L.cap) break;
            L.seen.emplace(L.sq[i], Record{1, static_cast<int>(i)});
            first.push_back(L.sq[i]);
        }
        L.add_level(std::move(first));
    }
    while (!L.levels.back().empty()) {
        const int level = static_cast<int>(L.levels.size()) + 1;
        std::vector<V4> fresh;
        for (const V4& y : L.levels.back()) {
            clock.tick();
            for (std::size_t i = 0; i < L.sq.size(); ++i) {
                if (y[0] + L.sq[i][0] > L.cap) break;
                const V4 v = L.arith->add(y, L.sq[i]);
                if (L.seen.emplace(v, Record{level, static_cast<int>(i)}).second) fresh.push_back(v);
            }
        }
        L.add_level(std::move(fresh));
    }
    L.levels.pop_back();
    L.complete = true;
}

// Stratum by stratum of exact scaled trace; each stratum is searched over
// multisets of squares, at most one square longer than the longest element
// of the lower strata.
void expand_stratified(Levels& L, detail::BudgetClock& clock) {
    L.seen.clear();
    std::vector<std::vector<V4>> by_level;
    int longest = 0;
    for (std::int64_t tau = 1; tau <= L.cap; ++tau) {
        std::unordered_map<V4, std::pair<int, int>, V4Hash> stratum;
        const int depth_limit = longest + 1;
        std::vector<int> path;
        auto dfs = [&](auto&& self, const V4& sum, std::size_t start, std::int64_t remaining) -> void {
            clock.tick();
            if (remaining == 0) {
                const int len = static_cast<int>(path.size());
                auto [it, inserted] = stratum.emplace(sum, std::make_pair(len, path.back()));
                if (!inserted && len < it->second.first) it->second = {len, path.back()};
                return;
            }
            if (static_cast<int>(path.size()) == depth_limit) return;
            for (std::size_t i = start; i < L.sq.size(); ++i) {
                if (L.sq[i][0] > remaining) break;
                path.push_back(static_cast<int>(i));
                self(self, L.arith->add(sum, L.sq[i]), i, remaining - L.sq[i][0]);
                path.pop_back();
            }
        };
        dfs(dfs, V4{}, 0, tau);
        for (const auto& [v, info] : stratum) {
            L.seen.emplace(v, Record{info.first, info.second});
            if (static_cast<int>(by_level.size()) < info.first) by_level.resize(static_cast<std::size_t>(info.first));
            by_level[static_cast<std::size_t>(info.first - 1)].push_back(v);
            longest = std::max(longest, info.first);
        }
    }
    L.levels.clear();
    for (auto& lv : by_level) L.add_level(std::move(lv));
    L.complete = true;
}

std::string cap_text(const Rational& cap) {
    std::string s = cap.get_str();
    std::replace(s.begin(), s.end(), '/', '_');
    return s;
}

std::string hex(std::uint64_t h) {
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::filesystem::path cache_path(const std::string& dir, const OrderLattice& o, const Rational& cap) {
    const Field& f = o.field();
    return std::filesystem::path(dir) /
           (std::to_string(f.m()) + "_" + std::to_string(f.degree() == 4 ? f.s() : 0) + "_" + hex(o.basis_hash()) + "_" +
            cap_text(cap) + ".cache");
}

void save_cache(const std::filesystem::path& path, const OrderLattice& o, const Rational& cap, const Levels& L) {
    std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        const Field& f = o.field();
        out << "bqsos-levels " << kCacheVersion << "\n";
        out << "field " << f.m() << " " << (f.degree() == 4 ? f.s() : 0) << "\n";
        out << "order " << o.label() << " " << hex(o.basis_hash()) << "\n";
        out << "cap " << cap.get_str() << "\n";
        out << "levels " << L.levels.size() << "\n";
        out << "complete " << (L.complete ? 1 : 0) << "\n";
        for (std::size_t k = 0; k < L.levels.size(); ++k) {
            out << "level " << (k + 1) << " " << L.levels[k].size() << "\n";
            for (const V4& v : L.levels[k]) out << v[0] << " " << v[1] << " " << v[2] << " " << v[3] << "\n";
        }
        if (!out) throw Error(ErrorCode::CacheMismatch, "cannot write " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

bool load_cache(const std::filesystem::path& path, const OrderLattice& o, const Rational& cap, Levels& L) {
    std::ifstream in(path);
    if (!in) return false;
    auto expect = [&](const std::string& word) {
        std::string got;
        in >> got;
        if (got != word) throw Error(ErrorCode::CacheMismatch, path.string() + ": expected '" + word + "'");
    };
    const Field& f = o.field();
    int version = 0;
    expect("bqsos-levels");
    in >> version;
    if (version != kCacheVersion) throw Error(ErrorCode::CacheMismatch, "unsupported cache version " + std::to_string(version));
    std::int64_t m = 0, s = 0;
    expect("field");
    in >> m >> s;
    std::string label, hash, cap_str;
    expect("order");
    in >> label >> hash;
    expect("cap");
    in >> cap_str;
    if (m != f.m() || s != (f.degree() == 4 ? f.s() : 0) || hash != hex(o.basis_hash()) || cap_str != cap.get_str())
        throw Error(ErrorCode::CacheMismatch, path.string() + " was written for another order or cap");
    std::size_t count = 0;
    int complete = 0;
    expect("levels");
    in >> count;
    expect("complete");
    in >> complete;
    L.levels.clear();
    L.seen.clear();
    for (std::size_t k = 0; k < count; ++k) {
        std::size_t level = 0, size = 0;
        expect("level");
        in >> level >> size;
        std::vector<V4> vals(size);
        for (auto& v : vals) in >> v[0] >> v[1] >> v[2] >> v[3];
        if (!in) throw Error(ErrorCode::CacheMismatch, path.string() + " is truncated");
        for (const V4& v : vals) L.seen.emplace(v, L.locate(v, static_cast<int>(level)));
        L.levels.push_back(std::move(vals));
    }
    L.complete = complete != 0;
    return true;
}

struct Run {
    Levels levels;
    bool from_cache = false;
    double millis = 0;
};

Run run_fixed_point(const OrderLattice& o, const Rational& cap, const FixedPointOptions& options, const Arith& arith) {
    if (cap < 1) throw Error(ErrorCode::CapTooSmall, "cap " + cap.get_str() + " is below 1");
    detail::BudgetClock clock(options.budget);
    Run run;
    Levels& L = run.levels;
    L.arith = &arith;
    const std::int64_t den = arith.den();
    L.cap = to_int64(floor(cap * Rational(static_cast<long>(den))));
    Alphabet a = detail::bounded_alphabet(arith, detail::order_rows(o), to_int64(floor(cap * Rational(static_cast<long>(den * den)))));
    std::reverse(a.roots.begin(), a.roots.end());
    std::reverse(a.squares.begin(), a.squares.end());
    L.sq = std::move(a.squares);
    L.roots = std::move(a.roots);
    for (std::size_t i = 0; i < L.sq.size(); ++i) L.sq_index.emplace(L.sq[i], static_cast<int>(i));
    if (L.sq.empty()) throw Error(ErrorCode::CapTooSmall, "no squares with abs_trace <= " + cap.get_str());

    std::filesystem::path path;
    if (!options.cache_dir.empty()) {
        path = cache_path(options.cache_dir, o, cap);
        if (load_cache(path, o, cap, L)) {
            run.from_cache = L.complete;
            if (!L.complete && options.stratified) {
                L.levels.clear();
                L.seen.clear();
            }
        }
    }
    if (!L.complete) {
        try {
            if (options.stratified) {
                expand_stratified(L, clock);
            } else {
                expand_levels(L, clock);
            }
        } catch (const detail::BudgetHit&) {
            if (!path.empty() && !options.stratified) {
                if (!L.levels.empty() && L.levels.back().empty()) L.levels.pop_back();
                save_cache(path, o, cap, L);
            }
            throw Error(ErrorCode::BudgetExceeded,
                        "fixed point not reached; " + std::to_string(L.levels.size()) + " levels complete");
        }
        if (!path.empty()) save_cache(path, o, cap, L);
    }
    run.millis = clock.elapsed_ms();
    return run;
}

ProfileEntry entry(const OrderLattice& o, const Levels& L, const V4& v, int level, bool with_witness) {
    ProfileEntry e{detail::from_v4(o.field_ptr(), v), level, {}};
    if (with_witness)
        for (int i : L.witness(v)) e.witness.push_back(detail::from_v4(o.field_ptr(), L.roots[static_cast<std::size_t>(i)]));
    return e;
}

}  // namespace

LowerBoundResult pythagoras_lower_bound(const OrderLattice& o, const Rational& cap, const FixedPointOptions& options) {
    const Arith arith(o.field());
    Run run = run_fixed_point(o, cap, options, arith);
    const Levels& L = run.levels;
    LowerBoundResult res;
    res.cap = cap;
    res.n = static_cast<int>(L.levels.size());
    for (const auto& lv : L.levels) res.level_sizes.push_back(lv.size());
    for (const V4& v : L.levels.back()) res.witnesses.push_back(entry(o, L, v, res.n, true));
    res.from_cache = run.from_cache;
    res.millis = run.millis;
    return res;
}

ProfileResult length_profile(const OrderLattice& o, const Rational& cap, const FixedPointOptions& options) {
    const Arith arith(o.field());
    Run run = run_fixed_point(o, cap, options, arith);
    const Levels& L = run.levels;
    ProfileResult res;
    res.cap = cap;
    res.max_length = static_cast<int>(L.levels.size());
    std::vector<std::pair<V4, int>> all;
    for (std::size_t k = 0; k < L.levels.size(); ++k) {
        res.level_sizes.push_back(L.levels[k].size());
        for (const V4& v : L.levels[k]) all.emplace_back(v, static_cast<int>(k + 1));
    }
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return trace_less(x.first, y.first); });
    res.table.reserve(all.size());
    for (const auto& [v, level] : all) res.table.push_back(entry(o, L, v, level, true));
    res.from_cache = run.from_cache;
    res.millis = run.millis;
    return res;
}

}  // namespace bqsos
