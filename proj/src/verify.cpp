#include "bqsos/verify.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "bqsos/errors.hpp"
#include "bqsos/parse.hpp"

namespace bqsos {

namespace {

using Pair = std::pair<std::int64_t, std::int64_t>;

struct LemmaItem {
    int item;
    Family family;
    int expected;
    std::vector<Pair> fields;
};

std::vector<Pair> with_m(std::int64_t m, std::initializer_list<std::int64_t> ss) {
    std::vector<Pair> out;
    for (auto s : ss) out.emplace_back(m, s);
    return out;
}

std::vector<LemmaItem> lemma_items(const TableOptions& opt, std::string& note) {
    std::vector<LemmaItem> items{
        {1, Family::MIs1, 5, {{17, 19}, {17, 21}, {17, 22}, {21, 22}, {21, 23}}},
        {2, Family::MNot1, 5, {{10, 11}, {10, 17}, {10, 19}, {11, 14}, {11, 17}, {11, 21}, {14, 15}, {14, 17},
                               {14, 19}, {15, 17}, {15, 21}, {15, 22}, {19, 21}, {19, 22}, {22, 23}, {23, 26}}},
        {3, Family::MNot1, 5, {{10, 13}, {11, 13}, {30, 35}}},
        {4, Family::MPlus4_8_12, 5, {{22, 26}, {26, 30}, {19, 23}}},
        {5, Family::MPlus4_8_12, 5, {{30, 38}, {34, 42}, {38, 46}, {31, 39}, {35, 43}, {39, 47}, {43, 51},
                                     {47, 55}, {34, 46}, {31, 43}, {35, 47}, {39, 51}, {43, 55}}},
        {6, Family::MPlus4_8_12, 5, {{10, 14}, {11, 15}, {15, 19}, {14, 22}, {22, 30}, {26, 34}, {11, 19}, {15, 23},
                                     {23, 31}, {10, 22}, {14, 26}, {22, 34}, {26, 38}, {11, 23}, {19, 31}, {23, 35}}},
        {7, Family::Sqrt6, 5, with_m(6, {13, 17, 29, 37, 41, 7, 11, 19, 26, 34, 14, 22, 38, 46, 62, 70, 86})},
        {8, Family::Sqrt6, 5, {{6, 10}}},
        {9, Family::Sqrt7, 5, with_m(7, {13, 17, 29, 33, 37, 41, 10, 15, 19, 23, 31, 39, 43, 47, 51})},
        {10, Family::Sqrt7, 5, {{7, 11}}},
        {11, Family::Sqrt2, 5, with_m(2, {11, 15, 17, 21, 29})},
        {12, Family::Sqrt2, 5, {{2, 13}}},
        {13, Family::Sqrt3, 5, with_m(3, {13, 17, 29, 37, 41, 10, 11, 19, 23, 31, 35, 43})},
        {14, Family::Sqrt5SIs1, 5, {{5, 13}, {5, 17}}},
        {15, Family::Sqrt5SNot1, 5, {}},
        {16, Family::Sqrt13, 6, with_m(13, {17, 21, 29, 33, 37, 41})},
        {17, Family::Sqrt13, 6, {{6, 13}, {7, 13}, {10, 13}, {11, 13}}},
    };
    const std::int64_t top = opt.full ? 3253 : opt.item15_scaled_max_s;
    for (std::int64_t s = 8; s <= top; ++s) {
        if (s % 4 == 1 || !is_squarefree(s)) continue;
        const auto f = Field::biquadratic(5, s);
        if (f->m() == 5 && f->s() == s) items[14].fields.emplace_back(5, s);
    }
    if (top < 3253) note = "item 15 is run for 7 < s <= " + std::to_string(top) + "; --full runs the whole range s <= 3253";
    return items;
}

struct Prop44Entry {
    int item;
    Pair field;
    int length;
    const char* alpha;
    int tr_cap;
};

const std::vector<Prop44Entry>& prop44_entries() {
    static const std::vector<Prop44Entry> e{
        {1, {2, 3}, 3, "6+sqrt(2)+sqrt(6)", 400},
        {2, {2, 5}, 3, "6+sqrt(5)", 400},
        {3, {3, 5}, 3, "3+(1+sqrt(5))/2", 500},
        {4, {2, 7}, 4, "10+2*sqrt(2)+sqrt(7)", 500},
        {5, {3, 7}, 4, "8+sqrt(3)+sqrt(7)", 500},
        {6, {5, 6}, 4, "10+2*sqrt(6)+(1+sqrt(5))/2", 500},
        {7, {5, 7}, 4, "11+2*sqrt(7)+(1+sqrt(5))/2", 500},
    };
    return e;
}

struct QuadOrderSpec {
    std::int64_t N;
    QuadraticForm form;
};

const std::vector<QuadOrderSpec>& thm31_orders() {
    static const std::vector<QuadOrderSpec> v{
        {2, QuadraticForm::Sqrt},  {3, QuadraticForm::Sqrt},  {5, QuadraticForm::Half},  {6, QuadraticForm::Sqrt},
        {7, QuadraticForm::Sqrt},  {5, QuadraticForm::Sqrt},  {13, QuadraticForm::Half}, {10, QuadraticForm::Sqrt},
        {11, QuadraticForm::Sqrt}, {17, QuadraticForm::Half}, {21, QuadraticForm::Half}, {8, QuadraticForm::Sqrt},
        {12, QuadraticForm::Sqrt}, {20, QuadraticForm::Sqrt}, {45, QuadraticForm::Half}, {13, QuadraticForm::Sqrt},
    };
    return v;
}

OrderLattice quad(const QuadOrderSpec& q) {
    return q.form == QuadraticForm::Sqrt ? quadratic_order(q.N) : quadratic_order_half(q.N);
}

void tally(TableReport& rep, const Json& row) {
    if (row.contains("pass") && row["pass"].is_boolean()) {
        if (row["pass"].get<bool>())
            ++rep.passed;
        else
            ++rep.failed;
    } else {
        ++rep.undetermined;
    }
}

Json run_witness(const OrderLattice& o, Family family, const Budget& budget, int jobs, std::optional<int> expected) {
    const Witness w = construct_witness(family, o);
    LengthOptions lo;
    lo.budget = budget;
    lo.jobs = jobs;
    const LengthResult r = length(o, w.alpha, lo);
    Json row = witness_row(o, w, r);
    if (expected) {
        row["expected"] = *expected;
        if (r.status == LengthStatus::Undetermined)
            row["pass"] = nullptr;
        else
            row["pass"] = r.status == LengthStatus::Exact && r.length == *expected && row["replay"].get<bool>();
    }
    return row;
}

Json error_row(const std::string& what) { return Json{{"status", "Error"}, {"error", what}, {"pass", false}}; }

}  // namespace

std::optional<TableId> parse_table(std::string_view name) {
    if (name == "lemma4.3") return TableId::Lemma43;
    if (name == "prop4.4") return TableId::Prop44;
    if (name == "thm3.1") return TableId::Thm31;
    return std::nullopt;
}

std::string_view table_name(TableId id) {
    switch (id) {
        case TableId::Lemma43: return "lemma4.3";
        case TableId::Prop44: return "prop4.4";
        case TableId::Thm31: return "thm3.1";
    }
    return "?";
}

Json field_json(const Field& f) {
    if (f.degree() == 2) return Json{{"degree", 2}, {"n", f.m()}, {"label", f.label()}};
    return Json{{"degree", 4},
                {"p", f.input_p()},
                {"q", f.input_q()},
                {"m", f.m()},
                {"s", f.s()},
                {"t", f.t()},
                {"m0", f.m0()},
                {"s0", f.s0()},
                {"t0", f.t0()},
                {"type", std::string(basis_type_name(*f.basis_type()))},
                {"label", f.label()}};
}

Json element_json(const Element& x) {
    Json coords = Json::array();
    for (int i = 0; i < 4; ++i) coords.push_back(x.scaled(i).get_str());
    return Json{{"scaled", coords}, {"den", std::to_string(x.den())}, {"pretty", pretty(x)}, {"atr", abs_trace(x).get_str()}};
}

Json length_json(const LengthResult& r) {
    Json j{{"status", std::string(length_status_name(r.status))}, {"nodes", r.nodes}, {"millis", r.millis}};
    if (r.status == LengthStatus::Exact) {
        j["length"] = r.length;
        Json w = Json::array();
        for (const auto& x : r.witness) w.push_back(pretty(x));
        j["witness"] = w;
    } else {
        j["length"] = nullptr;
    }
    if (r.status == LengthStatus::Undetermined) j["lower_bound"] = r.lower_bound;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json witness_row(const OrderLattice& o, const Witness& w, const LengthResult& r) {
    Json row = length_json(r);
    row["field"] = field_json(o.field());
    row["order"] = o.label();
    row["family"] = std::string(family_name(w.family));
    row["variant"] = w.variant;
    row["expression"] = w.expression;
    row["alpha"] = element_json(w.alpha);
    row["expected"] = w.expected_length ? Json(*w.expected_length) : Json(nullptr);
    bool replay = true;
    if (r.status == LengthStatus::Exact) replay = sum_of_squares(o.field_ptr(), r.witness) == w.alpha;
    row["replay"] = replay;
    if (w.expected_length && r.status != LengthStatus::Undetermined)
        row["pass"] = r.status == LengthStatus::Exact && r.length == *w.expected_length && replay;
    else
        row["pass"] = nullptr;
    return row;
}

TableReport verify_table(TableId id, const TableOptions& opt, const std::function<void(const Json&)>& on_row) {
    TableReport rep;
    auto emit = [&](Json row) {
        row["table"] = std::string(table_name(id));
        tally(rep, row);
        if (on_row) on_row(row);
        rep.rows.push_back(std::move(row));
    };

    if (id == TableId::Lemma43) {
        for (const auto& it : lemma_items(opt, rep.scope_note)) {
            if (opt.item && *opt.item != it.item) continue;
            for (const auto& [p, q] : it.fields) {
                Json row;
                try {
                    const auto field = Field::biquadratic(p, q);
                    if (field->m() != p || field->s() != q)
                        throw Error(ErrorCode::OutOfRange, "(" + std::to_string(p) + "," + std::to_string(q) + ") is not canonical");
                    row = run_witness(maximal_order(field), it.family, opt.budget, opt.jobs, it.expected);
                } catch (const Error& e) {
                    row = error_row(e.what());
                }
                row["item"] = it.item;
                emit(std::move(row));
            }
        }
        if (opt.item && *opt.item != 15) rep.scope_note.clear();
        return rep;
    }

    if (id == TableId::Prop44) {
        for (const auto& e : prop44_entries()) {
            if (opt.item && *opt.item != e.item) continue;
            Json row{{"item", e.item}};
            try {
                const auto field = Field::biquadratic(e.field.first, e.field.second);
                const OrderLattice o = maximal_order(field);
                const Rational cap = opt.full ? Rational(e.tr_cap, 4) : opt.scaled_cap;
                FixedPointOptions fo;
                fo.budget = opt.budget;
                fo.cache_dir = opt.cache_dir;
                const ProfileResult prof = length_profile(o, cap, fo);
                const Element a0 = parse_element(e.alpha, field);
                int a0_len = 0;
                for (const auto& entry : prof.table)
                    if (entry.value == a0) a0_len = entry.length;
                row["field"] = field_json(*field);
                row["order"] = o.label();
                row["cap_atr"] = cap.get_str();
                row["cap_tr"] = Rational(cap * 4).get_str();
                row["scaled"] = !opt.full;
                row["expected"] = e.length;
                row["max_length"] = prof.max_length;
                row["alpha"] = element_json(a0);
                row["alpha_length"] = a0_len;
                row["table_size"] = prof.table.size();
                row["level_sizes"] = prof.level_sizes;
                row["millis"] = prof.millis;
                row["from_cache"] = prof.from_cache;
                row["status"] = "Exact";
                row["pass"] = prof.max_length == e.length && a0_len == e.length;
            } catch (const Error& err) {
                row.update(error_row(err.what()));
                if (err.code() == ErrorCode::BudgetExceeded) {
                    row["status"] = "Undetermined";
                    row["pass"] = nullptr;
                }
            }
            emit(std::move(row));
        }
        return rep;
    }

    const auto& orders = thm31_orders();
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (opt.item && *opt.item != static_cast<int>(i + 1)) continue;
        Json row;
        try {
            const OrderLattice o = quad(orders[i]);
            row = run_witness(o, Family::QuadraticThm31, opt.budget, opt.jobs, std::nullopt);
        } catch (const Error& err) {
            row = error_row(err.what());
        }
        row["item"] = static_cast<int>(i + 1);
        emit(std::move(row));
    }
    return rep;
}

namespace {

struct SweepTask {
    std::string key;
    std::int64_t a;
    std::int64_t b;
    std::optional<QuadraticForm> form;
};

std::vector<SweepTask> sweep_tasks(Family family, const SweepOptions& opt) {
    std::vector<SweepTask> tasks;
    if (family == Family::QuadraticThm31 || family == Family::QuadraticObs32) {
        for (std::int64_t N = std::max<std::int64_t>(opt.m_lo, 2); N <= opt.m_hi; ++N) {
            if (is_perfect_square(N)) continue;
            tasks.push_back({"Z[sqrt(" + std::to_string(N) + ")]", N, 0, QuadraticForm::Sqrt});
            if (N % 4 == 1) tasks.push_back({"Z[(1+sqrt(" + std::to_string(N) + "))/2]", N, 0, QuadraticForm::Half});
        }
        return tasks;
    }
    for (std::int64_t m = std::max<std::int64_t>(opt.m_lo, 2); m <= opt.m_hi; ++m) {
        if (!is_squarefree(m)) continue;
        for (std::int64_t s = std::max(opt.s_lo, m + 1); s <= opt.s_hi; ++s) {
            if (!is_squarefree(s)) continue;
            const auto f = Field::biquadratic(m, s);
            if (f->m() != m || f->s() != s) continue;
            tasks.push_back({f->label(), m, s, std::nullopt});
        }
    }
    return tasks;
}

std::map<std::string, Json> read_resume(const std::string& path, Family family) {
    std::map<std::string, Json> done;
    if (path.empty()) return done;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Json row = Json::parse(line, nullptr, false);
        if (row.is_discarded() || !row.contains("key") || row.value("family", "") != family_name(family)) continue;
        done[row["key"].get<std::string>()] = row;
    }
    return done;
}

}  // namespace

std::vector<Json> sweep(Family family, const SweepOptions& opt, const std::function<void(const Json&)>& on_row) {
    const auto tasks = sweep_tasks(family, opt);
    auto done = read_resume(opt.resume_file, family);
    std::vector<std::optional<Json>> results(tasks.size());
    std::vector<char> ready(tasks.size(), 0);
    std::vector<Json> out;
    std::ofstream resume;
    if (!opt.resume_file.empty()) resume.open(opt.resume_file, std::ios::app);

    std::mutex mu;
    std::size_t next_emit = 0;
    auto flush = [&] {
        while (next_emit < tasks.size() && ready[next_emit]) {
            auto& r = results[next_emit];
            if (r) {
                const bool fresh = !r->contains("resumed");
                if (fresh && resume.is_open()) resume << r->dump() << "\n" << std::flush;
                if (on_row) on_row(*r);
                out.push_back(*r);
            }
            ++next_emit;
        }
    };

    auto compute = [&](const SweepTask& t) -> std::optional<Json> {
        auto it = done.find(t.key);
        if (it != done.end()) {
            Json row = it->second;
            row["resumed"] = true;
            return row;
        }
        try {
            const OrderLattice o = t.form ? (*t.form == QuadraticForm::Sqrt ? quadratic_order(t.a) : quadratic_order_half(t.a))
                                          : maximal_order(Field::biquadratic(t.a, t.b));
            const Witness w = construct_witness(family, o);
            LengthOptions lo;
            lo.budget = opt.budget;
            Json row = witness_row(o, w, length(o, w.alpha, lo));
            row["key"] = t.key;
            return row;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::FamilyNotApplicable) return std::nullopt;
            Json row = error_row(e.what());
            row["key"] = t.key;
            row["family"] = std::string(family_name(family));
            return row;
        }
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            auto row = compute(tasks[i]);
            std::lock_guard<std::mutex> lock(mu);
            results[i] = std::move(row);
            ready[i] = 1;
            flush();
        }
    };
    const int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int j = 0; j < jobs; ++j) threads.emplace_back(worker);
        for (auto& th : threads) th.join();
    }
    for (auto& row : out) row.erase("resumed");
    return out;
}

}  // namespace bqsos
