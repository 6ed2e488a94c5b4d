#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bqsos/decomposition.hpp"
#include "bqsos/witness.hpp"

namespace bqsos {

using Json = nlohmann::json;

enum class TableId { Lemma43, Prop44, Thm31 };

std::optional<TableId> parse_table(std::string_view name);
std::string_view table_name(TableId id);

struct TableOptions {
    // Restrict to one item (Lemma43 items 1-17, Prop44 entries 1-7, Thm31 order index).
    std::optional<int> item;
    // Full reproduction: Prop44 at its original trace caps and Lemma43 item 15 up to s = 3253.
    bool full = false;
    // Scaled Prop44 cap in abs_trace units.
    Rational scaled_cap = 30;
    // Largest s for Lemma43 item 15 in the scaled run.
    std::int64_t item15_scaled_max_s = 60;
    Budget budget;
    int jobs = 1;
    std::string cache_dir;
};

struct TableReport {
    std::vector<Json> rows;
    int passed = 0;
    int failed = 0;
    int undetermined = 0;
    // Set when some part of the table was deliberately not computed.
    std::string scope_note;
};

// Runs every claim of the table and reports pass/fail per row.
TableReport verify_table(TableId id, const TableOptions& options, const std::function<void(const Json&)>& on_row = {});

struct SweepOptions {
    std::int64_t m_lo = 2, m_hi = 2;
    std::int64_t s_lo = 3, s_hi = 3;
    Budget budget;
    int jobs = 1;
    // JSON-lines file of finished rows; rows already present are not recomputed.
    std::string resume_file;
};

// Length of the family's witness over every canonical field BQ(m, s) in the
// ranges (for quadratic families: every order Z[sqrt(N)], Z[(1+sqrt(N))/2] with N in the m range).
// Fields the family does not apply to are skipped. Rows come out ordered by (m, s).
std::vector<Json> sweep(Family family, const SweepOptions& options, const std::function<void(const Json&)>& on_row = {});

Json field_json(const Field& f);
Json element_json(const Element& x);
Json length_json(const LengthResult& r);
// Report row for one witness in one order.
Json witness_row(const OrderLattice& o, const Witness& w, const LengthResult& r);

}  // namespace bqsos
