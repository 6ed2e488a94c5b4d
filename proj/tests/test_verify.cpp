#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "bqsos/verify.hpp"
#include "support.hpp"

using namespace bqsos;

namespace {

Json strip_timing(Json row) {
    row.erase("millis");
    return row;
}

std::vector<Json> rows_for(const TableReport& r, int item) {
    std::vector<Json> out;
    for (const auto& row : r.rows)
        if (row["item"] == item) out.push_back(row);
    return out;
}

}  // namespace

TEST_CASE("verify_table examples") {
    TableOptions opt;
    opt.item = 1;
    const TableReport lemma = verify_table(TableId::Lemma43, opt);
    bool seen = false;
    for (const auto& row : lemma.rows)
        if (row["field"]["m"] == 17 && row["field"]["s"] == 19) {
            seen = true;
            CHECK(row["pass"] == true);
            CHECK(row["length"] == 5);
        }
    CHECK(seen);
    CHECK(lemma.failed == 0);
    CHECK(lemma.passed == 5);

    const TableReport thm = verify_table(TableId::Thm31, {});
    bool six = false;
    for (const auto& row : thm.rows)
        if (row["order"] == "Z[sqrt(6)]") {
            six = true;
            CHECK(row["pass"] == true);
            CHECK(row["length"] == 4);
            CHECK(row["alpha"]["pretty"] == "10+2*sqrt(6)");
        }
    CHECK(six);
    CHECK(thm.failed == 0);

    TableOptions p;
    p.item = 1;
    const TableReport prop = verify_table(TableId::Prop44, p);
    REQUIRE(prop.rows.size() == 1);
    CHECK(prop.rows[0]["pass"] == true);
    CHECK(prop.rows[0]["max_length"] == 3);
    CHECK(prop.rows[0]["alpha"]["pretty"] == "6+sqrt(2)+sqrt(6)");
    CHECK(prop.rows[0]["cap_atr"] == "30");
    CHECK(prop.rows[0]["cap_tr"] == "120");
}

TEST_CASE("catalogue table scaled run covers every item") {
    std::vector<Json> streamed;
    const TableReport r = verify_table(TableId::Lemma43, {}, [&](const Json& row) { streamed.push_back(row); });
    CHECK(streamed.size() == r.rows.size());
    for (int item = 1; item <= 17; ++item) CHECK_MESSAGE(!rows_for(r, item).empty(), item);
    CHECK(rows_for(r, 1).size() == 5);
    CHECK(rows_for(r, 2).size() == 16);
    CHECK(rows_for(r, 3).size() == 3);
    CHECK(rows_for(r, 5).size() == 13);
    CHECK(rows_for(r, 6).size() == 16);
    CHECK(rows_for(r, 7).size() == 17);
    CHECK(rows_for(r, 16).size() == 6);
    CHECK(rows_for(r, 17).size() == 4);
    for (const auto& row : rows_for(r, 3)) CHECK(row["variant"] == "exception");
    for (const auto& row : rows_for(r, 6)) CHECK(row["variant"].get<std::string>().find("exception") != std::string::npos);
    for (const auto& row : r.rows) {
        CHECK(row["pass"] == true);
        CHECK(row["replay"] == true);
    }
    CHECK(r.failed == 0);
    CHECK(r.undetermined == 0);
    CHECK_FALSE(r.scope_note.empty());
}

TEST_CASE("profile table scaled run") {
    const TableReport r = verify_table(TableId::Prop44, {});
    REQUIRE(r.rows.size() == 7);
    const int expected[7] = {3, 3, 3, 4, 4, 4, 4};
    for (int i = 0; i < 7; ++i) {
        CHECK(r.rows[i]["max_length"] == expected[i]);
        CHECK(r.rows[i]["alpha_length"] == expected[i]);
        CHECK(r.rows[i]["pass"] == true);
    }
    CHECK(r.rows[1]["alpha"]["pretty"] == "6+sqrt(5)");
    CHECK(r.rows[6]["alpha"]["pretty"] == "23/2+1/2*sqrt(5)+2*sqrt(7)");
}

TEST_CASE("budget exhaustion is reported, not hidden") {
    TableOptions opt;
    opt.item = 4;
    opt.full = true;
    opt.budget.max_nodes = 1000;
    const TableReport r = verify_table(TableId::Prop44, opt);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0]["status"] == "Undetermined");
    CHECK(r.rows[0]["pass"].is_null());
    CHECK(r.undetermined == 1);
    CHECK(r.failed == 0);
}

TEST_CASE("sweep examples") {
    SweepOptions so;
    so.m_lo = so.m_hi = 7;
    so.s_lo = 8;
    so.s_hi = 60;
    const auto rows = sweep(Family::Sqrt7, so);
    CHECK(rows.size() > 20);
    for (const auto& row : rows) {
        CHECK(row["length"] == 5);
        CHECK(row["pass"] == true);
        CHECK(row["field"]["m"] == 7);
    }

    SweepOptions empty;
    empty.m_lo = 10;
    empty.m_hi = 9;
    CHECK(sweep(Family::MIs1, empty).empty());

    SweepOptions mis1;
    mis1.m_lo = 17;
    mis1.m_hi = 21;
    mis1.s_lo = 18;
    mis1.s_hi = 23;
    std::set<std::pair<int, int>> got;
    for (const auto& row : sweep(Family::MIs1, mis1)) {
        CHECK(row["length"] == 5);
        got.emplace(row["field"]["m"].get<int>(), row["field"]["s"].get<int>());
    }
    // The five computer-checked pairs are all in range; (17, 23) is covered by the general argument.
    for (auto pair : std::vector<std::pair<int, int>>{{17, 19}, {17, 21}, {17, 22}, {21, 22}, {21, 23}}) CHECK(got.count(pair) == 1);
    CHECK(got.size() == 6);
}

TEST_CASE("sweep output does not depend on the worker count") {
    SweepOptions so;
    so.m_lo = 10;
    so.m_hi = 30;
    so.s_lo = 11;
    so.s_hi = 40;
    const auto one = sweep(Family::MNot1, so);
    so.jobs = 3;
    std::vector<Json> streamed;
    const auto three = sweep(Family::MNot1, so, [&](const Json& row) { streamed.push_back(row); });
    REQUIRE(one.size() == three.size());
    REQUIRE(streamed.size() == three.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(strip_timing(one[i]) == strip_timing(three[i]));
        CHECK(streamed[i]["key"] == three[i]["key"]);
    }
}

TEST_CASE("sweep resumes from its rows file") {
    const auto path = std::filesystem::temp_directory_path() / ("bqsos-sweep-" + std::to_string(testsupport::uniform(0, 1 << 30)) + ".jsonl");
    std::filesystem::remove(path);
    SweepOptions so;
    so.m_lo = 2;
    so.m_hi = 2;
    so.s_lo = 3;
    so.s_hi = 30;
    so.resume_file = path.string();
    const auto first = sweep(Family::Sqrt2, so);
    std::size_t lines = 0;
    {
        std::ifstream in(path);
        std::string line;
        while (std::getline(in, line)) ++lines;
    }
    CHECK(lines == first.size());
    // Drop the last rows and resume: only those are recomputed and appended.
    {
        std::ifstream in(path);
        std::vector<std::string> keep;
        std::string line;
        while (std::getline(in, line)) keep.push_back(line);
        in.close();
        std::ofstream out(path, std::ios::trunc);
        for (std::size_t i = 0; i + 2 < keep.size(); ++i) out << keep[i] << "\n";
    }
    const auto second = sweep(Family::Sqrt2, so);
    REQUIRE(second.size() == first.size());
    for (std::size_t i = 0; i < first.size(); ++i) CHECK(strip_timing(first[i]) == strip_timing(second[i]));
    lines = 0;
    {
        std::ifstream in(path);
        std::string line;
        while (std::getline(in, line)) ++lines;
    }
    CHECK(lines == first.size());
    std::filesystem::remove(path);
}

TEST_CASE("report rows carry the schema fields") {
    TableOptions opt;
    opt.item = 10;
    const TableReport r = verify_table(TableId::Lemma43, opt);
    REQUIRE(r.rows.size() == 1);
    const Json& row = r.rows[0];
    for (const char* k : {"field", "order", "family", "alpha", "length", "witness", "nodes", "millis", "status"})
        CHECK_MESSAGE(row.contains(k), k);
    for (const char* k : {"p", "q", "m", "s", "t", "type"}) CHECK_MESSAGE(row["field"].contains(k), k);
    CHECK(row["alpha"]["scaled"].size() == 4);
    CHECK(row["alpha"]["scaled"][0].is_string());
    CHECK(row["witness"].size() == 5);
}
