#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>

#include "bqsos/decomposition.hpp"
#include "bqsos/errors.hpp"
#include "bqsos/parse.hpp"
#include "bqsos/verify.hpp"

namespace bqsos::cli {

namespace {

constexpr int kOk = 0;
constexpr int kComputation = 1;
constexpr int kUsage = 2;

struct FieldArgs {
    std::optional<std::int64_t> p, q;
    std::string order = "maximal";
};

struct BudgetArgs {
    std::uint64_t max_nodes = 0;
    double max_seconds = 0;
    int jobs = 1;

    Budget budget() const { return Budget{max_nodes, max_seconds}; }
};

void add_field(CLI::App* sub, FieldArgs& f, bool with_order) {
    sub->add_option("--p", f.p, "first radicand");
    sub->add_option("--q", f.q, "second radicand; omit for the quadratic field Q(sqrt(p))");
    if (with_order) sub->add_option("--order", f.order, "maximal | quad:N | quad-half:N | gen:e;e;...");
}

void add_budget(CLI::App* sub, BudgetArgs& b) {
    sub->add_option("--max-nodes", b.max_nodes, "search node limit (0 = none)");
    sub->add_option("--max-seconds", b.max_seconds, "wall-clock limit (0 = none)");
    sub->add_option("--jobs", b.jobs, "worker threads")->check(CLI::PositiveNumber);
}

// Errors caused by what the user typed rather than by the computation.
bool is_usage_error(ErrorCode c) {
    switch (c) {
        case ErrorCode::NotSquarefree:
        case ErrorCode::EqualGenerators:
        case ErrorCode::OutOfRange:
        case ErrorCode::FieldMismatch:
        case ErrorCode::SquareN:
        case ErrorCode::BadCongruence:
        case ErrorCode::SyntaxError:
        case ErrorCode::ForeignRadical:
        case ErrorCode::CapTooSmall:
            return true;
        default:
            return false;
    }
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::optional<std::int64_t> quad_param(const std::string& order) {
    for (const char* prefix : {"quad:", "quad-half:"}) {
        const std::string pre(prefix);
        if (order.rfind(pre, 0) == 0) {
            try {
                return std::stoll(order.substr(pre.size()));
            } catch (const std::exception&) {
                throw UsageError("bad order description '" + order + "'");
            }
        }
    }
    return std::nullopt;
}

FieldPtr make_field(const FieldArgs& f) {
    const auto N = quad_param(f.order);
    if (f.q) {
        if (!f.p) throw UsageError("--q given without --p");
        return Field::biquadratic(*f.p, *f.q);
    }
    if (N) {
        const auto core = squarefree_parts(*N).core;
        if (f.p && *f.p != core) throw UsageError("--p does not match the order's radicand");
        return Field::quadratic(core);
    }
    if (!f.p) throw UsageError("--p is required");
    return Field::quadratic(*f.p);
}

Rational parse_cap(const std::string& text, const char* flag) {
    try {
        return parse_rational(text);
    } catch (const std::exception&) {
        throw UsageError(std::string("bad value for ") + flag + ": '" + text + "'");
    }
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text, const char* flag) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const auto v = std::stoll(text);
            return {v, v};
        }
        return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw UsageError(std::string("bad range for ") + flag + ": '" + text + "' (expected A..B)");
    }
}

struct CapArgs {
    std::string atr_cap, tr_cap;

    Rational resolve(const Field& field, std::ostream& err) const {
        if (!atr_cap.empty() && !tr_cap.empty()) throw UsageError("give only one of --atr-cap and --tr-cap");
        if (!atr_cap.empty()) return parse_cap(atr_cap, "--atr-cap");
        if (tr_cap.empty()) throw UsageError("--atr-cap is required");
        const Rational tr = parse_cap(tr_cap, "--tr-cap");
        const Rational atr = tr / field.degree();
        err << "warning: --tr-cap " << tr.get_str() << " converted to atr cap " << atr.get_str() << "\n";
        return atr;
    }
};

void add_cap(CLI::App* sub, CapArgs& c) {
    sub->add_option("--atr-cap", c.atr_cap, "cap on the absolute trace");
    sub->add_option("--tr-cap", c.tr_cap, "cap on the trace (divided by the degree)");
}

Json entry_json(const ProfileEntry& e) {
    Json w = Json::array();
    for (const auto& x : e.witness) w.push_back(pretty(x));
    return Json{{"value", element_json(e.value)}, {"length", e.length}, {"witness", w}};
}

Json cap_json(const Field& field, const Rational& cap) {
    return Json{{"atr", cap.get_str()}, {"tr", Rational(cap * field.degree()).get_str()}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lengths of sums of squares in quadratic and biquadratic orders", "bqsos"};
    app.require_subcommand(1);

    FieldArgs fa;
    BudgetArgs ba;
    CapArgs ca;
    std::string elem, format = "json", cache_dir, table, family, m_range, s_range, resume;
    std::optional<int> max_n, item;
    bool stratified = false, full = false, scaled = false;

    auto* classify = app.add_subcommand("classify", "describe a field");
    add_field(classify, fa, false);

    auto* len = app.add_subcommand("length", "length of an element");
    add_field(len, fa, true);
    add_budget(len, ba);
    len->add_option("--elem", elem, "element expression")->required();
    len->add_option("--max-n", max_n, "give up after refuting this many squares");

    auto* lower = app.add_subcommand("lower-bound", "fixed-point lower bound for the Pythagoras number");
    add_field(lower, fa, true);
    add_budget(lower, ba);
    add_cap(lower, ca);
    lower->add_option("--cache", cache_dir, "cache directory");
    lower->add_flag("--stratified", stratified, "build sums stratum by stratum of trace");

    auto* profile = app.add_subcommand("profile", "lengths of all sums of squares up to a trace cap");
    add_field(profile, fa, true);
    add_budget(profile, ba);
    add_cap(profile, ca);
    profile->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    profile->add_option("--cache", cache_dir, "cache directory");

    auto* verify = app.add_subcommand("verify", "replay a table of computed claims");
    verify->add_option("--table", table, "lemma4.3 | prop4.4 | thm3.1")->required();
    verify->add_option("--item", item, "single item");
    auto* scaled_flag = verify->add_flag("--scaled", scaled, "scaled caps (default)");
    verify->add_flag("--full", full, "original caps; long running")->excludes(scaled_flag);
    verify->add_option("--cache", cache_dir, "cache directory");
    add_budget(verify, ba);

    auto* sweep_cmd = app.add_subcommand("sweep", "run a witness family over a range of fields");
    sweep_cmd->add_option("--family", family, "family name")->required();
    sweep_cmd->add_option("--m-range", m_range, "A..B")->required();
    sweep_cmd->add_option("--s-range", s_range, "C..D");
    sweep_cmd->add_option("--resume", resume, "JSON-lines file of finished rows");
    add_budget(sweep_cmd, ba);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*classify) {
            out << field_json(*make_field(fa)).dump() << "\n";
            return kOk;
        }
        if (*len) {
            const auto field = make_field(fa);
            const OrderLattice o = parse_order(fa.order, field);
            const Element alpha = parse_element(elem, field);
            LengthOptions lo;
            lo.budget = ba.budget();
            lo.jobs = ba.jobs;
            lo.max_n = max_n;
            const LengthResult r = length(o, alpha, lo);
            Json j = length_json(r);
            j["field"] = field_json(*field);
            j["order"] = o.label();
            j["alpha"] = element_json(alpha);
            if (r.status == LengthStatus::Exact) j["replay"] = sum_of_squares(field, r.witness) == alpha;
            out << j.dump() << "\n";
            return kOk;
        }
        if (*lower || *profile) {
            const auto field = make_field(fa);
            const OrderLattice o = parse_order(fa.order, field);
            const Rational cap = ca.resolve(*field, err);
            FixedPointOptions fo;
            fo.budget = ba.budget();
            fo.cache_dir = cache_dir;
            fo.stratified = stratified;
            if (*lower) {
                const LowerBoundResult r = pythagoras_lower_bound(o, cap, fo);
                Json w = Json::array();
                for (const auto& e : r.witnesses) w.push_back(entry_json(e));
                out << Json{{"field", field_json(*field)},
                            {"order", o.label()},
                            {"cap", cap_json(*field, cap)},
                            {"n", r.n},
                            {"level_sizes", r.level_sizes},
                            {"witnesses", w},
                            {"from_cache", r.from_cache},
                            {"millis", r.millis}}
                           .dump()
                    << "\n";
                return kOk;
            }
            const ProfileResult r = length_profile(o, cap, fo);
            if (format == "csv") {
                out << "value,atr,length,witness\n";
                for (const auto& e : r.table) {
                    std::string w;
                    for (const auto& x : e.witness) w += (w.empty() ? "" : ";") + pretty(x);
                    out << pretty(e.value) << "," << abs_trace(e.value).get_str() << "," << e.length << "," << w << "\n";
                }
                return kOk;
            }
            Json t = Json::array();
            for (const auto& e : r.table) t.push_back(entry_json(e));
            out << Json{{"field", field_json(*field)},
                        {"order", o.label()},
                        {"cap", cap_json(*field, cap)},
                        {"max_length", r.max_length},
                        {"level_sizes", r.level_sizes},
                        {"table", t},
                        {"from_cache", r.from_cache},
                        {"millis", r.millis}}
                       .dump()
                << "\n";
            return kOk;
        }
        if (*verify) {
            const auto id = parse_table(table);
            if (!id) throw UsageError("unknown table '" + table + "'");
            TableOptions to;
            to.item = item;
            to.full = full;
            to.budget = ba.budget();
            to.jobs = ba.jobs;
            to.cache_dir = cache_dir;
            const TableReport rep = verify_table(*id, to, [&](const Json& row) { out << row.dump() << "\n"; });
            Json summary{{"table", std::string(table_name(*id))},
                         {"passed", rep.passed},
                         {"failed", rep.failed},
                         {"undetermined", rep.undetermined}};
            if (!rep.scope_note.empty()) summary["scope"] = rep.scope_note;
            out << Json{{"summary", summary}}.dump() << "\n";
            if (!rep.scope_note.empty()) err << "note: " << rep.scope_note << "\n";
            return rep.failed == 0 ? kOk : kComputation;
        }
        if (*sweep_cmd) {
            const auto fam = parse_family(family);
            if (!fam) throw UsageError("unknown family '" + family + "'");
            SweepOptions so;
            std::tie(so.m_lo, so.m_hi) = parse_range(m_range, "--m-range");
            if (!s_range.empty()) std::tie(so.s_lo, so.s_hi) = parse_range(s_range, "--s-range");
            so.budget = ba.budget();
            so.jobs = ba.jobs;
            so.resume_file = resume;
            sweep(*fam, so, [&](const Json& row) { out << row.dump() << "\n" << std::flush; });
            return kOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_usage_error(e.code()) ? kUsage : kComputation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kComputation;
    }
    return kUsage;
}

}  // namespace bqsos::cli
