#include "subdeg/cli.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "subdeg/cache.hpp"
#include "subdeg/commutativity.hpp"
#include "subdeg/errors.hpp"
#include "subdeg/expr.hpp"
#include "subdeg/isomorphism.hpp"
#include "subdeg/zm.hpp"

namespace subdeg {

namespace {

using nlohmann::ordered_json;

constexpr const char* kReportSchema = "subdeg-report/1";
constexpr const char* kVerifySchema = "subdeg-verify/1";

struct Options {
    std::string format = "text";
    std::string cache_dir;
    int max_order = 720;
    bool oracle = false;
    int jobs = 1;
};

struct GroupContext {
    GroupExpr expr;
    GroupTable table;
    Lattice lat;
};

std::unique_ptr<GroupContext> make_context(const std::string& text, const Options& o) {
    auto ctx = std::make_unique<GroupContext>();
    ctx->expr = parse_group_expr(text);
    ctx->table = realize_expr(ctx->expr, o.max_order);
    check_table(ctx->table);
    CacheOutcome outcome;
    ctx->lat = load_or_enumerate(ctx->table, o.cache_dir, &outcome);
    if (!o.cache_dir.empty()) {
        if (outcome.hit)
            std::cerr << "cache hit: " << lattice_cache_path(ctx->table, o.cache_dir) << "\n";
        else
            std::cerr << "cache miss"
                      << (outcome.note.empty() ? "" : " (" + outcome.note + ")") << ": "
                      << ctx->table.label << "\n";
    }
    if (o.oracle) {
        if (ctx->table.order > 128)
            throw cap_error("oracle cross-check is capped at order 128");
        Lattice truth = oracle_enumerate(ctx->table);
        if (truth.subs != ctx->lat.subs)
            throw violation_error("enumerated lattice differs from the brute-force oracle for " +
                                  ctx->table.label);
        std::cerr << "oracle cross-check passed: " << ctx->lat.count() << " subgroups\n";
    }
    return ctx;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string join_ints(const std::vector<int>& v, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

// ---- sd family -------------------------------------------------------

void append_breakdown(ordered_json& j, const Lattice& lat, const SdReport& rep) {
    auto& arr = j["breakdown"] = ordered_json::array();
    for (const auto& [idx, c] : rep.breakdown) {
        ordered_json row;
        row["index"] = idx;
        row["order"] = lat.sizes[idx];
        row["commuting"] = c;
        arr.push_back(std::move(row));
    }
}

void emit_sd_report(const Options& o, const std::string& verb, const GroupContext& ctx,
                    const SdReport& rep, const std::vector<int>& args) {
    if (o.format == "json") {
        ordered_json j;
        j["schema"] = kReportSchema;
        j["verb"] = verb;
        j["group"] = ctx.table.label;
        j["order"] = ctx.table.order;
        if (!args.empty()) {
            auto& sel = j["subgroups"] = ordered_json::array();
            for (int a : args) {
                ordered_json row;
                row["index"] = a;
                row["order"] = ctx.lat.sizes[a];
                sel.push_back(std::move(row));
            }
        }
        j["lattice_sizes"] = rep.lattice_sizes;
        j["pair_count"] = rep.pair_count;
        j["value"] = rep.value.str();
        j["decimal"] = rep.value.decimal();
        if (verb == "sd" || verb == "sd-rel") append_breakdown(j, ctx.lat, rep);
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (o.format == "csv") {
        std::cout << "group,order,args,lattice_sizes,pair_count,value,decimal\n"
                  << csv_escape(ctx.table.label) << "," << ctx.table.order << ","
                  << csv_escape(join_ints(args, " ")) << ",";
        std::string sizes;
        for (size_t i = 0; i < rep.lattice_sizes.size(); ++i)
            sizes += (i ? " " : "") + std::to_string(rep.lattice_sizes[i]);
        std::cout << csv_escape(sizes) << "," << rep.pair_count << "," << rep.value.str() << ","
                  << rep.value.decimal() << "\n";
        return;
    }
    std::cout << "group " << ctx.table.label << " (order " << ctx.table.order << ")\n";
    for (size_t i = 0; i < args.size(); ++i)
        std::cout << "argument " << i + 1 << ": subgroup " << args[i] << " (order "
                  << ctx.lat.sizes[args[i]] << ", |L| = " << rep.lattice_sizes[i] << ")\n";
    std::cout << "lattice sizes:";
    for (long long s : rep.lattice_sizes) std::cout << " " << s;
    std::cout << "\ncommuting: " << rep.pair_count << " of " << rep.denominator() << "\n"
              << "value = " << rep.value.str() << " = " << rep.value.decimal() << "\n";
}

// ---- lattice ---------------------------------------------------------

void emit_lattice(const Options& o, const GroupContext& ctx) {
    const Lattice& lat = ctx.lat;
    std::vector<char> is_max(lat.count(), 0);
    for (int m : lat.maximal_indices) is_max[m] = 1;

    if (o.format == "json") {
        ordered_json j;
        j["schema"] = kReportSchema;
        j["verb"] = "lattice";
        j["group"] = ctx.table.label;
        j["order"] = ctx.table.order;
        j["count"] = lat.count();
        auto& arr = j["subgroups"] = ordered_json::array();
        for (int i = 0; i < lat.count(); ++i) {
            ordered_json row;
            row["index"] = i;
            row["order"] = lat.sizes[i];
            row["class"] = lat.class_of[i];
            row["normal"] = lat.normal[i] != 0;
            row["maximal"] = is_max[i] != 0;
            row["elements"] = lat.elems[i];
            arr.push_back(std::move(row));
        }
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (o.format == "csv") {
        std::cout << "index,order,class,normal,maximal,elements\n";
        for (int i = 0; i < lat.count(); ++i)
            std::cout << i << "," << lat.sizes[i] << "," << lat.class_of[i] << ","
                      << bool_str(lat.normal[i] != 0) << "," << bool_str(is_max[i] != 0) << ","
                      << csv_escape(join_ints(lat.elems[i], " ")) << "\n";
        return;
    }
    std::cout << "group " << ctx.table.label << " (order " << ctx.table.order << "), "
              << lat.count() << " subgroups, " << lat.classes.size() << " conjugacy classes\n"
              << std::left << std::setw(6) << "index" << std::setw(7) << "order" << std::setw(7)
              << "class" << std::setw(8) << "normal" << std::setw(9) << "maximal"
              << "elements\n";
    for (int i = 0; i < lat.count(); ++i)
        std::cout << std::left << std::setw(6) << i << std::setw(7) << lat.sizes[i] << std::setw(7)
                  << lat.class_of[i] << std::setw(8) << (lat.normal[i] ? "yes" : "no")
                  << std::setw(9) << (is_max[i] ? "yes" : "no") << join_ints(lat.elems[i], " ")
                  << "\n";
}

// ---- maximal ---------------------------------------------------------

ordered_json maximal_json(const MaximalReport& rep, const Fraction& direct) {
    ordered_json j;
    j["maximal_count"] = rep.maximal_count;
    j["total_families"] = rep.total_families;
    j["lattice_size"] = rep.lattice_size;
    j["constant"] = rep.constant_term;
    auto& arr = j["groups"] = ordered_json::array();
    for (const auto& grp : rep.groups) {
        ordered_json row;
        row["type"] = grp.type_label;
        row["class"] = grp.class_index;
        row["order"] = grp.subgroup_size;
        row["coefficient"] = grp.coefficient;
        row["sd_rel"] = grp.sd_rel_value.str();
        row["members"] = grp.members;
        arr.push_back(std::move(row));
    }
    j["value"] = rep.value.str();
    j["direct"] = direct.str();
    j["identity"] = rep.value == direct;
    return j;
}

void emit_maximal(const Options& o, const GroupContext& ctx) {
    MaximalReport rep = sd_via_maximal(ctx.table, ctx.lat);
    Fraction direct = sd(ctx.lat).value;

    if (o.format == "json") {
        ordered_json j;
        j["schema"] = kReportSchema;
        j["verb"] = "maximal";
        j["group"] = ctx.table.label;
        j["order"] = ctx.table.order;
        ordered_json body = maximal_json(rep, direct);
        for (auto& [k, v] : body.items()) j[k] = std::move(v);
        std::cout << j.dump(2) << "\n";
    } else if (o.format == "csv") {
        std::cout << "type,class,order,coefficient,sd_rel,members\n";
        for (const auto& grp : rep.groups)
            std::cout << csv_escape(grp.type_label) << "," << grp.class_index << ","
                      << grp.subgroup_size << "," << grp.coefficient << ","
                      << grp.sd_rel_value.str() << "," << csv_escape(join_ints(grp.members, " "))
                      << "\n";
    } else {
        std::cout << "group " << ctx.table.label << " (order " << ctx.table.order << ")\n"
                  << "maximal subgroups: " << rep.maximal_count
                  << ", families: " << rep.total_families << ", |L(G)| = " << rep.lattice_size
                  << "\nconstant term: " << rep.constant_term << "\n"
                  << std::left << std::setw(10) << "type" << std::setw(7) << "order"
                  << std::setw(7) << "class" << std::setw(13) << "coefficient" << std::setw(12)
                  << "sd_rel"
                  << "members\n";
        for (const auto& grp : rep.groups)
            std::cout << std::left << std::setw(10) << grp.type_label << std::setw(7)
                      << grp.subgroup_size << std::setw(7) << grp.class_index << std::setw(13)
                      << grp.coefficient << std::setw(12) << grp.sd_rel_value.str()
                      << join_ints(grp.members, " ") << "\n";
        std::cout << "value = " << rep.value.str() << " (direct sd = " << direct.str() << ", "
                  << (rep.value == direct ? "identity holds" : "IDENTITY FAILS") << ")\n";
    }
    if (rep.value != direct)
        throw violation_error("maximal-intersection expansion disagrees with the direct value");
}

// ---- example26 -------------------------------------------------------

void emit_example26(const Options& o, const GroupContext& ctx) {
    Example26Report rep = example26_report(ctx.table, ctx.lat);

    if (o.format == "json") {
        ordered_json j;
        j["schema"] = kReportSchema;
        j["verb"] = "example26";
        j["group"] = rep.label;
        j["order"] = ctx.table.order;
        auto& rows = j["rows"] = ordered_json::array();
        for (const auto& r : rep.rows) {
            ordered_json row;
            row["type"] = r.type_label;
            row["class"] = r.class_index;
            row["order"] = r.subgroup_size;
            row["class_size"] = r.class_size;
            row["computed"] = r.computed.str();
            if (r.reference) row["reference"] = r.reference->str();
            row["match"] = r.match;
            rows.push_back(std::move(row));
        }
        j["coefficients"] = maximal_json(rep.maximal, rep.sd_direct);
        j["sd_direct"] = rep.sd_direct.str();
        j["sd_expanded"] = rep.sd_expanded.str();
        j["identity"] = rep.sd_direct == rep.sd_expanded;
        if (rep.reference_sd) {
            j["reference_sd"] = rep.reference_sd->str();
            j["sd_matches_reference"] = rep.sd_matches_reference;
            j["reference_integral"] = rep.reference_integral;
        }
        std::cout << j.dump(2) << "\n";
    } else if (o.format == "csv") {
        std::cout << "type,class,order,class_size,computed,reference,match\n";
        for (const auto& r : rep.rows)
            std::cout << csv_escape(r.type_label) << "," << r.class_index << "," << r.subgroup_size
                      << "," << r.class_size << "," << r.computed.str() << ","
                      << (r.reference ? r.reference->str() : "") << "," << bool_str(r.match)
                      << "\n";
    } else {
        std::cout << "worked-example comparison for " << rep.label << "\n"
                  << std::left << std::setw(10) << "type" << std::setw(7) << "order"
                  << std::setw(12) << "class_size" << std::setw(12) << "computed" << std::setw(12)
                  << "reference"
                  << "match\n";
        for (const auto& r : rep.rows)
            std::cout << std::left << std::setw(10) << r.type_label << std::setw(7)
                      << r.subgroup_size << std::setw(12) << r.class_size << std::setw(12)
                      << r.computed.str() << std::setw(12)
                      << (r.reference ? r.reference->str() : "-")
                      << (r.match ? "yes" : "NO (computed value is authoritative)") << "\n";
        std::cout << "coefficients: constant " << rep.maximal.constant_term;
        for (const auto& grp : rep.maximal.groups)
            std::cout << (grp.coefficient >= 0 ? " +" : " ") << grp.coefficient << "*sd("
                      << grp.type_label << ",G)";
        std::cout << "\nsd direct = " << rep.sd_direct.str()
                  << ", expanded = " << rep.sd_expanded.str() << " ("
                  << (rep.sd_direct == rep.sd_expanded ? "identity holds" : "IDENTITY FAILS")
                  << ")\n";
        if (rep.reference_sd) {
            std::cout << "reference sd = " << rep.reference_sd->str() << " (match: "
                      << bool_str(rep.sd_matches_reference)
                      << ", integral over |L|^2: " << bool_str(rep.reference_integral) << ")\n";
            if (!rep.sd_matches_reference)
                std::cout << "finding: published values are inconsistent with the computed "
                             "lattice; see the integrality flag\n";
        }
    }
    if (rep.sd_direct != rep.sd_expanded)
        throw violation_error("maximal-intersection expansion disagrees with the direct value");
}

// ---- profile ---------------------------------------------------------

void emit_profile(const Options& o, const GroupContext& ctx) {
    auto rows = sd_profile(ctx.lat);
    auto type_of = [&](int idx) {
        return idx == ctx.lat.whole_index ? ctx.table.label
                                          : iso_type_label(subgroup_table(ctx.table, ctx.lat.subs[idx], ""));
    };

    if (o.format == "json") {
        ordered_json j;
        j["schema"] = kReportSchema;
        j["verb"] = "profile";
        j["group"] = ctx.table.label;
        j["order"] = ctx.table.order;
        auto& arr = j["classes"] = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json row;
            row["class"] = r.class_index;
            row["order"] = r.subgroup_size;
            row["size"] = r.members.size();
            row["type"] = type_of(r.members.front());
            row["members"] = r.members;
            row["sd_rel"] = r.value.str();
            row["decimal"] = r.value.decimal();
            arr.push_back(std::move(row));
        }
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (o.format == "csv") {
        std::cout << "class,order,size,type,members,sd_rel,decimal\n";
        for (const auto& r : rows)
            std::cout << r.class_index << "," << r.subgroup_size << "," << r.members.size() << ","
                      << csv_escape(type_of(r.members.front())) << ","
                      << csv_escape(join_ints(r.members, " ")) << "," << r.value.str() << ","
                      << r.value.decimal() << "\n";
        return;
    }
    std::cout << "group " << ctx.table.label << " (order " << ctx.table.order << "), "
              << rows.size() << " subgroup conjugacy classes\n"
              << std::left << std::setw(7) << "class" << std::setw(7) << "order" << std::setw(6)
              << "size" << std::setw(10) << "type" << std::setw(14) << "sd_rel" << std::setw(14)
              << "decimal"
              << "members\n";
    for (const auto& r : rows)
        std::cout << std::left << std::setw(7) << r.class_index << std::setw(7) << r.subgroup_size
                  << std::setw(6) << r.members.size() << std::setw(10)
                  << type_of(r.members.front()) << std::setw(14) << r.value.str() << std::setw(14)
                  << r.value.decimal() << join_ints(r.members, " ") << "\n";
}

// ---- zm-sweep --------------------------------------------------------

void emit_zm_sweep(const Options& o, const std::vector<std::string>& params, int max_mn) {
    std::vector<ZMParams> sweep;
    if (!params.empty()) {
        for (const auto& text : params) {
            GroupExpr e = parse_group_expr(text);
            if (e.kind != GroupExpr::Kind::zm)
                throw usage_error("zm-sweep arguments must be ZM(m,n,r) expressions");
            sweep.push_back(validate_zm(e.a, e.b, e.c));
        }
    } else {
        for (long long m = 1; m <= max_mn; ++m)
            for (long long n = 1; m * n <= max_mn; ++n)
                for (long long r = 1; r < std::max<long long>(m, 2); ++r) {
                    try {
                        sweep.push_back(validate_zm(m, n, r));
                    } catch (const usage_error&) {
                    }
                }
    }

    struct Item {
        ZMParams p;
        BijectionReport bij;
        std::vector<ZMRow> rows;
        std::string error;
    };
    std::vector<Item> items(sweep.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < sweep.size();) {
            Item& it = items[i];
            it.p = sweep[i];
            try {
                it.bij = verify_bijection(it.p);
                GroupTable g = build_zm(it.p);
                Lattice lat = enumerate_subgroups(g);
                it.rows = zm_sd_table(it.p, g, lat);
            } catch (const std::exception& e) {
                it.error = e.what();
                it.bij.ok = false;
            }
        }
    };
    int jobs = std::max(1, std::min<int>(o.jobs, static_cast<int>(sweep.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    bool all_ok = true;
    for (const auto& it : items) all_ok = all_ok && it.bij.ok;

    if (o.format == "json") {
        ordered_json j;
        j["schema"] = kReportSchema;
        j["verb"] = "zm-sweep";
        j["params"] = ordered_json::array();
        auto& rows = j["rows"] = ordered_json::array();
        for (const auto& it : items) {
            ordered_json p;
            p["m"] = it.p.m;
            p["n"] = it.p.n;
            p["r"] = it.p.r;
            p["bijection"] = it.bij.ok;
            p["triples"] = it.bij.triple_count;
            p["subgroups"] = it.bij.subgroup_count;
            if (!it.error.empty()) p["error"] = it.error;
            j["params"].push_back(std::move(p));
            for (const auto& r : it.rows) {
                ordered_json row;
                row["m"] = it.p.m;
                row["n"] = it.p.n;
                row["r"] = it.p.r;
                row["m1"] = r.t.m1;
                row["n1"] = r.t.n1;
                row["s"] = r.t.s;
                row["q"] = r.quotient;
                row["order"] = r.order;
                row["normal"] = r.normal;
                row["sd"] = r.sd.str();
                row["decimal"] = r.sd.decimal();
                rows.push_back(std::move(row));
            }
        }
        std::cout << j.dump(2) << "\n";
    } else if (o.format == "csv") {
        std::cout << "m,n,r,m1,n1,s,q,order,normal,sd,decimal\n";
        for (const auto& it : items)
            for (const auto& r : it.rows)
                std::cout << it.p.m << "," << it.p.n << "," << it.p.r << "," << r.t.m1 << ","
                          << r.t.n1 << "," << r.t.s << "," << r.quotient << "," << r.order << ","
                          << bool_str(r.normal) << "," << r.sd.str() << "," << r.sd.decimal()
                          << "\n";
    } else {
        for (const auto& it : items) {
            std::cout << "ZM(" << it.p.m << "," << it.p.n << "," << it.p.r << "): "
                      << it.bij.triple_count << " triples, " << it.bij.subgroup_count
                      << " subgroups, bijection " << (it.bij.ok ? "ok" : "BROKEN") << "\n";
            if (!it.error.empty()) std::cout << "  ! " << it.error << "\n";
            for (const auto& d : it.bij.diagnostics) std::cout << "  ! " << d << "\n";
            std::cout << std::left << std::setw(6) << "  m1" << std::setw(5) << "n1"
                      << std::setw(5) << "s" << std::setw(5) << "q" << std::setw(7) << "order"
                      << std::setw(8) << "normal" << std::setw(12) << "sd"
                      << "decimal\n";
            for (const auto& r : it.rows)
                std::cout << "  " << std::left << std::setw(4) << r.t.m1 << std::setw(5) << r.t.n1
                          << std::setw(5) << r.t.s << std::setw(5) << r.quotient << std::setw(7)
                          << r.order << std::setw(8) << (r.normal ? "yes" : "no") << std::setw(12)
                          << r.sd.str() << r.sd.decimal() << "\n";
        }
    }
    if (!all_ok) throw violation_error("a subgroup parametrization bijection failed");
}

// ---- verify ----------------------------------------------------------

const std::vector<std::string>& default_corpus() {
    static const std::vector<std::string> corpus = [] {
        std::vector<std::string> c;
        for (int n = 1; n <= 24; ++n) c.push_back("Z" + std::to_string(n));
        for (int n = 4; n <= 24; n += 2) c.push_back("D" + std::to_string(n));
        c.insert(c.end(), {"S3", "S4", "S5", "A4", "A5", "Z2xZ2", "Z2xZ2xZ2", "S3xZ5", "Z2xZ9",
                           "ZM(3,2,2)", "ZM(5,4,2)", "ZM(7,3,2)", "ZM(9,2,8)"});
        return c;
    }();
    return corpus;
}

const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> suites = {
        "lattice",  "expansion", "reduced", "conjugacy", "degree-one",
        "bounds",   "products",  "zm-bijection", "nary"};
    return suites;
}

struct SuiteResult {
    std::string suite;
    std::string group;
    std::string status;  // pass | fail | skipped
    long long checks = 0;
    long long failures = 0;
    std::string note;
};

SuiteResult run_suite(const std::string& suite, const std::string& label, const GroupContext& ctx,
                      const Options& o) {
    SuiteResult res{suite, label, "pass", 0, 0, ""};
    const GroupTable& g = ctx.table;
    const Lattice& lat = ctx.lat;
    auto fail = [&](const std::string& note) {
        ++res.failures;
        res.status = "fail";
        if (res.note.empty()) res.note = note;
    };

    if (suite == "lattice") {
        if (g.order > 128) {
            res.status = "skipped";
            res.note = "oracle enumeration is capped at order 128";
            return res;
        }
        Lattice truth = oracle_enumerate(g);
        ++res.checks;
        if (truth.subs != lat.subs) fail("subgroup lists differ from the brute-force oracle");
    } else if (suite == "expansion") {
        MaximalReport rep = sd_via_maximal(g, lat);
        ++res.checks;
        if (rep.value != sd(lat).value) fail("expansion value differs from direct sd");
    } else if (suite == "reduced") {
        Fraction direct = sd(lat).value;
        if (hypothesis_holds(lat)) {
            ++res.checks;
            if (sd_via_maximal_reduced(g, lat, ReducedVariant::single_sum) != direct)
                fail("single-sum reduction differs from sd");
            ++res.checks;
            if (sd_via_maximal_reduced(g, lat, ReducedVariant::pair_sum) != direct)
                fail("pair-sum reduction differs from sd");
        } else {
            ++res.checks;
            bool threw = false;
            try {
                sd_via_maximal_reduced(g, lat, ReducedVariant::single_sum);
            } catch (const violation_error&) {
                threw = true;
            }
            if (!threw) fail("reduction computed a value although its hypothesis fails");
            res.note = "hypothesis fails for this group; rejection behavior verified";
        }
    } else if (suite == "conjugacy") {
        auto rows = sd_profile(lat);  // throws on any intra-class mismatch
        res.checks = static_cast<long long>(rows.size());
    } else if (suite == "degree-one") {
        int n = lat.count();
        const DynBitset& all = lat.subs_mask[lat.whole_index];
        std::vector<char> permutable(n), schmidt(n);
        for (int x = 0; x < n; ++x) {
            permutable[x] = is_permutable(lat, x);
            schmidt[x] = is_modular_element(lat, x) && is_subnormal(lat, x);
            ++res.checks;
            if (permutable[x] != schmidt[x])
                fail("subgroup " + std::to_string(x) +
                     ": permutable and modular+subnormal disagree");
        }
        long long lg = n;
        for (int h = 0; h < n; ++h) {
            bool deg1 = lat.count_commuting(lat.subs_mask[h], all) ==
                        static_cast<long long>(lat.subs_mask[h].count()) * lg;
            bool all_perm = true, all_schmidt = true;
            lat.subs_mask[h].for_each([&](int x) {
                all_perm = all_perm && permutable[x];
                all_schmidt = all_schmidt && schmidt[x];
            });
            ++res.checks;
            if (deg1 != all_perm || deg1 != all_schmidt)
                fail("subgroup " + std::to_string(h) + ": degree-one equivalence breaks");
        }
    } else if (suite == "bounds") {
        for (int h = 0; h < lat.count(); ++h) {
            BoundsReport rep = lower_bounds(g, lat, h);
            if (rep.subgroup_bound) {
                ++res.checks;
                if (!rep.subgroup_bound->holds)
                    fail("subgroup " + std::to_string(h) + ": own-degree bound fails");
            }
            ++res.checks;
            if (!rep.normal_bound.holds)
                fail("subgroup " + std::to_string(h) + ": normal-count bound fails");
            ++res.checks;
            if (!rep.updown_bound.holds)
                fail("subgroup " + std::to_string(h) + ": up-down bound fails");
            for (const auto& q : rep.quotient_bounds) {
                ++res.checks;
                if (!q.holds)
                    fail("subgroup " + std::to_string(h) + ": quotient bound at " +
                         std::to_string(q.h1_index) + " fails");
                if (q.h1_index == lat.trivial_index) {
                    ++res.checks;
                    if (!q.equality)
                        fail("subgroup " + std::to_string(h) +
                             ": trivial quotient bound is not an equality");
                }
            }
        }
    } else if (suite == "products") {
        if (ctx.expr.kind != GroupExpr::Kind::product) {
            res.status = "skipped";
            res.note = "not a direct product";
            return res;
        }
        std::vector<GroupTable> tables;
        for (const auto& f : ctx.expr.factors) tables.push_back(realize_expr(f, o.max_order));
        for (size_t i = 0; i < tables.size(); ++i)
            for (size_t j = i + 1; j < tables.size(); ++j)
                if (std::gcd(tables[i].order, tables[j].order) != 1) {
                    res.status = "skipped";
                    res.note = "factor orders are not coprime";
                    return res;
                }
        std::vector<const GroupTable*> ptrs;
        std::vector<Lattice> lats;
        for (const auto& t : tables) ptrs.push_back(&t);
        for (const auto& t : tables) lats.push_back(enumerate_subgroups(t));
        std::vector<size_t> od(tables.size(), 0);
        while (true) {
            std::vector<DynBitset> subs;
            for (size_t i = 0; i < tables.size(); ++i)
                subs.push_back(lats[i].subs[od[i]]);
            ProductDegreeReport rep = verify_coprime_product(ptrs, subs);
            ++res.checks;
            if (!rep.equal) fail("product degree is not multiplicative");
            int i = static_cast<int>(tables.size()) - 1;
            while (i >= 0 && ++od[i] == static_cast<size_t>(lats[i].count())) od[i--] = 0;
            if (i < 0) break;
        }
    } else if (suite == "zm-bijection") {
        if (ctx.expr.kind != GroupExpr::Kind::zm) {
            res.status = "skipped";
            res.note = "not a ZM group";
            return res;
        }
        ZMParams p = validate_zm(ctx.expr.a, ctx.expr.b, ctx.expr.c);
        BijectionReport rep = verify_bijection(p);
        ++res.checks;
        if (!rep.ok)
            fail("bijection broke: " + (rep.diagnostics.empty() ? "count mismatch"
                                                                : rep.diagnostics.front()));
    } else if (suite == "nary") {
        ++res.checks;
        if (sd_nary(lat, {lat.whole_index}).value != Fraction(1))
            fail("single-argument value is not 1");
        std::mt19937_64 rng(0x5d5d2026u ^ table_hash(g));
        std::uniform_int_distribution<int> pick(0, lat.count() - 1);
        for (int rep = 0; rep < 2; ++rep) {
            int h = pick(rng), k = pick(rng);
            Fraction two = sd_nary(lat, {h, k}).value;
            ++res.checks;
            if (two != sd_pair(lat, h, k).value)
                fail("two arguments disagree with the pair degree at (" + std::to_string(h) +
                     "," + std::to_string(k) + ")");
            ++res.checks;
            if (two != sd_nary(lat, {k, h}).value)
                fail("argument order changed the value at (" + std::to_string(h) + "," +
                     std::to_string(k) + ")");
        }
    } else {
        throw usage_error("unknown suite '" + suite + "'");
    }
    return res;
}

int emit_verify(const Options& o, std::vector<std::string> corpus,
                std::vector<std::string> suites) {
    if (corpus.empty()) corpus = default_corpus();
    if (suites.empty()) suites = all_suites();
    for (const auto& s : suites)
        if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end()) {
            std::string known;
            for (const auto& k : all_suites()) known += (known.empty() ? "" : ", ") + k;
            throw usage_error("unknown suite '" + s + "'; known suites: " + known);
        }
    for (const auto& text : corpus) parse_group_expr(text);  // syntax errors before any work

    struct GroupRun {
        std::vector<SuiteResult> rows;
        std::string drop_note;  // nonempty when the group was dropped
    };
    std::vector<GroupRun> runs(corpus.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < corpus.size();) {
            GroupRun& run = runs[i];
            std::unique_ptr<GroupContext> ctx;
            try {
                ctx = make_context(corpus[i], Options{o.format, o.cache_dir, o.max_order,
                                                      /*oracle=*/false, 1});
            } catch (const cap_error& e) {
                run.drop_note = std::string("cap: ") + e.what();
                continue;
            } catch (const std::exception& e) {
                run.drop_note = std::string("invalid: ") + e.what();
                continue;
            }
            for (const auto& s : suites) {
                try {
                    run.rows.push_back(run_suite(s, corpus[i], *ctx, o));
                } catch (const cap_error& e) {
                    run.rows.push_back({s, corpus[i], "skipped", 0, 0, e.what()});
                } catch (const std::exception& e) {
                    run.rows.push_back({s, corpus[i], "fail", 1, 1, e.what()});
                }
            }
        }
    };
    int jobs = std::max(1, std::min<int>(o.jobs, static_cast<int>(corpus.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    long long total_checks = 0, total_failures = 0, skipped = 0, dropped = 0;
    for (const auto& run : runs) {
        if (!run.drop_note.empty()) ++dropped;
        for (const auto& r : run.rows) {
            total_checks += r.checks;
            total_failures += r.failures;
            if (r.status == "skipped") ++skipped;
        }
    }

    if (o.format == "json") {
        ordered_json j;
        j["schema"] = kVerifySchema;
        j["verb"] = "verify";
        j["corpus"] = corpus;
        j["suites"] = suites;
        auto& results = j["results"] = ordered_json::array();
        for (size_t i = 0; i < corpus.size(); ++i) {
            if (!runs[i].drop_note.empty()) {
                ordered_json row;
                row["group"] = corpus[i];
                row["suite"] = "";
                row["status"] = "dropped";
                row["checks"] = 0;
                row["failures"] = 0;
                row["note"] = runs[i].drop_note;
                results.push_back(std::move(row));
                continue;
            }
            for (const auto& r : runs[i].rows) {
                ordered_json row;
                row["group"] = r.group;
                row["suite"] = r.suite;
                row["status"] = r.status;
                row["checks"] = r.checks;
                row["failures"] = r.failures;
                row["note"] = r.note;
                results.push_back(std::move(row));
            }
        }
        ordered_json summary;
        summary["groups"] = corpus.size();
        summary["dropped"] = dropped;
        summary["checks"] = total_checks;
        summary["failures"] = total_failures;
        summary["skipped_rows"] = skipped;
        j["summary"] = std::move(summary);
        std::cout << j.dump(2) << "\n";
    } else if (o.format == "csv") {
        std::cout << "group,suite,status,checks,failures,note\n";
        for (size_t i = 0; i < corpus.size(); ++i) {
            if (!runs[i].drop_note.empty()) {
                std::cout << csv_escape(corpus[i]) << ",,dropped,0,0,"
                          << csv_escape(runs[i].drop_note) << "\n";
                continue;
            }
            for (const auto& r : runs[i].rows)
                std::cout << csv_escape(r.group) << "," << r.suite << "," << r.status << ","
                          << r.checks << "," << r.failures << "," << csv_escape(r.note) << "\n";
        }
    } else {
        std::cout << std::left << std::setw(12) << "group" << std::setw(14) << "suite"
                  << std::setw(9) << "status" << std::setw(8) << "checks" << std::setw(10)
                  << "failures"
                  << "note\n";
        for (size_t i = 0; i < corpus.size(); ++i) {
            if (!runs[i].drop_note.empty()) {
                std::cout << std::left << std::setw(12) << corpus[i] << std::setw(14) << "-"
                          << std::setw(9) << "dropped" << std::setw(8) << 0 << std::setw(10) << 0
                          << runs[i].drop_note << "\n";
                continue;
            }
            for (const auto& r : runs[i].rows)
                std::cout << std::left << std::setw(12) << r.group << std::setw(14) << r.suite
                          << std::setw(9) << r.status << std::setw(8) << r.checks << std::setw(10)
                          << r.failures << r.note << "\n";
        }
        std::cout << "summary: " << corpus.size() << " groups (" << dropped << " dropped), "
                  << total_checks << " checks, " << total_failures << " failures, " << skipped
                  << " skipped rows\n";
    }
    return total_failures > 0 ? 1 : 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"subgroup commutativity degrees of small finite groups"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--cache", o.cache_dir, "lattice cache directory")->envname("SUBDEG_CACHE");
    app.add_option("--max-order", o.max_order, "largest group order to accept")
        ->capture_default_str();
    app.add_flag("--oracle", o.oracle, "cross-check enumeration against brute force");
    app.add_option("--jobs", o.jobs, "worker threads for corpus commands")
        ->envname("SUBDEG_JOBS")
        ->capture_default_str();

    std::string expr_text;
    std::vector<std::string> selectors;

    auto* c_sd = app.add_subcommand("sd", "subgroup commutativity degree of a group");
    c_sd->add_option("group", expr_text, "group expression")->required();

    auto* c_rel = app.add_subcommand("sd-rel", "relative degree of a subgroup in its group");
    c_rel->add_option("group", expr_text)->required();
    c_rel->add_option("subgroup", selectors, "subgroup selector")->expected(1);

    auto* c_pair = app.add_subcommand("sd-pair", "relative degree of two subgroups");
    c_pair->add_option("group", expr_text)->required();
    c_pair->add_option("subgroups", selectors, "two subgroup selectors")->expected(2);

    auto* c_nary = app.add_subcommand("sd-nary", "product invariance degree of up to 6 subgroups");
    c_nary->add_option("group", expr_text)->required();
    c_nary->add_option("subgroups", selectors, "subgroup selectors")->expected(1, 6);

    auto* c_d = app.add_subcommand("d", "element commutativity degree");
    c_d->add_option("group", expr_text)->required();
    c_d->add_option("subgroup", selectors, "optional subgroup selector")->expected(0, 1);

    auto* c_lat = app.add_subcommand("lattice", "subgroup lattice listing");
    c_lat->add_option("group", expr_text)->required();

    auto* c_max = app.add_subcommand("maximal", "maximal-intersection expansion of sd");
    c_max->add_option("group", expr_text)->required();

    auto* c_prof = app.add_subcommand("profile", "sd_rel per subgroup conjugacy class");
    c_prof->add_option("group", expr_text)->required();

    auto* c_ex = app.add_subcommand("example26", "published worked example, reproduced");
    c_ex->add_option("group", expr_text, "group expression (defaults to S4)");

    std::vector<std::string> verify_corpus, verify_suites;
    auto* c_ver = app.add_subcommand("verify", "verification suites over a corpus");
    c_ver->add_option("groups", verify_corpus, "corpus group expressions (default: built-in corpus)");
    c_ver->add_option("--suite", verify_suites, "suites to run (repeatable; default: all)");

    std::vector<std::string> zm_params;
    int zm_max_mn = 60;
    auto* c_zm = app.add_subcommand("zm-sweep", "relative degrees over ZM parametrizations");
    c_zm->add_option("params", zm_params, "explicit ZM(m,n,r) expressions");
    c_zm->add_option("--max-mn", zm_max_mn, "sweep bound on m*n when no params are given")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*c_sd) {
            auto ctx = make_context(expr_text, o);
            emit_sd_report(o, "sd", *ctx, sd(ctx->lat), {});
        } else if (*c_rel) {
            auto ctx = make_context(expr_text, o);
            int h = resolve_selector(selectors.at(0), ctx->expr, ctx->table, ctx->lat);
            emit_sd_report(o, "sd-rel", *ctx, sd_rel(ctx->lat, h), {h});
        } else if (*c_pair) {
            auto ctx = make_context(expr_text, o);
            int h = resolve_selector(selectors.at(0), ctx->expr, ctx->table, ctx->lat);
            int k = resolve_selector(selectors.at(1), ctx->expr, ctx->table, ctx->lat);
            emit_sd_report(o, "sd-pair", *ctx, sd_pair(ctx->lat, h, k), {h, k});
        } else if (*c_nary) {
            auto ctx = make_context(expr_text, o);
            std::vector<int> hs;
            for (const auto& s : selectors)
                hs.push_back(resolve_selector(s, ctx->expr, ctx->table, ctx->lat));
            emit_sd_report(o, "sd-nary", *ctx, sd_nary(ctx->lat, hs), hs);
        } else if (*c_d) {
            auto ctx = make_context(expr_text, o);
            Fraction v;
            std::optional<int> h;
            if (selectors.empty()) {
                v = d_group(ctx->table);
            } else {
                h = resolve_selector(selectors.at(0), ctx->expr, ctx->table, ctx->lat);
                v = d_rel(ctx->table, ctx->lat.subs[*h]);
            }
            if (o.format == "json") {
                ordered_json j;
                j["schema"] = kReportSchema;
                j["verb"] = "d";
                j["group"] = ctx->table.label;
                j["order"] = ctx->table.order;
                if (h) j["subgroup"] = *h;
                j["value"] = v.str();
                j["decimal"] = v.decimal();
                std::cout << j.dump(2) << "\n";
            } else if (o.format == "csv") {
                std::cout << "group,order,subgroup,value,decimal\n"
                          << csv_escape(ctx->table.label) << "," << ctx->table.order << ","
                          << (h ? std::to_string(*h) : "") << "," << v.str() << "," << v.decimal()
                          << "\n";
            } else {
                std::cout << "group " << ctx->table.label << " (order " << ctx->table.order
                          << ")\n";
                if (h) std::cout << "subgroup " << *h << " (order " << ctx->lat.sizes[*h] << ")\n";
                std::cout << "value = " << v.str() << " = " << v.decimal() << "\n";
            }
        } else if (*c_lat) {
            auto ctx = make_context(expr_text, o);
            emit_lattice(o, *ctx);
        } else if (*c_max) {
            auto ctx = make_context(expr_text, o);
            emit_maximal(o, *ctx);
        } else if (*c_prof) {
            auto ctx = make_context(expr_text, o);
            emit_profile(o, *ctx);
        } else if (*c_ex) {
            auto ctx = make_context(expr_text.empty() ? "S4" : expr_text, o);
            emit_example26(o, *ctx);
        } else if (*c_ver) {
            return emit_verify(o, verify_corpus, verify_suites);
        } else if (*c_zm) {
            emit_zm_sweep(o, zm_params, zm_max_mn);
        }
        return 0;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cap_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const violation_error& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace subdeg
