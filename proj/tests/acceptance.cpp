// End-to-end acceptance run: prints one line per criterion and exits
// nonzero if any fails. Expects the CLI binary path as argv[1] (used by
// the determinism criterion); without it that criterion is a failure.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "subdeg/commutativity.hpp"
#include "subdeg/errors.hpp"
#include "subdeg/expr.hpp"
#include "subdeg/group.hpp"
#include "subdeg/isomorphism.hpp"
#include "subdeg/lattice.hpp"
#include "subdeg/zm.hpp"

using namespace subdeg;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& note) {
    if (!ok) ++failures;
    std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL")
              << (note.empty() ? "" : " - " + note) << "\n"
              << std::flush;
}

const std::vector<std::string>& corpus() {
    static const std::vector<std::string> c = [] {
        std::vector<std::string> v;
        for (int n = 1; n <= 24; ++n) v.push_back("Z" + std::to_string(n));
        for (int n = 4; n <= 24; n += 2) v.push_back("D" + std::to_string(n));
        v.insert(v.end(), {"S3", "S4", "S5", "A4", "A5", "Z2xZ2", "Z2xZ2xZ2", "S3xZ5", "Z2xZ9",
                           "ZM(3,2,2)", "ZM(5,4,2)", "ZM(7,3,2)", "ZM(9,2,8)"});
        return v;
    }();
    return c;
}

struct Ctx {
    GroupExpr expr;
    GroupTable table;
    Lattice lat;
};

// contexts are built once and shared by every criterion
std::map<std::string, std::unique_ptr<Ctx>> ctxs;

Ctx& ctx(const std::string& text) {
    auto it = ctxs.find(text);
    if (it == ctxs.end()) {
        auto c = std::make_unique<Ctx>();
        c->expr = parse_group_expr(text);
        c->table = realize_expr(c->expr, 720);
        c->lat = enumerate_subgroups(c->table);
        it = ctxs.emplace(text, std::move(c)).first;
    }
    return *it->second;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int only_of_order(const Lattice& lat, int order) {
    int found = -1;
    for (int i = 0; i < lat.count(); ++i)
        if (lat.sizes[i] == order) {
            if (found >= 0) return -1;
            found = i;
        }
    return found;
}

std::string run_capture(const std::string& cmd, int& exit_code) {
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        exit_code = -1;
        return out;
    }
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    exit_code = pclose(p);
    return out;
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    GroupTable a4 = make_alternating(4);
    Lattice lat = enumerate_subgroups(a4);
    Fraction v = sd(lat).value;
    double dt = seconds_since(t0);
    bool ok = v == Fraction(16, 25) && dt < 1.0;
    std::ostringstream note;
    note << "computed " << v.str() << " in " << dt << "s";
    report(1, ok, note.str());
}

void criterion2() {
    Ctx& c = ctx("S3");
    int a3 = only_of_order(c.lat, 3);
    Fraction v = sd_rel(c.lat, a3).value;
    report(2, a3 >= 0 && v == Fraction(1), "computed " + v.str());
}

void criterion3() {
    Ctx& c = ctx("D8");
    int y = c.lat.index_of.at(cyclic_subgroup(c.table, 4));
    int xy = c.lat.index_of.at(cyclic_subgroup(c.table, 5));
    Fraction vy = sd_rel(c.lat, y).value;
    Fraction vxy = sd_rel(c.lat, xy).value;
    bool ok = vy == Fraction(9, 10) && vxy == Fraction(9, 10) &&
              c.lat.class_of[y] != c.lat.class_of[xy];
    report(3, ok,
           "both " + vy.str() + ", classes " + std::to_string(c.lat.class_of[y]) + " and " +
               std::to_string(c.lat.class_of[xy]));
}

void criterion4() {
    bool ok = ctx("S3").lat.count() == 6 && ctx("D8").lat.count() == 10 &&
              ctx("A4").lat.count() == 10 && ctx("S4").lat.count() == 30;
    std::string note = ok ? "sizes 6/10/10/30" : "a reference lattice size is off";
    int checked = 0;
    if (ok)
        for (const auto& text : corpus()) {
            Ctx& c = ctx(text);
            if (c.table.order > 128) continue;
            ++checked;
            if (!(oracle_enumerate(c.table).subs == c.lat.subs)) {
                ok = false;
                note = text + " disagrees with the oracle";
                break;
            }
        }
    report(4, ok, ok ? note + "; oracle agreed on " + std::to_string(checked) + " groups" : note);
}

void criterion5() {
    bool identity_ok = true;
    std::string bad;
    for (const auto& text : corpus()) {
        Ctx& c = ctx(text);
        if (sd_via_maximal(c.table, c.lat).value != sd(c.lat).value) {
            identity_ok = false;
            bad = text;
            break;
        }
    }

    Ctx& s4 = ctx("S4");
    MaximalReport rep = sd_via_maximal(s4.table, s4.lat);
    std::vector<long long> coeffs = {rep.constant_term};
    for (const auto& g : rep.groups) coeffs.push_back(g.coefficient);
    bool vector_ok = coeffs == std::vector<long long>{13, -24, -8, -15, 24, 30, 10};

    // the displayed equation carries -18 on the Klein term; that value is
    // irreconcilable with the computed class degrees, which the identity
    // fixes exactly, so -15 is taken as authoritative and -18 is a finding
    Fraction printed(13);
    const Fraction rels[] = {Fraction(11, 15), Fraction(7, 10), Fraction(19, 25),
                             Fraction(11, 20), Fraction(19, 30), Fraction(16, 25)};
    const long long printed_coeffs[] = {-24, -8, -18, 24, 30, 10};
    for (int i = 0; i < 6; ++i) printed += Fraction(printed_coeffs[i]) * rels[i];
    bool printed_impossible = printed / Fraction(30) != sd(s4.lat).value;

    bool ok = identity_ok && vector_ok && printed_impossible;
    report(5, ok,
           ok ? "identity exact on all groups; computed vector (13,-24,-8,-15,24,30,10); "
                "finding: published -18 cannot satisfy the identity, -15 verified"
              : (identity_ok ? "computed coefficient vector differs"
                             : "identity broke on " + bad));
}

void criterion6() {
    Ctx& a4 = ctx("A4");
    Ctx& s4 = ctx("S4");
    bool a4_ok = hypothesis_holds(a4.lat) &&
                 sd_via_maximal_reduced(a4.table, a4.lat, ReducedVariant::single_sum) ==
                     Fraction(16, 25) &&
                 sd_via_maximal_reduced(a4.table, a4.lat, ReducedVariant::pair_sum) ==
                     Fraction(16, 25);
    bool s4_ok = !hypothesis_holds(s4.lat);
    report(6, a4_ok && s4_ok,
           "A4 hypothesis holds, both reductions 16/25; S4 hypothesis fails as stated");
}

void criterion7() {
    Ctx& s4 = ctx("S4");
    Example26Report rep = example26_report(s4.table, s4.lat);
    bool computed_integral = true;
    for (const auto& row : rep.rows) {
        int rep_idx = s4.lat.classes[row.class_index].front();
        long long lh = s4.lat.subs_mask[rep_idx].count();
        if (!(row.computed * Fraction(lh * s4.lat.count())).is_integer())
            computed_integral = false;
    }
    int findings = 0;
    for (const auto& row : rep.rows)
        if (row.reference && !row.match) ++findings;
    bool ok = rep.reference_sd.has_value() && !rep.reference_integral && computed_integral &&
              rep.sd_direct == rep.sd_expanded && rep.sd_direct == Fraction(17, 30);
    std::ostringstream note;
    note << "integrality flag fired on the printed total; " << findings
         << " printed-value findings reported; identity exact at 17/30";
    report(7, ok, ok ? note.str() : "report inconsistent");
}

void criterion8() {
    for (const auto& text : corpus()) {
        Ctx& c = ctx(text);
        try {
            sd_profile(c.lat);  // throws if a class straddles two values
        } catch (const violation_error& e) {
            report(8, false, text + ": " + e.what());
            return;
        }
    }
    report(8, true, "every conjugacy class shares one value across the corpus");
}

void criterion9() {
    Ctx& c = ctx("S3xZ5");
    GroupTable s3 = make_symmetric(3);
    GroupTable z5 = make_cyclic(5);
    DynBitset t = cyclic_subgroup(s3, 2);
    DynBitset z5all(5);
    for (int i = 0; i < 5; ++i) z5all.set(i);
    ProductDegreeReport headline = verify_coprime_product({&s3, &z5}, {t, z5all});

    // the same subgroup inside the realized product group
    DynBitset seed(30);
    seed.set(2 * 5);
    seed.set(1);
    int h = c.lat.index_of.at(closure(c.table, seed));
    bool headline_ok = headline.equal && headline.direct == Fraction(5, 6) &&
                       headline.factored == Fraction(5, 6) &&
                       sd_rel(c.lat, h).value == Fraction(5, 6);

    bool all_ok = true;
    long long combos = 0;
    std::string bad;
    for (const auto& text : corpus()) {
        GroupExpr e = parse_group_expr(text);
        if (e.kind != GroupExpr::Kind::product) continue;
        std::vector<GroupTable> tables;
        for (const auto& f : e.factors) tables.push_back(realize_expr(f, 720));
        bool coprime = true;
        for (size_t i = 0; i < tables.size(); ++i)
            for (size_t j = i + 1; j < tables.size(); ++j)
                if (std::gcd(tables[i].order, tables[j].order) != 1) coprime = false;
        if (!coprime) continue;
        std::vector<const GroupTable*> ptrs;
        std::vector<Lattice> lats;
        for (const auto& tb : tables) ptrs.push_back(&tb);
        for (const auto& tb : tables) lats.push_back(enumerate_subgroups(tb));
        std::vector<size_t> od(tables.size(), 0);
        while (true) {
            std::vector<DynBitset> subs;
            for (size_t i = 0; i < tables.size(); ++i) subs.push_back(lats[i].subs[od[i]]);
            ++combos;
            if (!verify_coprime_product(ptrs, subs).equal) {
                all_ok = false;
                bad = text;
            }
            int i = static_cast<int>(tables.size()) - 1;
            while (i >= 0 && ++od[i] == static_cast<size_t>(lats[i].count())) od[i--] = 0;
            if (i < 0) break;
        }
        if (!all_ok) break;
    }
    report(9, headline_ok && all_ok,
           headline_ok && all_ok
               ? "headline case 5/6 = 5/6 * 1 exact; all " + std::to_string(combos) +
                     " coprime combinations multiplicative"
               : (headline_ok ? "combination failed on " + bad : "headline case failed"));
}

void criterion10() {
    for (const auto& text : corpus()) {
        Ctx& c = ctx(text);
        for (int h = 0; h < c.lat.count(); ++h) {
            BoundsReport rep = lower_bounds(c.table, c.lat, h);
            bool ok = (!rep.subgroup_bound || rep.subgroup_bound->holds) &&
                      rep.normal_bound.holds && rep.updown_bound.holds;
            bool trivial_equality = false;
            for (const auto& q : rep.quotient_bounds) {
                ok = ok && q.holds;
                if (q.h1_index == c.lat.trivial_index) trivial_equality = q.equality;
            }
            if (!ok || !trivial_equality) {
                report(10, false, text + " subgroup " + std::to_string(h));
                return;
            }
        }
    }
    report(10, true, "all four bounds hold corpus-wide; trivial quotient attains equality");
}

void criterion11() {
    // per-subgroup form: permutable means modular plus subnormal; the
    // degree-one form quantifies over every subgroup of H (applying the pair
    // to H itself is refutable: H = G is modular and subnormal with degree
    // sd(G) < 1 whenever G has any non-permutable subgroup)
    for (const auto& text : corpus()) {
        Ctx& c = ctx(text);
        const Lattice& lat = c.lat;
        int n = lat.count();
        std::vector<char> schmidt(n);
        for (int x = 0; x < n; ++x) {
            schmidt[x] = is_modular_element(lat, x) && is_subnormal(lat, x);
            if (is_permutable(lat, x) != static_cast<bool>(schmidt[x])) {
                report(11, false,
                       text + ": permutable vs modular+subnormal at " + std::to_string(x));
                return;
            }
        }
        const DynBitset& all = lat.subs_mask[lat.whole_index];
        for (int h = 0; h < n; ++h) {
            bool deg1 = lat.count_commuting(lat.subs_mask[h], all) ==
                        static_cast<long long>(lat.subs_mask[h].count()) * n;
            bool all_schmidt = true;
            lat.subs_mask[h].for_each([&](int x) { all_schmidt = all_schmidt && schmidt[x]; });
            if (deg1 != all_schmidt) {
                report(11, false, text + ": degree-one equivalence broke at " + std::to_string(h));
                return;
            }
        }
    }
    // the literal reading (H itself modular and subnormal in G) is refutable
    const Lattice& s3 = ctx("S3").lat;
    int w = s3.whole_index;
    bool literal_refuted = is_modular_element(s3, w) && is_subnormal(s3, w) &&
                           sd_rel(s3, w).value != Fraction(1);
    report(11, literal_refuted,
           literal_refuted
               ? "equivalence holds with the condition over all subgroups of H; finding: the "
                 "literal per-H reading fails at H = G = S3"
               : "expected counterexample to the literal reading did not materialize");
}

void criterion12() {
    bool ok = true;
    std::string note;
    for (const char* text : {"ZM(3,2,2)", "ZM(5,4,2)", "ZM(7,3,2)", "ZM(9,2,8)"}) {
        GroupExpr e = parse_group_expr(text);
        ZMParams p = validate_zm(e.a, e.b, e.c);
        if (p.m * p.n > 100) continue;
        BijectionReport rep = verify_bijection(p);
        if (!rep.ok) {
            ok = false;
            note = std::string(text) + " bijection broke";
        }
    }
    ZMParams p322 = validate_zm(3, 2, 2);
    ok = ok && enumerate_triples(p322).size() == 6;
    GroupTable g = build_zm(p322);
    ok = ok && are_isomorphic(g, make_symmetric(3));
    Lattice lat = enumerate_subgroups(g);
    for (const auto& row : zm_sd_table(p322, g, lat)) {
        if (row.order == 6) ok = ok && row.sd == Fraction(5, 6) && row.normal;
        if (row.order == 3) ok = ok && row.sd == Fraction(1) && row.normal;
        if (row.order == 2) ok = ok && row.sd == Fraction(5, 6) && !row.normal;
        if (row.order == 1) ok = ok && row.sd == Fraction(1) && row.normal;
    }
    report(12, ok,
           ok ? "bijections pass; 6 triples; order-6 case isomorphic to S3 with matching table"
              : (note.empty() ? "a pinned table value is off" : note));
}

void criterion13() {
    std::mt19937 rng(20260819);
    bool ok = true;
    // sample cheap corpus groups; every pair must agree with the pair degree
    std::vector<std::string> pool;
    for (const auto& text : corpus())
        if (ctx(text).table.order <= 60) pool.push_back(text);
    for (int trial = 0; trial < 20 && ok; ++trial) {
        Ctx& c = ctx(pool[rng() % pool.size()]);
        int h = static_cast<int>(rng() % c.lat.count());
        int k = static_cast<int>(rng() % c.lat.count());
        Fraction pair = sd_pair(c.lat, h, k).value;
        ok = sd_nary(c.lat, {h, k}).value == pair && sd_nary(c.lat, {k, h}).value == pair;
    }
    ok = ok && sd_nary(ctx("S3").lat, {ctx("S3").lat.whole_index}).value == Fraction(1);
    report(13, ok, "20 sampled pairs agree both ways; single argument gives 1");
}

void criterion14() {
    auto t0 = std::chrono::steady_clock::now();
    GroupTable s5 = make_symmetric(5);
    Lattice lat = enumerate_subgroups(s5);
    Fraction v5 = sd(lat).value;
    double dt5 = seconds_since(t0);

    auto t1 = std::chrono::steady_clock::now();
    GroupTable s4 = make_symmetric(4);
    Lattice l4 = enumerate_subgroups(s4);
    Fraction v4 = sd(l4).value;
    double dt4 = seconds_since(t1);

    // adjacent order-120 reference values, while the lattice is at hand
    int a5 = only_of_order(lat, 60);
    bool refs = lat.count() == 156 && a5 >= 0 && sd_rel(lat, a5).value == Fraction(79, 354) &&
                static_cast<int>(lat.normal_indices.size()) == 3 &&
                d_group(s5) == Fraction(7, 120);

    bool ok =
        v5 == Fraction(67, 312) && dt5 < 10.0 && v4 == Fraction(17, 30) && dt4 < 1.0 && refs;
    std::ostringstream note;
    note << "order-120 case " << v5.str() << " in " << dt5 << "s; order-24 case in " << dt4
         << "s" << (refs ? "" : "; a reference value drifted");
    report(14, ok, note.str());
}

void criterion15(const char* cli) {
    if (!cli) {
        report(15, false, "no CLI binary path given");
        return;
    }
    std::string cmd = std::string("\"") + cli + "\" verify --format json 2>/dev/null";
    int rc1 = 0, rc2 = 0;
    std::string a = run_capture(cmd, rc1);
    std::string b = run_capture(cmd, rc2);
    bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
    std::ostringstream note;
    note << "two runs, " << a.size() << " bytes each, "
         << (a == b ? "byte-identical" : "DIFFERENT") << ", exit " << rc1 << "/" << rc2;
    report(15, ok, note.str());
}

}  // namespace

int main(int argc, char** argv) {
    const char* cli = argc > 1 ? argv[1] : nullptr;
    std::vector<std::function<void()>> steps = {
        criterion1,  criterion2,  criterion3,  criterion4,  criterion5,
        criterion6,  criterion7,  criterion8,  criterion9,  criterion10,
        criterion11, criterion12, criterion13, criterion14, [cli] { criterion15(cli); }};
    for (size_t i = 0; i < steps.size(); ++i) {
        try {
            steps[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), false,
                   std::string("unexpected exception: ") + e.what());
        }
    }
    std::cout << (failures == 0 ? "all criteria passed" : "failures: " + std::to_string(failures))
              << "\n";
    return failures == 0 ? 0 : 1;
}
