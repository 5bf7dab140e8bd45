#include "subdeg/commutativity.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "subdeg/errors.hpp"
#include "subdeg/group.hpp"
#include "subdeg/isomorphism.hpp"

namespace subdeg {

namespace {

void require_analyzed(const Lattice& lat) {
    if (!lat.analyzed) throw usage_error("lattice was built without structural analysis");
}

void require_index(const Lattice& lat, int h) {
    if (h < 0 || h >= lat.count()) throw usage_error("subgroup index out of range");
}

Fraction fraction_of(long long hits, long long total) {
    return Fraction(hits, total);
}

}  // namespace

SdReport sd(const Lattice& lat) {
    require_analyzed(lat);
    SdReport rep;
    rep.label = lat.g->label;
    long long n = lat.count();
    rep.lattice_sizes = {n, n};
    for (int i = 0; i < n; ++i) {
        long long c = lat.perm[i].count();
        rep.pair_count += c;
        rep.breakdown.emplace_back(i, c);
    }
    rep.value = fraction_of(rep.pair_count, n * n);
    return rep;
}

SdReport sd_rel(const Lattice& lat, int h) {
    require_analyzed(lat);
    require_index(lat, h);
    SdReport rep;
    rep.label = lat.g->label;
    long long lh = lat.subs_mask[h].count();
    long long lg = lat.count();
    rep.lattice_sizes = {lh, lg};
    lat.subs_mask[h].for_each([&](int i) {
        long long c = lat.perm[i].count();
        rep.pair_count += c;
        rep.breakdown.emplace_back(i, c);
    });
    rep.value = fraction_of(rep.pair_count, lh * lg);
    return rep;
}

SdReport sd_pair(const Lattice& lat, int h, int k) {
    require_analyzed(lat);
    require_index(lat, h);
    require_index(lat, k);
    SdReport rep;
    rep.label = lat.g->label;
    long long lh = lat.subs_mask[h].count();
    long long lk = lat.subs_mask[k].count();
    rep.lattice_sizes = {lh, lk};
    const DynBitset& mk = lat.subs_mask[k];
    lat.subs_mask[h].for_each([&](int i) {
        long long c = lat.perm[i].count_and(mk);
        rep.pair_count += c;
        rep.breakdown.emplace_back(i, c);
    });
    rep.value = fraction_of(rep.pair_count, lh * lk);
    return rep;
}

SdReport sd_nary(const Lattice& lat, const std::vector<int>& hs) {
    require_analyzed(lat);
    int n = static_cast<int>(hs.size());
    if (n < 1) throw usage_error("need at least one subgroup");
    if (n > 6) throw usage_error("product invariance is capped at 6 arguments");
    for (int h : hs) require_index(lat, h);
    const GroupTable& g = *lat.g;

    SdReport rep;
    rep.label = g.label;
    std::vector<std::vector<int>> pools;
    for (int h : hs) {
        pools.push_back(lat.subs_mask[h].to_indices());
        rep.lattice_sizes.push_back(static_cast<long long>(pools.back().size()));
    }

    std::vector<size_t> od(n, 0);
    std::vector<int> tuple(n);
    while (true) {
        for (int i = 0; i < n; ++i) tuple[i] = pools[i][od[i]];
        std::vector<int> p = tuple;
        std::sort(p.begin(), p.end());
        bool ok = true;
        bool have_ref = false;
        DynBitset ref(g.order);
        do {
            DynBitset prod = lat.subs[p[0]];
            for (int i = 1; i < n; ++i) prod = product_set(g, prod, lat.subs[p[i]]);
            if (!have_ref) {
                ref = prod;
                have_ref = true;
            } else if (!(prod == ref)) {
                ok = false;
                break;
            }
        } while (std::next_permutation(p.begin(), p.end()));
        if (ok) ++rep.pair_count;

        int i = n - 1;
        while (i >= 0 && ++od[i] == pools[i].size()) od[i--] = 0;
        if (i < 0) break;
    }
    rep.value = fraction_of(rep.pair_count, rep.denominator());
    return rep;
}

Fraction d_group(const GroupTable& g) {
    long long hits = 0;
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y)
            if (g.op(x, y) == g.op(y, x)) ++hits;
    return Fraction(hits, static_cast<long long>(g.order) * g.order);
}

Fraction d_rel(const GroupTable& g, const DynBitset& h) {
    long long hits = 0;
    long long hsize = h.count();
    if (hsize == 0) throw usage_error("empty subgroup");
    h.for_each([&](int x) {
        for (int y = 0; y < g.order; ++y)
            if (g.op(x, y) == g.op(y, x)) ++hits;
    });
    return Fraction(hits, hsize * g.order);
}

MaximalReport sd_via_maximal(const GroupTable& g, const Lattice& lat) {
    require_analyzed(lat);
    MaximalReport rep;
    rep.label = g.label;
    rep.lattice_size = lat.count();
    MaxInterAnalysis an = analyze_maximal_intersections(lat);
    rep.maximal_count = static_cast<int>(lat.maximal_indices.size());
    rep.total_families = an.total_families;
    rep.constant_term = 1 + an.signed_families[lat.trivial_index];

    // bucket intersections by conjugacy class; conjugate subgroups share
    // |L| and sd_rel, which the loop re-checks instead of assuming
    std::map<int, MaximalTermGroup> buckets;
    std::vector<Fraction> rel(lat.count());
    std::vector<char> rel_done(lat.count(), 0);
    for (int idx = 0; idx < lat.count(); ++idx) {
        if (idx == lat.trivial_index || an.signed_families[idx] == 0) continue;
        if (!rel_done[idx]) {
            rel[idx] = sd_rel(lat, idx).value;
            rel_done[idx] = 1;
        }
        int cid = lat.class_of[idx];
        auto [it, fresh] = buckets.try_emplace(cid);
        MaximalTermGroup& grp = it->second;
        if (fresh) {
            grp.class_index = cid;
            grp.subgroup_size = lat.sizes[idx];
            grp.sd_rel_value = rel[idx];
        } else if (grp.sd_rel_value != rel[idx]) {
            throw violation_error("conjugate subgroups with distinct relative degrees");
        }
        grp.members.push_back(idx);
        grp.coefficient += an.signed_families[idx] * static_cast<long long>(lat.subs_mask[idx].count());
    }

    Fraction acc(rep.constant_term);
    for (auto& [cid, grp] : buckets) {
        if (grp.coefficient == 0) continue;
        grp.type_label = iso_type_label(subgroup_table(g, lat.subs[grp.members.front()], ""));
        acc += Fraction(grp.coefficient) * grp.sd_rel_value;
        rep.groups.push_back(std::move(grp));
    }
    rep.value = acc / Fraction(rep.lattice_size);
    return rep;
}

bool hypothesis_holds(const Lattice& lat) {
    require_analyzed(lat);
    MaxInterAnalysis an = analyze_maximal_intersections(lat);
    const DynBitset& all = lat.subs_mask[lat.whole_index];
    long long lg = lat.count();
    for (int idx = 0; idx < lat.count(); ++idx) {
        if (!an.seen_ge2[idx]) continue;
        long long lh = lat.subs_mask[idx].count();
        if (lat.count_commuting(lat.subs_mask[idx], all) != lh * lg) return false;
    }
    return true;
}

Fraction sd_via_maximal_reduced(const GroupTable& g, const Lattice& lat, ReducedVariant v) {
    require_analyzed(lat);
    (void)g;
    if (!hypothesis_holds(lat))
        throw violation_error("a family of maximal subgroups meets in a subgroup of degree < 1");
    long long lg = lat.count();
    Fraction acc(0);
    if (v == ReducedVariant::single_sum) {
        for (int m : lat.maximal_indices) {
            long long lm = lat.subs_mask[m].count();
            acc += Fraction(lm) * (Fraction(1) - sd_rel(lat, m).value);
        }
        return Fraction(1) - acc / Fraction(lg);
    }
    for (int mi : lat.maximal_indices)
        for (int mj : lat.maximal_indices) {
            long long w = static_cast<long long>(lat.subs_mask[mi].count()) *
                          lat.subs_mask[mj].count();
            acc += Fraction(w) * (Fraction(1) - sd_pair(lat, mi, mj).value);
        }
    return Fraction(1) - acc / Fraction(lg * lg);
}

BoundsReport lower_bounds(const GroupTable& g, const Lattice& lat, int h) {
    require_analyzed(lat);
    require_index(lat, h);
    BoundsReport rep;
    rep.value = sd_rel(lat, h).value;
    long long lh = lat.subs_mask[h].count();
    long long lg = lat.count();

    if (h != lat.whole_index) {
        Fraction own = sd_pair(lat, h, h).value;
        BoundCheck a;
        a.bound = (Fraction(lh) * own + Fraction(1)) / Fraction(lg);
        a.holds = rep.value >= a.bound;
        rep.subgroup_bound = a;
    }

    rep.normal_bound.bound = Fraction(static_cast<long long>(lat.normal_indices.size()), lg);
    rep.normal_bound.holds = rep.value >= rep.normal_bound.bound;

    long long updown = 0;
    lat.subs_mask[h].for_each([&](int h1) {
        updown += lat.subs_mask[h1].count();
        updown += lat.overs_mask[h1].count();
    });
    rep.updown_bound.bound = Fraction(updown, lh * lg);
    rep.updown_bound.holds = rep.value >= rep.updown_bound.bound;

    for (int h1 : lat.normal_indices) {
        if (!lat.subs_mask[h].test(h1)) continue;
        QuotientBoundCheck q;
        q.h1_index = h1;
        if (h1 == lat.trivial_index) {
            // quotient by the trivial subgroup is the group itself
            q.bound = rep.value;
        } else {
            QuotientResult qr = quotient_group(g, lat.subs[h1]);
            Lattice qlat = enumerate_subgroups(qr.table);
            DynBitset image(qr.table.order);
            for (int x : lat.elems[h]) image.set(qr.coset_of[x]);
            int qh = qlat.index_of.at(image);
            long long lhq = qlat.subs_mask[qh].count();
            long long lgq = qlat.count();
            q.bound = Fraction(lhq * lgq, lh * lg) * sd_rel(qlat, qh).value;
        }
        q.holds = rep.value >= q.bound;
        q.equality = rep.value == q.bound;
        rep.quotient_bounds.push_back(std::move(q));
    }
    return rep;
}

std::vector<DynBitset> decompose_product_subgroup(const std::vector<const GroupTable*>& factors,
                                                  const DynBitset& h) {
    int k = static_cast<int>(factors.size());
    std::vector<long long> radix(k, 1);
    for (int i = k - 2; i >= 0; --i) radix[i] = radix[i + 1] * factors[i + 1]->order;
    std::vector<DynBitset> parts;
    for (int i = 0; i < k; ++i) parts.emplace_back(factors[i]->order);
    h.for_each([&](int e) {
        for (int i = 0; i < k; ++i)
            parts[i].set(static_cast<int>((e / radix[i]) % factors[i]->order));
    });
    return parts;
}

ProductDegreeReport verify_coprime_product(const std::vector<const GroupTable*>& factors,
                                           const std::vector<DynBitset>& sub_factors) {
    int k = static_cast<int>(factors.size());
    if (k < 1 || static_cast<size_t>(k) != sub_factors.size())
        throw usage_error("need one subgroup per factor");
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (std::gcd(factors[i]->order, factors[j]->order) != 1)
                throw usage_error("factor orders must be pairwise coprime");

    ProductDegreeReport rep;
    rep.factored = Fraction(1);
    std::vector<GroupTable> copies;
    for (int i = 0; i < k; ++i) {
        const GroupTable& gi = *factors[i];
        if (!(closure(gi, sub_factors[i]) == sub_factors[i]))
            throw usage_error("sub factor " + std::to_string(i) + " is not a subgroup");
        Lattice li = enumerate_subgroups(gi);
        rep.factored *= sd_rel(li, li.index_of.at(sub_factors[i])).value;
        copies.push_back(gi);
    }

    GroupTable prod = direct_product(copies);
    std::vector<long long> radix(k, 1);
    for (int i = k - 2; i >= 0; --i) radix[i] = radix[i + 1] * factors[i + 1]->order;
    DynBitset hp(prod.order);
    std::vector<std::vector<int>> members;
    for (const auto& s : sub_factors) members.push_back(s.to_indices());
    std::vector<size_t> od(k, 0);
    while (true) {
        long long e = 0;
        for (int i = 0; i < k; ++i) e += members[i][od[i]] * radix[i];
        hp.set(static_cast<int>(e));
        int i = k - 1;
        while (i >= 0 && ++od[i] == members[i].size()) od[i--] = 0;
        if (i < 0) break;
    }

    Lattice lp = enumerate_subgroups(prod);
    rep.direct = sd_rel(lp, lp.index_of.at(hp)).value;
    rep.equal = rep.direct == rep.factored;
    return rep;
}

std::vector<ProfileRow> sd_profile(const Lattice& lat) {
    require_analyzed(lat);
    std::vector<ProfileRow> rows;
    for (int cid = 0; cid < static_cast<int>(lat.classes.size()); ++cid) {
        ProfileRow row;
        row.class_index = cid;
        row.members = lat.classes[cid];
        row.subgroup_size = lat.sizes[row.members.front()];
        row.value = sd_rel(lat, row.members.front()).value;
        for (size_t i = 1; i < row.members.size(); ++i)
            if (sd_rel(lat, row.members[i]).value != row.value)
                throw violation_error("conjugate subgroups with distinct relative degrees");
        rows.push_back(std::move(row));
    }
    return rows;
}

Example26Report example26_report(const GroupTable& g, const Lattice& lat) {
    require_analyzed(lat);
    Example26Report rep;
    rep.label = g.label;
    rep.sd_direct = sd(lat).value;
    rep.maximal = sd_via_maximal(g, lat);
    rep.sd_expanded = rep.maximal.value;

    // published constants for the order-24 symmetric group, keyed by the
    // isomorphism type of the intersection; computed values take precedence
    std::map<std::string, Fraction> reference;
    bool is_s4 = g.order == 24 && are_isomorphic(g, make_symmetric(4));
    if (is_s4) {
        reference = {{"Z2", Fraction(2, 3)},    {"Z3", Fraction(7, 12)},
                     {"Z2xZ2", Fraction(44, 75)}, {"S3", Fraction(4, 9)},
                     {"D8", Fraction(37, 75)},  {"A4", Fraction(151, 300)}};
        rep.reference_sd = Fraction(1841, 4500);
    }

    MaxInterAnalysis an = analyze_maximal_intersections(lat);
    std::map<int, std::vector<int>> seen_classes;  // class id -> intersection indices
    for (int idx = 0; idx < lat.count(); ++idx)
        if (an.family_count[idx] > 0) seen_classes[lat.class_of[idx]].push_back(idx);

    for (const auto& [cid, idxs] : seen_classes) {
        Example26Row row;
        row.class_index = cid;
        row.subgroup_size = lat.sizes[idxs.front()];
        row.class_size = static_cast<int>(lat.classes[cid].size());
        row.type_label = iso_type_label(subgroup_table(g, lat.subs[idxs.front()], ""));
        row.computed = sd_rel(lat, idxs.front()).value;
        for (size_t i = 1; i < idxs.size(); ++i)
            if (sd_rel(lat, idxs[i]).value != row.computed)
                throw violation_error("conjugate subgroups with distinct relative degrees");
        auto it = reference.find(row.type_label);
        if (it != reference.end() && idxs.front() != lat.trivial_index) {
            row.reference = it->second;
            row.match = row.computed == it->second;
        }
        rep.rows.push_back(std::move(row));
    }

    if (rep.reference_sd) {
        rep.sd_matches_reference = rep.sd_direct == *rep.reference_sd;
        Fraction scaled = *rep.reference_sd * Fraction(static_cast<long long>(lat.count()) * lat.count());
        rep.reference_integral = scaled.is_integer();
    }
    return rep;
}

}  // namespace subdeg
