#include "subdeg/lattice.hpp"

#include <algorithm>

#include "subdeg/errors.hpp"

namespace subdeg {

namespace {

struct PairHash {
    size_t operator()(const std::pair<uint64_t, int>& p) const {
        return p.first * 1099511628211ull ^ static_cast<uint64_t>(p.second);
    }
};

std::vector<DynBitset> cyclic_seeds(const GroupTable& g) {
    std::unordered_map<DynBitset, int, BitsetHash> seen;
    std::vector<DynBitset> out;
    DynBitset triv(g.order);
    triv.set(g.identity);
    seen.emplace(triv, 0);
    out.push_back(triv);
    for (int x = 0; x < g.order; ++x) {
        DynBitset c = cyclic_subgroup(g, x);
        if (seen.emplace(c, 1).second) out.push_back(c);
    }
    return out;
}

DynBitset conjugate_subgroup(const GroupTable& g, const std::vector<int>& members, int c) {
    DynBitset out(g.order);
    for (int h : members) out.set(g.op(g.op(c, h), g.inv[c]));
    return out;
}

Lattice finalize(const GroupTable& g, std::vector<DynBitset> found, bool analyze) {
    Lattice lat;
    lat.g = &g;
    std::sort(found.begin(), found.end(), [](const DynBitset& a, const DynBitset& b) {
        int ca = a.count(), cb = b.count();
        if (ca != cb) return ca < cb;
        return DynBitset::cmp_as_integer(a, b) < 0;
    });
    lat.subs = std::move(found);
    int n = lat.count();
    lat.sizes.resize(n);
    lat.elems.resize(n);
    for (int i = 0; i < n; ++i) {
        lat.sizes[i] = lat.subs[i].count();
        lat.elems[i] = lat.subs[i].to_indices();
        lat.index_of.emplace(lat.subs[i], i);
    }
    lat.trivial_index = 0;
    lat.whole_index = n - 1;
    if (!analyze) return lat;

    lat.subs_mask.assign(n, DynBitset(n));
    lat.overs_mask.assign(n, DynBitset(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (lat.subs[j].subset_of(lat.subs[i])) {
                lat.subs_mask[i].set(j);
                if (j != i) lat.overs_mask[j].set(i);
            }

    lat.maximal_indices.clear();
    for (int i = 0; i < n - 1; ++i)
        if (lat.overs_mask[i].count() == 1) lat.maximal_indices.push_back(i);

    // conjugacy classes; normal = singleton class
    lat.class_of.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (lat.class_of[i] >= 0) continue;
        int cid = static_cast<int>(lat.classes.size());
        std::vector<int> orbit;
        for (int c = 0; c < g.order; ++c) {
            DynBitset im = conjugate_subgroup(g, lat.elems[i], c);
            int j = lat.index_of.at(im);
            if (lat.class_of[j] < 0) {
                lat.class_of[j] = cid;
                orbit.push_back(j);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        lat.classes.push_back(std::move(orbit));
    }
    lat.normal.assign(n, 0);
    for (int i = 0; i < n; ++i)
        if (lat.classes[lat.class_of[i]].size() == 1) {
            lat.normal[i] = 1;
            lat.normal_indices.push_back(i);
        }

    // permutability matrix
    lat.perm.assign(n, DynBitset(n));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            bool v;
            if (lat.subs_mask[i].test(j) || lat.subs_mask[j].test(i) || lat.normal[i] ||
                lat.normal[j]) {
                v = true;
            } else {
                long long inter = lat.subs[i].count_and(lat.subs[j]);
                long long prod = static_cast<long long>(lat.sizes[i]) * lat.sizes[j] / inter;
                if (g.order % prod != 0)
                    v = false;
                else if (prod == g.order)
                    v = true;
                else
                    v = permutes(g, lat.subs[i], lat.subs[j]);
            }
            if (v) {
                lat.perm[i].set(j);
                lat.perm[j].set(i);
            }
        }
    }
    lat.analyzed = true;
    return lat;
}

} // namespace

void Lattice::ensure_join_meet() const {
    std::lock_guard<std::mutex> lock(*lazy_mu);
    if (jm_built) return;
    int n = count();
    join_tab.assign(static_cast<size_t>(n) * n, -1);
    meet_tab.assign(static_cast<size_t>(n) * n, -1);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int m, jo;
            if (subs_mask[j].test(i)) {
                m = i;
                jo = j;
            } else if (subs_mask[i].test(j)) {
                m = j;
                jo = i;
            } else {
                m = index_of.at(subs[i] & subs[j]);
                jo = index_of.at(closure(*g, subs[i] | subs[j]));
            }
            join_tab[i * n + j] = join_tab[j * n + i] = jo;
            meet_tab[i * n + j] = meet_tab[j * n + i] = m;
        }
    jm_built = true;
}

int Lattice::join_index(int i, int j) const {
    ensure_join_meet();
    return join_tab[static_cast<size_t>(i) * count() + j];
}

int Lattice::meet_index(int i, int j) const {
    ensure_join_meet();
    return meet_tab[static_cast<size_t>(i) * count() + j];
}

const std::vector<int>& Lattice::join_table() const {
    ensure_join_meet();
    return join_tab;
}

const std::vector<int>& Lattice::meet_table() const {
    ensure_join_meet();
    return meet_tab;
}

long long Lattice::count_commuting(const DynBitset& mask_h, const DynBitset& mask_k) const {
    long long total = 0;
    mask_h.for_each([&](int i) { total += perm[i].count_and(mask_k); });
    return total;
}

Lattice enumerate_subgroups(const GroupTable& g) {
    auto seeds = cyclic_seeds(g);
    std::unordered_map<DynBitset, int, BitsetHash> seen;
    std::vector<DynBitset> found;
    for (const auto& s : seeds) {
        if (seen.emplace(s, 0).second) found.push_back(s);
    }
    for (size_t head = 0; head < found.size(); ++head) {
        DynBitset h = found[head];  // copy: found may reallocate
        for (const auto& a : seeds) {
            if (a.subset_of(h)) continue;
            DynBitset j = closure(g, h | a);
            if (seen.emplace(j, 0).second) found.push_back(j);
        }
    }
    return finalize(g, std::move(found), true);
}

Lattice lattice_from_subgroups(const GroupTable& g, std::vector<DynBitset> subs) {
    return finalize(g, std::move(subs), true);
}

Lattice oracle_enumerate(const GroupTable& g) {
    if (g.order > 128) throw usage_error("oracle enumeration capped at order 128");
    std::unordered_map<DynBitset, int, BitsetHash> found;  // bitset -> id
    std::unordered_map<std::pair<uint64_t, int>, char, PairHash> visited;  // (id, last gen)
    std::vector<DynBitset> subs;
    auto id_of = [&](const DynBitset& b) {
        auto [it, fresh] = found.emplace(b, static_cast<int>(subs.size()));
        if (fresh) subs.push_back(b);
        return it->second;
    };
    DynBitset triv(g.order);
    triv.set(g.identity);
    id_of(triv);

    // recursion depth is bounded: each added generator at least doubles the
    // subgroup, so chains have length <= log2 |g|
    auto dfs = [&](auto&& self, const DynBitset& h, int last) -> void {
        for (int x = last + 1; x < g.order; ++x) {
            if (h.test(x)) continue;
            DynBitset seed = h;
            seed.set(x);
            DynBitset j = closure(g, seed);
            uint64_t jid = static_cast<uint64_t>(id_of(j));
            if (visited.emplace(std::make_pair(jid, x), 1).second) self(self, j, x);
        }
    };
    dfs(dfs, triv, -1);
    return finalize(g, std::move(subs), false);
}

std::vector<DynBitset> enumerate_by_subsets(const GroupTable& g, int max_subset) {
    std::unordered_map<DynBitset, int, BitsetHash> found;
    DynBitset triv(g.order);
    triv.set(g.identity);
    found.emplace(triv, 0);
    std::vector<int> pick;
    auto rec = [&](auto&& self, int start, int remaining) -> void {
        if (remaining == 0) return;
        for (int x = start; x < g.order; ++x) {
            pick.push_back(x);
            DynBitset seed(g.order);
            seed.set(g.identity);
            for (int p : pick) seed.set(p);
            found.emplace(closure(g, seed), 0);
            self(self, x + 1, remaining - 1);
            pick.pop_back();
        }
    };
    rec(rec, 0, max_subset);
    std::vector<DynBitset> subs;
    for (auto& [b, v] : found) subs.push_back(b);
    std::sort(subs.begin(), subs.end(), [](const DynBitset& a, const DynBitset& b) {
        int ca = a.count(), cb = b.count();
        if (ca != cb) return ca < cb;
        return DynBitset::cmp_as_integer(a, b) < 0;
    });
    return subs;
}

DynBitset product_set(const GroupTable& g, const DynBitset& h, const DynBitset& k) {
    DynBitset out(g.order);
    h.for_each([&](int a) { k.for_each([&](int b) { out.set(g.op(a, b)); }); });
    return out;
}

bool permutes(const GroupTable& g, const DynBitset& h, const DynBitset& k) {
    DynBitset hk = product_set(g, h, k);
    // |HK| = |KH|, so KH <= HK suffices
    bool ok = true;
    k.for_each([&](int b) {
        if (!ok) return;
        h.for_each([&](int a) {
            if (ok && !hk.test(g.op(b, a))) ok = false;
        });
    });
    return ok;
}

std::vector<int> commuting_set(const Lattice& lat, int h) {
    return lat.perm[h].to_indices();
}

std::vector<int> strict_overgroups(const Lattice& lat, int h) {
    return lat.overs_mask[h].to_indices();
}

bool is_subnormal(const Lattice& lat, int h) {
    const GroupTable& g = *lat.g;
    DynBitset cur = lat.subs[lat.whole_index];
    const auto& members = lat.elems[h];
    const DynBitset& target = lat.subs[h];
    while (true) {
        DynBitset gens(g.order);
        cur.for_each([&](int c) {
            for (int x : members) gens.set(g.op(g.op(c, x), g.inv[c]));
        });
        DynBitset ncl = closure(g, gens);
        if (ncl == cur) return cur == target;
        cur = ncl;
        if (cur == target) return true;
    }
}

bool is_permutable(const Lattice& lat, int h) {
    return lat.perm[h].count() == lat.count();
}

bool is_modular_element(const Lattice& lat, int h) {
    size_t n = static_cast<size_t>(lat.count());
    const auto& jt = lat.join_table();
    const auto& mt = lat.meet_table();
    for (size_t z = 0; z < n; ++z) {
        size_t h_meet_z = static_cast<size_t>(mt[h * n + z]);
        bool fail = false;
        lat.subs_mask[z].for_each([&](int x) {
            if (fail) return;
            if (jt[x * n + h_meet_z] != mt[static_cast<size_t>(jt[x * n + h]) * n + z])
                fail = true;
        });
        if (fail) return false;
        if (lat.subs_mask[z].test(h)) {
            for (size_t x = 0; x < n; ++x)
                if (jt[h * n + static_cast<size_t>(mt[x * n + z])] !=
                    mt[static_cast<size_t>(jt[h * n + x]) * n + z])
                    return false;
        }
    }
    return true;
}

MaxInterAnalysis analyze_maximal_intersections(const Lattice& lat) {
    int n = lat.count();
    MaxInterAnalysis out;
    out.signed_families.assign(n, 0);
    out.family_count.assign(n, 0);
    out.seen_ge2.assign(n, 0);
    const auto& mx = lat.maximal_indices;
    int r1 = static_cast<int>(mx.size());
    // family of size k carries sign (-1)^(k-1); once the running intersection
    // is trivial all extensions stay trivial and their signs telescope to
    // (-1)^k with 2^remaining - 1 families
    auto rec = [&](auto&& self, int pos, int cur, int k) -> void {
        for (int i = pos; i < r1; ++i) {
            int nidx;
            if (cur < 0)
                nidx = mx[i];
            else if (lat.subs_mask[mx[i]].test(cur))
                nidx = cur;
            else
                nidx = lat.index_of.at(lat.subs[cur] & lat.subs[mx[i]]);
            int nk = k + 1;
            out.signed_families[nidx] += (nk % 2 == 1) ? 1 : -1;
            out.family_count[nidx] += 1;
            if (nk >= 2) out.seen_ge2[nidx] = 1;
            int remaining = r1 - i - 1;
            if (nidx == lat.trivial_index && remaining > 0) {
                out.signed_families[nidx] += (nk % 2 == 1) ? -1 : 1;  // (-1)^nk
                out.family_count[nidx] += (1ll << remaining) - 1;
                out.seen_ge2[nidx] = 1;
            } else {
                self(self, i + 1, nidx, nk);
            }
        }
    };
    rec(rec, 0, -1, 0);
    out.total_families = r1 >= 63 ? -1 : (1ll << r1) - 1;
    return out;
}

std::map<uint32_t, int> intersections_of_maximals(const Lattice& lat) {
    const auto& mx = lat.maximal_indices;
    if (mx.size() > 20) throw usage_error("explicit family map capped at 20 maximal subgroups");
    std::map<uint32_t, int> out;
    auto rec = [&](auto&& self, int pos, int cur, uint32_t mask) -> void {
        for (int i = pos; i < static_cast<int>(mx.size()); ++i) {
            int nidx = cur < 0 ? mx[i] : lat.index_of.at(lat.subs[cur] & lat.subs[mx[i]]);
            uint32_t nmask = mask | (1u << i);
            out.emplace(nmask, nidx);
            self(self, i + 1, nidx, nmask);
        }
    };
    rec(rec, 0, -1, 0);
    return out;
}

GroupTable subgroup_table(const GroupTable& g, const DynBitset& h, const std::string& label) {
    auto members = h.to_indices();
    int n = static_cast<int>(members.size());
    std::vector<int> pos(g.order, -1);
    for (int i = 0; i < n; ++i) pos[members[i]] = i;
    GroupTable t;
    t.order = n;
    t.label = label;
    t.mul.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int v = pos[g.op(members[a], members[b])];
            if (v < 0) throw violation_error("subgroup table of a non-closed set");
            t.mul[a * n + b] = v;
        }
    t.identity = pos[g.identity];
    if (t.identity != 0) throw violation_error("subgroup identity not minimal");
    t.inv.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (t.mul[a * n + b] == t.identity) t.inv[a] = b;
    return t;
}

} // namespace subdeg
