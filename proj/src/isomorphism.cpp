#include "subdeg/isomorphism.hpp"

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

#include "subdeg/errors.hpp"

namespace subdeg {

namespace {

using ElemSig = std::array<int, 3>;  // (order, conjugacy class size, order of square)

std::vector<ElemSig> signatures(const GroupTable& g) {
    std::vector<int> class_of(g.order, -1);
    std::vector<int> class_size(g.order, 0);
    int nc = 0;
    for (int x = 0; x < g.order; ++x) {
        if (class_of[x] >= 0) continue;
        std::vector<int> orbit;
        for (int c = 0; c < g.order; ++c) {
            int y = g.op(g.op(c, x), g.inv[c]);
            if (class_of[y] < 0) {
                class_of[y] = nc;
                orbit.push_back(y);
            }
        }
        for (int y : orbit) class_size[y] = static_cast<int>(orbit.size());
        ++nc;
    }
    std::vector<ElemSig> sig(g.order);
    for (int x = 0; x < g.order; ++x)
        sig[x] = {element_order(g, x), class_size[x], element_order(g, g.op(x, x))};
    return sig;
}

struct Profile {
    int order;
    bool abelian;
    int center;
    int derived;
    std::vector<ElemSig> elems;  // sorted

    bool operator==(const Profile&) const = default;
};

Profile profile_of(const GroupTable& g) {
    Profile p;
    p.order = g.order;
    p.abelian = is_abelian(g);
    p.center = 0;
    for (int x = 0; x < g.order; ++x) {
        bool central = true;
        for (int y = 0; y < g.order && central; ++y)
            if (g.op(x, y) != g.op(y, x)) central = false;
        if (central) ++p.center;
    }
    DynBitset comm(g.order);
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            comm.set(g.op(g.op(a, b), g.op(g.inv[a], g.inv[b])));
    p.derived = closure(g, comm).count();
    p.elems = signatures(g);
    std::sort(p.elems.begin(), p.elems.end());
    return p;
}

// greedy short generating sequence: each step picks the element whose
// addition grows the closure the most
std::vector<int> generating_sequence(const GroupTable& g) {
    std::vector<int> gens;
    DynBitset cur(g.order);
    cur.set(g.identity);
    int cur_size = 1;
    while (cur_size < g.order) {
        int best = -1;
        int best_size = -1;
        DynBitset best_set;
        for (int x = 0; x < g.order; ++x) {
            if (cur.test(x)) continue;
            DynBitset seed = cur;
            seed.set(x);
            DynBitset grown = closure(g, seed);
            int s = grown.count();
            if (s > best_size) {
                best_size = s;
                best = x;
                best_set = grown;
            }
        }
        gens.push_back(best);
        cur = best_set;
        cur_size = best_size;
    }
    return gens;
}

struct Matcher {
    const GroupTable& a;
    const GroupTable& b;
    std::vector<int> gens;
    std::vector<ElemSig> a_sig, b_sig;

    // extend the partial map with x -> u, closing under products
    bool extend(std::vector<int>& img, std::vector<char>& used,
                std::vector<int>& known, int x, int u) {
        if (img[x] >= 0) return img[x] == u;
        if (used[u]) return false;
        std::vector<std::pair<int, int>> queue{{x, u}};
        img[x] = u;
        used[u] = 1;
        known.push_back(x);
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            auto [p, q] = queue[qi];
            for (size_t ki = 0; ki < known.size(); ++ki) {
                int k = known[ki];
                int prods_a[2] = {a.op(p, k), a.op(k, p)};
                int prods_b[2] = {b.op(q, img[k]), b.op(img[k], q)};
                for (int t = 0; t < 2; ++t) {
                    int pa = prods_a[t], pb = prods_b[t];
                    if (img[pa] >= 0) {
                        if (img[pa] != pb) return false;
                    } else {
                        if (used[pb]) return false;
                        img[pa] = pb;
                        used[pb] = 1;
                        known.push_back(pa);
                        queue.push_back({pa, pb});
                    }
                }
            }
        }
        return true;
    }

    bool search(size_t gi, const std::vector<int>& img, const std::vector<char>& used,
                const std::vector<int>& known) {
        if (gi == gens.size()) return true;
        int x = gens[gi];
        if (img[x] >= 0) return search(gi + 1, img, used, known);
        for (int u = 0; u < b.order; ++u) {
            if (used[u] || b_sig[u] != a_sig[x]) continue;
            auto img2 = img;
            auto used2 = used;
            auto known2 = known;
            if (extend(img2, used2, known2, x, u) && search(gi + 1, img2, used2, known2))
                return true;
        }
        return false;
    }

    bool run() {
        gens = generating_sequence(a);
        a_sig = signatures(a);
        b_sig = signatures(b);
        std::vector<int> img(a.order, -1);
        std::vector<char> used(b.order, 0);
        std::vector<int> known;
        if (!extend(img, used, known, a.identity, b.identity)) return false;
        return search(0, img, used, known);
    }
};

} // namespace

bool isomorphism_not_refuted(const GroupTable& a, const GroupTable& b) {
    if (a.order != b.order) return false;
    return profile_of(a) == profile_of(b);
}

bool are_isomorphic(const GroupTable& a, const GroupTable& b) {
    if (a.order != b.order) return false;
    if (a.order > 64) throw usage_error("isomorphism search is guaranteed only up to order 64");
    if (!isomorphism_not_refuted(a, b)) return false;
    Matcher m{a, b, {}, {}, {}};
    return m.run();
}

std::string iso_type_label(const GroupTable& g) {
    int n = g.order;
    if (n > 64) return "order" + std::to_string(n);
    for (int x = 0; x < n; ++x)
        if (element_order(g, x) == n) return "Z" + std::to_string(n);
    auto matches = [&](const GroupTable& cand) { return are_isomorphic(g, cand); };
    if (n == 4) return "Z2xZ2";
    if (n >= 6 && n % 2 == 0 && matches(make_dihedral(n)))
        return n == 6 ? "S3" : "D" + std::to_string(n);
    if (n == 12 && matches(make_alternating(4))) return "A4";
    if (n == 24 && matches(make_symmetric(4))) return "S4";
    if (n == 60 && matches(make_alternating(5))) return "A5";
    if (is_abelian(g)) {
        if (n == 8)
            return matches(direct_product({make_cyclic(2), make_cyclic(4)})) ? "Z2xZ4"
                                                                             : "Z2xZ2xZ2";
        if (n == 9) return "Z3xZ3";
        if (n == 12) return "Z2xZ6";
        return "abelian" + std::to_string(n);
    }
    if (n == 8) return "Q8";
    return "order" + std::to_string(n);
}

} // namespace subdeg
