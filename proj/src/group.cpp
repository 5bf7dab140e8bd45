#include "subdeg/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "subdeg/errors.hpp"

namespace subdeg {

namespace {

GroupTable finish(GroupTable g) {
    g.inv.assign(g.order, -1);
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            if (g.op(a, b) == g.identity) g.inv[a] = b;
    return g;
}

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
    // apply b first
    std::vector<int> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

GroupTable table_from_perms(std::vector<std::vector<int>> perms, std::string label) {
    std::sort(perms.begin(), perms.end());
    GroupTable g;
    g.order = static_cast<int>(perms.size());
    g.label = std::move(label);
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < g.order; ++i) index[perms[i]] = i;
    g.mul.resize(static_cast<size_t>(g.order) * g.order);
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b) {
            auto it = index.find(compose(perms[a], perms[b]));
            if (it == index.end()) throw violation_error("permutation set not closed: " + g.label);
            g.mul[a * g.order + b] = it->second;
        }
    std::vector<int> id(perms[0].size());
    std::iota(id.begin(), id.end(), 0);
    g.identity = index.at(id);
    if (g.identity != 0) throw violation_error("identity not at index 0: " + g.label);
    g.perm_rep = std::move(perms);
    return finish(std::move(g));
}

} // namespace

GroupTable make_cyclic(int n) {
    if (n < 1) throw usage_error("cyclic order must be >= 1");
    GroupTable g;
    g.order = n;
    g.label = "Z" + std::to_string(n);
    g.mul.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.mul[a * n + b] = (a + b) % n;
    return finish(std::move(g));
}

GroupTable make_dihedral(int order2n) {
    if (order2n < 4 || order2n % 2 != 0)
        throw usage_error("dihedral order must be even and >= 4");
    int n = order2n / 2;
    GroupTable g;
    g.order = order2n;
    g.label = "D" + std::to_string(order2n);
    g.mul.resize(static_cast<size_t>(order2n) * order2n);
    auto idx = [n](int i, int j) { return j == 0 ? i : n + i; };
    for (int i1 = 0; i1 < n; ++i1)
        for (int j1 = 0; j1 < 2; ++j1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int j2 = 0; j2 < 2; ++j2) {
                    // (x^i1 y^j1)(x^i2 y^j2): y x^k = x^-k y
                    int e = j1 == 0 ? (i1 + i2) % n : ((i1 - i2) % n + n) % n;
                    int f = (j1 + j2) % 2;
                    g.mul[idx(i1, j1) * order2n + idx(i2, j2)] = idx(e, f);
                }
    return finish(std::move(g));
}

GroupTable make_symmetric(int n) {
    if (n < 1 || n > 6) throw usage_error("symmetric degree must be in 1..6");
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return table_from_perms(std::move(perms), "S" + std::to_string(n));
}

GroupTable make_alternating(int n) {
    if (n < 2 || n > 6) throw usage_error("alternating degree must be in 2..6");
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p[i] > p[j]) ++inversions;
        if (inversions % 2 == 0) perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return table_from_perms(std::move(perms), "A" + std::to_string(n));
}

GroupTable direct_product(const std::vector<GroupTable>& factors) {
    if (factors.empty()) throw usage_error("direct product needs at least one factor");
    long long total = 1;
    for (const auto& f : factors) total *= f.order;
    if (total > 1 << 20) throw cap_error("direct product order too large");
    int n = static_cast<int>(total);
    GroupTable g;
    g.order = n;
    for (size_t i = 0; i < factors.size(); ++i)
        g.label += (i ? "x" : "") + factors[i].label;
    // index = mixed-radix tuple, first factor most significant
    std::vector<int> radix(factors.size());
    for (size_t i = 0; i < factors.size(); ++i) radix[i] = factors[i].order;
    auto decode = [&](int x, std::vector<int>& t) {
        for (size_t i = factors.size(); i-- > 0;) {
            t[i] = x % radix[i];
            x /= radix[i];
        }
    };
    g.mul.resize(static_cast<size_t>(n) * n);
    std::vector<int> ta(factors.size()), tb(factors.size());
    for (int a = 0; a < n; ++a) {
        decode(a, ta);
        for (int b = 0; b < n; ++b) {
            decode(b, tb);
            int enc = 0;
            for (size_t i = 0; i < factors.size(); ++i)
                enc = enc * radix[i] + factors[i].op(ta[i], tb[i]);
            g.mul[a * n + b] = enc;
        }
    }
    return finish(std::move(g));
}

GroupTable from_generators(int degree, const std::vector<std::vector<int>>& gens,
                           int order_cap, const std::string& label) {
    if (degree < 1) throw usage_error("degree must be >= 1");
    for (const auto& p : gens) {
        if (static_cast<int>(p.size()) != degree) throw usage_error("generator degree mismatch");
        std::vector<int> seen(degree, 0);
        for (int v : p) {
            if (v < 0 || v >= degree || seen[v]++) throw usage_error("invalid permutation");
        }
    }
    std::vector<int> id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::map<std::vector<int>, int> seen;
    std::vector<std::vector<int>> elems{id};
    seen[id] = 0;
    for (size_t head = 0; head < elems.size(); ++head) {
        for (const auto& gen : gens) {
            auto next = compose(elems[head], gen);
            if (seen.emplace(next, elems.size()).second) {
                elems.push_back(next);
                if (static_cast<int>(elems.size()) > order_cap)
                    throw cap_error("generated group exceeds order cap " + std::to_string(order_cap));
            }
        }
    }
    std::string lbl = label;
    if (lbl.empty()) lbl = "perm(" + std::to_string(degree) + ")[" + std::to_string(elems.size()) + "]";
    return table_from_perms(std::move(elems), lbl);
}

QuotientResult quotient_group(const GroupTable& g, const DynBitset& n) {
    if (!n.test(g.identity)) throw usage_error("quotient by a non-subgroup");
    auto members = n.to_indices();
    for (int x = 0; x < g.order; ++x)
        for (int h : members)
            if (!n.test(g.op(g.op(x, h), g.inv[x])))
                throw usage_error("quotient by a non-normal subgroup of " + g.label);

    QuotientResult res;
    res.coset_of.assign(g.order, -1);
    std::vector<int> reps;
    for (int x = 0; x < g.order; ++x) {
        if (res.coset_of[x] >= 0) continue;
        // cosets scanned in order of minimal element; identity coset is first
        int id = static_cast<int>(reps.size());
        reps.push_back(x);
        for (int h : members) res.coset_of[g.op(x, h)] = id;
    }
    int q = static_cast<int>(reps.size());
    GroupTable t;
    t.order = q;
    t.label = g.label + "/[" + std::to_string(n.count()) + "]";
    t.mul.resize(static_cast<size_t>(q) * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            t.mul[a * q + b] = res.coset_of[g.op(reps[a], reps[b])];
    res.table = finish(std::move(t));
    return res;
}

int element_order(const GroupTable& g, int x) {
    int k = 1;
    int cur = x;
    while (cur != g.identity) {
        cur = g.op(cur, x);
        ++k;
    }
    return k;
}

bool is_abelian(const GroupTable& g) {
    for (int a = 0; a < g.order; ++a)
        for (int b = a + 1; b < g.order; ++b)
            if (g.op(a, b) != g.op(b, a)) return false;
    return true;
}

DynBitset closure(const GroupTable& g, const DynBitset& seed) {
    DynBitset in(g.order);
    std::vector<int> elems;
    auto add = [&](int x) {
        if (!in.test(x)) {
            in.set(x);
            elems.push_back(x);
        }
    };
    add(g.identity);
    seed.for_each(add);
    for (size_t i = 0; i < elems.size(); ++i)
        for (size_t j = 0; j < elems.size(); ++j) {
            add(g.op(elems[i], elems[j]));
            if (i == j) continue;
            add(g.op(elems[j], elems[i]));
        }
    return in;
}

DynBitset cyclic_subgroup(const GroupTable& g, int x) {
    DynBitset b(g.order);
    int cur = g.identity;
    do {
        b.set(cur);
        cur = g.op(cur, x);
    } while (cur != g.identity);
    return b;
}

void check_table(const GroupTable& g) {
    if (g.order < 1 || static_cast<int>(g.mul.size()) != g.order * g.order)
        throw violation_error("malformed table " + g.label);
    for (int v : g.mul)
        if (v < 0 || v >= g.order) throw violation_error("entry out of range in " + g.label);
    for (int a = 0; a < g.order; ++a)
        if (g.op(g.identity, a) != a || g.op(a, g.identity) != a)
            throw violation_error("identity fails in " + g.label);
    for (int a = 0; a < g.order; ++a)
        if (g.op(a, g.inv[a]) != g.identity || g.op(g.inv[a], a) != g.identity)
            throw violation_error("inverse fails in " + g.label);
    if (g.order <= 64) {
        for (int a = 0; a < g.order; ++a)
            for (int b = 0; b < g.order; ++b)
                for (int c = 0; c < g.order; ++c)
                    if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c)))
                        throw violation_error("associativity fails in " + g.label);
    } else {
        std::vector<int> sample;
        for (int i = 0; i < 40; ++i) sample.push_back(static_cast<int>(static_cast<long long>(i) * g.order / 40));
        std::sort(sample.begin(), sample.end());
        sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
        for (int a : sample)
            for (int b : sample)
                for (int c : sample)
                    if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c)))
                        throw violation_error("associativity fails in " + g.label);
    }
}

uint64_t table_hash(const GroupTable& g) {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<uint64_t>(g.order));
    for (int v : g.mul) mix(static_cast<uint64_t>(v));
    return h;
}

} // namespace subdeg
