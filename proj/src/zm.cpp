#include "subdeg/zm.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "subdeg/commutativity.hpp"
#include "subdeg/errors.hpp"

namespace subdeg {

namespace {

long long pow_mod(long long base, long long e, long long mod) {
    base %= mod;
    if (base < 0) base += mod;
    long long acc = 1 % mod;
    while (e > 0) {
        if (e & 1) acc = acc * base % mod;
        base = base * base % mod;
        e >>= 1;
    }
    return acc;
}

std::vector<long long> divisors(long long x) {
    std::vector<long long> out;
    for (long long d = 1; d * d <= x; ++d)
        if (x % d == 0) {
            out.push_back(d);
            if (d != x / d) out.push_back(x / d);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::string triple_str(const ZMTriple& t) {
    return "(" + std::to_string(t.m1) + "," + std::to_string(t.n1) + "," + std::to_string(t.s) + ")";
}

}  // namespace

ZMParams validate_zm(long long m, long long n, long long r) {
    if (m <= 0 || n <= 0) throw usage_error("ZM parameters m and n must be positive");
    ZMParams p;
    p.m = m;
    p.n = n;
    p.r = m == 1 ? 1 : ((r % m) + m) % m;
    if (std::gcd(m, n) != 1)
        throw usage_error("ZM condition gcd(m,n)=1 fails: gcd(" + std::to_string(m) + "," +
                          std::to_string(n) + ")=" + std::to_string(std::gcd(m, n)));
    if (m > 1 && std::gcd(m, p.r - 1) != 1)
        throw usage_error("ZM condition gcd(m,r-1)=1 fails: gcd(" + std::to_string(m) + "," +
                          std::to_string(p.r - 1) + ")=" + std::to_string(std::gcd(m, p.r - 1)));
    if (pow_mod(p.r, n, m) != 1 % m)
        throw usage_error("ZM condition r^n=1 (mod m) fails for r=" + std::to_string(p.r) +
                          ", n=" + std::to_string(n) + ", m=" + std::to_string(m));
    return p;
}

GroupTable build_zm(const ZMParams& p, int order_cap) {
    long long order = p.m * p.n;
    if (order > order_cap)
        throw cap_error("ZM group order " + std::to_string(order) + " exceeds cap " +
                        std::to_string(order_cap));
    int m = static_cast<int>(p.m), n = static_cast<int>(p.n), N = static_cast<int>(order);
    std::vector<long long> rpow(n);
    for (int i = 0; i < n; ++i) rpow[i] = pow_mod(p.r, i, p.m);

    GroupTable t;
    t.order = N;
    t.label = "ZM(" + std::to_string(p.m) + "," + std::to_string(p.n) + "," + std::to_string(p.r) + ")";
    t.mul.resize(static_cast<size_t>(N) * N);
    for (int i1 = 0; i1 < n; ++i1)
        for (int j1 = 0; j1 < m; ++j1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int j2 = 0; j2 < m; ++j2) {
                    int i = (i1 + i2) % n;
                    int j = static_cast<int>((j1 * rpow[i2] + j2) % p.m);
                    t.mul[(i1 * m + j1) * static_cast<size_t>(N) + (i2 * m + j2)] = i * m + j;
                }
    t.identity = 0;
    t.inv.assign(N, -1);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            if (t.mul[a * static_cast<size_t>(N) + b] == 0) t.inv[a] = b;
    return t;
}

long long geometric_quotient(const ZMParams& p, long long n1) {
    if (n1 <= 0 || p.n % n1 != 0) throw usage_error("n1 must divide n");
    long long step = pow_mod(p.r, n1, p.m);
    long long acc = 0, powv = 1 % p.m;
    for (long long i = 0; i < p.n / n1; ++i) {
        acc = (acc + powv) % p.m;
        powv = powv * step % p.m;
    }
    return acc;
}

std::vector<ZMTriple> enumerate_triples(const ZMParams& p) {
    std::vector<ZMTriple> out;
    for (long long m1 : divisors(p.m))
        for (long long n1 : divisors(p.n)) {
            long long q = geometric_quotient(p, n1);
            for (long long s = 0; s < m1; ++s)
                if (s * q % m1 == 0) out.push_back({m1, n1, s});
        }
    return out;
}

DynBitset triple_to_subgroup(const ZMParams& p, const GroupTable& g, const ZMTriple& t) {
    if (t.m1 <= 0 || p.m % t.m1 != 0) throw usage_error("m1 must divide m");
    if (t.n1 <= 0 || p.n % t.n1 != 0) throw usage_error("n1 must divide n");
    if (t.s < 0 || t.s >= t.m1) throw usage_error("s must lie in [0, m1)");
    if (t.s * geometric_quotient(p, t.n1) % t.m1 != 0)
        throw usage_error("triple " + triple_str(t) + " fails the divisibility condition");

    int m = static_cast<int>(p.m);
    std::vector<int> core;  // <a^m1>
    for (long long j = 0; j < p.m; j += t.m1) core.push_back(static_cast<int>(j));

    DynBitset out(g.order);
    int c = static_cast<int>(t.n1 % p.n) * m + static_cast<int>(t.s);  // b^n1 a^s
    int ck = g.identity;
    for (long long k = 1; k <= p.n / t.n1; ++k) {
        ck = g.op(ck, c);
        for (int j : core) out.set(g.op(ck, j));
    }
    long long expect = (p.n / t.n1) * (p.m / t.m1);
    if (out.count() != expect)
        throw violation_error("triple " + triple_str(t) + " yields " + std::to_string(out.count()) +
                              " elements, expected " + std::to_string(expect));
    if (!(closure(g, out) == out))
        throw violation_error("triple " + triple_str(t) + " does not yield a closed set");
    return out;
}

BijectionReport verify_bijection(const ZMParams& p) {
    BijectionReport rep;
    GroupTable g = build_zm(p);
    auto triples = enumerate_triples(p);
    rep.triple_count = static_cast<long long>(triples.size());

    std::unordered_map<DynBitset, ZMTriple, BitsetHash> image;
    for (const auto& t : triples) {
        DynBitset h = triple_to_subgroup(p, g, t);
        auto [it, fresh] = image.emplace(h, t);
        if (!fresh)
            rep.diagnostics.push_back("triples " + triple_str(it->second) + " and " + triple_str(t) +
                                      " map to one subgroup");
    }

    Lattice lat = enumerate_subgroups(g);
    rep.subgroup_count = lat.count();
    for (int i = 0; i < lat.count(); ++i)
        if (!image.count(lat.subs[i]))
            rep.diagnostics.push_back("subgroup of order " + std::to_string(lat.sizes[i]) +
                                      " at index " + std::to_string(i) + " has no triple");
    rep.ok = rep.diagnostics.empty() && rep.triple_count == rep.subgroup_count;
    return rep;
}

std::vector<ZMRow> zm_sd_table(const ZMParams& p, const GroupTable& g, const Lattice& lat) {
    std::vector<ZMRow> rows;
    for (const auto& t : enumerate_triples(p)) {
        ZMRow row;
        row.t = t;
        row.quotient = geometric_quotient(p, t.n1);
        DynBitset h = triple_to_subgroup(p, g, t);
        row.order = h.count();
        int idx = lat.index_of.at(h);
        row.normal = lat.normal[idx] != 0;
        row.sd = sd_rel(lat, idx).value;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace subdeg
