#pragma once

#include <string>
#include <vector>

#include "subdeg/fraction.hpp"
#include "subdeg/group.hpp"
#include "subdeg/lattice.hpp"

namespace subdeg {

// <a, b | a^m = b^n = 1, b^-1 a b = a^r>, all Sylow subgroups cyclic.
// Requires gcd(m,n) = gcd(m,r-1) = 1 and r^n = 1 (mod m).
struct ZMParams {
    long long m = 1;
    long long n = 1;
    long long r = 1;  // reduced mod m; forced to 1 when m = 1
};

// throws usage_error naming the violated condition
ZMParams validate_zm(long long m, long long n, long long r);

// subgroup coordinates: the subgroup generated by b^n1 a^s and a^m1
struct ZMTriple {
    long long m1 = 1;  // divisor of m
    long long n1 = 1;  // divisor of n
    long long s = 0;   // in [0, m1), with m1 | s * geometric_quotient(n1)
};

// element b^i a^j sits at index i*m + j
GroupTable build_zm(const ZMParams& p, int order_cap = 1 << 20);

// sum r^(i*n1) for i in [0, n/n1), reduced mod m; the closed form
// (r^n - 1)/(r^n1 - 1) degenerates at r = 1, the sum does not
long long geometric_quotient(const ZMParams& p, long long n1);

// all valid triples in lexicographic (m1, n1, s) order
std::vector<ZMTriple> enumerate_triples(const ZMParams& p);

// union over k = 1..n/n1 of (b^n1 a^s)^k <a^m1>; asserts the result is
// closed with exactly (n/n1)(m/m1) elements
DynBitset triple_to_subgroup(const ZMParams& p, const GroupTable& g, const ZMTriple& t);

struct BijectionReport {
    bool ok = false;
    long long triple_count = 0;
    long long subgroup_count = 0;
    std::vector<std::string> diagnostics;  // collisions and missed subgroups
};

// triple_to_subgroup is injective and onto the enumerated lattice
BijectionReport verify_bijection(const ZMParams& p);

struct ZMRow {
    ZMTriple t;
    long long quotient = 0;  // geometric_quotient at n1
    long long order = 0;
    bool normal = false;
    Fraction sd;
};

// relative degree of every triple-indexed subgroup
std::vector<ZMRow> zm_sd_table(const ZMParams& p, const GroupTable& g, const Lattice& lat);

}  // namespace subdeg
