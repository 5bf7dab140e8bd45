#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subdeg/bitset.hpp"

namespace subdeg {

// Finite group as a Cayley table. Element 0 is always the identity; each
// constructor documents its canonical element order so indices are stable
// across runs.
struct GroupTable {
    int order = 0;
    std::vector<int> mul;  // row-major order x order
    std::vector<int> inv;
    int identity = 0;
    std::string label;
    // one-line images per element when the group was built from permutations
    std::optional<std::vector<std::vector<int>>> perm_rep;

    int op(int a, int b) const { return mul[a * order + b]; }
};

// canonical order: powers 1, x, x^2, ...
GroupTable make_cyclic(int n);

// order2n elements, presentation <x,y | x^(order2n/2) = y^2 = 1, yxy = x^-1>,
// canonical order x^0..x^(n-1), then x^0 y..x^(n-1) y
GroupTable make_dihedral(int order2n);

// permutations of {1..n} in lexicographic one-line order; products compose
// right to left: (a*b) applies b first
GroupTable make_symmetric(int n);   // 1 <= n <= 6
GroupTable make_alternating(int n); // 2 <= n <= 6

// canonical order: lexicographic tuples over the factors
GroupTable direct_product(const std::vector<GroupTable>& factors);

// closure of permutation generators of {0..degree-1}; canonical order:
// lexicographic one-line
GroupTable from_generators(int degree, const std::vector<std::vector<int>>& gens,
                           int order_cap, const std::string& label = "");

struct QuotientResult {
    GroupTable table;
    std::vector<int> coset_of;  // element index -> coset index
};
// n must be normal; cosets ordered by their minimal element, so the
// identity coset is element 0
QuotientResult quotient_group(const GroupTable& g, const DynBitset& n);

int element_order(const GroupTable& g, int x);
bool is_abelian(const GroupTable& g);

// closure of `seed` under multiplication, inside g
DynBitset closure(const GroupTable& g, const DynBitset& seed);
DynBitset cyclic_subgroup(const GroupTable& g, int x);

// validates closure bounds, identity, inverses and associativity
// (exhaustive for order <= 64, deterministic sampling above); throws
// violation_error on failure
void check_table(const GroupTable& g);

// FNV-1a over order and the mul table; identifies a canonical table
uint64_t table_hash(const GroupTable& g);

} // namespace subdeg
