#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "subdeg/bitset.hpp"
#include "subdeg/group.hpp"

namespace subdeg {

// Complete subgroup lattice. Canonical subgroup order: size ascending, ties
// by bitset value ascending; index 0 is the trivial subgroup, the last index
// is the whole group.
struct Lattice {
    const GroupTable* g = nullptr;
    std::vector<DynBitset> subs;
    std::vector<int> sizes;
    std::vector<std::vector<int>> elems;  // element indices per subgroup
    std::unordered_map<DynBitset, int, BitsetHash> index_of;

    std::vector<DynBitset> subs_mask;   // over subgroup indices: j with subs[j] <= subs[i]
    std::vector<DynBitset> overs_mask;  // strict supersets
    std::vector<char> normal;
    std::vector<int> normal_indices;
    std::vector<int> maximal_indices;
    std::vector<int> class_of;
    std::vector<std::vector<int>> classes;
    std::vector<DynBitset> perm;  // permutability matrix rows
    int trivial_index = -1;
    int whole_index = -1;
    bool analyzed = false;  // structure beyond subs/sizes/index_of present

    int count() const { return static_cast<int>(subs.size()); }

    // join/meet tables, built on first use
    int join_index(int i, int j) const;
    int meet_index(int i, int j) const;
    // whole N*N tables, row-major; built on first use
    const std::vector<int>& join_table() const;
    const std::vector<int>& meet_table() const;

    long long count_commuting(const DynBitset& mask_h, const DynBitset& mask_k) const;

private:
    void ensure_join_meet() const;
    mutable std::vector<int> join_tab, meet_tab;
    mutable bool jm_built = false;
    mutable std::shared_ptr<std::mutex> lazy_mu = std::make_shared<std::mutex>();
};

// worklist fixed point over joins with cyclic seeds; the lattice keeps a
// pointer to g, so the table must outlive it (rvalues are rejected)
Lattice enumerate_subgroups(const GroupTable& g);
Lattice enumerate_subgroups(GroupTable&&) = delete;

// full analysis over an externally supplied complete subgroup list
// (e.g. a validated cache file); the list is re-sorted canonically
Lattice lattice_from_subgroups(const GroupTable& g, std::vector<DynBitset> subs);
Lattice lattice_from_subgroups(GroupTable&&, std::vector<DynBitset>) = delete;

/// independent ground-truth enumeration (order <= 128): DFS over increasing
// generator sequences where every generator strictly extends the closure;
// every subgroup of order n is generated by at most log2 n such elements
Lattice oracle_enumerate(const GroupTable& g);
Lattice oracle_enumerate(GroupTable&&) = delete;

// test aid: literal closure of every element subset of size <= floor(log2 n)
std::vector<DynBitset> enumerate_by_subsets(const GroupTable& g, int max_subset);

DynBitset product_set(const GroupTable& g, const DynBitset& h, const DynBitset& k);
bool permutes(const GroupTable& g, const DynBitset& h, const DynBitset& k);

std::vector<int> commuting_set(const Lattice& lat, int h);
std::vector<int> strict_overgroups(const Lattice& lat, int h);

bool is_subnormal(const Lattice& lat, int h);
// permutes with every subgroup of the ambient group
bool is_permutable(const Lattice& lat, int h);
/// modular element of the subgroup lattice: for all X, Z,
//   X <= Z  implies  <X, H ^ Z> = <X, H> ^ Z   and
//   H <= Z  implies  <H, X ^ Z> = <H, X> ^ Z
bool is_modular_element(const Lattice& lat, int h);

// aggregate of all 2^(r+1)-1 intersections over families of maximal
// subgroups; signed_families[idx] carries sum of (-1)^(familysize-1)
struct MaxInterAnalysis {
    std::vector<long long> signed_families;
    std::vector<long long> family_count;
    std::vector<char> seen_ge2;  // appears as an intersection of >= 2 maximals
    long long total_families = 0;
};
MaxInterAnalysis analyze_maximal_intersections(const Lattice& lat);

// explicit family map (bit k of the key = k-th entry of maximal_indices);
// guarded to at most 20 maximal subgroups
std::map<uint32_t, int> intersections_of_maximals(const Lattice& lat);

// Cayley table of one subgroup, elements reindexed in ascending order
GroupTable subgroup_table(const GroupTable& g, const DynBitset& h, const std::string& label);

} // namespace subdeg
