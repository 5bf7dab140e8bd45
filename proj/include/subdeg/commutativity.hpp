#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subdeg/fraction.hpp"
#include "subdeg/lattice.hpp"

namespace subdeg {

struct SdReport {
    std::string label;
    Fraction value;
    long long pair_count = 0;
    std::vector<long long> lattice_sizes;  // one entry per argument
    // lattice index of H1 -> number of subgroups permuting with H1 (within
    // the second argument's lattice); filled for sd and sd_rel
    std::vector<std::pair<int, long long>> breakdown;

    long long denominator() const {
        long long d = 1;
        for (long long s : lattice_sizes) d *= s;
        return d;
    }
};

SdReport sd(const Lattice& lat);
SdReport sd_rel(const Lattice& lat, int h);
SdReport sd_pair(const Lattice& lat, int h, int k);

// tuples (K1,..,Kn) in L(H1)x..xL(Hn) whose elementwise set product is one
// set under all n! orderings; n in [1,6]
SdReport sd_nary(const Lattice& lat, const std::vector<int>& hs);

// element-level degrees
Fraction d_group(const GroupTable& g);
Fraction d_rel(const GroupTable& g, const DynBitset& h);

// one grouped term of the maximal-intersection expansion: a conjugacy class
// of intersection subgroups sharing one sd_rel value, weighted by the sum of
// signed family counts times |L(member)|
struct MaximalTermGroup {
    std::string type_label;
    int class_index = -1;
    int subgroup_size = 0;
    std::vector<int> members;  // lattice indices with nonzero signed count
    long long coefficient = 0;
    Fraction sd_rel_value;
};

struct MaximalReport {
    std::string label;
    Fraction value;
    long long constant_term = 1;  // 1 + signed families meeting in the trivial subgroup
    std::vector<MaximalTermGroup> groups;
    long long lattice_size = 0;
    int maximal_count = 0;
    long long total_families = 0;
};

// inclusion-exclusion over families of maximal subgroups:
// sd(G) = (1/|L(G)|) (1 + sum over families of sign * |L(inter)| * sd(inter, G))
MaximalReport sd_via_maximal(const GroupTable& g, const Lattice& lat);

// every family of >= 2 distinct maximal subgroups meets in a subgroup with
// relative degree 1
bool hypothesis_holds(const Lattice& lat);

// simplified expansions valid under hypothesis_holds: a weighted sum over
// single maximals, or over ordered pairs of maximals
enum class ReducedVariant { single_sum, pair_sum };
Fraction sd_via_maximal_reduced(const GroupTable& g, const Lattice& lat, ReducedVariant v);

struct BoundCheck {
    Fraction bound;
    bool holds = false;
};

struct QuotientBoundCheck {
    int h1_index = -1;
    Fraction bound;
    bool holds = false;
    bool equality = false;
};

struct BoundsReport {
    Fraction value;  // sd_rel(h, g)
    std::optional<BoundCheck> subgroup_bound;   // (a): absent when h is the whole group
    BoundCheck normal_bound;                    // (b): |N(G)| / |L(G)|
    BoundCheck updown_bound;                    // (c): counts subgroups of H1 and strict overgroups
    std::vector<QuotientBoundCheck> quotient_bounds;  // (d): one per normal H1 <= h
};

BoundsReport lower_bounds(const GroupTable& g, const Lattice& lat, int h);

struct ProductDegreeReport {
    Fraction direct;   // sd_rel on the product group
    Fraction factored; // product of per-factor sd_rel
    bool equal = false;
};

// multiplicativity of sd_rel across direct products of coprime order
ProductDegreeReport verify_coprime_product(const std::vector<const GroupTable*>& factors,
                                           const std::vector<DynBitset>& sub_factors);

// split a subgroup of a coprime direct product into its per-factor projections
std::vector<DynBitset> decompose_product_subgroup(const std::vector<const GroupTable*>& factors,
                                                  const DynBitset& h);

struct ProfileRow {
    int class_index = -1;
    std::vector<int> members;
    int subgroup_size = 0;
    Fraction value;
};

// sd_rel per conjugacy class of subgroups; throws violation_error if two
// members of one class disagree
std::vector<ProfileRow> sd_profile(const Lattice& lat);

struct Example26Row {
    std::string type_label;
    int class_index = -1;
    int subgroup_size = 0;
    int class_size = 0;
    Fraction computed;
    std::optional<Fraction> reference;
    bool match = true;  // true when no reference value exists
};

struct Example26Report {
    std::string label;
    Fraction sd_direct;
    Fraction sd_expanded;  // via the maximal-intersection formula
    std::optional<Fraction> reference_sd;
    bool sd_matches_reference = true;
    bool reference_integral = true;  // reference_sd * |L(G)|^2 integral?
    std::vector<Example26Row> rows;
    MaximalReport maximal;
};

// reproduces the published worked example on S4: sd_rel for every conjugacy
// class arising as an intersection of maximal subgroups, side by side with
// the published constants; computed values are authoritative
Example26Report example26_report(const GroupTable& g, const Lattice& lat);

}  // namespace subdeg
