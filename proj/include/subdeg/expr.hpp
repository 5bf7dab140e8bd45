#pragma once

#include <string>
#include <vector>

#include "subdeg/group.hpp"
#include "subdeg/lattice.hpp"

namespace subdeg {

// Grammar (whitespace-insensitive, "x" joins factors):
//   Expr  := Atom ("x" Atom)*
//   Atom  := "Z"int | "D"int | "S"int | "A"int
//          | "ZM(" int "," int "," int ")"
//          | "perm(" int "):" cycles
// Dihedral parameters follow the order convention: D8 has 8 elements.
// Cycle points are 1-based; a contiguous digit run means single-digit
// points when the degree is at most 9, otherwise points need separators.
struct GroupExpr {
    enum class Kind { cyclic, dihedral, symmetric, alternating, zm, perm, product };
    Kind kind = Kind::cyclic;
    long long a = 0, b = 0, c = 0;                 // family parameters
    int degree = 0;                                // perm(...) degree
    std::vector<std::vector<int>> cycles;          // perm generators, 0-based points
    std::vector<GroupExpr> factors;                // product children

    std::string str() const;
};

bool operator==(const GroupExpr& l, const GroupExpr& r);

// throws usage_error with a character position on malformed input
GroupExpr parse_group_expr(const std::string& text);

// throws cap_error when the resulting order would exceed order_cap
GroupTable realize_expr(const GroupExpr& e, int order_cap);

// Subgroup selector forms:
//   "17"            lattice index
//   "class:2.0"     conjugacy class 2, member 0
//   "trivial" "whole"
//   "alternating"   even permutations (groups built from permutations)
//   "x" "y" "xy"    cyclic subgroups of the dihedral generators
//   "a" "b"         cyclic subgroups of the ZM generators
//   "gens:(1 2),(3 4)"  subgroup generated by permutation cycles
//   "elems:0,5,6"   closure of listed element indices
// throws usage_error listing valid alternatives when nothing matches
int resolve_selector(const std::string& sel, const GroupExpr& e, const GroupTable& g,
                     const Lattice& lat);

}  // namespace subdeg
