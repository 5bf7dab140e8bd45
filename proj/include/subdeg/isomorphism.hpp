#pragma once

#include <string>

#include "subdeg/group.hpp"

namespace subdeg {

// guaranteed decision for orders <= 64; throws usage_error above that
bool are_isomorphic(const GroupTable& a, const GroupTable& b);

// invariant-only comparison, usable at any order: false means definitely
// not isomorphic, true means "not refuted"
bool isomorphism_not_refuted(const GroupTable& a, const GroupTable& b);

// short classifier against the constructible catalog (cyclic, klein-type
// products, dihedral, symmetric, alternating); falls back to "order<k>"
std::string iso_type_label(const GroupTable& g);

} // namespace subdeg
