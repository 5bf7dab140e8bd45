#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subdeg/group.hpp"
#include "subdeg/lattice.hpp"

namespace subdeg {

// One JSON file per group under the cache directory, named by the content
// hash of the Cayley table. A loaded subgroup list is trusted only after
// revalidation: every set closed with identity, every cyclic subgroup
// present, every pairwise join present. That makes the list provably the
// full lattice, so tampered or stale files fall back to recomputation.

inline constexpr const char* kLatticeCacheSchema = "subdeg-lattice/1";

std::string lattice_cache_path(const GroupTable& g, const std::string& dir);

bool write_lattice_cache(const GroupTable& g, const Lattice& lat, const std::string& dir);

// nullopt when missing or invalid; why_rejected explains a rejection
std::optional<std::vector<DynBitset>> read_lattice_cache(const GroupTable& g,
                                                         const std::string& dir,
                                                         std::string* why_rejected = nullptr);

struct CacheOutcome {
    bool hit = false;
    std::string note;  // rejection reason when a file existed but failed validation
};

// cache consult wrapped around enumerate_subgroups; empty dir disables caching
Lattice load_or_enumerate(const GroupTable& g, const std::string& dir,
                          CacheOutcome* outcome = nullptr);

}  // namespace subdeg
