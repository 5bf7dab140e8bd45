#include "subdeg/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace subdeg {

namespace {

std::string hash_hex(uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

std::string lattice_cache_path(const GroupTable& g, const std::string& dir) {
    return dir + "/" + hash_hex(table_hash(g)) + ".json";
}

bool write_lattice_cache(const GroupTable& g, const Lattice& lat, const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return false;

    nlohmann::ordered_json j;
    j["schema"] = kLatticeCacheSchema;
    j["order"] = g.order;
    j["label"] = g.label;
    j["table_hash"] = hash_hex(table_hash(g));
    auto& subs = j["subgroups"] = nlohmann::ordered_json::array();
    for (const auto& b : lat.subs) subs.push_back(b.to_hex());

    std::string path = lattice_cache_path(g, dir);
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) return false;
        out << j.dump(1) << "\n";
        if (!out) return false;
    }
    std::filesystem::rename(tmp, path, ec);
    return !ec;
}

std::optional<std::vector<DynBitset>> read_lattice_cache(const GroupTable& g,
                                                         const std::string& dir,
                                                         std::string* why_rejected) {
    auto reject = [&](const std::string& why) -> std::optional<std::vector<DynBitset>> {
        if (why_rejected) *why_rejected = why;
        return std::nullopt;
    };

    std::ifstream in(lattice_cache_path(g, dir), std::ios::binary);
    if (!in) return reject("");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        return reject(std::string("unparseable: ") + e.what());
    }

    if (!j.is_object() || j.value("schema", "") != kLatticeCacheSchema)
        return reject("unknown schema");
    if (j.value("order", -1) != g.order) return reject("order mismatch");
    if (j.value("table_hash", "") != hash_hex(table_hash(g))) return reject("table hash mismatch");
    if (!j.contains("subgroups") || !j["subgroups"].is_array()) return reject("no subgroup list");

    std::vector<DynBitset> subs;
    std::unordered_set<DynBitset, BitsetHash> seen;
    for (const auto& entry : j["subgroups"]) {
        if (!entry.is_string()) return reject("non-string subgroup entry");
        DynBitset b(g.order);
        if (!DynBitset::from_hex(entry.get<std::string>(), g.order, b))
            return reject("bad bitset encoding");
        if (!b.test(g.identity)) return reject("a stored set misses the identity");
        if (!(closure(g, b) == b)) return reject("a stored set is not closed");
        if (!seen.insert(b).second) return reject("duplicate subgroup entry");
        subs.push_back(std::move(b));
    }
    if (subs.empty()) return reject("empty subgroup list");

    // completeness: every cyclic subgroup present and the family join-closed
    // implies every subgroup (a join of its cyclic subgroups) is present
    for (int x = 0; x < g.order; ++x)
        if (!seen.count(cyclic_subgroup(g, x))) return reject("a cyclic subgroup is missing");
    for (size_t i = 0; i < subs.size(); ++i)
        for (size_t k = i + 1; k < subs.size(); ++k) {
            if (subs[i].subset_of(subs[k]) || subs[k].subset_of(subs[i])) continue;
            if (!seen.count(closure(g, subs[i] | subs[k]))) return reject("family is not join-closed");
        }

    return subs;
}

Lattice load_or_enumerate(const GroupTable& g, const std::string& dir, CacheOutcome* outcome) {
    if (outcome) *outcome = {};
    if (dir.empty()) return enumerate_subgroups(g);

    std::string why;
    if (auto subs = read_lattice_cache(g, dir, &why)) {
        if (outcome) outcome->hit = true;
        return lattice_from_subgroups(g, std::move(*subs));
    }
    if (outcome) outcome->note = why;
    Lattice lat = enumerate_subgroups(g);
    write_lattice_cache(g, lat, dir);
    return lat;
}

}  // namespace subdeg
