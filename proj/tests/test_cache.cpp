#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include <json.hpp>

#include "subdeg/cache.hpp"
#include "subdeg/group.hpp"

using namespace subdeg;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("subdeg-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(reinterpret_cast<uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

nlohmann::json slurp(const std::string& file) {
    std::ifstream in(file);
    REQUIRE(in.good());
    return nlohmann::json::parse(in);
}

void spit(const std::string& file, const nlohmann::json& j) {
    std::ofstream out(file);
    out << j.dump(1) << "\n";
}

}  // namespace

TEST_CASE("miss, write, hit round trip") {
    TempDir dir;
    GroupTable s4 = make_symmetric(4);

    CacheOutcome first;
    Lattice a = load_or_enumerate(s4, dir.str(), &first);
    CHECK_FALSE(first.hit);
    CHECK(a.count() == 30);
    CHECK(fs::exists(lattice_cache_path(s4, dir.str())));

    CacheOutcome second;
    Lattice b = load_or_enumerate(s4, dir.str(), &second);
    CHECK(second.hit);
    CHECK(b.subs == a.subs);
    CHECK(b.maximal_indices == a.maximal_indices);
    CHECK(b.normal_indices == a.normal_indices);
    CHECK(b.classes == a.classes);
}

TEST_CASE("empty directory string disables caching") {
    CacheOutcome outcome;
    Lattice lat = load_or_enumerate(make_symmetric(3), "", &outcome);
    CHECK_FALSE(outcome.hit);
    CHECK(lat.count() == 6);
}

TEST_CASE("tampered entries are rejected and recomputed") {
    TempDir dir;
    GroupTable s3 = make_symmetric(3);
    load_or_enumerate(s3, dir.str());
    std::string file = lattice_cache_path(s3, dir.str());

    SUBCASE("dropped subgroup breaks join closure or cyclic cover") {
        nlohmann::json j = slurp(file);
        j["subgroups"].erase(2);
        spit(file, j);
    }
    SUBCASE("non-subgroup entry") {
        nlohmann::json j = slurp(file);
        j["subgroups"][1] = "7";  // {e and two transpositions}: not closed
        spit(file, j);
    }
    SUBCASE("duplicate entry") {
        nlohmann::json j = slurp(file);
        j["subgroups"][2] = j["subgroups"][1];
        spit(file, j);
    }
    SUBCASE("wrong schema") {
        nlohmann::json j = slurp(file);
        j["schema"] = "subdeg-lattice/999";
        spit(file, j);
    }
    SUBCASE("wrong table hash") {
        nlohmann::json j = slurp(file);
        j["table_hash"] = "0";
        spit(file, j);
    }
    SUBCASE("garbage hex") {
        nlohmann::json j = slurp(file);
        j["subgroups"][1] = "zz";
        spit(file, j);
    }
    SUBCASE("not json at all") {
        std::ofstream out(file);
        out << "not json\n";
    }

    std::string why;
    CHECK_FALSE(read_lattice_cache(s3, dir.str(), &why).has_value());
    CHECK_FALSE(why.empty());

    CacheOutcome outcome;
    Lattice lat = load_or_enumerate(s3, dir.str(), &outcome);
    CHECK_FALSE(outcome.hit);
    CHECK(lat.count() == 6);

    // the rewrite leaves a valid file behind
    CacheOutcome after;
    load_or_enumerate(s3, dir.str(), &after);
    CHECK(after.hit);
}

TEST_CASE("join closure is required, not just plausible-looking sets") {
    // all cyclic subgroups of the Klein group form a meet-closed family of
    // genuine subgroups, yet the whole group is missing; validation must
    // reject it rather than serve an incomplete lattice
    TempDir dir;
    GroupTable v4 = direct_product({make_cyclic(2), make_cyclic(2)});
    load_or_enumerate(v4, dir.str());
    std::string file = lattice_cache_path(v4, dir.str());

    nlohmann::json j = slurp(file);
    REQUIRE(j["subgroups"].size() == 5);
    j["subgroups"].erase(4);  // drop the whole group
    spit(file, j);

    std::string why;
    CHECK_FALSE(read_lattice_cache(v4, dir.str(), &why).has_value());
    CHECK(why.find("join") != std::string::npos);
}

TEST_CASE("cache files are reused only for the same table") {
    TempDir dir;
    load_or_enumerate(make_symmetric(3), dir.str());
    CacheOutcome outcome;
    load_or_enumerate(make_dihedral(6), dir.str(), &outcome);
    CHECK_FALSE(outcome.hit);  // isomorphic, but a different Cayley table
}
