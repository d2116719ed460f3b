#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "voxelsmith/geometry.hpp"

using namespace voxelsmith;

TEST_CASE("Coord: offset helpers and arithmetic") {
    Coord c{1, 2, 3};
    CHECK(c.offset(1, -2, 3) == Coord{2, 0, 6});
    CHECK(c.up() == Coord{1, 3, 3});
    CHECK(c.down() == Coord{1, 1, 3});
    CHECK(c + Coord{1, 1, 1} == Coord{2, 3, 4});
    CHECK(c - Coord{1, 1, 1} == Coord{0, 1, 2});
    CHECK(c.to_string() == "(1,2,3)");
}

TEST_CASE("Coord: distance metrics agree with their definitions") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-50, 50);
    for (int i = 0; i < 200; ++i) {
        Coord a{d(rng), d(rng), d(rng)};
        Coord b{d(rng), d(rng), d(rng)};
        const int dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y), dz = std::abs(a.z - b.z);
        CHECK(chebyshev(a, b) == std::max({dx, dy, dz}));
        CHECK(manhattan(a, b) == dx + dy + dz);
        CHECK(chebyshev(a, b) == chebyshev(b, a));
        CHECK(chebyshev(a, a) == 0);
    }
}

TEST_CASE("YxzLess: matches lexicographic (y,x,z) and sorts deterministically") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-5, 5);
    std::vector<Coord> coords;
    for (int i = 0; i < 300; ++i) coords.push_back({d(rng), d(rng), d(rng)});

    auto oracle = [](const Coord& a, const Coord& b) {
        return std::tuple(a.y, a.x, a.z) < std::tuple(b.y, b.x, b.z);
    };
    for (const Coord& a : coords) {
        for (const Coord& b : {coords[0], coords[10], coords[99]}) {
            CHECK(YxzLess{}(a, b) == oracle(a, b));
        }
    }

    std::vector<Coord> once = coords, twice = coords;
    std::sort(once.begin(), once.end(), YxzLess{});
    std::shuffle(twice.begin(), twice.end(), rng);
    std::sort(twice.begin(), twice.end(), YxzLess{});
    CHECK(once == twice);
}

TEST_CASE("CoordHash: equal coords hash equal, FNV-1a oracle agrees") {
    // independent byte-for-byte FNV-1a over the three little-endian int64 fields
    auto oracle = [](const Coord& c) {
        std::uint64_t h = 1469598103934665603ull;
        const std::int64_t vals[3] = {c.x, c.y, c.z};
        for (std::int64_t v : vals) {
            for (int i = 0; i < 8; ++i) {
                h ^= std::uint64_t((v >> (i * 8)) & 0xff);
                h *= 1099511628211ull;
            }
        }
        return std::size_t(h);
    };
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> d(-1000, 1000);
    std::unordered_set<std::size_t> seen;
    for (int i = 0; i < 1000; ++i) {
        Coord c{d(rng), d(rng), d(rng)};
        CHECK(CoordHash{}(c) == oracle(c));
        seen.insert(CoordHash{}(c));
    }
    // mixing sanity: virtually no collisions over 1000 random coords
    CHECK(seen.size() >= 995);
}

TEST_CASE("face_neighbors: exactly the six unit axis offsets") {
    std::set<std::tuple<int, int, int>> got;
    for (const Coord& n : face_neighbors()) {
        CHECK(manhattan(n, {0, 0, 0}) == 1);
        got.insert({n.x, n.y, n.z});
    }
    std::set<std::tuple<int, int, int>> want = {{0, -1, 0}, {0, 1, 0},  {-1, 0, 0},
                                               {1, 0, 0},  {0, 0, -1}, {0, 0, 1}};
    CHECK(got == want);
}

TEST_CASE("Facing: string round-trip") {
    for (Facing f : {Facing::north, Facing::south, Facing::east, Facing::west}) {
        auto back = facing_from_string(to_string(f));
        REQUIRE(back.has_value());
        CHECK(*back == f);
    }
    CHECK_FALSE(facing_from_string("up").has_value());
    CHECK_FALSE(facing_from_string("North").has_value());
    CHECK_FALSE(facing_from_string("").has_value());
}

TEST_CASE("BoundingBox: contains, sizes, merged, expanded") {
    BoundingBox b{{0, 0, 0}, {2, 3, 4}};
    CHECK(b.size_x() == 3);
    CHECK(b.size_y() == 4);
    CHECK(b.size_z() == 5);
    CHECK(b.contains({0, 0, 0}));
    CHECK(b.contains({2, 3, 4}));
    CHECK_FALSE(b.contains({3, 0, 0}));
    CHECK_FALSE(b.contains({0, -1, 0}));

    CHECK(b.merged({5, -1, 2}) == BoundingBox{{0, -1, 0}, {5, 3, 4}});
    CHECK(b.merged({1, 1, 1}) == b);
    CHECK(b.expanded(1, 0, 2) == BoundingBox{{-1, 0, -2}, {3, 3, 6}});

    // merged is the smallest enclosing box: every merged corner is either
    // from the box or the new point
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> d(-20, 20);
    for (int i = 0; i < 100; ++i) {
        Coord c{d(rng), d(rng), d(rng)};
        BoundingBox m = b.merged(c);
        CHECK(m.contains(c));
        CHECK(m.contains(b.min));
        CHECK(m.contains(b.max));
        CHECK(m.size_x() * m.size_y() * m.size_z() >= b.size_x() * b.size_y() * b.size_z());
    }
}
