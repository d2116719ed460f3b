#include <doctest.h>

#include <algorithm>

#include "voxelsmith/blueprint.hpp"
#include "voxelsmith/dsl.hpp"

using namespace voxelsmith;

namespace {

Blueprint make(const std::string& text) { return dsl::compile(dsl::parse(text)); }

bool has_kind(const ValidationReport& r, ViolationKind k, bool warning) {
    return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) {
        return v.kind == k && v.warning == warning;
    });
}

}  // namespace

TEST_CASE("validate: clean blueprints pass") {
    Blueprint bp = make("fill stone (0,0,0) (2,2,2)\nplace oak_door (0,3,0) facing south\n");
    ValidationReport r = validate(bp);
    CHECK(r.ok());
    CHECK(r.error_count() == 0);
    CHECK(r.violations.empty());
}

TEST_CASE("validate: hard errors") {
    SUBCASE("air and unknown ids") {
        Blueprint bp;
        bp.placements.push_back({"air", {0, 0, 0}, std::nullopt});
        bp.placements.push_back({"mystery_block", {1, 0, 0}, std::nullopt});
        ValidationReport r = validate(bp);
        CHECK_FALSE(r.ok());
        CHECK(r.error_count() == 2);
        CHECK(has_kind(r, ViolationKind::air_block, false));
        CHECK(has_kind(r, ViolationKind::unknown_block_id, false));
    }

    SUBCASE("duplicate flags the later index") {
        Blueprint bp;
        bp.placements.push_back({"stone", {0, 0, 0}, std::nullopt});
        bp.placements.push_back({"glass", {0, 0, 0}, std::nullopt});
        ValidationReport r = validate(bp);
        CHECK_FALSE(r.ok());
        REQUIRE(r.violations.size() == 1);
        CHECK(r.violations[0].kind == ViolationKind::duplicate_coord);
        CHECK(r.violations[0].index == 1);
    }

    SUBCASE("out of bounds against the limits box") {
        Blueprint bp;
        bp.placements.push_back({"stone", {0, 97, 0}, std::nullopt});
        bp.placements.push_back({"stone", {-65, 0, 0}, std::nullopt});
        bp.placements.push_back({"stone", {0, -1, 0}, std::nullopt});
        ValidationReport r = validate(bp);
        CHECK(r.error_count() == 3);
        CHECK(has_kind(r, ViolationKind::out_of_bounds, false));

        // custom limits admit the same offsets
        BoundingBox wide{{-100, -5, -100}, {100, 100, 100}};
        CHECK(validate(bp, wide).ok());
    }
}

TEST_CASE("validate: facing issues are warnings, not errors") {
    Blueprint bp;
    bp.placements.push_back({"oak_door", {0, 0, 0}, std::nullopt});    // missing facing
    bp.placements.push_back({"stone", {1, 0, 0}, Facing::north});      // spurious facing
    ValidationReport r = validate(bp);
    CHECK(r.ok());
    CHECK(r.error_count() == 0);
    REQUIRE(r.violations.size() == 2);
    CHECK(has_kind(r, ViolationKind::missing_facing, true));
    CHECK(has_kind(r, ViolationKind::spurious_facing, true));
}

TEST_CASE("normalized: fills default facing, strips spurious facing") {
    Blueprint bp;
    bp.placements.push_back({"oak_door", {0, 0, 0}, std::nullopt});
    bp.placements.push_back({"bed", {1, 0, 0}, Facing::east});
    bp.placements.push_back({"stone", {2, 0, 0}, Facing::south});
    Blueprint n = normalized(bp);
    CHECK(n.placements[0].facing == Facing::north);
    CHECK(n.placements[1].facing == Facing::east);
    CHECK_FALSE(n.placements[2].facing.has_value());
    CHECK(validate(n).violations.empty());
}

TEST_CASE("bbox: tightest box, empty blueprint has none") {
    CHECK_FALSE(bbox(Blueprint{}).has_value());
    Blueprint bp;
    bp.placements.push_back({"stone", {-1, 2, 3}, std::nullopt});
    bp.placements.push_back({"stone", {4, 0, -2}, std::nullopt});
    auto b = bbox(bp);
    REQUIRE(b.has_value());
    CHECK(*b == BoundingBox{{-1, 0, -2}, {4, 2, 3}});
}

TEST_CASE("diff: stamped blueprint diffs empty, mutations are localized") {
    Blueprint bp = make("shell oak_planks (0,0,0) (4,3,4)\n"
                        "place oak_door (2,1,0) facing north\n"
                        "place air (2,2,0)\n");
    const Coord origin{10, 1, 10};

    World w(0);
    stamp(w, origin, bp);
    CHECK(diff(w, origin, bp).empty());

    SUBCASE("missing") {
        w.clear_block(origin + Coord{0, 0, 0});
        auto d = diff(w, origin, bp);
        REQUIRE(d.size() == 1);
        CHECK(d[0].kind == MismatchKind::missing);
        CHECK(d[0].offset == Coord{0, 0, 0});
        CHECK(d[0].expected == "oak_planks");
        CHECK(d[0].actual.empty());
    }

    SUBCASE("wrong id") {
        w.set_block(origin + Coord{0, 0, 0}, "stone");
        auto d = diff(w, origin, bp);
        REQUIRE(d.size() == 1);
        CHECK(d[0].kind == MismatchKind::wrong);
        CHECK(d[0].expected == "oak_planks");
        CHECK(d[0].actual == "stone");
    }

    SUBCASE("wrong facing") {
        w.set_block(origin + Coord{2, 1, 0}, "oak_door", Facing::south);
        auto d = diff(w, origin, bp);
        REQUIRE(d.size() == 1);
        CHECK(d[0].kind == MismatchKind::wrong);
    }

    SUBCASE("extra inside the bbox; scaffold and outside blocks ignored") {
        w.set_block(origin + Coord{2, 2, 0}, "stone");   // the carved doorway cell
        w.set_block(origin + Coord{1, 1, 1}, "dirt");    // scaffold id: ignored
        w.set_block(origin + Coord{40, 1, 40}, "stone"); // far outside the bbox
        auto d = diff(w, origin, bp);
        REQUIRE(d.size() == 1);
        CHECK(d[0].kind == MismatchKind::extra);
        CHECK(d[0].offset == Coord{2, 2, 0});
        CHECK(d[0].actual == "stone");
        CHECK(d[0].expected.empty());
    }

    SUBCASE("unfacing door in the world still matches via normalization") {
        // blueprint authored without facing; the stamped world holds north
        Blueprint plain = make("place oak_door (0,0,0)");
        World w2(0);
        stamp(w2, origin, plain);
        CHECK(w2.block_at(origin)->facing == Facing::north);
        CHECK(diff(w2, origin, plain).empty());
    }
}

TEST_CASE("diff: empty world reports every placement missing") {
    Blueprint bp = make("fill stone (0,0,0) (1,1,1)");
    World w(0);
    auto d = diff(w, {0, 1, 0}, bp);
    CHECK(d.size() == 8);
    for (const auto& m : d) CHECK(m.kind == MismatchKind::missing);
}

TEST_CASE("blueprint json: round-trip and stable serialization") {
    Blueprint bp = make("fill stone (0,0,0) (1,0,1)\nplace furnace (0,1,0) facing west\n");
    bp.name = "roundtrip";
    nlohmann::json j = blueprint_to_json(bp);
    Blueprint back = blueprint_from_json(j);
    CHECK(back.name == bp.name);
    REQUIRE(back.size() == bp.size());
    CHECK(back.placements == bp.placements);
    CHECK(blueprint_to_json(back).dump() == j.dump());
}

TEST_CASE("mismatch describe mentions kind, offset, and ids") {
    Mismatch m{MismatchKind::wrong, {1, 2, 3}, "stone", "glass"};
    const std::string s = m.describe();
    CHECK(s.find("(1,2,3)") != std::string::npos);
    CHECK(s.find("stone") != std::string::npos);
    CHECK(s.find("glass") != std::string::npos);
}
