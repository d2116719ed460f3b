#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "voxelsmith/geometry.hpp"
#include "voxelsmith/world.hpp"

namespace voxelsmith {

/// One block of a blueprint, relative to an unbound start position.
struct Placement {
    std::string block;
    Coord offset;
    std::optional<Facing> facing;

    friend bool operator==(const Placement&, const Placement&) = default;
};

/// Ordered placement list; the order is the author's build-order hint and the
/// planner is free to reorder it.
struct Blueprint {
    std::string name;
    std::vector<Placement> placements;

    bool empty() const { return placements.empty(); }
    std::size_t size() const { return placements.size(); }
};

enum class ViolationKind {
    air_block,
    duplicate_coord,
    out_of_bounds,
    unknown_block_id,
    missing_facing,
    spurious_facing,
};

const char* to_string(ViolationKind k);

struct Violation {
    ViolationKind kind;
    std::size_t index;  // placement index the violation names
    std::string detail;
    bool warning = false;  // warnings do not invalidate the blueprint
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const {
        for (const auto& v : violations)
            if (!v.warning) return false;
        return true;
    }
    std::size_t error_count() const {
        std::size_t n = 0;
        for (const auto& v : violations)
            if (!v.warning) ++n;
        return n;
    }
};

/// Default validation limits: a generous region around the build origin.
inline BoundingBox default_build_limits() { return {{-64, 0, -64}, {64, 96, 64}}; }

/// Report-style check; an empty report means valid. Duplicate offsets flag the
/// later index, the first occurrence wins.
ValidationReport validate(const Blueprint& bp, const BoundingBox& limits = default_build_limits(),
                          const BlockRegistry& registry = default_registry());

/// Tightest box over all offsets; nullopt for an empty blueprint.
std::optional<BoundingBox> bbox(const Blueprint& bp);

/// Copy with default facing (north) filled in for orientable blocks that omit
/// it and spurious facing dropped, matching what placement will do.
Blueprint normalized(const Blueprint& bp, const BlockRegistry& registry = default_registry());

enum class MismatchKind { missing, wrong, extra };

const char* to_string(MismatchKind k);

struct Mismatch {
    MismatchKind kind;
    Coord offset;  // blueprint-relative
    std::string expected;  // empty for extra
    std::string actual;    // empty for missing
    std::string describe() const;
};

/// Compares a world region against a blueprint anchored at origin. Scaffold
/// blocks inside the bbox are not reported as extras.
std::vector<Mismatch> diff(const World& world, const Coord& origin, const Blueprint& bp);

/// Writes every placement into the world without physics; test/tool helper.
void stamp(World& world, const Coord& origin, const Blueprint& bp);

nlohmann::json blueprint_to_json(const Blueprint& bp);
Blueprint blueprint_from_json(const nlohmann::json& j);

}  // namespace voxelsmith
