#include "voxelsmith/blueprint.hpp"

#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace voxelsmith {

const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::air_block: return "AirBlock";
        case ViolationKind::duplicate_coord: return "DuplicateCoord";
        case ViolationKind::out_of_bounds: return "OutOfBounds";
        case ViolationKind::unknown_block_id: return "UnknownBlockId";
        case ViolationKind::missing_facing: return "MissingFacing";
        case ViolationKind::spurious_facing: return "SpuriousFacing";
    }
    return "?";
}

const char* to_string(MismatchKind k) {
    switch (k) {
        case MismatchKind::missing: return "Missing";
        case MismatchKind::wrong: return "Wrong";
        case MismatchKind::extra: return "Extra";
    }
    return "?";
}

std::string Mismatch::describe() const {
    std::ostringstream os;
    os << to_string(kind) << " at (" << offset.x << "," << offset.y << "," << offset.z << ")";
    if (!expected.empty()) os << " expected " << expected;
    if (!actual.empty()) os << " found " << actual;
    return os.str();
}

ValidationReport validate(const Blueprint& bp, const BoundingBox& limits,
                          const BlockRegistry& registry) {
    ValidationReport report;
    std::unordered_map<Coord, std::size_t, CoordHash> seen;
    for (std::size_t i = 0; i < bp.placements.size(); ++i) {
        const Placement& p = bp.placements[i];
        std::ostringstream at;
        at << "(" << p.offset.x << "," << p.offset.y << "," << p.offset.z << ")";

        if (p.block == kAirId) {
            report.violations.push_back({ViolationKind::air_block, i, "air placement at " + at.str()});
        }
        const BlockDef* def = registry.find(p.block);
        if (!def) {
            report.violations.push_back(
                {ViolationKind::unknown_block_id, i, "unknown block '" + p.block + "'"});
        }
        auto [it, inserted] = seen.emplace(p.offset, i);
        if (!inserted) {
            report.violations.push_back({ViolationKind::duplicate_coord, i,
                                         "offset " + at.str() + " already used by placement " +
                                             std::to_string(it->second)});
        }
        if (!limits.contains(p.offset)) {
            report.violations.push_back({ViolationKind::out_of_bounds, i, at.str() + " outside limits"});
        }
        if (def) {
            if (def->orientable && !p.facing) {
                report.violations.push_back({ViolationKind::missing_facing, i,
                                             p.block + " at " + at.str() + " defaults to north", true});
            }
            if (!def->orientable && p.facing) {
                report.violations.push_back({ViolationKind::spurious_facing, i,
                                             p.block + " at " + at.str() + " ignores facing", true});
            }
        }
    }
    return report;
}

std::optional<BoundingBox> bbox(const Blueprint& bp) {
    if (bp.empty()) return std::nullopt;
    BoundingBox box{bp.placements.front().offset, bp.placements.front().offset};
    for (const Placement& p : bp.placements) box = box.merged(p.offset);
    return box;
}

Blueprint normalized(const Blueprint& bp, const BlockRegistry& registry) {
    Blueprint out;
    out.name = bp.name;
    out.placements.reserve(bp.placements.size());
    for (Placement p : bp.placements) {
        if (const BlockDef* def = registry.find(p.block)) {
            if (def->orientable && !p.facing) p.facing = Facing::north;
            if (!def->orientable) p.facing.reset();
        }
        out.placements.push_back(std::move(p));
    }
    return out;
}

std::vector<Mismatch> diff(const World& world, const Coord& origin, const Blueprint& bp) {
    const Blueprint norm = normalized(bp, world.registry());
    std::vector<Mismatch> out;

    std::unordered_map<Coord, const Placement*, CoordHash> expected;
    for (const Placement& p : norm.placements) expected[p.offset] = &p;

    for (const Placement& p : norm.placements) {
        const Coord at = origin + p.offset;
        const PlacedBlock* b = world.block_at(at);
        if (!b) {
            out.push_back({MismatchKind::missing, p.offset, p.block, ""});
        } else if (b->id != p.block || b->facing != p.facing) {
            std::string actual = b->id;
            if (b->facing) actual += std::string(" facing ") + to_string(*b->facing);
            std::string want = p.block;
            if (p.facing) want += std::string(" facing ") + to_string(*p.facing);
            out.push_back({MismatchKind::wrong, p.offset, want, actual});
        }
    }

    if (auto box = bbox(norm)) {
        const BoundingBox abs{origin + box->min, origin + box->max};
        for (const auto& [c, b] : world.blocks()) {
            if (!abs.contains(c)) continue;
            const Coord off = c - origin;
            if (expected.count(off)) continue;
            const BlockDef* def = world.registry().find(b.id);
            if (def && def->scaffold) continue;
            out.push_back({MismatchKind::extra, off, "", b.id});
        }
    }
    return out;
}

void stamp(World& world, const Coord& origin, const Blueprint& bp) {
    const Blueprint norm = normalized(bp, world.registry());
    for (const Placement& p : norm.placements) {
        world.set_block(origin + p.offset, p.block, p.facing);
    }
    world.redstone_update();
}

nlohmann::json blueprint_to_json(const Blueprint& bp) {
    nlohmann::json placements = nlohmann::json::array();
    for (const Placement& p : bp.placements) {
        nlohmann::json e;
        e["id"] = p.block;
        e["x"] = p.offset.x;
        e["y"] = p.offset.y;
        e["z"] = p.offset.z;
        e["facing"] = p.facing ? nlohmann::json(to_string(*p.facing)) : nlohmann::json(nullptr);
        placements.push_back(std::move(e));
    }
    nlohmann::json j;
    j["v"] = 1;
    j["name"] = bp.name;
    j["placements"] = std::move(placements);
    return j;
}

Blueprint blueprint_from_json(const nlohmann::json& j) {
    Blueprint bp;
    bp.name = j.value("name", "");
    for (const auto& e : j.at("placements")) {
        Placement p;
        p.block = e.at("id").get<std::string>();
        p.offset = {e.at("x").get<int>(), e.at("y").get<int>(), e.at("z").get<int>()};
        if (e.contains("facing") && !e.at("facing").is_null()) {
            p.facing = facing_from_string(e.at("facing").get<std::string>());
        }
        bp.placements.push_back(std::move(p));
    }
    return bp;
}

}  // namespace voxelsmith
