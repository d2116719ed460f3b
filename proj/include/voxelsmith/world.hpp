#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "voxelsmith/blocks.hpp"
#include "voxelsmith/geometry.hpp"

namespace voxelsmith {

inline constexpr int kTicksPerDay = 24000;
// Inverted daylight sensors emit power inside [night_start, night_end).
inline constexpr int kNightStart = 13000;
inline constexpr int kNightEnd = 23000;

/// A block stored in the world. `powered` is runtime redstone state
/// (sensor active / lamp lit) and is not part of the snapshot format.
struct PlacedBlock {
    std::string id;
    std::optional<Facing> facing;
    bool powered = false;

    friend bool operator==(const PlacedBlock&, const PlacedBlock&) = default;
};

struct Bot {
    Coord position;   // the cell the bot's feet occupy
    int reach = 4;    // Chebyshev blocks
};

enum class WorldError {
    out_of_reach,
    occupied,
    floating,
    nothing_there,
    unknown_block,
};

const char* to_string(WorldError e);

/// BFS tree of every feet cell the bot can walk to.
struct ReachSet {
    Coord start;
    std::unordered_map<Coord, Coord, CoordHash> parent;  // includes start (self-parented)
    std::unordered_map<Coord, int, CoordHash> dist;

    bool reachable(const Coord& c) const { return parent.count(c) != 0; }
    int distance(const Coord& c) const;                // -1 when unreachable
    std::vector<Coord> path_to(const Coord& c) const;  // excludes start
};

struct ActionStatus {
    bool ok = true;
    WorldError error = WorldError::occupied;
    std::string detail;

    static ActionStatus success() { return {}; }
    static ActionStatus fail(WorldError e, std::string detail);
    explicit operator bool() const { return ok; }
};

/// Sparse voxel world over a flat ground plane. Every cell with y <= ground_y
/// is solid ground; stored entries are never `air`.
class World {
public:
    explicit World(int ground_y = 0, const BlockRegistry* registry = &default_registry());

    int time() const { return time_; }
    int ground_y() const { return ground_y_; }
    bool night() const { return time_ >= kNightStart && time_ < kNightEnd; }
    const BlockRegistry& registry() const { return *registry_; }

    const std::map<Coord, PlacedBlock, YxzLess>& blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }

    const PlacedBlock* block_at(const Coord& c) const;
    const BlockDef* def_at(const Coord& c) const;
    bool solid_at(const Coord& c) const;
    bool empty_at(const Coord& c) const { return block_at(c) == nullptr && c.y > ground_y_; }
    /// Feet cell a bot can occupy: clear at feet and head, solid below.
    bool standable(const Coord& feet) const;
    /// At least one face neighbor is solid (or the cell rests on the ground plane).
    bool supported(const Coord& c) const;
    /// At least one face neighbor is open; a fully enclosed cell cannot be reached.
    bool has_open_face(const Coord& c) const;

    // -- primitive operations ------------------------------------------------

    ActionStatus place(const Bot& bot, const std::string& id, const Coord& at,
                       std::optional<Facing> facing = std::nullopt);
    /// Removes a block; the bot falls if its support was mined away.
    ActionStatus mine(Bot& bot, const Coord& at);
    void advance_time(int ticks);
    void redstone_update();

    /// Drops the bot straight down until it stands on something.
    void settle(Bot& bot) const;

    /// Shortest walk from bot.position to goal. Steps move one cell
    /// horizontally with a height change in [-3, +1]; the returned path
    /// excludes the start cell. Deterministic: neighbor expansion in (y,x,z)
    /// order. nullopt when the goal is unreachable or not standable.
    std::optional<std::vector<Coord>> pathfind(const Bot& bot, const Coord& goal) const;

    /// Full walkability flood from the bot's position, bounded by the built-up
    /// region (plus `extra`, when the caller cares about cells near a target
    /// outside it). pathfind() is a thin wrapper over this.
    ReachSet reachable_from(const Bot& bot, std::optional<Coord> extra = std::nullopt) const;

    // -- direct edits (tests, blueprint stamping; no physics) ----------------

    void set_block(const Coord& c, const std::string& id, std::optional<Facing> facing = std::nullopt);
    void clear_block(const Coord& c);

    // -- snapshots -----------------------------------------------------------

    nlohmann::json snapshot() const;
    static World from_snapshot(const nlohmann::json& j,
                               const BlockRegistry* registry = &default_registry());

    friend bool operator==(const World& a, const World& b) {
        return a.time_ == b.time_ && a.ground_y_ == b.ground_y_ && a.blocks_ == b.blocks_;
    }

private:
    std::map<Coord, PlacedBlock, YxzLess> blocks_;
    int time_ = 0;
    int ground_y_ = 0;
    const BlockRegistry* registry_;
};

}  // namespace voxelsmith
