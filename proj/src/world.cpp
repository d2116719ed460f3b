#include "voxelsmith/world.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace voxelsmith {

const char* to_string(WorldError e) {
    switch (e) {
        case WorldError::out_of_reach: return "OutOfReach";
        case WorldError::occupied: return "Occupied";
        case WorldError::floating: return "Floating";
        case WorldError::nothing_there: return "NothingThere";
        case WorldError::unknown_block: return "UnknownBlock";
    }
    return "?";
}

ActionStatus ActionStatus::fail(WorldError e, std::string detail) {
    ActionStatus s;
    s.ok = false;
    s.error = e;
    s.detail = std::move(detail);
    return s;
}

World::World(int ground_y, const BlockRegistry* registry)
    : ground_y_(ground_y), registry_(registry) {}

const PlacedBlock* World::block_at(const Coord& c) const {
    auto it = blocks_.find(c);
    return it == blocks_.end() ? nullptr : &it->second;
}

const BlockDef* World::def_at(const Coord& c) const {
    const PlacedBlock* b = block_at(c);
    return b ? registry_->find(b->id) : nullptr;
}

bool World::solid_at(const Coord& c) const {
    if (c.y <= ground_y_) return true;
    const BlockDef* d = def_at(c);
    return d != nullptr && d->solid;
}

bool World::standable(const Coord& feet) const {
    return !solid_at(feet) && !solid_at(feet.up()) && solid_at(feet.down());
}

bool World::supported(const Coord& c) const {
    for (const Coord& d : face_neighbors()) {
        if (solid_at(c + d)) return true;
    }
    return false;
}

bool World::has_open_face(const Coord& c) const {
    for (const Coord& d : face_neighbors()) {
        if (!solid_at(c + d)) return true;
    }
    return false;
}

ActionStatus World::place(const Bot& bot, const std::string& id, const Coord& at,
                          std::optional<Facing> facing) {
    const BlockDef* def = registry_->find(id);
    if (!def || id == kAirId) {
        return ActionStatus::fail(WorldError::unknown_block, "cannot place '" + id + "'");
    }
    if (chebyshev(bot.position, at) > bot.reach) {
        return ActionStatus::fail(WorldError::out_of_reach,
                                  "target is " + std::to_string(chebyshev(bot.position, at)) +
                                      " blocks away, reach is " + std::to_string(bot.reach));
    }
    if (!empty_at(at)) {
        return ActionStatus::fail(WorldError::occupied, "target cell is not empty");
    }
    if (def->solid && (at == bot.position || at == bot.position.up())) {
        return ActionStatus::fail(WorldError::occupied, "bot occupies the target cell");
    }
    if (!supported(at)) {
        return ActionStatus::fail(WorldError::floating, "no adjacent support");
    }

    PlacedBlock b;
    b.id = id;
    if (def->orientable) b.facing = facing.value_or(Facing::north);
    blocks_.emplace(at, std::move(b));
    redstone_update();
    return ActionStatus::success();
}

ActionStatus World::mine(Bot& bot, const Coord& at) {
    if (chebyshev(bot.position, at) > bot.reach) {
        return ActionStatus::fail(WorldError::out_of_reach, "target out of reach");
    }
    auto it = blocks_.find(at);
    if (it == blocks_.end()) {
        return ActionStatus::fail(WorldError::nothing_there, "no block at target");
    }
    blocks_.erase(it);
    redstone_update();
    settle(bot);
    return ActionStatus::success();
}

void World::advance_time(int ticks) {
    if (ticks < 0) throw std::invalid_argument("advance_time: negative ticks");
    time_ = int((std::int64_t(time_) + ticks) % kTicksPerDay);
    redstone_update();
}

void World::redstone_update() {
    const bool is_night = night();
    // sources first, then lamps; one pass reaches the fixpoint
    for (auto& [c, b] : blocks_) {
        const BlockDef* d = registry_->find(b.id);
        if (d && d->power_source) b.powered = is_night;
    }
    for (auto& [c, b] : blocks_) {
        const BlockDef* d = registry_->find(b.id);
        if (!d || !d->lamp) continue;
        bool lit = false;
        for (const Coord& n : face_neighbors()) {
            const PlacedBlock* nb = block_at(c + n);
            if (!nb) continue;
            const BlockDef* nd = registry_->find(nb->id);
            if (nd && nd->power_source && nb->powered) {
                lit = true;
                break;
            }
        }
        b.powered = lit;
    }
}

void World::settle(Bot& bot) const {
    while (!solid_at(bot.position.down())) {
        bot.position = bot.position.down();
    }
}

int ReachSet::distance(const Coord& c) const {
    auto it = dist.find(c);
    return it == dist.end() ? -1 : it->second;
}

std::vector<Coord> ReachSet::path_to(const Coord& c) const {
    std::vector<Coord> path;
    for (Coord cur = c; !(cur == start); cur = parent.at(cur)) path.push_back(cur);
    std::reverse(path.begin(), path.end());
    return path;
}

ReachSet World::reachable_from(const Bot& bot, std::optional<Coord> extra) const {
    // bound the search to the built-up region plus a margin so that an
    // unreachable goal terminates instead of flooding the infinite plane
    BoundingBox box{bot.position, bot.position};
    if (extra) box = box.merged(*extra);
    for (const auto& [c, b] : blocks_) box = box.merged(c);
    box = box.expanded(3, 0, 3);
    box.min.y = ground_y_ + 1;
    box.max.y += 4;

    ReachSet r;
    r.start = bot.position;
    std::deque<Coord> queue;
    r.parent.emplace(bot.position, bot.position);
    r.dist.emplace(bot.position, 0);
    queue.push_back(bot.position);

    static const std::array<std::pair<int, int>, 4> dirs = {{{-1, 0}, {0, -1}, {0, 1}, {1, 0}}};

    while (!queue.empty()) {
        Coord cur = queue.front();
        queue.pop_front();

        std::vector<Coord> next;
        for (auto [dx, dz] : dirs) {
            Coord col{cur.x + dx, cur.y, cur.z + dz};
            // step up one: needs headroom above the current cell
            if (standable(col.up()) && !solid_at(cur.offset(0, 2, 0))) next.push_back(col.up());
            // level walk
            if (standable(col)) next.push_back(col);
            // fall up to three: the whole drop column must be clear
            if (!solid_at(col.up()) && !solid_at(col)) {
                Coord c = col;
                for (int k = 1; k <= 3; ++k) {
                    c = c.down();
                    if (solid_at(c)) break;
                    if (standable(c)) {
                        next.push_back(c);
                        break;
                    }
                }
            }
        }
        std::sort(next.begin(), next.end(), YxzLess{});
        for (const Coord& n : next) {
            if (!box.contains(n)) continue;
            if (r.parent.count(n)) continue;
            r.parent.emplace(n, cur);
            r.dist.emplace(n, r.dist.at(cur) + 1);
            queue.push_back(n);
        }
    }
    return r;
}

std::optional<std::vector<Coord>> World::pathfind(const Bot& bot, const Coord& goal) const {
    if (!standable(goal)) return std::nullopt;
    if (goal == bot.position) return std::vector<Coord>{};
    ReachSet r = reachable_from(bot, goal);
    if (!r.reachable(goal)) return std::nullopt;
    return r.path_to(goal);
}

void World::set_block(const Coord& c, const std::string& id, std::optional<Facing> facing) {
    if (id == kAirId) throw std::invalid_argument("set_block: air is stored as absence");
    const BlockDef* def = registry_->find(id);
    if (!def) throw std::invalid_argument("set_block: unknown block '" + id + "'");
    PlacedBlock b;
    b.id = id;
    if (def->orientable) b.facing = facing.value_or(Facing::north);
    blocks_[c] = std::move(b);
}

void World::clear_block(const Coord& c) { blocks_.erase(c); }

nlohmann::json World::snapshot() const {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& [c, b] : blocks_) {  // map order is (y,x,z)
        nlohmann::json e;
        e["x"] = c.x;
        e["y"] = c.y;
        e["z"] = c.z;
        e["id"] = b.id;
        e["facing"] = b.facing ? nlohmann::json(to_string(*b.facing)) : nlohmann::json(nullptr);
        blocks.push_back(std::move(e));
    }
    nlohmann::json j;
    j["time"] = time_;
    j["ground_y"] = ground_y_;
    j["blocks"] = std::move(blocks);
    return j;
}

World World::from_snapshot(const nlohmann::json& j, const BlockRegistry* registry) {
    World w(j.at("ground_y").get<int>(), registry);
    w.time_ = j.at("time").get<int>();
    for (const auto& e : j.at("blocks")) {
        Coord c{e.at("x").get<int>(), e.at("y").get<int>(), e.at("z").get<int>()};
        std::optional<Facing> f;
        if (e.contains("facing") && !e.at("facing").is_null()) {
            f = facing_from_string(e.at("facing").get<std::string>());
        }
        w.set_block(c, e.at("id").get<std::string>(), f);
    }
    w.redstone_update();
    return w;
}

}  // namespace voxelsmith
