#include "voxelsmith/planner.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include <json.hpp>

namespace voxelsmith {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// One walking step under the movement rules: one cell horizontally with a
/// height change in [-3, +1], headroom when climbing, a clear column when
/// dropping.
std::optional<std::string> step_problem(const World& w, const Coord& from, const Coord& to) {
    const int dx = to.x - from.x;
    const int dy = to.y - from.y;
    const int dz = to.z - from.z;
    if (std::abs(dx) + std::abs(dz) != 1 || dy < -3 || dy > 1) {
        return "illegal displacement";
    }
    if (!w.standable(to)) return "destination is not standable";
    if (dy == 1 && w.solid_at(from.offset(0, 2, 0))) return "no headroom to climb";
    if (dy < 0) {
        for (int y = to.y + 1; y <= from.y + 1; ++y) {
            if (w.solid_at({to.x, y, to.z})) return "drop column is blocked";
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<Placement> order_placements(const Blueprint& bp, const BlockRegistry& registry) {
    const long long n = static_cast<long long>(bp.placements.size());
    long long sum_x = 0;
    long long sum_z = 0;
    for (const Placement& p : bp.placements) {
        sum_x += p.offset.x;
        sum_z += p.offset.z;
    }

    struct Entry {
        int phase;
        long long centroid_dist;  // Manhattan distance scaled by n to stay integral
        Placement placement;
    };
    std::vector<Entry> entries;
    entries.reserve(bp.placements.size());
    for (const Placement& p : bp.placements) {
        const BlockDef* def = registry.find(p.block);
        const bool furnishing = def != nullptr && (def->furniture || def->orientable);
        const long long dist = std::llabs(static_cast<long long>(p.offset.x) * n - sum_x) +
                               std::llabs(static_cast<long long>(p.offset.z) * n - sum_z);
        entries.push_back({furnishing ? 1 : 0, dist, p});
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tuple(a.phase, a.placement.offset.y, a.centroid_dist, a.placement.offset.x,
                          a.placement.offset.z) <
               std::tuple(b.phase, b.placement.offset.y, b.centroid_dist, b.placement.offset.x,
                          b.placement.offset.z);
    });

    std::vector<Placement> out;
    out.reserve(entries.size());
    for (Entry& e : entries) out.push_back(std::move(e.placement));
    return out;
}

PlanResult plan(const World& world, const Bot& bot, const Coord& origin, const Blueprint& bp,
                const PlannerConfig& config) {
    PlanResult result;
    result.plan.scaffold_budget = config.scaffold_budget;

    World w = world;  // simulate on copies; the caller's world is untouched
    Bot b = bot;
    w.settle(b);
    const BlockRegistry& reg = w.registry();
    const std::vector<Placement> ordered = order_placements(bp, reg);

    std::vector<Coord> pillar;  // active scaffold pillar, bottom-up

    auto emit = [&](Action a) { result.plan.actions.push_back(std::move(a)); };

    // Tear the active pillar down top-first; the bot rides it to the ground.
    auto leave_pillar = [&]() {
        while (!pillar.empty()) {
            Coord cell = pillar.back();
            pillar.pop_back();
            emit(actions::ScaffoldRemove{cell});
            w.mine(b, cell);
        }
    };

    auto fail = [&](PlanErrorKind kind, std::size_t index, const Placement& p,
                    std::string message) {
        result.error = PlanError{kind, index, p, std::move(message)};
        return result;
    };

    for (std::size_t i = 0; i < ordered.size(); ++i) {
        const Placement& p = ordered[i];
        const Coord target = origin + p.offset;
        const BlockDef* def = reg.find(p.block);
        if (def == nullptr) {
            return fail(PlanErrorKind::unplannable, i, p, "unknown block '" + p.block + "'");
        }
        const std::optional<Facing> facing =
            def->orientable ? std::optional(p.facing.value_or(Facing::north)) : std::nullopt;

        if (w.block_at(target) != nullptr) {
            // a cell held by our own pillar frees up on teardown
            if (std::find(pillar.begin(), pillar.end(), target) == pillar.end()) {
                return fail(PlanErrorKind::unplannable, i, p, "target cell is already occupied");
            }
            leave_pillar();
        }
        if (!w.has_open_face(target)) {
            return fail(PlanErrorKind::unplannable, i, p, "cell is sealed on all six faces");
        }

        auto can_place_from = [&](const Coord& feet) {
            if (!w.standable(feet)) return false;
            if (chebyshev(feet, target) > b.reach) return false;
            if (def->solid && (target == feet || target == feet.up())) return false;
            return true;
        };
        auto place_from_here = [&]() {
            if (!can_place_from(b.position) || !w.supported(target)) return false;
            emit(actions::Place{p.block, target, facing});
            return w.place(b, p.block, target, facing).ok;
        };

        if (place_from_here()) continue;

        if (w.supported(target)) {
            if (!pillar.empty()) {
                leave_pillar();
                if (place_from_here()) continue;
            }
            ReachSet r = w.reachable_from(b, target);
            std::optional<Coord> best;
            int best_dist = 0;
            for (const auto& [cell, par] : r.parent) {
                if (!can_place_from(cell)) continue;
                const int d = r.dist.at(cell);
                if (!best || d < best_dist || (d == best_dist && YxzLess{}(cell, *best))) {
                    best = cell;
                    best_dist = d;
                }
            }
            if (best) {
                if (!(*best == b.position)) {
                    emit(actions::Move{r.path_to(*best)});
                    b.position = *best;
                }
                if (place_from_here()) continue;
                return fail(PlanErrorKind::unplannable, i, p,
                            "placement failed from chosen standing cell");
            }
        } else {
            leave_pillar();
        }

        if (!config.scaffold_enabled) {
            return fail(PlanErrorKind::unplannable, i, p,
                        "unreachable on foot and scaffolding is disabled");
        }

        // Scaffold route: climb a pillar in a nearby column. Face-adjacent
        // columns can lend side support to a floating target; farther columns
        // only help cells that already have support.
        const bool target_supported = w.supported(target);
        std::vector<std::pair<int, int>> columns;
        static const std::array<std::pair<int, int>, 4> kAdjacent = {
            {{-1, 0}, {0, -1}, {0, 1}, {1, 0}}};
        for (auto [dx, dz] : kAdjacent) columns.emplace_back(target.x + dx, target.z + dz);
        if (target_supported) {
            for (int d = 2; d <= b.reach; ++d) {
                for (int dx = -d; dx <= d; ++dx) {
                    for (int dz = -d; dz <= d; ++dz) {
                        if (std::max(std::abs(dx), std::abs(dz)) != d) continue;
                        columns.emplace_back(target.x + dx, target.z + dz);
                    }
                }
            }
        }

        ReachSet r = w.reachable_from(b, target);
        bool done = false;
        std::optional<std::string> budget_note;
        for (auto [qx, qz] : columns) {
            std::optional<Coord> base;  // highest walkable cell in the column
            for (const auto& [cell, par] : r.parent) {
                if (cell.x != qx || cell.z != qz) continue;
                if (!base || cell.y > base->y) base = cell;
            }
            if (!base) continue;
            const int d_horiz = std::max(std::abs(qx - target.x), std::abs(qz - target.z));
            int fy = std::max(base->y, target.y + 2 - d_horiz);
            if (!target_supported) {
                // the pillar must pass through the target's height so its top
                // block becomes the side support
                if (base->y > target.y) continue;
                fy = target.y + 1;
            }
            if (std::max(d_horiz, std::abs(fy - target.y)) > b.reach) continue;
            bool clear = true;
            for (int y = base->y; y <= fy + 1 && clear; ++y) {
                if (!w.empty_at({qx, y, qz})) clear = false;
            }
            if (!clear) continue;
            const int height = fy - base->y;
            if (height > config.scaffold_budget) {
                budget_note = "pillar of " + std::to_string(height) +
                              " scaffolds exceeds the budget of " +
                              std::to_string(config.scaffold_budget);
                continue;
            }

            if (!(*base == b.position)) {
                emit(actions::Move{r.path_to(*base)});
                b.position = *base;
            }
            for (int y = base->y; y < fy; ++y) {
                Coord cell{qx, y, qz};
                emit(actions::ScaffoldPlace{cell});
                b.position = b.position.up();  // jump first, the block fills the old feet cell
                w.place(b, std::string(kScaffoldId), cell);
                pillar.push_back(cell);
                ++result.scaffold_places;
            }
            result.scaffold_peak = std::max(result.scaffold_peak, static_cast<int>(pillar.size()));
            done = place_from_here();
            break;
        }
        if (!done) {
            if (budget_note) {
                return fail(PlanErrorKind::scaffold_budget_exceeded, i, p, *budget_note);
            }
            return fail(PlanErrorKind::unplannable, i, p, "no usable scaffold column");
        }
    }

    leave_pillar();
    return result;
}

ExecutionReport execute(const ActionPlan& plan, World& world, Bot& bot) {
    ExecutionReport rep;
    rep.actions_total = plan.actions.size();
    int standing = 0;

    for (std::size_t i = 0; i < plan.actions.size(); ++i) {
        std::optional<std::string> problem = std::visit(
            overloaded{
                [&](const actions::Move& m) -> std::optional<std::string> {
                    Coord cur = bot.position;
                    for (const Coord& step : m.path) {
                        if (auto why = step_problem(world, cur, step)) {
                            return "move: " + *why + " at " + step.to_string();
                        }
                        cur = step;
                    }
                    bot.position = cur;
                    return std::nullopt;
                },
                [&](const actions::Place& a) -> std::optional<std::string> {
                    ActionStatus st = world.place(bot, a.block, a.at, a.facing);
                    if (!st) {
                        return "place " + a.block + " at " + a.at.to_string() + ": " +
                               std::string(to_string(st.error)) + " (" + st.detail + ")";
                    }
                    return std::nullopt;
                },
                [&](const actions::Mine& a) -> std::optional<std::string> {
                    ActionStatus st = world.mine(bot, a.at);
                    if (!st) {
                        return "mine at " + a.at.to_string() + ": " +
                               std::string(to_string(st.error)) + " (" + st.detail + ")";
                    }
                    return std::nullopt;
                },
                [&](const actions::ScaffoldPlace& a) -> std::optional<std::string> {
                    if (!(a.at == bot.position)) {
                        return "scaffold_place at " + a.at.to_string() +
                               ": bot must stand in the cell before jumping";
                    }
                    if (world.solid_at(bot.position.offset(0, 2, 0))) {
                        return "scaffold_place at " + a.at.to_string() + ": no headroom to jump";
                    }
                    if (standing + 1 > plan.scaffold_budget) {
                        return "scaffold_place at " + a.at.to_string() +
                               ": scaffold budget exceeded";
                    }
                    Bot raised = bot;
                    raised.position = bot.position.up();
                    ActionStatus st = world.place(raised, std::string(kScaffoldId), a.at);
                    if (!st) {
                        return "scaffold_place at " + a.at.to_string() + ": " +
                               std::string(to_string(st.error)) + " (" + st.detail + ")";
                    }
                    bot = raised;
                    ++standing;
                    ++rep.scaffold_places;
                    rep.scaffold_peak = std::max(rep.scaffold_peak, standing);
                    return std::nullopt;
                },
                [&](const actions::ScaffoldRemove& a) -> std::optional<std::string> {
                    const PlacedBlock* blk = world.block_at(a.at);
                    const BlockDef* def = blk ? world.registry().find(blk->id) : nullptr;
                    if (def == nullptr || !def->scaffold) {
                        return "scaffold_remove at " + a.at.to_string() +
                               ": no scaffold block there";
                    }
                    ActionStatus st = world.mine(bot, a.at);
                    if (!st) {
                        return "scaffold_remove at " + a.at.to_string() + ": " +
                               std::string(to_string(st.error)) + " (" + st.detail + ")";
                    }
                    --standing;
                    ++rep.scaffold_removes;
                    return std::nullopt;
                },
            },
            plan.actions[i]);

        if (problem) {
            rep.success = false;
            rep.failures.push_back({i, std::move(*problem)});
            break;
        }
        ++rep.actions_executed;
    }
    return rep;
}

std::string plan_trace_jsonl(const ActionPlan& plan) {
    std::string out;
    for (const Action& a : plan.actions) {
        nlohmann::json j;
        auto put_at = [&](const Coord& c) {
            j["x"] = c.x;
            j["y"] = c.y;
            j["z"] = c.z;
        };
        std::visit(overloaded{
                       [&](const actions::Move& m) {
                           j["action"] = "move";
                           nlohmann::json path = nlohmann::json::array();
                           for (const Coord& c : m.path) path.push_back({c.x, c.y, c.z});
                           j["path"] = std::move(path);
                       },
                       [&](const actions::Place& p) {
                           j["action"] = "place";
                           j["block"] = p.block;
                           put_at(p.at);
                           if (p.facing) j["facing"] = to_string(*p.facing);
                       },
                       [&](const actions::Mine& m) {
                           j["action"] = "mine";
                           put_at(m.at);
                       },
                       [&](const actions::ScaffoldPlace& s) {
                           j["action"] = "scaffold_place";
                           put_at(s.at);
                       },
                       [&](const actions::ScaffoldRemove& s) {
                           j["action"] = "scaffold_remove";
                           put_at(s.at);
                       },
                   },
                   a);
        out += j.dump();
        out += '\n';
    }
    return out;
}

}  // namespace voxelsmith
