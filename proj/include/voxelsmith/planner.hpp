#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "voxelsmith/blueprint.hpp"
#include "voxelsmith/world.hpp"

namespace voxelsmith {

namespace actions {

struct Move {
    std::vector<Coord> path;  // consecutive feet cells, start excluded
};
struct Place {
    std::string block;
    Coord at;
    std::optional<Facing> facing;
};
struct Mine {
    Coord at;
};
struct ScaffoldPlace {
    Coord at;  // the bot's feet cell; it jumps and the block fills it
};
struct ScaffoldRemove {
    Coord at;
};

}  // namespace actions

using Action =
    std::variant<actions::Move, actions::Place, actions::Mine, actions::ScaffoldPlace,
                 actions::ScaffoldRemove>;

struct ActionPlan {
    std::vector<Action> actions;
    int scaffold_budget = 256;
};

struct PlannerConfig {
    bool scaffold_enabled = true;
    int scaffold_budget = 256;  // cap on concurrently standing temporary blocks
};

enum class PlanErrorKind { unplannable, scaffold_budget_exceeded };

struct PlanError {
    PlanErrorKind kind;
    std::size_t placement_index;  // index into the ordered placement list
    Placement placement;
    std::string message;
};

struct PlanResult {
    ActionPlan plan;
    std::optional<PlanError> error;
    int scaffold_places = 0;
    int scaffold_peak = 0;

    bool ok() const { return !error.has_value(); }
};

/// Build order: structural blocks before furnishing, low layers before high,
/// each layer growing outward from the footprint centroid. Fully
/// deterministic; ties resolve by (x,z).
std::vector<Placement> order_placements(const Blueprint& bp,
                                        const BlockRegistry& registry = default_registry());

/// Turns a blueprint into a primitive-action plan against a snapshot of the
/// world. Placements the bot cannot reach get a scaffold pillar in an
/// adjacent column (pillar-jumping); pillars are torn down in reverse order
/// whenever the bot leaves them, so no temporary block survives the plan.
PlanResult plan(const World& world, const Bot& bot, const Coord& origin, const Blueprint& bp,
                const PlannerConfig& config = {});

struct ActionFailure {
    std::size_t index;
    std::string message;
};

struct ExecutionReport {
    bool success = true;
    std::vector<ActionFailure> failures;
    std::size_t actions_total = 0;
    std::size_t actions_executed = 0;  // stops at the first hard failure
    int scaffold_places = 0;
    int scaffold_removes = 0;
    int scaffold_peak = 0;
};

/// Replays a plan, validating every step against the world rules; halts at the
/// first failure and reports it for the reflection loop.
ExecutionReport execute(const ActionPlan& plan, World& world, Bot& bot);

/// One action per line, for golden-trace comparisons.
std::string plan_trace_jsonl(const ActionPlan& plan);

}  // namespace voxelsmith
