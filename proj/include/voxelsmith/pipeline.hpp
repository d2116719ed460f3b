#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "voxelsmith/dsl.hpp"
#include "voxelsmith/llm.hpp"
#include "voxelsmith/memory.hpp"
#include "voxelsmith/planner.hpp"
#include "voxelsmith/reflection.hpp"
#include "voxelsmith/world.hpp"

namespace voxelsmith {

struct TaskConfig {
    bool memory = true;
    int max_reflections = 1;
    double temperature = 0.0;
};

struct TaskInput {
    std::string name;
    std::string instruction;
    std::string image_ref;  // empty = text-only task
    TaskConfig config;
};

TaskInput task_from_json(const nlohmann::json& j);
TaskInput task_from_file(const std::string& path);

struct LayoutSynopsis {
    std::string components_positioning;
    std::string dimensional_layout;
    std::string description_sequence;
    std::string raw;
};

struct MultimodalUnsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SectionMissing : std::runtime_error {
    explicit SectionMissing(const std::string& section)
        : std::runtime_error("synopsis response is missing the section '" + section + "'"),
          section(section) {}
    std::string section;
};

/// Stage one: render the layout-synopsis prompt, split the response into its
/// three sections; one structured-repair retry before SectionMissing.
LayoutSynopsis synopsis(LlmClient& client, const TaskInput& task);

struct GeneratedBlueprint {
    std::string dsl_text;
    std::optional<dsl::Program> program;  // empty when the DSL still fails after repair
    std::string dsl_error;                // the surviving parse error, if any
};

/// Stage two: blueprint generation from the synopsis plus retrieved plans.
/// The response must be a compact JSON object with key "code"; shape errors
/// get one repair retry (then JsonShapeError), DSL errors get one repair
/// retry quoting the parser message (then surfaced in the result).
GeneratedBlueprint generate_blueprint(LlmClient& client, const LayoutSynopsis& syn,
                                      const std::vector<RetrievedRecord>& retrieved,
                                      const BlockRegistry& registry, double temperature);

struct RoundReport {
    int round = 0;  // 0 = initial attempt, n = after the nth reflection
    std::string dsl_text;
    std::string dsl_error;                       // parse/compile failure
    std::vector<std::string> validate_errors;    // blueprint violations
    bool plan_ok = false;
    std::string plan_error;
    bool exec_ok = false;
    std::string exec_error;
    std::size_t diff_count = 0;
    std::vector<std::string> diff_details;
    std::vector<std::string> check_failures;  // injected post-build check
    bool clean() const;
};

struct BuildResult {
    std::string task_name;
    bool success = false;
    int reflections_used = 0;
    std::string error;  // fatal pipeline error; rounds may be partial
    std::string final_dsl;
    Blueprint blueprint;
    std::size_t actions_total = 0;
    int scaffold_places = 0;
    int scaffold_removes = 0;
    int scaffold_peak = 0;
    std::vector<RoundReport> rounds;

    /// Deterministic: stable key order, no timestamps, nothing
    /// retrieval-dependent.
    nlohmann::json to_json() const;
};

struct RunHooks {
    /// Extra acceptance gate after a structurally consistent build (used to
    /// hook the benchmark checkers in); failure strings trigger reflection.
    std::function<std::vector<std::string>(const World&, const Coord&)> post_check;
    /// Views of each imperfect build, before the world resets for a retry.
    std::function<void(int round, const ViewSet&)> on_views;
    std::function<void(const std::string& stage, const std::string& note)> log;
    /// When set and the client accepts images, reflection rounds attach this
    /// freshly rendered file.
    std::function<std::string(int round, const World&, const BoundingBox&)> render_image;
};

struct RunOptions {
    std::size_t top_k = 1;
    PlannerConfig planner;
    RunHooks hooks;
};

/// Full pipeline: synopsis, retrieval, generation, compile, validate, plan,
/// execute, diff, bounded reflection loop; the world resets to its entry
/// snapshot before every rebuild. Successful builds are stored to memory when
/// enabled. Stage failures land in BuildResult; only unrecoverable harness
/// errors (transcript mismatch, synopsis failure, JSON shape after repair)
/// set BuildResult.error.
BuildResult run_task(LlmClient& client, const TaskInput& task, World& world, Bot& bot,
                     const Coord& origin, MemoryPool* memory, const RunOptions& opts = {});

}  // namespace voxelsmith
