#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "voxelsmith/llm.hpp"
#include "voxelsmith/pipeline.hpp"
#include "voxelsmith/world.hpp"

namespace voxelsmith::bench {

inline const std::vector<std::string>& all_aspects() {
    static const std::vector<std::string> a = {"Correctness", "Complexity", "Creativity",
                                               "Functionality"};
    return a;
}

struct TaskSpec {
    std::string name;
    std::string instruction;
    std::string image_ref;
    std::vector<std::string> applicable_aspects;  // non-empty subset of all_aspects()
    std::string checker;                          // structural_check key
    int trials = 10;
    std::string assumption;  // note on the declared aspect mapping
};

TaskSpec taskspec_from_json(const nlohmann::json& j);
TaskSpec taskspec_from_file(const std::string& path);
TaskInput to_task_input(const TaskSpec& spec);

struct EvalScore {
    std::map<std::string, int> per_aspect;  // applicable aspects only, 0-10
    int total = 0;
    double percentage = 0.0;  // total / (10 * aspects) * 100
};

EvalScore make_eval_score(const std::map<std::string, int>& raw_scores,
                          const std::vector<std::string>& applicable_aspects);

struct ScoreParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rubric evaluation of a finished build. The judge sees the evaluation
/// prompt with the instruction and the serialized views in the image slot
/// (plus a real image when the client supports one); free-text score parsing
/// falls back to one JSON-mode re-ask before ScoreParseError.
EvalScore judge(LlmClient& client, const TaskSpec& spec, const std::string& views_text,
                std::optional<std::string> image_path = std::nullopt);

struct CheckReport {
    std::vector<std::string> passes;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Deterministic per-task predicates over the world snapshot; `checker` is
/// the TaskSpec checker key (wooden_house, snow_pyramid, watchtower, mansion,
/// village_house).
CheckReport structural_check(const std::string& checker, const World& world,
                             const Coord& origin);
bool checker_known(const std::string& checker);

struct TrialResult {
    double percentage = 0.0;
    bool failed = false;  // run crashed; percentage forced to 0
    std::string note;
    std::string aspects;  // e.g. "Correctness=9;Creativity=8"
};

struct AblationCell {
    bool memory = false;
    bool reflection = false;
    double mean_pct = 0.0;
    double stddev_pct = 0.0;  // sample stddev; 0 when n < 2
    int n_trials = 0;
    int failures = 0;
    std::vector<TrialResult> trials;  // flattened task-major, trial-minor
};

struct AblationDelta {
    std::string label;
    double baseline_mean = 0.0;
    double variant_mean = 0.0;
    double relative_pct = 0.0;  // (variant - baseline) / baseline * 100
    double absolute_pts = 0.0;  // variant - baseline
};

struct AblationReport {
    std::vector<AblationCell> cells;  // fixed order: FF, FT, TF, TT
    std::vector<AblationDelta> deltas;
    std::string table_text;
    std::string csv;  // cell,task,trial,percentage,failed,aspects
};

/// One benchmark attempt under a given configuration; throwing records a
/// 0-score trial with the failure flag set.
using TrialRunner = std::function<TrialResult(const TaskSpec& spec, bool memory, bool reflection,
                                              int trial)>;

/// Grid {memory off/on} x {reflection off/on}, `trials` runs per task per
/// cell. Per-run failures become 0-score trials with a failure flag; the grid
/// never aborts.
AblationReport run_ablation(const std::vector<TaskSpec>& tasks, int trials,
                            const TrialRunner& runner);

}  // namespace voxelsmith::bench
