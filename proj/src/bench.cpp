#include "voxelsmith/bench.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "voxelsmith/prompts.hpp"
#include "voxelsmith/stats.hpp"

namespace voxelsmith::bench {

TaskSpec taskspec_from_json(const nlohmann::json& j) {
    TaskSpec s;
    s.name = j.at("name").get<std::string>();
    s.instruction = j.value("instruction", "");
    if (j.contains("image_ref") && !j.at("image_ref").is_null()) {
        s.image_ref = j.at("image_ref").get<std::string>();
    }
    s.applicable_aspects = j.at("applicable_aspects").get<std::vector<std::string>>();
    if (s.applicable_aspects.empty()) {
        throw std::runtime_error("task '" + s.name + "': applicable_aspects must be non-empty");
    }
    for (const std::string& a : s.applicable_aspects) {
        if (std::find(all_aspects().begin(), all_aspects().end(), a) == all_aspects().end()) {
            throw std::runtime_error("task '" + s.name + "': unknown aspect '" + a + "'");
        }
    }
    s.checker = j.at("checker").get<std::string>();
    if (!checker_known(s.checker)) {
        throw std::runtime_error("task '" + s.name + "': unknown checker '" + s.checker + "'");
    }
    s.trials = j.value("trials", 10);
    s.assumption = j.value("assumption", "");
    return s;
}

TaskSpec taskspec_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open task file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("task file " + path + ": " + e.what());
    }
    return taskspec_from_json(j);
}

TaskInput to_task_input(const TaskSpec& spec) {
    TaskInput t;
    t.name = spec.name;
    t.instruction = spec.instruction;
    t.image_ref = spec.image_ref;
    return t;
}

EvalScore make_eval_score(const std::map<std::string, int>& raw_scores,
                          const std::vector<std::string>& applicable_aspects) {
    EvalScore s;
    for (const std::string& aspect : applicable_aspects) {
        auto it = raw_scores.find(aspect);
        if (it == raw_scores.end()) {
            throw ScoreParseError("no score for aspect '" + aspect + "'");
        }
        if (it->second < 0 || it->second > 10) {
            throw ScoreParseError("aspect '" + aspect + "' scored " +
                                  std::to_string(it->second) + ", outside 0-10");
        }
        s.per_aspect[aspect] = it->second;
        s.total += it->second;
    }
    s.percentage = double(s.total) / (10.0 * double(applicable_aspects.size())) * 100.0;
    return s;
}

namespace {

// free text: the first standalone integer 0-10 within a short window after
// the aspect name
std::optional<int> scan_score(const std::string& text, const std::string& aspect) {
    auto lower = [](std::string s) {
        for (char& c : s) c = char(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };
    const std::string hay = lower(text);
    const std::string needle = lower(aspect);
    std::size_t pos = hay.find(needle);
    while (pos != std::string::npos) {
        const std::size_t window_end = std::min(hay.size(), pos + needle.size() + 40);
        for (std::size_t i = pos + needle.size(); i < window_end; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(hay[i]))) continue;
            std::size_t j = i;
            int v = 0;
            while (j < window_end && std::isdigit(static_cast<unsigned char>(hay[j]))) {
                v = v * 10 + (hay[j] - '0');
                ++j;
            }
            if (v <= 10) return v;
            // "...score of 10/10" never exceeds 10; larger runs are noise
            i = j;
        }
        pos = hay.find(needle, pos + 1);
    }
    return std::nullopt;
}

std::optional<std::map<std::string, int>> scores_from_json(const std::string& response) {
    nlohmann::json j = nlohmann::json::parse(response, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    std::map<std::string, int> out;
    for (const std::string& aspect : all_aspects()) {
        std::string key = aspect;
        for (char& c : key) c = char(std::tolower(static_cast<unsigned char>(c)));
        if (j.contains(key) && j.at(key).is_number()) {
            out[aspect] = j.at(key).get<int>();
        }
    }
    if (out.empty()) return std::nullopt;
    return out;
}

std::map<std::string, int> scores_from_text(const std::string& response) {
    std::map<std::string, int> out;
    if (auto js = scores_from_json(response)) {
        out = *js;
    } else {
        for (const std::string& aspect : all_aspects()) {
            if (auto v = scan_score(response, aspect)) out[aspect] = *v;
        }
    }
    return out;
}

bool covers(const std::map<std::string, int>& scores,
            const std::vector<std::string>& aspects) {
    return std::all_of(aspects.begin(), aspects.end(),
                       [&](const std::string& a) { return scores.count(a) != 0; });
}

}  // namespace

EvalScore judge(LlmClient& client, const TaskSpec& spec, const std::string& views_text,
                std::optional<std::string> image_path) {
    ChatMessage msg{"user", prompts::render_evaluation(spec.instruction, views_text),
                    std::nullopt};
    if (image_path && client.supports_images()) msg.image_path = image_path;
    CompletionOpts opts;
    std::vector<ChatMessage> messages{msg};
    std::string response = client.complete(messages, opts);
    std::map<std::string, int> scores = scores_from_text(response);
    if (!covers(scores, spec.applicable_aspects)) {
        messages.push_back({"assistant", response, std::nullopt});
        messages.push_back({"user",
                            "Respond again as a single-line compact JSON object with integer "
                            "values for the keys 'correctness', 'complexity', 'creativity', "
                            "'functionality' and 'total'.",
                            std::nullopt});
        CompletionOpts retry = opts;
        retry.json_mode = true;
        response = client.complete(messages, retry);
        auto js = scores_from_json(response);
        if (!js || !covers(*js, spec.applicable_aspects)) {
            throw ScoreParseError("judge response carries no parseable aspect scores "
                                  "after one JSON-mode retry");
        }
        scores = *js;
    }
    return make_eval_score(scores, spec.applicable_aspects);
}

// ---------------------------------------------------------------------------
// structural checkers

namespace {

struct Snapshot {
    std::vector<std::pair<Coord, PlacedBlock>> blocks;
    BoundingBox box{{0, 0, 0}, {0, 0, 0}};
    bool empty = true;
};

Snapshot gather(const World& world) {
    Snapshot s;
    for (const auto& [c, b] : world.blocks()) {
        if (s.empty) {
            s.box = {c, c};
            s.empty = false;
        } else {
            s.box = s.box.merged(c);
        }
        s.blocks.emplace_back(c, b);
    }
    return s;
}

void require(CheckReport& r, bool ok, const std::string& what) {
    if (ok) {
        r.passes.push_back(what);
    } else {
        r.failures.push_back(what);
    }
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(),
                                                 suffix) == 0;
}

CheckReport check_wooden_house(const World& world, const Coord&) {
    CheckReport r;
    Snapshot s = gather(world);
    if (s.empty) {
        r.failures.push_back("structure present");
        return r;
    }
    require(r, s.box.size_x() <= 8 && s.box.size_z() <= 8,
            "footprint within 8x8 (got " + std::to_string(s.box.size_x()) + "x" +
                std::to_string(s.box.size_z()) + ")");
    bool door = false, window = false;
    bool bed_inside = false, table_inside = false;
    for (const auto& [c, b] : s.blocks) {
        if (ends_with(b.id, "_door")) door = true;
        if (b.id == "glass" || b.id == "glass_pane") window = true;
        const bool inside = c.x > s.box.min.x && c.x < s.box.max.x && c.z > s.box.min.z &&
                            c.z < s.box.max.z;
        if (b.id == "bed" && inside) bed_inside = true;
        if (b.id == "crafting_table" && inside) table_inside = true;
    }
    require(r, door, "has a door");
    require(r, window, "has a glass window");
    require(r, bed_inside, "bed strictly inside the walls");
    require(r, table_inside, "crafting table strictly inside the walls");
    return r;
}

CheckReport check_snow_pyramid(const World& world, const Coord&) {
    static const std::set<std::string> family = {"snow_block", "snow",      "ice",
                                                 "packed_ice", "blue_ice"};
    CheckReport r;
    Snapshot s = gather(world);
    if (s.empty) {
        r.failures.push_back("structure present");
        return r;
    }
    std::set<std::string> offenders;
    std::map<int, BoundingBox> layers;
    for (const auto& [c, b] : s.blocks) {
        if (!family.count(b.id)) offenders.insert(b.id);
        auto it = layers.find(c.y);
        if (it == layers.end()) {
            layers.emplace(c.y, BoundingBox{c, c});
        } else {
            it->second = it->second.merged(c);
        }
    }
    std::string off;
    for (const std::string& o : offenders) off += (off.empty() ? "" : ", ") + o;
    require(r, offenders.empty(), "all blocks in the snow/ice families" +
                                      (off.empty() ? "" : " (found " + off + ")"));
    bool decreasing = true;
    int prev_side = 0;
    bool first = true;
    for (const auto& [y, box] : layers) {  // ascending y
        const int side = std::max(box.size_x(), box.size_z());
        if (!first && side >= prev_side) decreasing = false;
        prev_side = side;
        first = false;
    }
    require(r, decreasing, "layer sides strictly decreasing with height");
    return r;
}

CheckReport check_watchtower(const World& world, const Coord&) {
    CheckReport r;
    Snapshot s = gather(world);
    if (s.empty) {
        r.failures.push_back("structure present");
        return r;
    }
    require(r, s.box.size_y() >= 12,
            "height at least 12 (got " + std::to_string(s.box.size_y()) + ")");
    bool lamp = false, sensor = false;
    for (const auto& [c, b] : s.blocks) {
        const BlockDef* d = world.registry().find(b.id);
        if (d && d->lamp) lamp = true;
        if (d && d->power_source) sensor = true;
    }
    require(r, lamp, "has a redstone lamp");
    require(r, sensor, "has a daylight sensor");

    auto lamps_lit = [](World w, int tick) {
        const int delta = ((tick - w.time()) % kTicksPerDay + kTicksPerDay) % kTicksPerDay;
        w.advance_time(delta);
        int lit = 0;
        for (const auto& [c, b] : w.blocks()) {
            const BlockDef* d = w.registry().find(b.id);
            if (d && d->lamp && b.powered) ++lit;
        }
        return lit;
    };
    require(r, lamps_lit(world, 18000) > 0, "a lamp lights up at tick 18000");
    require(r, lamps_lit(world, 6000) == 0, "no lamp is lit at tick 6000");
    return r;
}

CheckReport check_mansion(const World& world, const Coord&) {
    CheckReport r;
    Snapshot s = gather(world);
    if (s.empty) {
        r.failures.push_back("structure present");
        return r;
    }
    const int area = s.box.size_x() * s.box.size_z();
    std::map<int, int> solid_per_level;
    bool flower = false, chimney = false;
    for (const auto& [c, b] : s.blocks) {
        const BlockDef* d = world.registry().find(b.id);
        if (d && d->solid) solid_per_level[c.y] += 1;
        if (b.id == "poppy" || b.id == "dandelion") flower = true;
        if (b.id == "bricks" || b.id == "campfire") chimney = true;
    }
    std::vector<int> slabs;  // levels covering at least half the footprint
    for (const auto& [y, count] : solid_per_level) {
        if (count * 2 >= area) slabs.push_back(y);
    }
    require(r, slabs.size() == 2,
            "exactly two floor slabs (got " + std::to_string(slabs.size()) + ")");
    if (slabs.size() == 2) {
        require(r, slabs[1] - slabs[0] >= 4,
                "floors separated by at least 3 air rows (got " +
                    std::to_string(std::max(0, slabs[1] - slabs[0] - 1)) + ")");
    }
    require(r, flower, "has a flower (poppy or dandelion)");
    require(r, chimney, "has a chimney block (bricks or campfire)");
    return r;
}

CheckReport check_village_house(const World& world, const Coord&) {
    static const std::set<std::string> palette = {"torch", "cobblestone", "oak_log",
                                                  "oak_planks"};
    CheckReport r;
    Snapshot s = gather(world);
    if (s.empty) {
        r.failures.push_back("structure present");
        return r;
    }
    std::set<std::string> offenders;
    for (const auto& [c, b] : s.blocks) {
        if (!palette.count(b.id)) offenders.insert(b.id);
    }
    std::string off;
    for (const std::string& o : offenders) off += (off.empty() ? "" : ", ") + o;
    require(r, offenders.empty(),
            "palette restricted to torch/cobblestone/oak_log/oak_planks" +
                (off.empty() ? "" : " (found " + off + ")"));
    return r;
}

}  // namespace

bool checker_known(const std::string& checker) {
    return checker == "wooden_house" || checker == "snow_pyramid" ||
           checker == "watchtower" || checker == "mansion" || checker == "village_house";
}

CheckReport structural_check(const std::string& checker, const World& world,
                             const Coord& origin) {
    if (checker == "wooden_house") return check_wooden_house(world, origin);
    if (checker == "snow_pyramid") return check_snow_pyramid(world, origin);
    if (checker == "watchtower") return check_watchtower(world, origin);
    if (checker == "mansion") return check_mansion(world, origin);
    if (checker == "village_house") return check_village_house(world, origin);
    CheckReport r;
    r.failures.push_back("unknown checker '" + checker + "'");
    return r;
}

// ---------------------------------------------------------------------------
// ablation

namespace {

std::string cell_label(bool memory, bool reflection) {
    return std::string("memory_") + (memory ? "on" : "off") + "_reflection_" +
           (reflection ? "on" : "off");
}

std::string fmt(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << v;
    return os.str();
}

double cell_trial_mean(const AblationCell& c) {
    double sum = 0.0;
    for (const TrialResult& t : c.trials) sum += t.percentage;
    return c.trials.empty() ? 0.0 : sum / double(c.trials.size());
}

AblationDelta make_delta(std::string label, double baseline, double variant) {
    AblationDelta d;
    d.label = std::move(label);
    d.baseline_mean = baseline;
    d.variant_mean = variant;
    d.absolute_pts = variant - baseline;
    d.relative_pct = baseline != 0.0 ? (variant - baseline) / baseline * 100.0 : 0.0;
    return d;
}

}  // namespace

AblationReport run_ablation(const std::vector<TaskSpec>& tasks, int trials,
                            const TrialRunner& runner) {
    if (trials < 1) throw std::invalid_argument("run_ablation: trials must be >= 1");
    AblationReport report;
    std::string csv = "cell,task,trial,percentage,failed,aspects\n";

    const std::array<std::pair<bool, bool>, 4> grid = {
        {{false, false}, {false, true}, {true, false}, {true, true}}};
    for (auto [memory, reflection] : grid) {
        AblationCell cell;
        cell.memory = memory;
        cell.reflection = reflection;
        for (const TaskSpec& task : tasks) {
            for (int t = 0; t < trials; ++t) {
                TrialResult tr;
                try {
                    tr = runner(task, memory, reflection, t);
                } catch (const std::exception& e) {
                    tr.percentage = 0.0;
                    tr.failed = true;
                    tr.note = e.what();
                }
                if (tr.failed) ++cell.failures;
                csv += cell_label(memory, reflection) + "," + task.name + "," +
                       std::to_string(t) + "," + fmt(tr.percentage) + "," +
                       (tr.failed ? "1" : "0") + "," + tr.aspects + "\n";
                cell.trials.push_back(std::move(tr));
            }
        }
        cell.n_trials = int(cell.trials.size());
        std::vector<double> pcts;
        pcts.reserve(cell.trials.size());
        for (const TrialResult& t : cell.trials) pcts.push_back(t.percentage);
        cell.mean_pct = stats::mean(pcts);
        cell.stddev_pct = pcts.size() >= 2 ? stats::sample_stddev(pcts) : 0.0;
        report.cells.push_back(std::move(cell));
    }

    const AblationCell& ff = report.cells[0];
    const AblationCell& ft = report.cells[1];
    const AblationCell& tf = report.cells[2];
    const AblationCell& tt = report.cells[3];
    const double mem_off = (cell_trial_mean(ff) + cell_trial_mean(ft)) / 2.0;
    const double mem_on = (cell_trial_mean(tf) + cell_trial_mean(tt)) / 2.0;
    report.deltas.push_back(make_delta("memory on vs off", mem_off, mem_on));
    report.deltas.push_back(make_delta("reflection without memory", cell_trial_mean(ff),
                                       cell_trial_mean(ft)));
    report.deltas.push_back(make_delta("memory+reflection vs neither", cell_trial_mean(ff),
                                       cell_trial_mean(tt)));

    std::ostringstream table;
    table << "memory  reflection  mean_pct  stddev_pct  trials  failures\n";
    for (const AblationCell& c : report.cells) {
        table << (c.memory ? "on " : "off") << "     " << (c.reflection ? "on " : "off")
              << "         " << fmt(c.mean_pct) << "     " << fmt(c.stddev_pct) << "       "
              << c.n_trials << "      " << c.failures << "\n";
    }
    table << "\n";
    for (const AblationDelta& d : report.deltas) {
        table << d.label << ": " << fmt(d.relative_pct) << "% relative, "
              << fmt(d.absolute_pts) << " pts absolute (baseline " << fmt(d.baseline_mean)
              << ", variant " << fmt(d.variant_mean) << ")\n";
    }
    report.table_text = table.str();
    report.csv = std::move(csv);
    return report;
}

}  // namespace voxelsmith::bench
