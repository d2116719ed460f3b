#include "voxelsmith/pipeline.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "voxelsmith/prompts.hpp"
#include "voxelsmith/render.hpp"

namespace voxelsmith {

TaskInput task_from_json(const nlohmann::json& j) {
    TaskInput t;
    t.name = j.at("name").get<std::string>();
    t.instruction = j.value("instruction", "");
    if (j.contains("image_ref") && !j.at("image_ref").is_null()) {
        t.image_ref = j.at("image_ref").get<std::string>();
    }
    if (t.instruction.empty() && t.image_ref.empty()) {
        throw std::runtime_error("task '" + t.name + "': needs an instruction or an image_ref");
    }
    if (j.contains("config")) {
        const auto& c = j.at("config");
        t.config.memory = c.value("memory", true);
        t.config.max_reflections = c.value("max_reflections", 1);
        t.config.temperature = c.value("temperature", 0.0);
    }
    return t;
}

TaskInput task_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open task file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("task file " + path + ": " + e.what());
    }
    return task_from_json(j);
}

namespace {

// Case-insensitive search, returns npos-style optional position.
std::optional<std::size_t> ifind(const std::string& haystack, const std::string& needle,
                                 std::size_t from = 0) {
    auto tolower_ch = [](unsigned char c) { return char(std::tolower(c)); };
    if (needle.empty()) return from;
    for (std::size_t i = from; i + needle.size() <= haystack.size(); ++i) {
        bool hit = true;
        for (std::size_t k = 0; k < needle.size(); ++k) {
            if (tolower_ch(haystack[i + k]) != tolower_ch(needle[k])) {
                hit = false;
                break;
            }
        }
        if (hit) return i;
    }
    return std::nullopt;
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

struct SectionSpan {
    std::string name;
    std::optional<std::size_t> heading;  // position of the heading text
    std::size_t body_start = 0;
};

std::optional<LayoutSynopsis> split_synopsis(const std::string& raw) {
    const std::array<std::string, 3> headings = {"Components and Positioning",
                                                 "Dimensional Layout", "Description"};
    std::array<SectionSpan, 3> spans;
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < headings.size(); ++i) {
        spans[i].name = headings[i];
        spans[i].heading = ifind(raw, headings[i], cursor);
        if (!spans[i].heading) return std::nullopt;
        std::size_t after = *spans[i].heading + headings[i].size();
        // skip a decorating colon and whitespace after the heading
        while (after < raw.size() &&
               (raw[after] == ':' || raw[after] == '*' ||
                std::isspace(static_cast<unsigned char>(raw[after])))) {
            ++after;
        }
        spans[i].body_start = after;
        cursor = after;
    }
    LayoutSynopsis syn;
    syn.raw = raw;
    std::array<std::string*, 3> out = {&syn.components_positioning, &syn.dimensional_layout,
                                       &syn.description_sequence};
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t end = (i + 1 < 3) ? *spans[i + 1].heading : raw.size();
        *out[i] = trim(raw.substr(spans[i].body_start, end - spans[i].body_start));
        if (out[i]->empty()) return std::nullopt;
    }
    return syn;
}

std::string missing_section(const std::string& raw) {
    for (const char* name :
         {"Components and Positioning", "Dimensional Layout", "Description"}) {
        if (!ifind(raw, name)) return name;
    }
    return "Description";  // headings present but a body was empty
}

}  // namespace

LayoutSynopsis synopsis(LlmClient& client, const TaskInput& task) {
    if (!task.image_ref.empty() && !client.supports_images()) {
        throw MultimodalUnsupported("task '" + task.name +
                                    "' carries an image reference but the client is text-only");
    }
    const std::string prompt = prompts::render_layout_synopsis(task.instruction);
    ChatMessage msg{"user", prompt, std::nullopt};
    if (!task.image_ref.empty()) msg.image_path = task.image_ref;

    CompletionOpts opts;
    opts.temperature = task.config.temperature;
    std::vector<ChatMessage> messages{msg};
    std::string raw = client.complete(messages, opts);
    if (auto syn = split_synopsis(raw)) return *syn;

    const std::string missing = missing_section(raw);
    messages.push_back({"assistant", raw, std::nullopt});
    messages.push_back({"user",
                        "Your previous response was missing the section '" + missing +
                            "'. Please respond again with all three numbered sections: "
                            "Components and Positioning, Dimensional Layout, Description.",
                        std::nullopt});
    raw = client.complete(messages, opts);
    if (auto syn = split_synopsis(raw)) return *syn;
    throw SectionMissing(missing_section(raw));
}

namespace {

std::string format_retrieved(const std::vector<RetrievedRecord>& retrieved) {
    if (retrieved.empty()) return "None";
    std::string out;
    for (const RetrievedRecord& r : retrieved) {
        if (!out.empty()) out += "\n\n";
        out += "Task: " + r.record.task_text + "\nPlan:\n" + r.record.plan_dsl;
    }
    return out;
}

std::optional<std::string> extract_code(const std::string& response) {
    nlohmann::json j = nlohmann::json::parse(response, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("code") || !j.at("code").is_string()) {
        return std::nullopt;
    }
    return j.at("code").get<std::string>();
}

}  // namespace

GeneratedBlueprint generate_blueprint(LlmClient& client, const LayoutSynopsis& syn,
                                      const std::vector<RetrievedRecord>& retrieved,
                                      const BlockRegistry& registry, double temperature) {
    CompletionOpts opts;
    opts.temperature = temperature;
    std::vector<ChatMessage> messages{
        {"system", prompts::kBlueprintSystemPrompt, std::nullopt},
        {"user", prompts::render_blueprint_user(format_retrieved(retrieved), syn.raw),
         std::nullopt}};

    std::string response = client.complete(messages, opts);
    std::optional<std::string> code = extract_code(response);
    if (!code) {
        messages.push_back({"assistant", response, std::nullopt});
        messages.push_back({"user",
                            "Your previous response was not a compact JSON object with the key "
                            "'code'. Respond again as a single-line compact JSON object whose "
                            "only key is 'code'.",
                            std::nullopt});
        CompletionOpts retry = opts;
        retry.json_mode = true;
        response = client.complete(messages, retry);
        code = extract_code(response);
        if (!code) {
            throw JsonShapeError(
                "blueprint response is not a JSON object with key 'code' after one retry");
        }
    }

    GeneratedBlueprint out;
    out.dsl_text = *code;
    try {
        out.program = dsl::parse(out.dsl_text, registry);
        return out;
    } catch (const dsl::Error& e) {
        messages.push_back({"assistant", response, std::nullopt});
        messages.push_back({"user",
                            std::string("The code failed to parse: ") + e.what() +
                                ". Respond again as a single-line compact JSON object with the "
                                "key 'code' containing a corrected layout script.",
                            std::nullopt});
    }
    response = client.complete(messages, opts);
    code = extract_code(response);
    if (!code) {
        throw JsonShapeError(
            "blueprint repair response is not a JSON object with key 'code'");
    }
    out.dsl_text = *code;
    try {
        out.program = dsl::parse(out.dsl_text, registry);
    } catch (const dsl::Error& e) {
        out.program.reset();
        out.dsl_error = e.what();  // surfaced for reflection
    }
    return out;
}

bool RoundReport::clean() const {
    return dsl_error.empty() && validate_errors.empty() && plan_ok && exec_ok &&
           diff_count == 0 && check_failures.empty();
}

nlohmann::json BuildResult::to_json() const {
    nlohmann::json j;
    j["task"] = task_name;
    j["success"] = success;
    j["reflections_used"] = reflections_used;
    j["error"] = error;
    j["final_dsl"] = final_dsl;
    j["blueprint"] = blueprint_to_json(blueprint);
    j["actions_total"] = actions_total;
    j["scaffold_places"] = scaffold_places;
    j["scaffold_removes"] = scaffold_removes;
    j["scaffold_peak"] = scaffold_peak;
    nlohmann::json rounds_json = nlohmann::json::array();
    for (const RoundReport& r : rounds) {
        nlohmann::json rj;
        rj["round"] = r.round;
        rj["dsl_error"] = r.dsl_error;
        rj["validate_errors"] = r.validate_errors;
        rj["plan_ok"] = r.plan_ok;
        rj["plan_error"] = r.plan_error;
        rj["exec_ok"] = r.exec_ok;
        rj["exec_error"] = r.exec_error;
        rj["diff_count"] = r.diff_count;
        rj["diff"] = r.diff_details;
        rj["check_failures"] = r.check_failures;
        rounds_json.push_back(std::move(rj));
    }
    j["rounds"] = std::move(rounds_json);
    return j;
}

BuildResult run_task(LlmClient& client, const TaskInput& task, World& world, Bot& bot,
                     const Coord& origin, MemoryPool* memory, const RunOptions& opts) {
    BuildResult result;
    result.task_name = task.name;
    const World initial_world = world;
    const Bot initial_bot = bot;
    const bool memory_on = task.config.memory && memory != nullptr;

    auto log = [&](const std::string& stage, const std::string& note) {
        if (opts.hooks.log) opts.hooks.log(stage, note);
    };

    try {
        LayoutSynopsis syn = synopsis(client, task);
        log("synopsis", "three sections parsed");

        std::vector<RetrievedRecord> retrieved;
        if (memory_on) {
            retrieved = memory->retrieve(task.instruction, opts.top_k);
            log("retrieve", std::to_string(retrieved.size()) + " record(s)");
        }

        GeneratedBlueprint gen =
            generate_blueprint(client, syn, retrieved, world.registry(), task.config.temperature);

        std::string dsl_text = std::move(gen.dsl_text);
        std::optional<dsl::Program> program = std::move(gen.program);
        std::string dsl_error = gen.dsl_error;

        for (int round = 0; round <= task.config.max_reflections; ++round) {
            RoundReport rr;
            rr.round = round;
            rr.dsl_text = dsl_text;
            result.final_dsl = dsl_text;

            if (round > 0) {
                world = initial_world;
                bot = initial_bot;
            }

            Blueprint bp;
            bool built = false;
            if (!program && dsl_error.empty()) {
                // reflection rounds re-parse repaired code lazily
                try {
                    program = dsl::parse(dsl_text, world.registry());
                } catch (const dsl::Error& e) {
                    dsl_error = e.what();
                }
            }
            if (program) {
                try {
                    bp = dsl::compile(*program, task.name);
                } catch (const dsl::Error& e) {
                    dsl_error = e.what();
                    program.reset();
                }
            }
            rr.dsl_error = dsl_error;

            if (program) {
                result.blueprint = bp;
                ValidationReport vr = validate(bp, default_build_limits(), world.registry());
                for (const Violation& v : vr.violations) {
                    if (!v.warning) rr.validate_errors.push_back(v.detail);
                }
                if (rr.validate_errors.empty()) {
                    PlanResult pr = plan(world, bot, origin, bp, opts.planner);
                    rr.plan_ok = pr.ok();
                    if (!pr.ok()) {
                        rr.plan_error = pr.error->message;
                    } else {
                        result.actions_total = pr.plan.actions.size();
                        result.scaffold_peak = pr.scaffold_peak;
                        ExecutionReport er = execute(pr.plan, world, bot);
                        rr.exec_ok = er.success;
                        result.scaffold_places = er.scaffold_places;
                        result.scaffold_removes = er.scaffold_removes;
                        if (!er.success && !er.failures.empty()) {
                            rr.exec_error = "action " + std::to_string(er.failures[0].index) +
                                            ": " + er.failures[0].message;
                        }
                        if (er.success) {
                            std::vector<Mismatch> mismatches = diff(world, origin, bp);
                            rr.diff_count = mismatches.size();
                            for (const Mismatch& m : mismatches) {
                                rr.diff_details.push_back(m.describe());
                            }
                            if (mismatches.empty() && opts.hooks.post_check) {
                                rr.check_failures = opts.hooks.post_check(world, origin);
                            }
                            built = true;
                        }
                    }
                }
            }

            result.rounds.push_back(rr);
            if (rr.clean()) {
                result.success = true;
                break;
            }
            if (round == task.config.max_reflections) break;

            // assemble the reflection inputs from the imperfect build before
            // the world resets
            std::optional<BoundingBox> box = bbox(result.blueprint);
            BoundingBox view_box = box ? BoundingBox{origin + box->min, origin + box->max}
                                       : BoundingBox{origin, origin};
            ViewSet views = built || box ? render_views(world, view_box) : ViewSet{view_box, {}};
            if (opts.hooks.on_views) opts.hooks.on_views(round, views);
            std::optional<std::string> image;
            if (opts.hooks.render_image && client.supports_images()) {
                image = opts.hooks.render_image(round, world, view_box);
            }

            std::vector<std::string> hints;
            if (!rr.dsl_error.empty()) hints.push_back("code error: " + rr.dsl_error);
            for (const std::string& v : rr.validate_errors) {
                hints.push_back("blueprint violation: " + v);
            }
            if (!rr.plan_error.empty()) hints.push_back("planning failed: " + rr.plan_error);
            if (!rr.exec_error.empty()) hints.push_back("execution failed: " + rr.exec_error);
            for (const std::string& d : rr.diff_details) hints.push_back(d);
            for (const std::string& c : rr.check_failures) {
                hints.push_back("structural check failed: " + c);
            }
            log("reflection", "round " + std::to_string(round + 1) + " with " +
                                  std::to_string(hints.size()) +
                                  " structured hint(s) appended beyond the base template");

            ReflectionResult fix = reflect(client, task.instruction, views, dsl_text, hints,
                                           image, task.config.temperature);
            ++result.reflections_used;
            dsl_text = fix.repaired_dsl;
            program.reset();
            dsl_error.clear();
        }

        if (result.success && memory_on) {
            memory->add(task.instruction, result.final_dsl);
            log("memory", "stored plan for '" + task.name + "'");
        }
    } catch (const std::exception& e) {
        result.error = e.what();
        result.success = false;
    }
    return result;
}

}  // namespace voxelsmith
