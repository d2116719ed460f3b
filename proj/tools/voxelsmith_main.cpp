// voxelsmith: build voxel structures from natural-language tasks through an
// LLM pipeline, benchmark the results, and administer the plan memory.

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "voxelsmith/bench.hpp"
#include "voxelsmith/llm.hpp"
#include "voxelsmith/memory.hpp"
#include "voxelsmith/pipeline.hpp"
#include "voxelsmith/planner.hpp"
#include "voxelsmith/render.hpp"
#include "voxelsmith/stats.hpp"
#include "voxelsmith/world.hpp"

namespace fs = std::filesystem;
using namespace voxelsmith;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitResidual = 2;  // build finished with mismatches or failed checks
constexpr int kExitPipeline = 3;  // pipeline/setup error during build
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct LlmFlags {
    std::string backend = "scripted";  // scripted | live
    std::string transcript;            // scripted: single transcript file
    std::string transcript_dir = "bench/transcripts";
    bool trace = false;
};

struct BuildFlags {
    std::string task_file;
    LlmFlags llm;
    bool memory = true;
    bool memory_given = false;
    std::string memory_path = "memory.jsonl";
    int top_k = 1;
    int reflect = -1;  // <0: keep the task's own setting
    std::string out_dir = "runs";
};

struct BenchFlags {
    std::vector<std::string> task_files;
    LlmFlags llm;
    bool memory = true;
    int top_k = 1;
    int reflect = 1;
    std::string out_dir;
};

struct AblateFlags {
    std::vector<std::string> task_files;
    LlmFlags llm;
    int trials = 10;
    int top_k = 1;
    int reflect = 1;
    std::string out_dir = ".";
};

std::unique_ptr<LlmClient> make_client(const LlmFlags& f) {
    if (f.backend == "live") return make_live_client_from_env();
    if (f.transcript.empty()) {
        throw std::runtime_error("--llm scripted needs --transcript FILE");
    }
    return std::make_unique<ScriptedClient>(ScriptedClient::from_file(f.transcript));
}

std::string timestamp_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm);
    return buf;
}

fs::path make_run_dir(const std::string& out_root, const std::string& task_name) {
    const fs::path base = fs::path(out_root) / (task_name + "-" + timestamp_now());
    fs::path dir = base;
    for (int n = 1; fs::exists(dir); ++n) {
        dir = base;
        dir += "-" + std::to_string(n);
    }
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return j;
}

std::optional<BoundingBox> world_bbox(const World& w) {
    std::optional<BoundingBox> box;
    for (const auto& [c, b] : w.blocks()) {
        box = box ? box->merged(c) : BoundingBox{c, c};
    }
    return box;
}

std::string trace_line(const std::vector<ChatMessage>& messages, const CompletionOpts& opts,
                       const std::string& response) {
    nlohmann::json j;
    nlohmann::json msgs = nlohmann::json::array();
    for (const ChatMessage& m : messages) {
        nlohmann::json mj;
        mj["role"] = m.role;
        mj["text"] = m.text;
        if (m.image_path) mj["image_path"] = *m.image_path;
        msgs.push_back(std::move(mj));
    }
    j["messages"] = std::move(msgs);
    j["temperature"] = opts.temperature;
    j["json_mode"] = opts.json_mode;
    j["response"] = response;
    return j.dump() + "\n";
}

// Shared plumbing for a single pipeline run: fresh flat world, build origin a
// little above ground, bot spawned a few cells to the side.
struct Arena {
    World world{0};
    Bot bot{{-3, 1, -3}};
    Coord origin{0, 1, 0};
};

std::string checker_for(const nlohmann::json& task_json, const std::string& task_name) {
    if (task_json.contains("checker") && task_json.at("checker").is_string()) {
        return task_json.at("checker").get<std::string>();
    }
    if (bench::checker_known(task_name)) return task_name;
    return "";
}

std::string aspects_note(const bench::EvalScore& score) {
    std::string s;
    for (const auto& [aspect, v] : score.per_aspect) {
        s += (s.empty() ? "" : ";") + aspect + "=" + std::to_string(v);
    }
    return s;
}

std::string final_views_text(const World& world, const Blueprint& bp, const Coord& origin) {
    std::optional<BoundingBox> box;
    if (auto bb = bbox(bp)) {
        box = BoundingBox{origin + bb->min, origin + bb->max};
    } else {
        box = world_bbox(world);
    }
    if (!box) return "(no structure built)";
    return views_to_text(render_views(world, *box));
}

int cmd_build(const BuildFlags& flags) {
    try {
        const nlohmann::json task_json = load_json_file(flags.task_file);
        TaskInput task = task_from_json(task_json);
        if (flags.memory_given) task.config.memory = flags.memory;
        if (flags.reflect >= 0) task.config.max_reflections = flags.reflect;
        const std::string checker = checker_for(task_json, task.name);

        MemoryPool pool;
        if (task.config.memory) pool.attach_file(flags.memory_path);

        std::unique_ptr<LlmClient> inner = make_client(flags.llm);
        const fs::path run_dir = make_run_dir(flags.out_dir, task.name);
        std::ofstream prompt_log(run_dir / "prompts.jsonl", std::ios::binary);
        TracingClient client(*inner, [&](const auto& msgs, const auto& opts,
                                         const std::string& response) {
            const std::string line = trace_line(msgs, opts, response);
            prompt_log << line;
            if (flags.llm.trace) std::cerr << line;
        });

        {
            std::ifstream src(flags.task_file, std::ios::binary);
            std::stringstream copy;
            copy << src.rdbuf();
            write_file(run_dir / "task.json", copy.str());
        }

        Arena arena;
        write_file(run_dir / "initial_snapshot.json", arena.world.snapshot().dump(2) + "\n");
        const World initial_world = arena.world;
        const Bot initial_bot = arena.bot;

        RunOptions opts;
        opts.top_k = std::size_t(std::max(0, flags.top_k));
        if (!checker.empty()) {
            opts.hooks.post_check = [&checker](const World& w, const Coord& origin) {
                return bench::structural_check(checker, w, origin).failures;
            };
        }
        std::ofstream log_file(run_dir / "log.txt", std::ios::binary);
        opts.hooks.log = [&](const std::string& stage, const std::string& note) {
            log_file << stage << ": " << note << "\n";
        };
        opts.hooks.on_views = [&](int round, const ViewSet& vs) {
            write_file(run_dir / ("round" + std::to_string(round) + "_views.txt"),
                       views_to_text(vs));
        };
        if (client.supports_images()) {
            opts.hooks.render_image = [&](int round, const World& w, const BoundingBox& box) {
                const fs::path p = run_dir / ("round" + std::to_string(round) + ".png");
                render_isometric_png(w, box, p.string());
                return p.string();
            };
        }

        BuildResult result =
            run_task(client, task, arena.world, arena.bot, arena.origin, &pool, opts);

        write_file(run_dir / "result.json", result.to_json().dump(2) + "\n");
        if (!result.final_dsl.empty()) {
            write_file(run_dir / "blueprint.vsl", result.final_dsl + "\n");
        }
        if (!result.blueprint.placements.empty()) {
            write_file(run_dir / "blueprint.json",
                       blueprint_to_json(result.blueprint).dump(2) + "\n");
            // the planner is deterministic, so replanning from the initial
            // snapshot reproduces the executed action sequence
            PlanResult pr =
                plan(initial_world, initial_bot, arena.origin, result.blueprint, opts.planner);
            if (pr.ok()) write_file(run_dir / "actions.jsonl", plan_trace_jsonl(pr.plan));
        }
        write_file(run_dir / "final_snapshot.json", arena.world.snapshot().dump(2) + "\n");

        std::optional<BoundingBox> box;
        if (auto bb = bbox(result.blueprint)) {
            box = BoundingBox{arena.origin + bb->min, arena.origin + bb->max};
        } else {
            box = world_bbox(arena.world);
        }
        if (box) {
            const ViewSet views = render_views(arena.world, *box);
            write_file(run_dir / "views.txt", views_to_text(views));
            render_isometric_png(arena.world, *box, (run_dir / "render.png").string());
        }

        std::cout << "task        " << result.task_name << "\n"
                  << "success     " << (result.success ? "yes" : "no") << "\n"
                  << "reflections " << result.reflections_used << "\n"
                  << "actions     " << result.actions_total << "\n"
                  << "run dir     " << run_dir.string() << "\n";
        if (result.success) return kExitOk;
        if (!result.error.empty()) {
            std::cerr << "error: " << result.error << "\n";
            return kExitPipeline;
        }
        if (!result.rounds.empty()) {
            const RoundReport& last = result.rounds.back();
            for (const std::string& d : last.diff_details) {
                std::cerr << "mismatch: " << d << "\n";
            }
            for (const std::string& c : last.check_failures) {
                std::cerr << "check failed: " << c << "\n";
            }
            if (!last.dsl_error.empty()) std::cerr << "code error: " << last.dsl_error << "\n";
            if (!last.plan_error.empty()) {
                std::cerr << "plan error: " << last.plan_error << "\n";
            }
            if (!last.exec_error.empty()) {
                std::cerr << "exec error: " << last.exec_error << "\n";
            }
        }
        return kExitResidual;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPipeline;
    }
}

std::vector<std::string> resolve_task_files(std::vector<std::string> files) {
    if (files.empty()) {
        const fs::path dir = "bench/tasks";
        if (fs::is_directory(dir)) {
            for (const auto& entry : fs::directory_iterator(dir)) {
                if (entry.path().extension() == ".json") files.push_back(entry.path().string());
            }
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw std::runtime_error("no task files given and bench/tasks/ holds none");
    }
    return files;
}

std::string fmt2(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << v;
    return os.str();
}

int cmd_bench(const BenchFlags& flags) {
    std::vector<bench::TaskSpec> specs;
    try {
        for (const std::string& f : resolve_task_files(flags.task_files)) {
            specs.push_back(bench::taskspec_from_file(f));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }

    struct Row {
        std::string task;
        bool build_ok = false;
        int check_failures = 0;
        double percentage = 0.0;
        std::string aspects;
        std::string note;
    };
    std::vector<Row> rows;
    MemoryPool pool;  // shared across the bench run, never persisted

    for (const bench::TaskSpec& spec : specs) {
        Row row;
        row.task = spec.name;
        try {
            LlmFlags llm = flags.llm;
            if (llm.backend == "scripted" && llm.transcript.empty()) {
                llm.transcript =
                    (fs::path(flags.llm.transcript_dir) / (spec.name + ".json")).string();
            }
            std::unique_ptr<LlmClient> client = make_client(llm);

            TaskInput task = to_task_input(spec);
            task.config.memory = flags.memory;
            task.config.max_reflections = flags.reflect;

            Arena arena;
            RunOptions opts;
            opts.top_k = std::size_t(std::max(0, flags.top_k));
            opts.hooks.post_check = [&spec](const World& w, const Coord& origin) {
                return bench::structural_check(spec.checker, w, origin).failures;
            };

            BuildResult result = run_task(*client, task, arena.world, arena.bot, arena.origin,
                                          &pool, opts);
            row.build_ok = result.success;
            if (!result.error.empty()) throw std::runtime_error(result.error);

            bench::CheckReport check =
                bench::structural_check(spec.checker, arena.world, arena.origin);
            row.check_failures = int(check.failures.size());

            const std::string views =
                final_views_text(arena.world, result.blueprint, arena.origin);
            bench::EvalScore score = bench::judge(*client, spec, views);
            row.percentage = score.percentage;
            row.aspects = aspects_note(score);
        } catch (const std::exception& e) {
            row.note = e.what();
        }
        rows.push_back(std::move(row));
    }

    std::ostringstream table;
    table << "task            build  checks  pct     aspects\n";
    std::string csv = "task,percentage,build_success,check_failures,aspects\n";
    for (const Row& r : rows) {
        table << std::left << std::setw(16) << r.task << (r.build_ok ? "ok   " : "FAIL ")
              << "  " << std::setw(6) << (std::to_string(r.check_failures) + " bad")
              << "  " << std::setw(6) << fmt2(r.percentage) << "  " << r.aspects;
        if (!r.note.empty()) table << "  [" << r.note << "]";
        table << "\n";
        csv += r.task + "," + fmt2(r.percentage) + "," + (r.build_ok ? "1" : "0") + "," +
               std::to_string(r.check_failures) + "," + r.aspects + "\n";
    }
    std::cout << table.str();
    if (!flags.out_dir.empty()) {
        try {
            fs::create_directories(flags.out_dir);
            write_file(fs::path(flags.out_dir) / "bench_report.txt", table.str());
            write_file(fs::path(flags.out_dir) / "bench_report.csv", csv);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitData;
        }
    }
    return kExitOk;
}

int cmd_ablate(const AblateFlags& flags) {
    std::vector<bench::TaskSpec> specs;
    try {
        for (const std::string& f : resolve_task_files(flags.task_files)) {
            specs.push_back(bench::taskspec_from_file(f));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }

    // one memory pool per grid cell, shared by that cell's trials so memory
    // can actually accumulate when it is switched on
    std::map<std::pair<bool, bool>, std::unique_ptr<MemoryPool>> pools;
    auto pool_for = [&pools](bool memory, bool reflection) -> MemoryPool* {
        auto key = std::make_pair(memory, reflection);
        auto it = pools.find(key);
        if (it == pools.end()) {
            it = pools.emplace(key, std::make_unique<MemoryPool>()).first;
        }
        return it->second.get();
    };

    bench::TrialRunner runner = [&](const bench::TaskSpec& spec, bool memory, bool reflection,
                                    int) -> bench::TrialResult {
        LlmFlags llm = flags.llm;
        if (llm.backend == "scripted" && llm.transcript.empty()) {
            llm.transcript =
                (fs::path(flags.llm.transcript_dir) / (spec.name + ".json")).string();
        }
        std::unique_ptr<LlmClient> client = make_client(llm);

        TaskInput task = to_task_input(spec);
        task.config.memory = memory;
        task.config.max_reflections = reflection ? flags.reflect : 0;

        Arena arena;
        RunOptions opts;
        opts.top_k = std::size_t(std::max(0, flags.top_k));
        opts.hooks.post_check = [&spec](const World& w, const Coord& origin) {
            return bench::structural_check(spec.checker, w, origin).failures;
        };

        BuildResult result = run_task(*client, task, arena.world, arena.bot, arena.origin,
                                      pool_for(memory, reflection), opts);
        if (!result.error.empty()) throw std::runtime_error(result.error);

        const std::string views = final_views_text(arena.world, result.blueprint, arena.origin);
        bench::EvalScore score = bench::judge(*client, spec, views);
        bench::TrialResult tr;
        tr.percentage = score.percentage;
        tr.aspects = aspects_note(score);
        if (!result.success) tr.note = "imperfect build";
        return tr;
    };

    try {
        bench::AblationReport report = bench::run_ablation(specs, flags.trials, runner);
        std::cout << report.table_text;
        fs::create_directories(flags.out_dir);
        write_file(fs::path(flags.out_dir) / "report.txt", report.table_text);
        write_file(fs::path(flags.out_dir) / "report.csv", report.csv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}

// Every fully numeric comma-separated field on a line, in order; header and
// label fields fall out naturally.
std::vector<double> numeric_fields(const std::string& line) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(field, &used);
            while (used < field.size() &&
                   std::isspace(static_cast<unsigned char>(field[used]))) {
                ++used;
            }
            if (used == field.size()) out.push_back(v);
        } catch (const std::exception&) {
        }
    }
    return out;
}

int cmd_corr(const std::vector<std::string>& files) {
    std::vector<double> xs, ys;
    try {
        if (files.size() == 1) {
            std::ifstream in(files[0]);
            if (!in) throw std::runtime_error("cannot open " + files[0]);
            std::string line;
            while (std::getline(in, line)) {
                const std::vector<double> vals = numeric_fields(line);
                if (vals.size() >= 2) {
                    xs.push_back(vals[0]);
                    ys.push_back(vals[1]);
                }
            }
        } else {
            auto read_first_column = [](const std::string& path) {
                std::ifstream in(path);
                if (!in) throw std::runtime_error("cannot open " + path);
                std::vector<double> col;
                std::string line;
                while (std::getline(in, line)) {
                    const std::vector<double> vals = numeric_fields(line);
                    if (!vals.empty()) col.push_back(vals[0]);
                }
                return col;
            };
            xs = read_first_column(files[0]);
            ys = read_first_column(files[1]);
        }
        if (xs.size() != ys.size()) {
            throw std::runtime_error("paired score counts differ (" +
                                     std::to_string(xs.size()) + " vs " +
                                     std::to_string(ys.size()) + ")");
        }
        const double r = stats::pearson(xs, ys);
        const double rho = stats::spearman(xs, ys);
        std::cout.setf(std::ios::fixed);
        std::cout << std::setprecision(6) << "pearson  " << r << "\n"
                  << "spearman " << rho << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}

int cmd_render(const std::string& snapshot_file, const std::string& out) {
    try {
        const nlohmann::json j = load_json_file(snapshot_file);
        const World world = World::from_snapshot(j);
        const std::optional<BoundingBox> box = world_bbox(world);
        if (!box) throw std::runtime_error("snapshot holds no blocks to render");

        // --out accepts a bare format keyword (file lands next to the
        // snapshot) or an output path whose extension picks the format
        std::string path = out;
        bool png = false;
        if (out.empty() || out == "txt" || out == "png") {
            png = out == "png";
            if (out.empty()) {
                path.clear();
            } else {
                path = fs::path(snapshot_file).replace_extension(png ? ".png" : ".txt").string();
            }
        } else {
            png = fs::path(out).extension() == ".png";
        }

        if (png) {
            if (path.empty()) throw std::runtime_error("png output needs a file path");
            render_isometric_png(world, *box, path);
        } else {
            const std::string text = views_to_text(render_views(world, *box));
            if (path.empty()) {
                std::cout << text;
                return kExitOk;
            }
            write_file(path, text);
        }
        std::cout << path << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}

int cmd_memory_list(const std::string& memory_path) {
    try {
        MemoryPool pool;
        if (fs::exists(memory_path)) pool.load_file(memory_path);
        for (const MemoryRecord& r : pool.records()) {
            std::string head = r.task_text.substr(0, 60);
            std::replace(head.begin(), head.end(), '\n', ' ');
            std::cout << r.id << "  " << r.created_at << "  " << head << "\n";
        }
        std::cout << pool.size() << " record(s)\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}

int cmd_memory_add(const std::string& memory_path, const std::string& task_text,
                   const std::string& plan_file) {
    try {
        std::ifstream in(plan_file, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open plan file " + plan_file);
        std::stringstream ss;
        ss << in.rdbuf();
        MemoryPool pool;
        pool.attach_file(memory_path);
        const MemoryRecord r = pool.add(task_text, ss.str());
        std::cout << "added record " << r.id << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}

int cmd_memory_clear(const std::string& memory_path) {
    std::ofstream out(memory_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot truncate " << memory_path << "\n";
        return kExitData;
    }
    std::cout << "cleared\n";
    return kExitOk;
}

void add_llm_flags(CLI::App* cmd, LlmFlags& f, bool with_dir) {
    cmd->add_option("--llm", f.backend, "LLM backend")
        ->check(CLI::IsMember({"live", "scripted"}))
        ->capture_default_str();
    cmd->add_option("--transcript", f.transcript, "scripted transcript file");
    if (with_dir) {
        cmd->add_option("--transcript-dir", f.transcript_dir,
                        "directory of per-task transcript files")
            ->capture_default_str();
    }
    cmd->add_flag("--trace", f.trace, "echo prompt/response traffic to stderr");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"voxelsmith: LLM-driven voxel construction in a simulated world"};
    app.require_subcommand(1);

    BuildFlags build;
    CLI::App* build_cmd = app.add_subcommand("build", "run the full pipeline on one task");
    build_cmd->add_option("task", build.task_file, "task JSON file")->required();
    add_llm_flags(build_cmd, build.llm, false);
    CLI::Option* mem_opt =
        build_cmd->add_flag("--memory,!--no-memory", build.memory, "use the plan memory");
    build_cmd->add_option("--memory-path", build.memory_path, "memory JSONL file")
        ->capture_default_str();
    build_cmd->add_option("--top-k", build.top_k, "retrieved plans per build")
        ->capture_default_str();
    build_cmd->add_option("--reflect", build.reflect, "max reflection rounds");
    build_cmd->add_option("--out", build.out_dir, "run directory root")->capture_default_str();

    BenchFlags bench_flags;
    CLI::App* bench_cmd = app.add_subcommand("bench", "run and judge every benchmark task");
    bench_cmd->add_option("tasks", bench_flags.task_files,
                          "task spec files (default: bench/tasks/*.json)");
    add_llm_flags(bench_cmd, bench_flags.llm, true);
    bench_cmd->add_flag("--memory,!--no-memory", bench_flags.memory, "use the plan memory");
    bench_cmd->add_option("--top-k", bench_flags.top_k, "retrieved plans per build")
        ->capture_default_str();
    bench_cmd->add_option("--reflect", bench_flags.reflect, "max reflection rounds")
        ->capture_default_str();
    bench_cmd->add_option("--out", bench_flags.out_dir, "write bench_report.{txt,csv} here");

    AblateFlags ablate;
    CLI::App* ablate_cmd =
        app.add_subcommand("ablate", "memory x reflection grid over the benchmark");
    ablate_cmd->add_option("tasks", ablate.task_files,
                           "task spec files (default: bench/tasks/*.json)");
    add_llm_flags(ablate_cmd, ablate.llm, true);
    ablate_cmd->add_option("--trials", ablate.trials, "trials per task per cell")
        ->capture_default_str();
    ablate_cmd->add_option("--top-k", ablate.top_k, "retrieved plans per build")
        ->capture_default_str();
    ablate_cmd->add_option("--reflect", ablate.reflect, "max reflection rounds when on")
        ->capture_default_str();
    ablate_cmd->add_option("--out", ablate.out_dir, "write report.{txt,csv} here")
        ->capture_default_str();

    std::vector<std::string> corr_files;
    CLI::App* corr_cmd =
        app.add_subcommand("corr", "Pearson and Spearman over paired score CSVs");
    corr_cmd
        ->add_option("files", corr_files,
                     "one two-column CSV, or two CSVs read pairwise")
        ->expected(1, 2)
        ->required();

    std::string render_snapshot, render_out;
    CLI::App* render_cmd = app.add_subcommand("render", "render a world snapshot");
    render_cmd->add_option("snapshot", render_snapshot, "world snapshot JSON")->required();
    render_cmd->add_option("--out", render_out,
                           "txt | png | output path (default: text to stdout)");

    std::string memory_path = "memory.jsonl";
    CLI::App* memory_cmd = app.add_subcommand("memory", "administer the plan memory");
    memory_cmd->require_subcommand(1);
    memory_cmd->add_option("--memory-path", memory_path, "memory JSONL file")
        ->capture_default_str();
    CLI::App* mem_list = memory_cmd->add_subcommand("list", "show stored records");
    std::string mem_task, mem_plan;
    CLI::App* mem_add = memory_cmd->add_subcommand("add", "store a plan");
    mem_add->add_option("--task", mem_task, "task text")->required();
    mem_add->add_option("--plan", mem_plan, "plan file (layout script)")->required();
    CLI::App* mem_clear = memory_cmd->add_subcommand("clear", "drop all records");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    build.memory_given = mem_opt->count() > 0;

    if (*build_cmd) return cmd_build(build);
    if (*bench_cmd) return cmd_bench(bench_flags);
    if (*ablate_cmd) return cmd_ablate(ablate);
    if (*corr_cmd) return cmd_corr(corr_files);
    if (*render_cmd) return cmd_render(render_snapshot, render_out);
    if (*memory_cmd) {
        if (*mem_list) return cmd_memory_list(memory_path);
        if (*mem_add) return cmd_memory_add(memory_path, mem_task, mem_plan);
        if (*mem_clear) return cmd_memory_clear(memory_path);
    }
    return kExitUsage;
}
