#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include "voxelsmith/memory.hpp"

using namespace voxelsmith;

namespace {

std::filesystem::path temp_file(const std::string& stem) {
    return std::filesystem::temp_directory_path() /
           (stem + "-" + std::to_string(::getpid()) + ".jsonl");
}

std::string random_text(std::mt19937& rng) {
    static const std::vector<std::string> words = {
        "house",  "tower", "pyramid", "wall",   "roof",  "door",  "window", "stone",
        "oak",    "snow",  "glass",   "bridge", "lamp",  "brick", "garden", "floor",
        "stairs", "gate",  "spire",   "barn",   "cabin", "dock",  "well",   "fence"};
    std::uniform_int_distribution<std::size_t> count(2, 8);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    std::string out;
    const std::size_t n = count(rng);
    for (std::size_t i = 0; i < n; ++i) {
        if (!out.empty()) out += ' ';
        out += words[pick(rng)];
    }
    return out;
}

}  // namespace

TEST_CASE("cosine: definition and guards") {
    CHECK(cosine({1, 0}, {1, 0}) == doctest::Approx(1.0));
    CHECK(cosine({1, 0}, {0, 1}) == doctest::Approx(0.0));
    CHECK(cosine({1, 0}, {-1, 0}) == doctest::Approx(-1.0));
    CHECK(cosine({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(cosine({1, 0}, {1, 0, 0}), DimensionMismatch);
    CHECK_THROWS_AS(cosine({0, 0}, {1, 0}), ZeroNorm);
}

TEST_CASE("HashedBowEmbedder: deterministic unit vectors, case-insensitive") {
    HashedBowEmbedder e(64);
    CHECK(e.dim() == 64);
    auto a = e.embed("simple wooden house");
    auto b = e.embed("simple wooden house");
    CHECK(a == b);
    CHECK(a.size() == 64);
    double norm = 0;
    for (double v : a) norm += v * v;
    CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(cosine(e.embed("Wooden HOUSE"), e.embed("wooden house")) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // punctuation only splits, never contributes tokens
    CHECK(e.embed("house, tower!") == e.embed("house tower"));
}

TEST_CASE("MemoryPool: add, retrieve scores and ordering") {
    MemoryPool pool;
    CHECK(pool.size() == 0);
    pool.add("simple wooden house", "plan-a");
    pool.add("tall stone watchtower", "plan-b");
    pool.add("snow pyramid with capstone", "plan-c");
    CHECK(pool.size() == 3);

    auto hits = pool.retrieve("wooden house please", 2);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].record.plan_dsl == "plan-a");
    CHECK(hits[0].score >= hits[1].score);

    // identical stored texts tie; smaller id wins
    MemoryPool tied;
    tied.add("same text", "first");
    tied.add("same text", "second");
    auto t = tied.retrieve("same text", 2);
    REQUIRE(t.size() == 2);
    CHECK(t[0].record.id < t[1].record.id);
    CHECK(t[0].score == doctest::Approx(t[1].score));

    // k larger than the pool truncates; empty query matches nothing
    CHECK(pool.retrieve("wooden house", 10).size() == 3);
    CHECK(pool.retrieve("", 3).empty());
    CHECK(pool.retrieve("!!!", 3).empty());
}

TEST_CASE("MemoryPool: brute-force top-k oracle on 1000 random records") {
    MemoryPool pool;
    std::mt19937 rng(99);
    std::vector<MemoryRecord> all;
    for (int i = 0; i < 1000; ++i) pool.add(random_text(rng), "plan-" + std::to_string(i));
    all = pool.records();
    REQUIRE(all.size() == 1000);

    const std::string query = "stone tower with oak door and glass window";
    const auto q = pool.embedder().embed(query);
    std::vector<std::pair<double, std::int64_t>> scored;
    for (const auto& r : all) scored.push_back({cosine(q, r.embedding), r.id});
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    for (std::size_t k : {1u, 3u, 5u, 10u}) {
        auto hits = pool.retrieve(query, k);
        REQUIRE(hits.size() == k);
        for (std::size_t i = 0; i < k; ++i) {
            CHECK(hits[i].record.id == scored[i].second);
            CHECK(hits[i].score == doctest::Approx(scored[i].first).epsilon(1e-12));
        }
    }
}

TEST_CASE("MemoryPool: JSONL persistence round-trip and clear") {
    const auto path = temp_file("voxelsmith-memtest");
    std::filesystem::remove(path);

    {
        MemoryPool pool;
        pool.attach_file(path.string());
        pool.add("persisted house", "plan-x", "2024-05-01T12:00:00Z");
        pool.add("persisted tower", "plan-y", "2024-05-01T12:00:01Z");
    }
    REQUIRE(std::filesystem::exists(path));

    MemoryPool loaded;
    loaded.load_file(path.string());
    auto records = loaded.records();
    REQUIRE(records.size() == 2);
    CHECK(records[0].task_text == "persisted house");
    CHECK(records[0].plan_dsl == "plan-x");
    CHECK(records[0].created_at == "2024-05-01T12:00:00Z");
    CHECK(records[1].id > records[0].id);
    CHECK_FALSE(records[0].embedding.empty());

    // adds after a load continue the id sequence
    loaded.attach_file(path.string());
    auto r3 = loaded.add("persisted pyramid", "plan-z");
    CHECK(r3.id > records[1].id);

    loaded.clear();
    CHECK(loaded.size() == 0);
    CHECK(std::filesystem::file_size(path) == 0);
    std::filesystem::remove(path);
}

TEST_CASE("iso8601_now: shape") {
    const std::string t = iso8601_now();
    std::regex shape(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z)");
    CHECK(std::regex_match(t, shape));
}
