#include "voxelsmith/memory.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <mutex>

#include <json.hpp>

namespace voxelsmith {

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("cosine: vectors of length " + std::to_string(a.size()) +
                                " and " + std::to_string(b.size()));
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) throw ZeroNorm("cosine: zero-norm vector");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<double> HashedBowEmbedder::embed(const std::string& text) const {
    std::vector<double> v(dim_, 0.0);
    std::string token;
    auto flush = [&]() {
        if (token.empty()) return;
        // FNV-1a 64-bit, stable across platforms
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char c : token) {
            h ^= c;
            h *= 1099511628211ull;
        }
        v[h % dim_] += 1.0;
        token.clear();
    };
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            token.push_back(char(std::tolower(c)));
        } else {
            flush();
        }
    }
    flush();
    double norm = 0.0;
    for (double x : v) norm += x * x;
    if (norm > 0.0) {
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
    }
    return v;
}

MemoryPool::MemoryPool(std::shared_ptr<EmbeddingProvider> embedder)
    : embedder_(std::move(embedder)) {}

void MemoryPool::attach_file(const std::string& path) {
    std::unique_lock lock(mutex_);
    file_path_ = path;
}

namespace {

nlohmann::json record_to_json(const MemoryRecord& r) {
    nlohmann::json j;
    j["id"] = r.id;
    j["task_text"] = r.task_text;
    j["plan_dsl"] = r.plan_dsl;
    j["embedding"] = r.embedding;
    j["created_at"] = r.created_at;
    return j;
}

MemoryRecord record_from_json(const nlohmann::json& j) {
    MemoryRecord r;
    r.id = j.at("id").get<std::int64_t>();
    r.task_text = j.at("task_text").get<std::string>();
    r.plan_dsl = j.at("plan_dsl").get<std::string>();
    r.embedding = j.at("embedding").get<std::vector<double>>();
    r.created_at = j.value("created_at", "");
    return r;
}

}  // namespace

void MemoryPool::load_file(const std::string& path) {
    std::unique_lock lock(mutex_);
    file_path_ = path;
    records_.clear();
    next_id_ = 1;
    std::ifstream in(path);
    if (!in) return;  // nothing persisted yet
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": bad memory record: " + e.what());
        }
        MemoryRecord r = record_from_json(j);
        if (embedder_ && r.embedding.size() != embedder_->dim()) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": embedding dimension " +
                                     std::to_string(r.embedding.size()) + ", pool expects " +
                                     std::to_string(embedder_->dim()));
        }
        next_id_ = std::max(next_id_, r.id + 1);
        records_.push_back(std::move(r));
    }
}

void MemoryPool::persist_locked(const MemoryRecord& r) {
    if (file_path_.empty()) return;
    std::ofstream out(file_path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to memory file " + file_path_);
    // full float precision so a reload reproduces scores bit-exactly
    out << record_to_json(r).dump() << '\n';
    out.flush();
}

MemoryRecord MemoryPool::add(const std::string& task_text, const std::string& plan_dsl,
                             std::string created_at) {
    if (task_text.empty() || plan_dsl.empty()) {
        throw std::invalid_argument("memory add: task text and plan must be non-empty");
    }
    MemoryRecord r;
    r.task_text = task_text;
    r.plan_dsl = plan_dsl;
    r.embedding = embedder_->embed(task_text);
    r.created_at = created_at.empty() ? iso8601_now() : std::move(created_at);

    std::unique_lock lock(mutex_);
    r.id = next_id_++;
    records_.push_back(r);
    persist_locked(r);
    return r;
}

std::vector<RetrievedRecord> MemoryPool::retrieve(const std::string& query_text,
                                                  std::size_t k) const {
    std::vector<double> q = embedder_->embed(query_text);
    double qnorm = 0.0;
    for (double x : q) qnorm += x * x;

    std::shared_lock lock(mutex_);
    std::vector<RetrievedRecord> scored;
    if (qnorm == 0.0) return scored;
    scored.reserve(records_.size());
    for (const MemoryRecord& r : records_) {
        double nrm = 0.0;
        for (double x : r.embedding) nrm += x * x;
        if (nrm == 0.0) continue;
        scored.push_back({r, cosine(q, r.embedding)});
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const RetrievedRecord& a, const RetrievedRecord& b) {
                         if (a.score != b.score) return a.score > b.score;
                         return a.record.id < b.record.id;
                     });
    if (scored.size() > k) scored.resize(k);
    return scored;
}

std::size_t MemoryPool::size() const {
    std::shared_lock lock(mutex_);
    return records_.size();
}

std::vector<MemoryRecord> MemoryPool::records() const {
    std::shared_lock lock(mutex_);
    return records_;
}

void MemoryPool::clear() {
    std::unique_lock lock(mutex_);
    records_.clear();
    next_id_ = 1;
    if (!file_path_.empty()) {
        std::ofstream out(file_path_, std::ios::trunc);
    }
}

std::string iso8601_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace voxelsmith
