#pragma once

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace voxelsmith {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ZeroNorm : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// dot(a,b) / (|a|*|b|). Throws DimensionMismatch / ZeroNorm.
double cosine(const std::vector<double>& a, const std::vector<double>& b);

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::size_t dim() const = 0;
    /// Deterministic for fixed text; returns exactly dim() components.
    virtual std::vector<double> embed(const std::string& text) const = 0;
};

/// Deterministic hashed bag-of-words: lowercase, split on non-alphanumerics,
/// each token bumps one of `dim` buckets, then L2-normalize. Identical text
/// scores 1.0; shared tokens give plausible partial overlap. Token hashing is
/// FNV-1a so results are stable across platforms and standard libraries.
class HashedBowEmbedder : public EmbeddingProvider {
public:
    explicit HashedBowEmbedder(std::size_t dim = 64) : dim_(dim) {}
    std::size_t dim() const override { return dim_; }
    std::vector<double> embed(const std::string& text) const override;

private:
    std::size_t dim_;
};

struct MemoryRecord {
    std::int64_t id = 0;
    std::string task_text;
    std::string plan_dsl;
    std::vector<double> embedding;
    std::string created_at;  // ISO 8601, informational

    friend bool operator==(const MemoryRecord&, const MemoryRecord&) = default;
};

struct RetrievedRecord {
    MemoryRecord record;
    double score = 0.0;
};

/// Flat in-memory pool with JSONL persistence. Many concurrent retrievals;
/// add() takes the writer lock and flushes to the backing file (when set)
/// before returning.
class MemoryPool {
public:
    explicit MemoryPool(std::shared_ptr<EmbeddingProvider> embedder =
                            std::make_shared<HashedBowEmbedder>());

    /// All subsequent adds append to this file; load_file() reads it first if
    /// it exists.
    void attach_file(const std::string& path);
    void load_file(const std::string& path);

    MemoryRecord add(const std::string& task_text, const std::string& plan_dsl,
                     std::string created_at = "");
    /// Top min(k, size) records by cosine score descending, ties by smaller
    /// id. A query with no recognizable tokens matches nothing.
    std::vector<RetrievedRecord> retrieve(const std::string& query_text, std::size_t k) const;

    std::size_t size() const;
    std::vector<MemoryRecord> records() const;
    void clear();  // truncates the backing file too, when attached

    const EmbeddingProvider& embedder() const { return *embedder_; }

private:
    void persist_locked(const MemoryRecord& r);

    mutable std::shared_mutex mutex_;
    std::vector<MemoryRecord> records_;
    std::shared_ptr<EmbeddingProvider> embedder_;
    std::int64_t next_id_ = 1;
    std::string file_path_;  // empty = memory-only
};

/// UTC timestamp like 2024-05-01T12:00:00Z.
std::string iso8601_now();

}  // namespace voxelsmith
