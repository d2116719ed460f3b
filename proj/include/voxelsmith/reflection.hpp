#pragma once

#include <optional>
#include <string>
#include <vector>

#include "voxelsmith/llm.hpp"
#include "voxelsmith/render.hpp"

namespace voxelsmith {

struct JsonShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ReflectionResult {
    std::string reflection_text;
    std::string repaired_dsl;  // may still fail to parse; the caller decides
};

/// One repair round: the self-reflection prompt with the structure
/// description, the serialized views standing in for the image (plus a real
/// image attachment when the client supports one), the previous code, and the
/// detected mismatches appended as structured hints. The response must be a
/// JSON object with keys "reflection" and "code"; a malformed response gets
/// one re-ask before JsonShapeError.
ReflectionResult reflect(LlmClient& client, const std::string& structure_description,
                         const ViewSet& views, const std::string& previous_dsl,
                         const std::vector<std::string>& mismatch_hints,
                         std::optional<std::string> image_path = std::nullopt,
                         double temperature = 0.0);

}  // namespace voxelsmith
