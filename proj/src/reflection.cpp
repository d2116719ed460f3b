#include "voxelsmith/reflection.hpp"

#include <json.hpp>

#include "voxelsmith/prompts.hpp"

namespace voxelsmith {

namespace {

std::optional<ReflectionResult> parse_reflection(const std::string& response) {
    nlohmann::json j = nlohmann::json::parse(response, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("reflection") || !j.contains("code") ||
        !j.at("reflection").is_string() || !j.at("code").is_string()) {
        return std::nullopt;
    }
    return ReflectionResult{j.at("reflection").get<std::string>(),
                            j.at("code").get<std::string>()};
}

}  // namespace

ReflectionResult reflect(LlmClient& client, const std::string& structure_description,
                         const ViewSet& views, const std::string& previous_dsl,
                         const std::vector<std::string>& mismatch_hints,
                         std::optional<std::string> image_path, double temperature) {
    std::string prompt = prompts::render_self_reflection(structure_description,
                                                         views_to_text(views), previous_dsl);
    // structured hints go beyond the base template; they carry what the
    // simulator knows and a text-only judge cannot see
    if (!mismatch_hints.empty()) {
        prompt += "\nDetected mismatches:\n";
        for (const std::string& h : mismatch_hints) {
            prompt += "- ";
            prompt += h;
            prompt += '\n';
        }
    }

    ChatMessage msg{"user", prompt, std::nullopt};
    if (image_path && client.supports_images()) msg.image_path = image_path;

    CompletionOpts opts;
    opts.temperature = temperature;
    std::vector<ChatMessage> messages{msg};
    std::string response = client.complete(messages, opts);
    if (auto r = parse_reflection(response)) return *r;

    messages.push_back({"assistant", response, std::nullopt});
    messages.push_back({"user",
                        "Your previous response was not a compact JSON object with the two keys "
                        "\"reflection\" and \"code\". Respond again as a single-line compact JSON "
                        "object with exactly those keys.",
                        std::nullopt});
    CompletionOpts retry_opts = opts;
    retry_opts.json_mode = true;
    response = client.complete(messages, retry_opts);
    if (auto r = parse_reflection(response)) return *r;
    throw JsonShapeError("reflection response is not a JSON object with keys "
                         "\"reflection\" and \"code\" after one retry");
}

}  // namespace voxelsmith
