#include "voxelsmith/llm.hpp"

#include <fstream>

#include <json.hpp>

namespace voxelsmith {

ScriptedClient ScriptedClient::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open transcript " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("transcript " + path + ": " + e.what());
    }
    if (!j.is_array()) throw std::runtime_error("transcript " + path + ": expected a JSON array");
    std::vector<Turn> turns;
    for (const auto& e : j) {
        turns.push_back({e.at("expect_substring").get<std::string>(),
                         e.at("response").get<std::string>()});
    }
    return ScriptedClient(std::move(turns));
}

std::string ScriptedClient::complete(const std::vector<ChatMessage>& messages,
                                     const CompletionOpts&) {
    if (next_ >= turns_.size()) {
        throw TranscriptMismatch("transcript exhausted after " + std::to_string(turns_.size()) +
                                 " turns; the pipeline asked for another completion");
    }
    const Turn& turn = turns_[next_];
    std::string prompt;
    for (const ChatMessage& m : messages) {
        prompt += m.text;
        prompt += '\n';
    }
    if (prompt.find(turn.expect_substring) == std::string::npos) {
        std::string head = prompt.substr(0, 200);
        throw TranscriptMismatch("transcript turn " + std::to_string(next_ + 1) +
                                 ": prompt does not contain \"" + turn.expect_substring +
                                 "\"; prompt begins: " + head);
    }
    ++next_;
    return turn.response;
}

}  // namespace voxelsmith
