#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "voxelsmith/llm.hpp"

namespace voxelsmith {

namespace {

std::string base64(const std::string& bytes) {
    static const char* tbl = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    while (i + 2 < bytes.size()) {
        const unsigned v = (unsigned char)(bytes[i]) << 16 | (unsigned char)(bytes[i + 1]) << 8 |
                           (unsigned char)(bytes[i + 2]);
        out += tbl[v >> 18];
        out += tbl[(v >> 12) & 63];
        out += tbl[(v >> 6) & 63];
        out += tbl[v & 63];
        i += 3;
    }
    if (i + 1 == bytes.size()) {
        const unsigned v = (unsigned char)(bytes[i]) << 16;
        out += tbl[v >> 18];
        out += tbl[(v >> 12) & 63];
        out += "==";
    } else if (i + 2 == bytes.size()) {
        const unsigned v = (unsigned char)(bytes[i]) << 16 | (unsigned char)(bytes[i + 1]) << 8;
        out += tbl[v >> 18];
        out += tbl[(v >> 12) & 63];
        out += tbl[(v >> 6) & 63];
        out += '=';
    }
    return out;
}

class LiveClient : public LlmClient {
public:
    LiveClient(std::string base, std::string path, std::string key, std::string model)
        : base_(std::move(base)), path_(std::move(path)), key_(std::move(key)),
          model_(std::move(model)) {}

    bool supports_images() const override { return true; }

    std::string complete(const std::vector<ChatMessage>& messages,
                         const CompletionOpts& opts) override {
        nlohmann::json body;
        body["model"] = model_;
        body["temperature"] = opts.temperature;
        if (opts.json_mode) body["response_format"] = {{"type", "json_object"}};
        nlohmann::json msgs = nlohmann::json::array();
        for (const ChatMessage& m : messages) {
            nlohmann::json jm;
            jm["role"] = m.role;
            if (m.image_path) {
                std::ifstream img(*m.image_path, std::ios::binary);
                if (!img) throw std::runtime_error("cannot read image " + *m.image_path);
                std::ostringstream buf;
                buf << img.rdbuf();
                nlohmann::json content = nlohmann::json::array();
                content.push_back({{"type", "text"}, {"text", m.text}});
                content.push_back(
                    {{"type", "image_url"},
                     {"image_url",
                      {{"url", "data:image/png;base64," + base64(buf.str())}}}});
                jm["content"] = std::move(content);
            } else {
                jm["content"] = m.text;
            }
            msgs.push_back(std::move(jm));
        }
        body["messages"] = std::move(msgs);

        httplib::Client cli(base_);
        cli.set_read_timeout(120, 0);
        httplib::Headers headers;
        if (!key_.empty()) headers.emplace("Authorization", "Bearer " + key_);
        auto res = cli.Post(path_, headers, body.dump(), "application/json");
        if (!res) {
            throw std::runtime_error("llm request failed: " + httplib::to_string(res.error()));
        }
        if (res->status != 200) {
            throw std::runtime_error("llm request returned HTTP " + std::to_string(res->status) +
                                     ": " + res->body.substr(0, 500));
        }
        nlohmann::json j = nlohmann::json::parse(res->body);
        return j.at("choices").at(0).at("message").at("content").get<std::string>();
    }

private:
    std::string base_;
    std::string path_;
    std::string key_;
    std::string model_;
};

}  // namespace

std::unique_ptr<LlmClient> make_live_client_from_env() {
    const char* url = std::getenv("VOXELSMITH_LLM_URL");
    if (url == nullptr || *url == '\0') {
        throw std::runtime_error("VOXELSMITH_LLM_URL is not set; required for --llm live");
    }
    const char* key = std::getenv("VOXELSMITH_LLM_KEY");
    const char* model = std::getenv("VOXELSMITH_LLM_MODEL");

    // split scheme://host[:port] from the request path
    std::string full(url);
    std::string base = full;
    std::string path = "/v1/chat/completions";
    const auto scheme_end = full.find("://");
    if (scheme_end != std::string::npos) {
        const auto path_start = full.find('/', scheme_end + 3);
        if (path_start != std::string::npos) {
            base = full.substr(0, path_start);
            path = full.substr(path_start);
        }
    }
    return std::make_unique<LiveClient>(base, path, key ? key : "",
                                        model ? model : "gpt-4o");
}

}  // namespace voxelsmith
