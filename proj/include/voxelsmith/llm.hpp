#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace voxelsmith {

struct ChatMessage {
    std::string role;  // system | user | assistant
    std::string text;
    std::optional<std::string> image_path;  // attached when the client supports images
};

struct CompletionOpts {
    double temperature = 0.0;
    bool json_mode = false;
};

class LlmClient {
public:
    virtual ~LlmClient() = default;
    virtual bool supports_images() const = 0;
    virtual std::string complete(const std::vector<ChatMessage>& messages,
                                 const CompletionOpts& opts) = 0;
};

/// Scripted turn mismatch or transcript exhaustion; always a test/setup bug,
/// never swallowed.
struct TranscriptMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Replays canned responses in order; each turn's expect_substring must occur
/// somewhere in the concatenated prompt text, guarding prompt regressions.
class ScriptedClient : public LlmClient {
public:
    struct Turn {
        std::string expect_substring;
        std::string response;
    };

    explicit ScriptedClient(std::vector<Turn> turns, bool images = false)
        : turns_(std::move(turns)), images_(images) {}

    /// Transcript file: JSON array of {"expect_substring", "response"}.
    static ScriptedClient from_file(const std::string& path);

    bool supports_images() const override { return images_; }
    std::string complete(const std::vector<ChatMessage>& messages,
                         const CompletionOpts& opts) override;

    std::size_t consumed() const { return next_; }
    std::size_t remaining() const { return turns_.size() - next_; }

private:
    std::vector<Turn> turns_;
    std::size_t next_ = 0;
    bool images_;
};

/// Decorator that reports every exchange to a sink (run-directory traces).
class TracingClient : public LlmClient {
public:
    using Sink = std::function<void(const std::vector<ChatMessage>&, const CompletionOpts&,
                                    const std::string& response)>;
    TracingClient(LlmClient& inner, Sink sink) : inner_(inner), sink_(std::move(sink)) {}

    bool supports_images() const override { return inner_.supports_images(); }
    std::string complete(const std::vector<ChatMessage>& messages,
                         const CompletionOpts& opts) override {
        std::string response = inner_.complete(messages, opts);
        if (sink_) sink_(messages, opts, response);
        return response;
    }

private:
    LlmClient& inner_;
    Sink sink_;
};

/// Chat-completion endpoint client; base URL and key come from the
/// VOXELSMITH_LLM_URL / VOXELSMITH_LLM_KEY environment variables. Throws
/// std::runtime_error when the URL variable is unset.
std::unique_ptr<LlmClient> make_live_client_from_env();

}  // namespace voxelsmith
