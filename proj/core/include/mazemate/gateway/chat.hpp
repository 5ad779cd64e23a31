#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mazemate/errors.hpp"

namespace mazemate::gateway {

inline constexpr const char* kToolNames[] = {"get_maze_state", "solve_low", "solve_high", "design_check"};

struct ToolCall {
    std::string id;
    std::string name;
    nlohmann::json arguments = nlohmann::json::object();
    nlohmann::json result;  // filled in by the gateway, never by the model
};

// One persisted turn of a session's conversation.
struct ChatTurn {
    std::string role;  // student | assistant | tool
    std::string text;
    std::optional<ToolCall> tool_call;
};

// Message as sent to a chat-completion model.
struct ChatMessage {
    std::string role;  // system | user | assistant | tool
    std::string content;
    std::optional<ToolCall> tool_call;  // assistant request, or tool result
};

struct ModelReply {
    std::string text;
    std::optional<ToolCall> tool_call;
};

class ModelUnavailable : public Error {
public:
    explicit ModelUnavailable(const std::string& message) : Error(ErrorCode::LlmUnavailable, message) {}
};

// Chat-completion backend. Implementations throw ModelUnavailable when the
// model cannot be reached.
class ChatModel {
public:
    virtual ~ChatModel() = default;
    virtual ModelReply complete(const std::vector<ChatMessage>& messages) = 0;
};

// OpenAI-compatible /chat/completions client with function tools.
class OpenAiChatModel : public ChatModel {
public:
    OpenAiChatModel(std::string base_url, std::string model, std::string api_key);

    ModelReply complete(const std::vector<ChatMessage>& messages) override;

    // Request body for the given conversation (exposed for tests).
    nlohmann::json request_body(const std::vector<ChatMessage>& messages) const;
    static ModelReply parse_response(const nlohmann::json& response);

private:
    std::string base_url_;
    std::string model_;
    std::string api_key_;
};

nlohmann::json tool_schemas();

nlohmann::json chat_turn_to_json(const ChatTurn& turn);
ChatTurn chat_turn_from_json(const nlohmann::json& j);

}  // namespace mazemate::gateway
