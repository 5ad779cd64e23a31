#include <httplib.h>

#include "mazemate/gateway/chat.hpp"

namespace mazemate::gateway {

using json = nlohmann::json;

OpenAiChatModel::OpenAiChatModel(std::string base_url, std::string model, std::string api_key)
    : base_url_(std::move(base_url)), model_(std::move(model)), api_key_(std::move(api_key)) {
    while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

json OpenAiChatModel::request_body(const std::vector<ChatMessage>& messages) const {
    json msgs = json::array();
    for (const ChatMessage& m : messages) {
        json j = {{"role", m.role}, {"content", m.content}};
        if (m.tool_call && m.role == "assistant") {
            j["content"] = nullptr;
            j["tool_calls"] = json::array({{{"id", m.tool_call->id},
                                            {"type", "function"},
                                            {"function",
                                             {{"name", m.tool_call->name},
                                              {"arguments", m.tool_call->arguments.dump()}}}}});
        }
        if (m.tool_call && m.role == "tool") j["tool_call_id"] = m.tool_call->id;
        msgs.push_back(std::move(j));
    }
    return {{"model", model_}, {"messages", msgs}, {"tools", tool_schemas()}};
}

ModelReply OpenAiChatModel::parse_response(const json& response) {
    const json& message = response.at("choices").at(0).at("message");
    ModelReply reply;
    if (auto c = message.find("content"); c != message.end() && c->is_string()) reply.text = c->get<std::string>();
    if (auto calls = message.find("tool_calls"); calls != message.end() && calls->is_array() && !calls->empty()) {
        const json& call = calls->at(0);
        ToolCall tc;
        tc.id = call.value("id", "call_0");
        tc.name = call.at("function").at("name").get<std::string>();
        const json& args = call.at("function").at("arguments");
        tc.arguments = args.is_string() ? json::parse(args.get<std::string>(), nullptr, false) : args;
        if (tc.arguments.is_discarded() || !tc.arguments.is_object()) tc.arguments = json::object();
        reply.tool_call = std::move(tc);
    }
    return reply;
}

ModelReply OpenAiChatModel::complete(const std::vector<ChatMessage>& messages) {
    // base_url is scheme://host[:port][/prefix]
    auto scheme_end = base_url_.find("://");
    auto path_start = base_url_.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    std::string origin = base_url_.substr(0, path_start);
    std::string prefix = path_start == std::string::npos ? "" : base_url_.substr(path_start);

    httplib::Client client(origin);
    client.set_connection_timeout(5);
    client.set_read_timeout(60);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    auto res = client.Post(prefix + "/chat/completions", headers, request_body(messages).dump(), "application/json");
    if (!res) {
        throw ModelUnavailable("chat model unreachable: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw ModelUnavailable("chat model returned HTTP " + std::to_string(res->status));
    }
    try {
        return parse_response(json::parse(res->body));
    } catch (const json::exception& e) {
        throw ModelUnavailable(std::string("malformed chat model response: ") + e.what());
    }
}

}  // namespace mazemate::gateway
