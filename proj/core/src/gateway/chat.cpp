#include "mazemate/gateway/chat.hpp"

namespace mazemate::gateway {

using json = nlohmann::json;

json tool_schemas() {
    auto tool = [](const char* name, const char* description) {
        return json{{"type", "function"},
                    {"function",
                     {{"name", name},
                      {"description", description},
                      {"parameters", {{"type", "object"}, {"properties", json::object()}}}}}};
    };
    return json::array({
        tool("get_maze_state", "Current maze document the student is working on."),
        tool("solve_low", "Shortest step-by-step action list for the current maze."),
        tool("solve_high", "Compact loop/conditional program for the current maze."),
        tool("design_check", "Check the maze against the lesson's design requirements."),
    });
}

json chat_turn_to_json(const ChatTurn& turn) {
    json j;
    j["role"] = turn.role;
    j["text"] = turn.text;
    if (turn.tool_call) {
        j["tool_call"] = {{"id", turn.tool_call->id},
                          {"name", turn.tool_call->name},
                          {"arguments", turn.tool_call->arguments},
                          {"result", turn.tool_call->result}};
    }
    return j;
}

ChatTurn chat_turn_from_json(const json& j) {
    ChatTurn t;
    t.role = j.at("role").get<std::string>();
    t.text = j.at("text").get<std::string>();
    if (auto it = j.find("tool_call"); it != j.end()) {
        ToolCall c;
        c.id = it->at("id").get<std::string>();
        c.name = it->at("name").get<std::string>();
        c.arguments = it->at("arguments");
        c.result = it->at("result");
        t.tool_call = std::move(c);
    }
    return t;
}

}  // namespace mazemate::gateway
