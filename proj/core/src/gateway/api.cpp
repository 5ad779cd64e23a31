#include "mazemate/gateway/api.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "mazemate/errors.hpp"

namespace mazemate::gateway {

using json = nlohmann::json;

json ApiError::to_json() const {
    return {{"status", status}, {"code", code}, {"message", message}, {"detail", detail}};
}

ApiError to_api_error(const std::exception& e) {
    if (const auto* syn = dynamic_cast<const SyntaxError*>(&e)) {
        return {400, "SYNTAX", syn->what(), {{"line", syn->line()}, {"column", syn->column()}}};
    }
    if (const auto* uns = dynamic_cast<const UnsolvableError*>(&e)) {
        return {422, "UNSOLVABLE", uns->what(),
                {{"reason", std::string(unsolvable_reason_name(uns->reason()))}}};
    }
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        switch (err->code()) {
            case ErrorCode::Schema: return {400, "SCHEMA", err->what()};
            case ErrorCode::Limit: return {422, "LIMIT", err->what()};
            case ErrorCode::StaleSession: return {409, "STALE_SESSION", err->what()};
            case ErrorCode::NotFound: return {404, "NOT_FOUND", err->what()};
            case ErrorCode::LlmUnavailable: return {503, "LLM_UNAVAILABLE", err->what()};
            default: break;
        }
    }
    if (dynamic_cast<const json::exception*>(&e) != nullptr) {
        return {400, "SYNTAX", std::string("malformed JSON request: ") + e.what()};
    }
    return {500, "INTERNAL", e.what()};
}

json actions_to_json(const std::vector<Action>& actions) {
    json a = json::array();
    for (Action x : actions) a.push_back(std::string(action_keyword(x)));
    return a;
}

json solve_low_to_json(const SolverResult& r) {
    return {{"mode", "low"},
            {"actions", actions_to_json(*r.actions)},
            {"length", r.actions->size()},
            {"explored", r.explored}};
}

json solve_high_to_json(const CompressionResult& r) {
    return {{"mode", "high"},
            {"program", print_program(r.program)},
            {"block_count", r.block_count},
            {"exec_steps", r.exec_steps},
            {"trace_equivalent", r.trace_equivalent},
            {"low_length", r.low_actions.size()},
            {"stages",
             {{"tree", print_program(r.stages.tree)},
              {"compressed", print_program(r.stages.compressed)},
              {"refined", print_program(r.stages.refined)}}}};
}

json trace_to_json(const Trace& t) {
    json states = json::array();
    for (const SimState& s : t.states) {
        states.push_back({{"x", s.position.x},
                          {"y", s.position.y},
                          {"dir", std::string(1, direction_letter(s.orientation))},
                          {"health", s.health},
                          {"gems_collected", s.gems_collected},
                          {"hearts_collected", s.hearts_collected},
                          {"monsters_defeated", s.monsters_defeated},
                          {"steps", s.steps_taken}});
    }
    json j = {{"outcome", t.outcome.success ? "Success" : "Failure"},
              {"reason", nullptr},
              {"actions", actions_to_json(t.primitive_actions)},
              {"states", states},
              {"fuel_used", t.fuel_used},
              {"failed_action", nullptr}};
    if (t.outcome.reason) j["reason"] = std::string(failure_reason_name(*t.outcome.reason));
    if (t.failed_action) j["failed_action"] = std::string(action_keyword(*t.failed_action));
    return j;
}

json design_report_to_json(const DesignReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    json j = {{"checks", checks}, {"overall", r.overall}, {"witness", nullptr}, {"unsolvable", nullptr}};
    if (r.witness) {
        j["witness"] = {{"path_length", r.witness->path_length}, {"health_margin", r.witness->health_margin}};
    }
    if (r.unsolvable) j["unsolvable"] = std::string(unsolvable_reason_name(*r.unsolvable));
    return j;
}

json session_to_json(const StoredSession& s) {
    json log = json::array();
    for (const auto& p : s.hint.log) log.push_back(std::string(hint_kind_name(p.kind)));
    return {{"id", s.hint.id},
            {"maze_id", s.maze_id},
            {"maze_hash", s.hint.maze_hash},
            {"stage", s.hint.stage},
            {"issued", log},
            {"created_ms", s.hint.created_ms},
            {"updated_ms", s.hint.updated_ms}};
}

namespace {

Response json_response(int status, const json& body) {
    return {status, body.dump(), "application/json"};
}

Response error_response(const ApiError& e) {
    return json_response(e.status, e.to_json());
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::stringstream ss(path);
    std::string part;
    while (std::getline(ss, part, '/')) {
        if (!part.empty()) parts.push_back(part);
    }
    return parts;
}

bool valid_id(const std::string& id) {
    return !id.empty() && id.size() <= 128 && std::all_of(id.begin(), id.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    });
}

json parse_body_object(const std::string& body) {
    if (std::all_of(body.begin(), body.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) {
        return json::object();
    }
    json j = json::parse(body);
    if (!j.is_object()) throw SchemaError("request body: expected a JSON object");
    return j;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    bool space = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            space = !out.empty();
        } else {
            if (space) out += ' ';
            out += c;
            space = false;
        }
    }
    return out;
}

constexpr const char* kWithheldNotice =
    "The full program is only shared after two hint requests. Work from the step-by-step path and its "
    "patterns first.";

}  // namespace

Service::Service(ServiceConfig config) : config_(std::move(config)), store_(config_.snapshot) {}

Deadline Service::deadline() const {
    return Deadline::after(config_.time_box);
}

Maze Service::require_maze(const std::string& id) const {
    auto m = store_.get_maze(id);
    if (!m) throw NotFoundError("maze '" + id + "' not found");
    return *m;
}

Response Service::handle(const Request& request) {
    try {
        return route(request);
    } catch (const std::exception& e) {
        return error_response(to_api_error(e));
    }
}

Response Service::route(const Request& r) {
    const auto parts = split_path(r.path);
    const auto n = parts.size();
    auto not_found = [&]() -> Response {
        return error_response({404, "NOT_FOUND", "no route for " + r.method + " " + r.path});
    };
    if (n >= 2 && parts[0] == "mazes") {
        const std::string& id = parts[1];
        if (!valid_id(id)) return not_found();
        if (n == 2 && r.method == "PUT") return put_maze(id, r);
        if (n == 2 && r.method == "GET") return get_maze(id);
        if (n == 3 && r.method == "POST") {
            if (parts[2] == "validate") return validate(id, r);
            if (parts[2] == "design-check") return design_check(id, r);
            if (parts[2] == "solve") return solve(id, r);
            if (parts[2] == "execute") return execute_program(id, r);
        }
        return not_found();
    }
    if (n == 1 && parts[0] == "sessions" && r.method == "POST") return create_session(r);
    if (n == 3 && parts[0] == "sessions" && r.method == "POST" && valid_id(parts[1])) {
        if (parts[2] == "hint") return hint(parts[1]);
        if (parts[2] == "chat") return chat(parts[1], r);
    }
    return not_found();
}

Response Service::put_maze(const std::string& id, const Request& r) {
    Maze m = parse_maze(r.body);
    store_.put_maze(id, m);
    return {200, serialize_maze(m), "application/json"};
}

Response Service::get_maze(const std::string& id) {
    return {200, serialize_maze(require_maze(id)), "application/json"};
}

Response Service::validate(const std::string& id, const Request& r) {
    const bool has_body = std::any_of(r.body.begin(), r.body.end(),
                                      [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
    Maze m = has_body ? parse_maze(r.body) : require_maze(id);
    return json_response(200, {{"valid", true},
                               {"hash", maze_hash(m)},
                               {"width", m.width()},
                               {"height", m.height()},
                               {"gems", m.gems().size()},
                               {"hearts", m.hearts().size()},
                               {"monsters", m.monsters().size()},
                               {"obstacles", m.obstacles().size()}});
}

Response Service::design_check(const std::string& id, const Request& r) {
    Maze m = require_maze(id);
    DesignRequirements req = config_.requirements;
    json overrides = parse_body_object(r.body);
    req.required_width = overrides.value("required_width", req.required_width);
    req.required_height = overrides.value("required_height", req.required_height);
    req.min_gems = overrides.value("min_gems", req.min_gems);
    req.min_monsters = overrides.value("min_monsters", req.min_monsters);
    req.min_asset_kinds = overrides.value("min_asset_kinds", req.min_asset_kinds);
    req.must_be_solvable = overrides.value("must_be_solvable", req.must_be_solvable);
    if (req.min_gems < 0 || req.min_monsters < 0 || req.min_asset_kinds < 0) {
        throw SchemaError("requirements: minima must be >= 0");
    }
    return json_response(200, design_report_to_json(check_design(m, req, deadline())));
}

Response Service::solve(const std::string& id, const Request& r) {
    auto mode_it = r.query.find("mode");
    const std::string mode = mode_it == r.query.end() ? "low" : mode_it->second;
    Maze m = require_maze(id);
    if (mode == "low") {
        SolverResult res = solve_low(m, deadline());
        if (!res.solved()) throw UnsolvableError(*res.unsolvable);
        return json_response(200, solve_low_to_json(res));
    }
    if (mode == "high") return json_response(200, solve_high_to_json(solve_high(m, config_.vns, deadline())));
    throw SchemaError("mode: expected 'low' or 'high', found '" + mode + "'");
}

Response Service::execute_program(const std::string& id, const Request& r) {
    Maze m = require_maze(id);
    std::string text = r.body;
    int fuel = kDefaultFuel;
    auto first = std::find_if(text.begin(), text.end(), [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
    if (first != text.end() && *first == '{') {
        json body = parse_body_object(r.body);
        if (!body.contains("program") || !body["program"].is_string()) {
            throw SchemaError("program: expected program text");
        }
        text = body["program"].get<std::string>();
        fuel = body.value("fuel", kDefaultFuel);
        if (fuel < 1) throw LimitError("fuel must be >= 1");
    }
    Program p = parse_program(text);
    return json_response(200, trace_to_json(execute(p, m, fuel)));
}

Response Service::create_session(const Request& r) {
    json body = parse_body_object(r.body);
    if (!body.contains("maze_id") || !body["maze_id"].is_string()) throw SchemaError("maze_id: missing");
    const auto maze_id = body["maze_id"].get<std::string>();
    Maze m = require_maze(maze_id);
    StoredSession s;
    s.hint = new_session(m);
    s.maze_id = maze_id;
    store_.create_session(s);
    return json_response(201, session_to_json(s));
}

Response Service::hint(const std::string& id) {
    HintPayload payload;
    store_.update_session(id, [&](StoredSession& s) {
        Maze m = require_maze(s.maze_id);
        auto [next, issued] = request_hint(s.hint, m, config_.vns, deadline());
        s.hint = std::move(next);
        payload = std::move(issued);
    });
    return json_response(200, hint_payload_to_json(payload));
}

json Service::run_tool(const ToolCall& call, const StoredSession& session, const Maze& maze) {
    if (call.name == "get_maze_state") return serialize_maze(maze);
    if (call.name == "solve_low") {
        SolverResult r = solve_low(maze, deadline());
        if (!r.solved()) return {{"unsolvable", std::string(unsolvable_reason_name(*r.unsolvable))}};
        return {{"actions", actions_to_json(*r.actions)}};
    }
    if (call.name == "solve_high") {
        if (session.hint.stage < 2) return {{"withheld", true}, {"notice", kWithheldNotice}};
        try {
            return {{"program", print_program(solve_high(maze, config_.vns, deadline()).program)}};
        } catch (const UnsolvableError& e) {
            return {{"unsolvable", std::string(unsolvable_reason_name(e.reason()))}};
        }
    }
    if (call.name == "design_check") return design_report_to_json(check_design(maze, config_.requirements, deadline()));
    return {{"error", "unknown tool '" + call.name + "'"}};
}

std::string Service::guard_reply(std::string text, const StoredSession& session, const Maze& maze) {
    text = truncate_sentences(text, kMaxHintSentences);
    if (session.hint.stage >= 2) return text;
    try {
        const std::string program = collapse_whitespace(print_program(solve_high(maze, config_.vns, deadline()).program));
        if (!program.empty() && collapse_whitespace(text).find(program) != std::string::npos) {
            return std::string("I can't share the finished program yet. ") +
                   "Let's look at the step-by-step path first: which parts of it repeat?";
        }
    } catch (const Error&) {
        // Unsolvable or over budget: there is no program to leak.
    }
    return text;
}

Response Service::chat(const std::string& id, const Request& r) {
    json body = parse_body_object(r.body);
    const std::string student_text = body.value("text", std::string());
    json response;
    store_.update_session(id, [&](StoredSession& s) {
        Maze m = require_maze(s.maze_id);
        if (maze_hash(m) != s.hint.maze_hash) {
            throw StaleSessionError("session " + s.hint.id + " was opened for a different version of this maze");
        }
        s.chat.push_back({"student", student_text, std::nullopt});

        auto fallback = [&](const std::string& why) {
            auto [next, payload] = request_hint(s.hint, m, config_.vns, deadline());
            s.hint = std::move(next);
            s.chat.push_back({"assistant", payload.rendered_text, std::nullopt});
            response = {{"fallback", true},
                        {"notice", {{"code", "LLM_UNAVAILABLE"}, {"message", why}}},
                        {"reply", {{"role", "assistant"}, {"text", payload.rendered_text}}},
                        {"hint", hint_payload_to_json(payload)},
                        {"stage", s.hint.stage}};
        };

        if (!config_.chat_model) {
            fallback("no chat model configured; showing the next staged hint");
            return;
        }

        std::vector<ChatMessage> messages;
        messages.push_back({"system",
                            "You are MazeMate, a scaffolding assistant for a block-programming maze game. "
                            "Answer in at most 10 sentences, prefer guiding questions, and never invent paths "
                            "or programs: call the tools instead. Hint stage: " +
                                std::to_string(s.hint.stage) + " of 3. Current maze:\n" + serialize_maze(m),
                            std::nullopt});
        for (const ChatTurn& t : s.chat) {
            if (t.role == "student") messages.push_back({"user", t.text, std::nullopt});
            if (t.role == "assistant") messages.push_back({"assistant", t.text, std::nullopt});
        }

        json tool_log = json::array();
        std::vector<ChatTurn> tool_turns;
        std::optional<std::string> reply;
        try {
            for (int round = 0; round <= config_.max_tool_rounds && !reply; ++round) {
                ModelReply out = config_.chat_model->complete(messages);
                if (!out.tool_call || round == config_.max_tool_rounds) {
                    reply = out.text;
                    break;
                }
                ToolCall call = *out.tool_call;
                call.result = run_tool(call, s, m);
                messages.push_back({"assistant", out.text, call});
                messages.push_back({"tool", call.result.dump(), call});
                tool_log.push_back({{"name", call.name}, {"result", call.result}});
                tool_turns.push_back({"tool", "", call});
            }
        } catch (const ModelUnavailable& e) {
            fallback(e.what());
            return;
        }

        const std::string text = guard_reply(reply.value_or(""), s, m);
        s.chat.insert(s.chat.end(), tool_turns.begin(), tool_turns.end());
        s.chat.push_back({"assistant", text, std::nullopt});
        response = {{"fallback", false},
                    {"reply", {{"role", "assistant"}, {"text", text}}},
                    {"tool_calls", tool_log},
                    {"stage", s.hint.stage}};
    });
    return json_response(200, response);
}

}  // namespace mazemate::gateway
