#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "mazemate/compressor.hpp"
#include "mazemate/gateway/chat.hpp"
#include "mazemate/gateway/session_store.hpp"
#include "mazemate/interpreter.hpp"
#include "mazemate/scaffold.hpp"
#include "mazemate/solver.hpp"

namespace mazemate::gateway {

struct ApiError {
    int status = 500;
    std::string code;
    std::string message;
    nlohmann::json detail = nlohmann::json::object();

    nlohmann::json to_json() const;
};

// Maps library exceptions onto API errors.
ApiError to_api_error(const std::exception& e);

struct Request {
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

struct ServiceConfig {
    std::optional<std::filesystem::path> snapshot;
    std::chrono::milliseconds time_box{10'000};
    VnsConfig vns;
    DesignRequirements requirements;
    std::shared_ptr<ChatModel> chat_model;  // null: deterministic hints only
    int max_tool_rounds = 4;
};

// JSON views of library results, shared by the HTTP API and the CLI.
nlohmann::json actions_to_json(const std::vector<Action>& actions);
nlohmann::json solve_low_to_json(const SolverResult& r);
nlohmann::json solve_high_to_json(const CompressionResult& r);
nlohmann::json trace_to_json(const Trace& t);
nlohmann::json design_report_to_json(const DesignReport& r);
nlohmann::json session_to_json(const StoredSession& s);

// Transport-independent request dispatcher for the HTTP/JSON API.
class Service {
public:
    explicit Service(ServiceConfig config);

    Response handle(const Request& request);

    SessionStore& store() { return store_; }

private:
    Response route(const Request& request);
    Response put_maze(const std::string& id, const Request& r);
    Response get_maze(const std::string& id);
    Response validate(const std::string& id, const Request& r);
    Response design_check(const std::string& id, const Request& r);
    Response solve(const std::string& id, const Request& r);
    Response execute_program(const std::string& id, const Request& r);
    Response create_session(const Request& r);
    Response hint(const std::string& id);
    Response chat(const std::string& id, const Request& r);

    Maze require_maze(const std::string& id) const;
    Deadline deadline() const;
    nlohmann::json run_tool(const ToolCall& call, const StoredSession& session, const Maze& maze);
    std::string guard_reply(std::string text, const StoredSession& session, const Maze& maze);

    ServiceConfig config_;
    SessionStore store_;
};

struct ServerConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
};

// Reads MAZEMATE_BIND, MAZEMATE_SNAPSHOT, MAZEMATE_CHAT_URL,
// MAZEMATE_CHAT_MODEL and MAZEMATE_CHAT_API_KEY.
std::pair<ServerConfig, ServiceConfig> config_from_environment();

// Blocks serving HTTP until stop_server() or process exit. Throws
// std::runtime_error when the address cannot be bound.
void serve(Service& service, const ServerConfig& config);

class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();

    // Binds (port 0 picks a free port) and starts serving on a background
    // thread. Returns the bound port.
    int start(const std::string& host, int port);
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace mazemate::gateway
