#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <deque>
#include <filesystem>
#include <functional>
#include <random>
#include <thread>

#include <nlohmann/json.hpp>

#include "mazemate/compressor.hpp"
#include "mazemate/gateway/api.hpp"
#include "mazemate/solver.hpp"
#include "support/test_support.hpp"

using namespace mazemate;
using namespace mazemate::gateway;
using json = nlohmann::json;
using mazemate::testing::grid_maze;
using mazemate::testing::row_maze;

namespace {

Response call(Service& svc, std::string method, std::string path, std::string body = {},
              std::map<std::string, std::string> query = {}) {
    return svc.handle({std::move(method), std::move(path), std::move(query), std::move(body)});
}

json body_of(const Response& r) {
    return json::parse(r.body);
}

// Chat model driven by a script of reply functions; records what it saw.
class ScriptedModel : public ChatModel {
public:
    using Step = std::function<ModelReply(const std::vector<ChatMessage>&)>;

    explicit ScriptedModel(std::vector<Step> script, bool loop = false) : script_(std::move(script)), loop_(loop) {}

    ModelReply complete(const std::vector<ChatMessage>& messages) override {
        seen.push_back(messages);
        if (next_ >= script_.size()) {
            if (!loop_) return {"I am out of script.", std::nullopt};
            next_ = 0;
        }
        return script_[next_++](messages);
    }

    std::vector<std::vector<ChatMessage>> seen;

private:
    std::vector<Step> script_;
    bool loop_;
    std::size_t next_ = 0;
};

ScriptedModel::Step request_tool(std::string name) {
    return [name](const std::vector<ChatMessage>&) {
        return ModelReply{"", ToolCall{"call-" + name, name, json::object(), nullptr}};
    };
}

ScriptedModel::Step say(std::string text) {
    return [text](const std::vector<ChatMessage>&) { return ModelReply{text, std::nullopt}; };
}

// Echoes the most recent tool result back verbatim, the way a careless
// model would.
ScriptedModel::Step echo_last_tool() {
    return [](const std::vector<ChatMessage>& messages) {
        for (auto it = messages.rbegin(); it != messages.rend(); ++it) {
            if (it->role == "tool") return ModelReply{"Tool said: " + it->content, std::nullopt};
        }
        return ModelReply{"No tool output.", std::nullopt};
    };
}

std::string escaped(const std::string& text) {
    std::string s = json(text).dump();
    return s.substr(1, s.size() - 2);
}

const char* kStaircase = R"({"width":5,"height":5,"start":{"x":0,"y":4,"dir":"E"},"goal":{"x":4,"y":0},
  "obstacles":[{"x":0,"y":0},{"x":0,"y":1},{"x":0,"y":2},{"x":0,"y":3},{"x":1,"y":0},{"x":1,"y":1},{"x":1,"y":2},
               {"x":2,"y":0},{"x":2,"y":1},{"x":3,"y":0},{"x":2,"y":4},{"x":3,"y":4},{"x":4,"y":4},{"x":3,"y":3},
               {"x":4,"y":3},{"x":4,"y":2}],
  "gems":[{"x":3,"y":1}],"monsters":[{"x":1,"y":3,"kind":"bat"}]})";

std::string open_session(Service& svc, const std::string& maze_id) {
    Response r = call(svc, "POST", "/sessions", json{{"maze_id", maze_id}}.dump());
    REQUIRE(r.status == 201);
    return body_of(r)["id"].get<std::string>();
}

struct TempDir {
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("mazemate-test-" + std::to_string(std::random_device{}()) + "-" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::filesystem::path path;
};

}  // namespace

TEST_CASE("maze documents: upsert echoes the canonical form") {
    Service svc({});
    Maze m = testing::design_fixture();
    json scrambled = json::parse(serialize_maze(m));  // sorted keys, not canonical order
    Response put = call(svc, "PUT", "/mazes/m1", scrambled.dump());
    CHECK(put.status == 200);
    CHECK(put.body == serialize_maze(m));
    Response get = call(svc, "GET", "/mazes/m1");
    CHECK(get.status == 200);
    CHECK(get.body == serialize_maze(m));
}

TEST_CASE("errors are ApiError documents") {
    Service svc({});
    SUBCASE("unknown maze") {
        Response r = call(svc, "GET", "/mazes/nope");
        CHECK(r.status == 404);
        CHECK(body_of(r)["code"] == "NOT_FOUND");
        CHECK(body_of(r)["status"] == 404);
    }
    SUBCASE("unknown route") {
        CHECK(call(svc, "DELETE", "/mazes/m1").status == 404);
        CHECK(call(svc, "GET", "/").status == 404);
    }
    SUBCASE("malformed document") {
        Response r = call(svc, "PUT", "/mazes/m1", "{\"width\": ");
        CHECK(r.status == 400);
        CHECK(body_of(r)["code"] == "SYNTAX");
        CHECK(body_of(r)["detail"].contains("line"));
    }
    SUBCASE("schema violation") {
        Response r = call(svc, "PUT", "/mazes/m1", R"({"width":3,"height":1,"start":{"x":0,"y":0,"dir":"E"}})");
        CHECK(r.status == 400);
        CHECK(body_of(r)["code"] == "SCHEMA");
    }
    SUBCASE("bad mode") {
        call(svc, "PUT", "/mazes/m1", serialize_maze(row_maze("S . G")));
        Response r = call(svc, "POST", "/mazes/m1/solve", "", {{"mode", "medium"}});
        CHECK(r.status == 400);
    }
}

TEST_CASE("solve: unsolvable maze maps to 422") {
    Service svc({});
    call(svc, "PUT", "/mazes/m1", serialize_maze(row_maze("S # G")));
    Response r = call(svc, "POST", "/mazes/m1/solve", "", {{"mode", "low"}});
    CHECK(r.status == 422);
    json b = body_of(r);
    CHECK(b["code"] == "UNSOLVABLE");
    CHECK(b["detail"]["reason"] == "NoPath");
}

TEST_CASE("solve: responses match the library") {
    Service svc({});
    Maze m = parse_maze(kStaircase);
    call(svc, "PUT", "/mazes/stairs", kStaircase);
    Response low = call(svc, "POST", "/mazes/stairs/solve", "", {{"mode", "low"}});
    REQUIRE(low.status == 200);
    CHECK(low.body == solve_low_to_json(solve_low(m)).dump());
    Response high = call(svc, "POST", "/mazes/stairs/solve", "", {{"mode", "high"}});
    REQUIRE(high.status == 200);
    CHECK(high.body == solve_high_to_json(solve_high(m)).dump());
    CHECK(body_of(high)["program"] == print_program(solve_high(m).program));
}

TEST_CASE("validate and design-check") {
    Service svc({});
    call(svc, "PUT", "/mazes/d", serialize_maze(testing::design_fixture()));
    Response v = call(svc, "POST", "/mazes/d/validate");
    CHECK(v.status == 200);
    CHECK(body_of(v)["valid"] == true);
    CHECK(body_of(v)["hash"] == maze_hash(testing::design_fixture()));

    Response bad = call(svc, "POST", "/mazes/d/validate", "{\"width\":1}");
    CHECK(bad.status == 400);

    Response d = call(svc, "POST", "/mazes/d/design-check");
    CHECK(d.status == 200);
    CHECK(d.body == design_report_to_json(check_design(testing::design_fixture())).dump());

    call(svc, "PUT", "/mazes/small", serialize_maze(testing::small_fixture()));
    json small = body_of(call(svc, "POST", "/mazes/small/design-check"));
    CHECK(small["overall"] == false);
    CHECK(small["checks"][0]["detail"] == "expected 8×8, found 3×3");
    json relaxed = body_of(call(svc, "POST", "/mazes/small/design-check",
                                R"({"required_width":3,"required_height":3,"min_monsters":1})"));
    CHECK(relaxed["overall"] == true);
}

TEST_CASE("execute accepts raw text or JSON") {
    Service svc({});
    call(svc, "PUT", "/mazes/c", serialize_maze(row_maze("S . G")));
    Response raw = call(svc, "POST", "/mazes/c/execute", "while path_ahead { move }");
    REQUIRE(raw.status == 200);
    CHECK(body_of(raw)["outcome"] == "Success");
    CHECK(body_of(raw)["actions"] == json::array({"move", "move"}));
    CHECK(body_of(raw)["states"].size() == 3);

    Response spin = call(svc, "POST", "/mazes/c/execute",
                         json{{"program", "while not at_goal { turn_left }"}, {"fuel", 25}}.dump());
    CHECK(body_of(spin)["reason"] == "FuelExhausted");
    CHECK(body_of(spin)["fuel_used"] == 25);

    Response syntax = call(svc, "POST", "/mazes/c/execute", "move\n  jump");
    CHECK(syntax.status == 400);
    CHECK(body_of(syntax)["detail"]["line"] == 2);
    CHECK(body_of(syntax)["detail"]["column"] == 3);

    Response limit = call(svc, "POST", "/mazes/c/execute", "repeat 0 { move }");
    CHECK(limit.status == 422);
    CHECK(body_of(limit)["code"] == "LIMIT");
}

TEST_CASE("hint sessions advance one stage per request") {
    Service svc({});
    call(svc, "PUT", "/mazes/bat", serialize_maze(row_maze("S b . G")));
    const std::string id = open_session(svc, "bat");

    json h1 = body_of(call(svc, "POST", "/sessions/" + id + "/hint"));
    CHECK(h1["stage"] == 1);
    CHECK(h1["kind"] == "low_efficiency_steps");
    CHECK(h1["content"]["actions"] == json::array({"attack", "move", "move", "move"}));
    json h2 = body_of(call(svc, "POST", "/sessions/" + id + "/hint"));
    CHECK(h2["kind"] == "transformation_hints");
    json h3 = body_of(call(svc, "POST", "/sessions/" + id + "/hint"));
    CHECK(h3["content"]["program"] == print_program(solve_high(row_maze("S b . G")).program));
    json h4 = body_of(call(svc, "POST", "/sessions/" + id + "/hint"));
    CHECK(h4 == h3);

    CHECK(call(svc, "POST", "/sessions/s-unknown/hint").status == 404);
    CHECK(call(svc, "POST", "/sessions", json{{"maze_id", "missing"}}.dump()).status == 404);
}

TEST_CASE("editing the maze makes the session stale") {
    Service svc({});
    call(svc, "PUT", "/mazes/m1", serialize_maze(row_maze("S . G")));
    const std::string id = open_session(svc, "m1");
    CHECK(call(svc, "POST", "/sessions/" + id + "/hint").status == 200);
    call(svc, "PUT", "/mazes/m1", serialize_maze(row_maze("S . . G")));
    Response r = call(svc, "POST", "/sessions/" + id + "/hint");
    CHECK(r.status == 409);
    CHECK(body_of(r)["code"] == "STALE_SESSION");
    CHECK(call(svc, "POST", "/sessions/" + id + "/chat", R"({"text":"help"})").status == 409);
}

TEST_CASE("chat without a model falls back to staged hints") {
    Service svc({});
    call(svc, "PUT", "/mazes/m1", serialize_maze(row_maze("S b . G")));
    const std::string id = open_session(svc, "m1");
    Response r = call(svc, "POST", "/sessions/" + id + "/chat", R"({"text":"I am stuck, help?"})");
    REQUIRE(r.status == 200);
    json b = body_of(r);
    CHECK(b["fallback"] == true);
    CHECK(b["notice"]["code"] == "LLM_UNAVAILABLE");
    CHECK(b["hint"]["stage"] == 1);
    CHECK(b["reply"]["text"] == b["hint"]["rendered_text"]);
}

TEST_CASE("chat: get_maze_state returns the canonical document") {
    auto model = std::make_shared<ScriptedModel>(
        std::vector<ScriptedModel::Step>{request_tool("get_maze_state"), say("Let's look at your maze together.")});
    ServiceConfig cfg;
    cfg.chat_model = model;
    Service svc(cfg);
    Maze m = testing::design_fixture();
    call(svc, "PUT", "/mazes/m1", serialize_maze(m));
    const std::string id = open_session(svc, "m1");
    json b = body_of(call(svc, "POST", "/sessions/" + id + "/chat", R"({"text":"what does my maze look like?"})"));
    CHECK(b["fallback"] == false);
    REQUIRE(b["tool_calls"].size() == 1);
    CHECK(b["tool_calls"][0]["result"].get<std::string>() == serialize_maze(m));
    REQUIRE(model->seen.size() == 2);
    const ChatMessage& tool_msg = model->seen[1].back();
    CHECK(tool_msg.role == "tool");
    CHECK(json::parse(tool_msg.content).get<std::string>() == serialize_maze(m));

    auto stored = svc.store().get_session(id);
    REQUIRE(stored.has_value());
    REQUIRE(stored->chat.size() == 3);
    CHECK(stored->chat[0].role == "student");
    CHECK(stored->chat[1].role == "tool");
    CHECK(stored->chat[2].role == "assistant");
}

TEST_CASE("chat: solve_high is withheld below stage two") {
    auto model = std::make_shared<ScriptedModel>(
        std::vector<ScriptedModel::Step>{request_tool("solve_high"), echo_last_tool()}, true);
    ServiceConfig cfg;
    cfg.chat_model = model;
    Service svc(cfg);
    Maze m = parse_maze(kStaircase);
    call(svc, "PUT", "/mazes/m1", kStaircase);
    const std::string id = open_session(svc, "m1");
    const std::string program = print_program(solve_high(m).program);

    json b0 = body_of(call(svc, "POST", "/sessions/" + id + "/chat", R"({"text":"give me the answer"})"));
    CHECK(b0["tool_calls"][0]["result"]["withheld"] == true);
    CHECK(b0.dump().find(escaped(program)) == std::string::npos);

    call(svc, "POST", "/sessions/" + id + "/hint");
    call(svc, "POST", "/sessions/" + id + "/hint");
    json b2 = body_of(call(svc, "POST", "/sessions/" + id + "/chat", R"({"text":"now?"})"));
    CHECK(b2["tool_calls"][0]["result"]["program"] == program);
}

TEST_CASE("chat: replies quoting the program early are redacted") {
    Maze m = parse_maze(kStaircase);
    const std::string program = print_program(solve_high(m).program);
    auto model = std::make_shared<ScriptedModel>(
        std::vector<ScriptedModel::Step>{say("Sure! Here it is:\n```\n" + program + "```\nGood luck.")}, true);
    ServiceConfig cfg;
    cfg.chat_model = model;
    Service svc(cfg);
    call(svc, "PUT", "/mazes/m1", kStaircase);
    const std::string id = open_session(svc, "m1");

    json b0 = body_of(call(svc, "POST", "/sessions/" + id + "/chat", R"({"text":"answer please"})"));
    CHECK(b0["reply"]["text"].get<std::string>().find(program) == std::string::npos);
    CHECK(b0.dump().find(escaped(program)) == std::string::npos);

    call(svc, "POST", "/sessions/" + id + "/hint");
    call(svc, "POST", "/sessions/" + id + "/hint");
    json b2 = body_of(call(svc, "POST", "/sessions/" + id + "/chat", R"({"text":"answer please"})"));
    CHECK(b2["reply"]["text"].get<std::string>().find(program) != std::string::npos);
}

TEST_CASE("chat: replies are truncated to ten sentences") {
    std::string rambling;
    for (int i = 0; i < 25; ++i) rambling += "Sentence number " + std::to_string(i) + ". ";
    ServiceConfig cfg;
    cfg.chat_model = std::make_shared<ScriptedModel>(std::vector<ScriptedModel::Step>{say(rambling)});
    Service svc(cfg);
    call(svc, "PUT", "/mazes/m1", serialize_maze(row_maze("S . G")));
    const std::string id = open_session(svc, "m1");
    json b = body_of(call(svc, "POST", "/sessions/" + id + "/chat", R"({"text":"talk to me"})"));
    CHECK(count_sentences(b["reply"]["text"].get<std::string>()) == 10);
}

TEST_CASE("chat: model failure falls back with a notice") {
    struct Broken : ChatModel {
        ModelReply complete(const std::vector<ChatMessage>&) override { throw ModelUnavailable("connection refused"); }
    };
    ServiceConfig cfg;
    cfg.chat_model = std::make_shared<Broken>();
    Service svc(cfg);
    call(svc, "PUT", "/mazes/m1", serialize_maze(row_maze("S . G")));
    const std::string id = open_session(svc, "m1");
    json b = body_of(call(svc, "POST", "/sessions/" + id + "/chat", R"({"text":"hello"})"));
    CHECK(b["fallback"] == true);
    CHECK(b["notice"]["code"] == "LLM_UNAVAILABLE");
}

TEST_CASE("gating property: no early program text across random interleavings") {
    std::mt19937_64 rng(77);
    std::vector<std::string> docs = {kStaircase, serialize_maze(testing::design_fixture()),
                                     serialize_maze(testing::quiz_corridor())};
    for (const auto& doc : docs) {
        Maze m = parse_maze(doc);
        const std::string program = print_program(solve_high(m).program);
        auto model = std::make_shared<ScriptedModel>(
            std::vector<ScriptedModel::Step>{request_tool("solve_high"), echo_last_tool(), say("```\n" + program + "```"),
                                             request_tool("solve_low"), echo_last_tool()},
            true);
        ServiceConfig cfg;
        cfg.chat_model = model;
        Service svc(cfg);
        call(svc, "PUT", "/mazes/m", doc);
        for (int s = 0; s < 5; ++s) {
            const std::string id = open_session(svc, "m");
            for (int k = 0; k < 8; ++k) {
                const int stage_before = svc.store().get_session(id)->hint.stage;
                const bool hint = std::bernoulli_distribution(0.3)(rng);
                Response r = hint ? call(svc, "POST", "/sessions/" + id + "/hint")
                                  : call(svc, "POST", "/sessions/" + id + "/chat", R"({"text":"help"})");
                REQUIRE(r.status == 200);
                const int stage_after = svc.store().get_session(id)->hint.stage;
                const int owning_stage = hint ? stage_after : stage_before;
                if (owning_stage < 2) CHECK(r.body.find(escaped(program)) == std::string::npos);
            }
        }
    }
}

TEST_CASE("snapshot persistence survives a restart") {
    TempDir dir;
    const auto snap = dir.path / "sessions.json";
    std::string id;
    std::string before;
    {
        ServiceConfig cfg;
        cfg.snapshot = snap;
        Service svc(cfg);
        call(svc, "PUT", "/mazes/m1", serialize_maze(row_maze("S b . G")));
        id = open_session(svc, "m1");
        CHECK(body_of(call(svc, "POST", "/sessions/" + id + "/hint"))["stage"] == 1);
        before = svc.store().snapshot_text();
    }
    REQUIRE(std::filesystem::exists(snap));
    ServiceConfig cfg;
    cfg.snapshot = snap;
    Service restarted(cfg);
    CHECK(restarted.store().snapshot_text() == before);
    CHECK(body_of(call(restarted, "POST", "/sessions/" + id + "/hint"))["stage"] == 2);
    CHECK(call(restarted, "GET", "/mazes/m1").body == serialize_maze(row_maze("S b . G")));
}

TEST_CASE("unreadable snapshot is a startup failure") {
    TempDir dir;
    const auto snap = dir.path / "broken.json";
    {
        std::ofstream out(snap);
        out << "{ not json";
    }
    ServiceConfig cfg;
    cfg.snapshot = snap;
    CHECK_THROWS_AS(Service{cfg}, std::runtime_error);
}

TEST_CASE("concurrent hint requests on one session are serialized") {
    Service svc({});
    call(svc, "PUT", "/mazes/m1", serialize_maze(testing::quiz_corridor()));
    const std::string id = open_session(svc, "m1");
    std::vector<std::thread> threads;
    std::atomic<int> ok{0};
    for (int i = 0; i < 6; ++i) {
        threads.emplace_back([&] {
            if (call(svc, "POST", "/sessions/" + id + "/hint").status == 200) ++ok;
        });
    }
    for (auto& t : threads) t.join();
    CHECK(ok == 6);
    auto s = svc.store().get_session(id);
    CHECK(s->hint.stage == 3);
    REQUIRE(s->hint.log.size() == 3);
    CHECK(s->hint.log[0].kind == HintKind::LowEfficiencySteps);
    CHECK(s->hint.log[1].kind == HintKind::TransformationHints);
    CHECK(s->hint.log[2].kind == HintKind::HighEfficiencyProgram);
}

TEST_CASE("time box overrun returns LIMIT") {
    ServiceConfig cfg;
    cfg.time_box = std::chrono::milliseconds(0);
    Service svc(cfg);
    call(svc, "PUT", "/mazes/m1", serialize_maze(row_maze("S . G")));
    Response r = call(svc, "POST", "/mazes/m1/solve", "", {{"mode", "low"}});
    CHECK(r.status == 422);
    CHECK(body_of(r)["code"] == "LIMIT");
}

TEST_CASE("HTTP transport") {
    Service svc({});
    HttpServer server(svc);
    const int port = server.start("127.0.0.1", 0);
    REQUIRE(port > 0);
    httplib::Client client("127.0.0.1", port);

    Maze m = parse_maze(kStaircase);
    auto put = client.Put("/mazes/stairs", kStaircase, "application/json");
    REQUIRE(put);
    CHECK(put->status == 200);
    CHECK(put->body == serialize_maze(m));
    CHECK(put->get_header_value("Content-Type") == "application/json");

    auto low = client.Post("/mazes/stairs/solve?mode=low", "", "application/json");
    REQUIRE(low);
    CHECK(low->body == solve_low_to_json(solve_low(m)).dump());
    auto high = client.Post("/mazes/stairs/solve?mode=high", "", "application/json");
    REQUIRE(high);
    CHECK(high->body == solve_high_to_json(solve_high(m)).dump());

    auto missing = client.Get("/mazes/none");
    REQUIRE(missing);
    CHECK(missing->status == 404);
    CHECK(json::parse(missing->body)["code"] == "NOT_FOUND");

    auto session = client.Post("/sessions", json{{"maze_id", "stairs"}}.dump(), "application/json");
    REQUIRE(session);
    CHECK(session->status == 201);
    server.stop();
}

TEST_CASE("OpenAI-compatible client against a fake endpoint") {
    httplib::Server fake;
    std::atomic<int> calls{0};
    json last_request;
    std::mutex mu;
    fake.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
        std::lock_guard lock(mu);
        last_request = json::parse(req.body);
        json reply;
        if (calls++ == 0) {
            reply = {{"choices",
                      {{{"message",
                         {{"role", "assistant"},
                          {"content", nullptr},
                          {"tool_calls",
                           {{{"id", "call_1"},
                             {"type", "function"},
                             {"function", {{"name", "design_check"}, {"arguments", "{}"}}}}}}}}}}}};
        } else {
            reply = {{"choices", {{{"message", {{"role", "assistant"}, {"content", "Your maze passes. Nice work!"}}}}}}};
        }
        CHECK(req.get_header_value("Authorization") == "Bearer test-key");
        res.set_content(reply.dump(), "application/json");
    });
    const int port = fake.bind_to_any_port("127.0.0.1");
    std::thread t([&] { fake.listen_after_bind(); });
    fake.wait_until_ready();

    ServiceConfig cfg;
    cfg.chat_model = std::make_shared<OpenAiChatModel>("http://127.0.0.1:" + std::to_string(port) + "/v1", "tiny",
                                                       "test-key");
    Service svc(cfg);
    call(svc, "PUT", "/mazes/m1", serialize_maze(testing::design_fixture()));
    const std::string id = open_session(svc, "m1");
    json b = body_of(call(svc, "POST", "/sessions/" + id + "/chat", R"({"text":"is my maze ok?"})"));
    CHECK(b["fallback"] == false);
    CHECK(b["reply"]["text"] == "Your maze passes. Nice work!");
    CHECK(b["tool_calls"][0]["name"] == "design_check");
    CHECK(b["tool_calls"][0]["result"]["overall"] == true);
    {
        std::lock_guard lock(mu);
        CHECK(last_request["model"] == "tiny");
        CHECK(last_request["tools"].size() == 4);
        const json& msgs = last_request["messages"];
        CHECK(msgs[0]["role"] == "system");
        CHECK(msgs.back()["role"] == "tool");
        CHECK(msgs.back()["tool_call_id"] == "call_1");
    }
    fake.stop();
    t.join();

    // Endpoint gone: the chat degrades to the deterministic hint.
    json down = body_of(call(svc, "POST", "/sessions/" + id + "/chat", R"({"text":"again?"})"));
    CHECK(down["fallback"] == true);
    CHECK(down["notice"]["code"] == "LLM_UNAVAILABLE");
}

TEST_CASE("environment configuration") {
    ::setenv("MAZEMATE_BIND", "0.0.0.0:9191", 1);
    ::setenv("MAZEMATE_SNAPSHOT", "/tmp/mm.json", 1);
    ::setenv("MAZEMATE_CHAT_URL", "http://localhost:1/v1", 1);
    auto [server, service] = config_from_environment();
    CHECK(server.host == "0.0.0.0");
    CHECK(server.port == 9191);
    CHECK(service.snapshot == std::filesystem::path("/tmp/mm.json"));
    CHECK(service.chat_model != nullptr);
    ::unsetenv("MAZEMATE_BIND");
    ::unsetenv("MAZEMATE_SNAPSHOT");
    ::unsetenv("MAZEMATE_CHAT_URL");
    auto [d_server, d_service] = config_from_environment();
    CHECK(d_server.port == 8080);
    CHECK_FALSE(d_service.snapshot.has_value());
    CHECK(d_service.chat_model == nullptr);
}
