// mazemate: command-line front end for the maze engine and HTTP service.
//
// Exit codes: 0 success, 1 domain failure (unsolvable maze, failed run or
// design check, stale session), 2 usage or parse error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mazemate/compressor.hpp"
#include "mazemate/errors.hpp"
#include "mazemate/gateway/api.hpp"
#include "mazemate/interpreter.hpp"
#include "mazemate/maze.hpp"
#include "mazemate/program.hpp"
#include "mazemate/scaffold.hpp"
#include "mazemate/solver.hpp"

namespace mm = mazemate;
namespace gw = mazemate::gateway;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

// Raised for bad input files so they map to exit code 2 rather than 1.
struct InputError {
    gw::ApiError error;
};

struct Options {
    bool json = false;
    int time_box_ms = 10'000;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError{{404, "NOT_FOUND", "cannot read '" + path + "'"}};
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

template <class F>
auto parse_input(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const mm::Error& e) {
        throw InputError{gw::to_api_error(e)};
    }
}

mm::Maze load_maze(const std::string& path) {
    auto text = read_file(path);
    return parse_input([&] { return mm::parse_maze(text); });
}

mm::Program load_program(const std::string& path) {
    auto text = read_file(path);
    return parse_input([&] { return mm::parse_program(text); });
}

mm::Deadline deadline(const Options& o) {
    return mm::Deadline::after(std::chrono::milliseconds(o.time_box_ms));
}

void print_json(const json& j) {
    std::cout << j.dump(2) << "\n";
}

int cmd_validate(const Options& o, const std::string& maze_path) {
    mm::Maze m = load_maze(maze_path);
    if (o.json) {
        print_json({{"valid", true}, {"hash", mm::maze_hash(m)}, {"document", json::parse(mm::serialize_maze(m))}});
    } else {
        std::cout << "valid: " << m.width() << "x" << m.height() << ", " << m.gems().size() << " gems, "
                  << m.hearts().size() << " hearts, " << m.monsters().size() << " monsters, "
                  << m.obstacles().size() << " obstacles\n";
    }
    return kExitOk;
}

int cmd_solve(const Options& o, const std::string& mode, const std::string& maze_path) {
    mm::Maze m = load_maze(maze_path);
    if (mode == "low") {
        mm::SolverResult r = mm::solve_low(m, deadline(o));
        if (!r.solved()) throw mm::UnsolvableError(*r.unsolvable);
        if (o.json) {
            print_json(gw::solve_low_to_json(r));
        } else {
            for (mm::Action a : *r.actions) std::cout << mm::action_keyword(a) << "\n";
        }
        return kExitOk;
    }
    mm::CompressionResult r = mm::solve_high(m, {}, deadline(o));
    if (o.json) {
        print_json(gw::solve_high_to_json(r));
    } else {
        std::cout << mm::print_program(r.program);
    }
    return kExitOk;
}

int cmd_compress(const Options& o, const std::string& maze_path, const std::string& program_path) {
    mm::Maze m = load_maze(maze_path);
    mm::Program input = load_program(program_path);
    mm::Trace t = mm::execute(input, m);
    if (!t.outcome.success) {
        throw mm::PreconditionError("input program does not solve the maze (" +
                                    std::string(mm::failure_reason_name(*t.outcome.reason)) + ")");
    }
    const auto& reference = t.primitive_actions;
    mm::Program tree = mm::build_program_tree(reference, m);
    mm::Program compressed = mm::compress(tree, m, reference);
    mm::Program refined = mm::vns_refine(compressed, m, {}, deadline(o));
    if (o.json) {
        print_json({{"program", mm::print_program(refined)},
                    {"block_count", mm::block_count(refined)},
                    {"input_block_count", mm::block_count(input)},
                    {"stages",
                     {{"tree", mm::print_program(tree)},
                      {"compressed", mm::print_program(compressed)},
                      {"refined", mm::print_program(refined)}}}});
    } else {
        std::cout << mm::print_program(refined);
    }
    return kExitOk;
}

int cmd_simulate(const Options& o, const std::string& maze_path, const std::string& program_path, int fuel) {
    mm::Maze m = load_maze(maze_path);
    mm::Program p = load_program(program_path);
    if (fuel < 1) throw InputError{{422, "LIMIT", "--fuel must be >= 1"}};
    mm::Trace t = mm::execute(p, m, fuel);
    if (o.json) {
        print_json(gw::trace_to_json(t));
    } else {
        const mm::SimState& last = t.states.back();
        std::cout << "actions: " << t.primitive_actions.size() << "\n";
        std::cout << "final: (" << last.position.x << "," << last.position.y << ") facing "
                  << mm::direction_letter(last.orientation) << ", health " << last.health << "\n";
        std::cout << "gems: " << std::popcount(last.gems_collected) << "/" << m.gems().size()
                  << ", monsters defeated: " << std::popcount(last.monsters_defeated) << "\n";
        if (t.failed_action) std::cout << "failed action: " << mm::action_keyword(*t.failed_action) << "\n";
        std::cout << "outcome: "
                  << (t.outcome.success ? std::string("Success")
                                        : std::string(mm::failure_reason_name(*t.outcome.reason)))
                  << "\n";
    }
    return t.outcome.success ? kExitOk : kExitDomain;
}

int cmd_check(const Options& o, const std::string& maze_path, const mm::DesignRequirements& req) {
    mm::Maze m = load_maze(maze_path);
    mm::DesignReport r = mm::check_design(m, req, deadline(o));
    if (o.json) {
        print_json(gw::design_report_to_json(r));
    } else {
        for (const auto& c : r.checks) {
            std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
        }
        std::cout << "overall: " << (r.overall ? "PASS" : "FAIL") << "\n";
    }
    return r.overall ? kExitOk : kExitDomain;
}

json hint_session_to_json(const mm::HintSession& s) {
    json log = json::array();
    for (const auto& p : s.log) log.push_back(gw::hint_payload_to_json(p));
    return {{"id", s.id},
            {"maze_hash", s.maze_hash},
            {"stage", s.stage},
            {"log", log},
            {"created_ms", s.created_ms},
            {"updated_ms", s.updated_ms}};
}

mm::HintSession hint_session_from_json(const json& j) {
    mm::HintSession s;
    s.id = j.at("id").get<std::string>();
    s.maze_hash = j.at("maze_hash").get<std::string>();
    s.stage = j.at("stage").get<int>();
    for (const auto& p : j.at("log")) s.log.push_back(gw::hint_payload_from_json(p));
    s.created_ms = j.at("created_ms").get<std::int64_t>();
    s.updated_ms = j.at("updated_ms").get<std::int64_t>();
    return s;
}

int cmd_hint(const Options& o, const std::string& maze_path, const std::string& session_path) {
    mm::Maze m = load_maze(maze_path);
    mm::HintSession session;
    if (!session_path.empty() && std::filesystem::exists(session_path)) {
        auto text = read_file(session_path);
        try {
            session = hint_session_from_json(json::parse(text));
        } catch (const std::exception& e) {
            throw InputError{{400, "SCHEMA", "session file '" + session_path + "': " + e.what()}};
        }
    } else {
        session = mm::new_session(m);
    }
    auto [next, payload] = mm::request_hint(session, m, {}, deadline(o));
    if (!session_path.empty()) {
        std::ofstream out(session_path, std::ios::binary | std::ios::trunc);
        out << hint_session_to_json(next).dump(2) << "\n";
    }
    if (o.json) {
        print_json(gw::hint_payload_to_json(payload));
    } else {
        std::cout << payload.rendered_text << "\n";
    }
    return kExitOk;
}

int cmd_serve(const std::string& bind, const std::string& snapshot) {
    auto [server_cfg, service_cfg] = gw::config_from_environment();
    if (!bind.empty()) {
        auto colon = bind.rfind(':');
        if (colon == std::string::npos) throw InputError{{400, "SCHEMA", "--bind: expected host:port"}};
        server_cfg.host = bind.substr(0, colon);
        server_cfg.port = std::stoi(bind.substr(colon + 1));
    }
    if (!snapshot.empty()) service_cfg.snapshot = snapshot;
    gw::Service service(service_cfg);
    std::cerr << "mazemate: serving on " << server_cfg.host << ":" << server_cfg.port
              << (service_cfg.chat_model ? " (chat model configured)" : " (deterministic hints only)") << "\n";
    gw::serve(service, server_cfg);
    return kExitOk;
}

void report(const Options& o, const gw::ApiError& e) {
    if (o.json) {
        std::cerr << e.to_json().dump() << "\n";
    } else {
        std::cerr << "mazemate: " << e.message << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MazeMate maze engine: solve, compress, simulate, check and hint"};
    app.require_subcommand(1);
    Options opts;
    app.add_flag("--json", opts.json, "Machine-readable JSON output");
    app.add_option("--time-box-ms", opts.time_box_ms, "Time budget for solver calls")->check(CLI::PositiveNumber);

    std::string maze_path;
    std::string program_path;

    auto* validate = app.add_subcommand("validate", "Parse and validate a maze document");
    validate->add_option("maze", maze_path, "Maze document (JSON)")->required();

    std::string mode = "low";
    auto* solve = app.add_subcommand("solve", "Solve a maze as actions (low) or a program (high)");
    solve->add_option("--mode", mode, "low | high")->check(CLI::IsMember({"low", "high"}));
    solve->add_option("maze", maze_path, "Maze document (JSON)")->required();

    auto* compress = app.add_subcommand("compress", "Compress a solving program into loops and conditionals");
    compress->add_option("maze", maze_path, "Maze document (JSON)")->required();
    compress->add_option("program", program_path, "Program that solves the maze")->required();

    int fuel = mm::kDefaultFuel;
    auto* simulate = app.add_subcommand("simulate", "Run a program on a maze and report the outcome");
    simulate->add_option("maze", maze_path, "Maze document (JSON)")->required();
    simulate->add_option("program", program_path, "Program text")->required();
    simulate->add_option("--fuel", fuel, "Primitive action budget");

    mm::DesignRequirements req;
    auto* check = app.add_subcommand("check", "Check a maze against the lesson design requirements");
    check->add_option("maze", maze_path, "Maze document (JSON)")->required();
    check->add_option("--width", req.required_width, "Required width");
    check->add_option("--height", req.required_height, "Required height");
    check->add_option("--min-gems", req.min_gems, "Minimum gems");
    check->add_option("--min-monsters", req.min_monsters, "Minimum monsters");
    check->add_option("--min-asset-kinds", req.min_asset_kinds, "Minimum distinct asset kinds");

    std::string session_path;
    auto* hint = app.add_subcommand("hint", "Issue the next staged hint for a maze");
    hint->add_option("maze", maze_path, "Maze document (JSON)")->required();
    hint->add_option("--session", session_path, "Session state file, created or advanced in place");

    std::string bind;
    std::string snapshot;
    auto* serve = app.add_subcommand("serve", "Run the HTTP/JSON service");
    serve->add_option("--bind", bind, "host:port (default from MAZEMATE_BIND or 127.0.0.1:8080)");
    serve->add_option("--snapshot", snapshot, "Session snapshot file (default from MAZEMATE_SNAPSHOT)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*validate) return cmd_validate(opts, maze_path);
        if (*solve) return cmd_solve(opts, mode, maze_path);
        if (*compress) return cmd_compress(opts, maze_path, program_path);
        if (*simulate) return cmd_simulate(opts, maze_path, program_path, fuel);
        if (*check) return cmd_check(opts, maze_path, req);
        if (*hint) return cmd_hint(opts, maze_path, session_path);
        if (*serve) return cmd_serve(bind, snapshot);
    } catch (const InputError& e) {
        report(opts, e.error);
        return kExitUsage;
    } catch (const std::exception& e) {
        report(opts, gw::to_api_error(e));
        return kExitDomain;
    }
    return kExitUsage;
}
