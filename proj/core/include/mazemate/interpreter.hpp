#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mazemate/maze.hpp"
#include "mazemate/program.hpp"

namespace mazemate {

struct SimState {
    Cell position;
    Direction orientation = Direction::East;
    int health = 0;
    std::uint32_t gems_collected = 0;
    std::uint32_t hearts_collected = 0;
    std::uint32_t monsters_defeated = 0;
    int steps_taken = 0;

    friend bool operator==(const SimState&, const SimState&) = default;
};

// Spawn state. Items lying on the start cell are collected at spawn.
SimState initial_state(const Maze& maze);

// Health recomputed from the masks: initial + heal * hearts - defeated damage.
int derived_health(const Maze& maze, std::uint32_t hearts, std::uint32_t defeated);

bool is_success(const SimState& s, const Maze& maze) noexcept;

bool eval_condition(Condition c, const SimState& s, const Maze& maze) noexcept;

enum class FailureReason : std::uint8_t {
    InvalidMove,
    InvalidAttack,
    Death,
    FuelExhausted,
    Incomplete,
};

std::string_view failure_reason_name(FailureReason r) noexcept;

struct StepResult {
    SimState state;
    std::optional<FailureReason> failure;

    bool ok() const noexcept { return !failure.has_value(); }
};

// One primitive action. On failure `state` is the unchanged input state.
StepResult step(const SimState& s, Action a, const Maze& maze);

inline constexpr int kDefaultFuel = 10'000;

struct Outcome {
    bool success = false;
    std::optional<FailureReason> reason;  // set iff !success

    static Outcome succeeded() { return {true, std::nullopt}; }
    static Outcome failed(FailureReason r) { return {false, r}; }

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct Trace {
    std::vector<Action> primitive_actions;
    std::vector<SimState> states;  // states.size() == primitive_actions.size() + 1
    Outcome outcome;
    std::optional<Action> failed_action;  // the rejected action for step failures
    int fuel_used = 0;

    friend bool operator==(const Trace&, const Trace&) = default;
};

Trace execute(const Program& program, const Maze& maze, int fuel = kDefaultFuel);

// Span of primitive actions produced by one execution of a node. `path` is
// the index in the root list followed by (branch, index) pairs, where branch
// 0 is the body/then list and 1 the else list.
struct NodeSpan {
    std::vector<int> path;
    int begin = 0;
    int end = 0;
    int taken_branch = -1;  // If/IfElse: 0 then, 1 else, -1 none
};

// Like execute(), additionally recording spans of every node that executes
// at most once (i.e. not nested inside a loop body).
Trace execute_instrumented(const Program& program, const Maze& maze, int fuel,
                           std::vector<NodeSpan>& spans);

}  // namespace mazemate
