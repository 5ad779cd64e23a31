#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mazemate {

enum class Action : std::uint8_t { MoveForward = 0, TurnLeft, TurnRight, TurnBack, Attack };
inline constexpr int kActionCount = 5;
inline constexpr Action kAllActions[kActionCount] = {
    Action::MoveForward, Action::TurnLeft, Action::TurnRight, Action::TurnBack, Action::Attack};

// Mini-language keyword: move, turn_left, turn_right, turn_back, attack.
std::string_view action_keyword(Action a) noexcept;
// Display name: MoveForward, TurnLeft, ...
std::string_view action_name(Action a) noexcept;
std::optional<Action> action_from_keyword(std::string_view s) noexcept;
bool is_turn(Action a) noexcept;

enum class ConditionKind : std::uint8_t { PathAhead = 0, MonsterAhead, GemsRemaining, AtGoal };
inline constexpr int kConditionKindCount = 4;

struct Condition {
    ConditionKind kind = ConditionKind::PathAhead;
    bool negated = false;

    friend bool operator==(const Condition&, const Condition&) = default;
};

std::string_view condition_keyword(ConditionKind k) noexcept;
std::string condition_text(Condition c);

enum class NodeKind : std::uint8_t { Action, Repeat, While, If, IfElse };

// One statement. Statement lists play the role of sequences: a program and
// every block is a list of statements, and sequencing is not a node.
struct Node {
    NodeKind kind = NodeKind::Action;
    Action action = Action::MoveForward;  // Action
    int count = 0;                        // Repeat
    Condition condition;                  // While, If, IfElse
    std::vector<Node> body;               // Repeat, While, If (then), IfElse (then)
    std::vector<Node> else_body;          // IfElse

    static Node make_action(Action a);
    static Node make_repeat(int count, std::vector<Node> body);
    static Node make_while(Condition c, std::vector<Node> body);
    static Node make_if(Condition c, std::vector<Node> then_body);
    static Node make_if_else(Condition c, std::vector<Node> then_body, std::vector<Node> else_body);

    bool is_loop() const noexcept { return kind == NodeKind::Repeat || kind == NodeKind::While; }

    friend bool operator==(const Node&, const Node&) = default;
};

using Block = std::vector<Node>;

struct Program {
    Block statements;

    friend bool operator==(const Program&, const Program&) = default;
};

inline constexpr int kMaxProgramDepth = 32;

// Throws SyntaxError (with line/column) or LimitError (depth > 32, count < 1).
Program parse_program(std::string_view text);
// Canonical text: one statement per line, two-space indentation.
std::string print_program(const Program& program);

// Action and control nodes each cost one block; sequencing is free.
int block_count(const Program& program);
int block_count(const Block& block);
int block_count(const Node& node);
int program_depth(const Program& program);
int loop_count(const Program& program);

// Flat sequence of actions as a program.
Program literal_program(const std::vector<Action>& actions);

}  // namespace mazemate
