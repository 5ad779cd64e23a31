// Exhaustive reference search used to cross-check solve_low. It shares no
// code with the breadth-first search: it only replays candidate sequences
// through the interpreter's step rule.

#include "mazemate/interpreter.hpp"
#include "mazemate/solver.hpp"

namespace mazemate {

namespace {

// Depth-first enumeration of all sequences of exactly `remaining` further
// actions in lexicographic action order. Prefixes that fail are dropped, and
// so are prefixes that already succeed (they were found at a smaller length).
// Two turns in a row are never optimal (they compose into one turn or none),
// so they are skipped as well.
bool enumerate(const Maze& maze, const SimState& s, int remaining, std::vector<Action>& seq) {
    if (remaining == 0) return false;
    for (Action a : kAllActions) {
        if (is_turn(a) && !seq.empty() && is_turn(seq.back())) continue;
        StepResult r = step(s, a, maze);
        if (!r.ok()) continue;
        seq.push_back(a);
        if (is_success(r.state, maze)) {
            if (remaining == 1) return true;
        } else if (enumerate(maze, r.state, remaining - 1, seq)) {
            return true;
        }
        seq.pop_back();
    }
    return false;
}

}  // namespace

std::optional<std::vector<Action>> oracle_enumerate(const Maze& maze, int max_len) {
    if (max_len > kOracleMaxLength) {
        throw LimitError("oracle_enumerate: max_len " + std::to_string(max_len) + " exceeds " +
                         std::to_string(kOracleMaxLength));
    }
    const SimState start = initial_state(maze);
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Action> seq;
        if (enumerate(maze, start, len, seq)) {
            // Confirm through the full interpreter.
            if (execute(literal_program(seq), maze).outcome.success) return seq;
        }
    }
    return std::nullopt;
}

}  // namespace mazemate
