#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "mazemate/deadline.hpp"
#include "mazemate/maze.hpp"
#include "mazemate/program.hpp"
#include "mazemate/solver.hpp"

namespace mazemate {

// Refinement objective, compared lexicographically: fewer blocks first, then
// fewer executed primitive actions.
struct Objective {
    int blocks = 0;
    int steps = 0;

    friend auto operator<=>(const Objective&, const Objective&) = default;
};

// Objective of p on m; nullopt when p does not execute to Success.
std::optional<Objective> evaluate(const Program& p, const Maze& m);

// True when executing p on m yields exactly `reference` as its primitive
// action sequence.
bool trace_equivalent(const Program& p, const Maze& m, const std::vector<Action>& reference);

struct CompressionStages {
    Program tree;
    Program compressed;
    Program refined;
};

struct CompressionResult {
    Program program;
    int block_count = 0;
    int exec_steps = 0;
    bool trace_equivalent = false;
    std::vector<Action> low_actions;
    CompressionStages stages;
};

enum class Neighborhood : std::uint8_t {
    LoopRoll,       // N1 roll or unroll a loop
    MergeRepeats,   // N2 merge adjacent repeats of the same body
    RepeatWhile,    // N3 repeat <-> while substitution
    HoistBranches,  // N4 hoist a common prefix/suffix out of if/else
    DeadTurns,      // N5 delete cancelling turn pairs
};

struct VnsConfig {
    int max_iterations = 200;
    int no_improve_cap = 30;
    std::vector<Neighborhood> order = {Neighborhood::LoopRoll, Neighborhood::MergeRepeats,
                                       Neighborhood::RepeatWhile, Neighborhood::HoistBranches,
                                       Neighborhood::DeadTurns};
    std::uint64_t seed = 42;
};

// Runs of >= 3 identical actions become Repeat nodes; each attack is guarded
// by `if monster_ahead`. Throws PreconditionError unless `actions` succeeds.
Program build_program_tree(const std::vector<Action>& actions, const Maze& m);

// Pattern-based rewriting that keeps strict trace equality with `reference`.
Program compress(const Program& tree, const Maze& m, const std::vector<Action>& reference);

// Restores strict trace equality by unrolling the control node at the first
// deviation. Throws PatchFailure if even the fully literal program deviates.
Program patch(const Program& p, const Maze& m, const std::vector<Action>& reference);

// All neighbours of p in one neighbourhood, in a fixed enumeration order.
// Candidates are not checked for correctness.
std::vector<Program> neighbors(const Program& p, const Maze& m, Neighborhood n);

// Variable neighbourhood search; never returns a worse program than p.
Program vns_refine(const Program& p, const Maze& m, const VnsConfig& cfg = {},
                   const Deadline& deadline = Deadline::none());

// solve_low -> build_program_tree -> compress -> vns_refine.
// Throws UnsolvableError when the maze has no solution.
CompressionResult solve_high(const Maze& m, const VnsConfig& cfg = {},
                             const Deadline& deadline = Deadline::none());

}  // namespace mazemate
