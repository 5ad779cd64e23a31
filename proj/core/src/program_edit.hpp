#pragma once

// Addressing and bulk-rewrite helpers over program trees, shared by the
// compressor passes. Internal to the core library.

#include <functional>
#include <span>
#include <vector>

#include "mazemate/program.hpp"

namespace mazemate::detail {

// Even-length path: (node index, branch) pairs from the root list; empty
// path is the root list. Branch 0 is body/then, 1 is else.
using BlockPath = std::vector<int>;

Block& block_at(Program& p, std::span<const int> path);
const Block& block_at(const Program& p, std::span<const int> path);

// Every statement list in pre-order, root first.
std::vector<BlockPath> all_block_paths(const Program& p);

// Counts >= 1, no empty lists, depth within limits.
bool well_formed(const Program& p);

using BlockRewrite = std::function<std::vector<Block>(const Block&)>;

// Applies `rewrite` to each statement list independently; returns one
// program per produced block, dropping malformed results.
std::vector<Program> rewrite_each_block(const Program& p, const BlockRewrite& rewrite);

// Literal actions folded into statements: runs of >= 3 identical actions
// become Repeat, attacks become `if monster_ahead { attack }`.
Block fold_literal(std::span<const Action> actions);

bool is_action(const Node& n, Action a);
bool is_guarded_attack(const Node& n);

// (body, count) view: Repeat(k, body) -> (body, k); any other node x -> ([x], 1).
std::pair<Block, int> as_repetition(const Node& n);

}  // namespace mazemate::detail
