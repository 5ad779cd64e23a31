// Stages two and three of the high-efficiency pipeline: action sequence ->
// program tree -> pattern compression with semantic patching.

#include <algorithm>
#include <limits>

#include "mazemate/compressor.hpp"
#include "mazemate/interpreter.hpp"
#include "program_edit.hpp"

namespace mazemate {

using namespace detail;

namespace {

int fuel_for(const std::vector<Action>& reference) {
    return std::max<int>(kDefaultFuel, static_cast<int>(reference.size()) * 2 + 16);
}

int count_nodes(const Block& b, NodeKind kind) {
    int total = 0;
    for (const Node& n : b) {
        total += (n.kind == kind ? 1 : 0) + count_nodes(n.body, kind) + count_nodes(n.else_body, kind);
    }
    return total;
}

// Compression ranks programs by (blocks, repeat nodes): fewer blocks first,
// and at equal size a While is preferred over a Repeat.
std::pair<int, int> compress_rank(const Program& p) {
    return {block_count(p), count_nodes(p.statements, NodeKind::Repeat)};
}

// --- candidate rewrites -----------------------------------------------------

// Repeat(a, X), Repeat(b, X) -> Repeat(a + b, X), also with bare X.
std::vector<Block> merge_adjacent(const Block& b) {
    std::vector<Block> out;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        if (b[i].kind != NodeKind::Repeat && b[i + 1].kind != NodeKind::Repeat) continue;
        auto [body_a, count_a] = as_repetition(b[i]);
        auto [body_b, count_b] = as_repetition(b[i + 1]);
        if (body_a != body_b) continue;
        Block nb(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(i));
        nb.push_back(Node::make_repeat(count_a + count_b, std::move(body_a)));
        nb.insert(nb.end(), b.begin() + static_cast<std::ptrdiff_t>(i) + 2, b.end());
        out.push_back(std::move(nb));
    }
    // Repeat(a, Repeat(b, X)) -> Repeat(a * b, X).
    for (std::size_t i = 0; i < b.size(); ++i) {
        const Node& outer = b[i];
        if (outer.kind != NodeKind::Repeat || outer.body.size() != 1) continue;
        const Node& inner = outer.body.front();
        if (inner.kind != NodeKind::Repeat) continue;
        const long long product = static_cast<long long>(outer.count) * inner.count;
        if (product > std::numeric_limits<int>::max()) continue;
        Block nb = b;
        nb[i] = Node::make_repeat(static_cast<int>(product), inner.body);
        out.push_back(std::move(nb));
    }
    return out;
}

// k >= 2 adjacent copies of a statement run -> Repeat(k, run).
std::vector<Block> roll_repeats(const Block& b, bool require_gain) {
    std::vector<Block> out;
    const std::size_t n = b.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t len = 1; i + 2 * len <= n; ++len) {
            std::size_t k = 1;
            while (i + (k + 1) * len <= n &&
                   std::equal(b.begin() + static_cast<std::ptrdiff_t>(i),
                              b.begin() + static_cast<std::ptrdiff_t>(i + len),
                              b.begin() + static_cast<std::ptrdiff_t>(i + k * len))) {
                ++k;
            }
            if (k < 2) continue;
            Block unit(b.begin() + static_cast<std::ptrdiff_t>(i),
                       b.begin() + static_cast<std::ptrdiff_t>(i + len));
            const int unit_blocks = block_count(unit);
            if (require_gain && static_cast<int>(k) * unit_blocks <= 1 + unit_blocks) continue;
            Block nb(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(i));
            nb.push_back(Node::make_repeat(static_cast<int>(k), std::move(unit)));
            nb.insert(nb.end(), b.begin() + static_cast<std::ptrdiff_t>(i + k * len), b.end());
            out.push_back(std::move(nb));
        }
    }
    return out;
}

// Repeat(k, move) -> while path_ahead { move }.
std::vector<Block> corridor_whiles(const Block& b) {
    std::vector<Block> out;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i].kind != NodeKind::Repeat || b[i].body.size() != 1 ||
            !is_action(b[i].body[0], Action::MoveForward)) {
            continue;
        }
        Block nb = b;
        nb[i] = Node::make_while({ConditionKind::PathAhead, false}, b[i].body);
        out.push_back(std::move(nb));
    }
    return out;
}

bool fight_or_walk(const Node& n) {
    if (is_action(n, Action::MoveForward) || is_guarded_attack(n)) return true;
    if (n.kind == NodeKind::Repeat || n.kind == NodeKind::While) {
        return n.body.size() == 1 && is_action(n.body[0], Action::MoveForward);
    }
    return false;
}

// A stretch of moves and guarded attacks -> one loop that attacks whatever
// blocks the way and walks otherwise.
std::vector<Block> fight_loops(const Block& b) {
    static const Condition kStops[] = {{ConditionKind::AtGoal, true},
                                       {ConditionKind::GemsRemaining, false}};
    std::vector<Block> out;
    for (std::size_t i = 0; i < b.size();) {
        if (!fight_or_walk(b[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        bool has_attack = false;
        while (j < b.size() && fight_or_walk(b[j])) has_attack |= is_guarded_attack(b[j++]);
        Block segment(b.begin() + static_cast<std::ptrdiff_t>(i),
                      b.begin() + static_cast<std::ptrdiff_t>(j));
        if (has_attack && block_count(segment) > 4) {
            for (Condition stop : kStops) {
                Node step = Node::make_if_else({ConditionKind::MonsterAhead, false},
                                               {Node::make_action(Action::Attack)},
                                               {Node::make_action(Action::MoveForward)});
                Block nb(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(i));
                nb.push_back(Node::make_while(stop, {std::move(step)}));
                nb.insert(nb.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
                out.push_back(std::move(nb));
            }
        }
        i = j;
    }
    return out;
}

// `if monster_ahead { attack }` outside any loop costs a block and guards
// nothing; candidates drop the guard.
Program drop_guard(const Program& p, const std::vector<int>& node_path) {
    Program q = p;
    std::span<const int> path(node_path);
    Block& parent = block_at(q, path.first(path.size() - 1));
    parent[static_cast<std::size_t>(path.back())] = Node::make_action(Action::Attack);
    return q;
}

// --- patching ---------------------------------------------------------------

const Node& node_at(const Program& p, const std::vector<int>& node_path) {
    std::span<const int> path(node_path);
    return block_at(p, path.first(path.size() - 1))[static_cast<std::size_t>(path.back())];
}

std::optional<Program> splice_literal(const Program& p, const NodeSpan& span,
                                      std::span<const Action> slice) {
    Program q = p;
    std::span<const int> path(span.path);
    Block& parent = block_at(q, path.first(path.size() - 1));
    const auto idx = static_cast<std::size_t>(path.back());
    Node& target = parent[idx];
    Block literal = fold_literal(slice);
    if (target.kind == NodeKind::If || target.kind == NodeKind::IfElse) {
        if (span.taken_branch < 0 || literal.empty()) return std::nullopt;
        (span.taken_branch == 0 ? target.body : target.else_body) = std::move(literal);
    } else {
        parent.erase(parent.begin() + static_cast<std::ptrdiff_t>(idx));
        parent.insert(parent.begin() + static_cast<std::ptrdiff_t>(idx), literal.begin(), literal.end());
    }
    if (!well_formed(q)) return std::nullopt;
    return q;
}

}  // namespace

std::optional<Objective> evaluate(const Program& p, const Maze& m) {
    Trace t = execute(p, m);
    if (!t.outcome.success) return std::nullopt;
    return Objective{block_count(p), t.fuel_used};
}

bool trace_equivalent(const Program& p, const Maze& m, const std::vector<Action>& reference) {
    Trace t = execute(p, m, fuel_for(reference));
    return t.outcome.success && t.primitive_actions == reference;
}

Program build_program_tree(const std::vector<Action>& actions, const Maze& m) {
    Trace t = execute(literal_program(actions), m, fuel_for(actions));
    if (!t.outcome.success || t.primitive_actions.size() != actions.size()) {
        throw PreconditionError("build_program_tree: action sequence does not solve the maze");
    }
    Program p;
    p.statements = fold_literal(actions);
    return p;
}

Program patch(const Program& p, const Maze& m, const std::vector<Action>& reference) {
    std::vector<NodeSpan> spans;
    Trace t = execute_instrumented(p, m, fuel_for(reference), spans);
    if (t.outcome.success && t.primitive_actions == reference) return p;

    const auto& got = t.primitive_actions;
    std::size_t mismatch = 0;
    while (mismatch < got.size() && mismatch < reference.size() && got[mismatch] == reference[mismatch]) {
        ++mismatch;
    }
    const int d = static_cast<int>(mismatch);

    // Control nodes active at the deviation, innermost first.
    std::vector<const NodeSpan*> candidates;
    for (const NodeSpan& s : spans) {
        if (node_at(p, s.path).kind == NodeKind::Action) continue;
        if (s.begin <= d && d <= s.end) candidates.push_back(&s);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const NodeSpan* a, const NodeSpan* b) { return a->path.size() > b->path.size(); });

    const int n = static_cast<int>(reference.size());
    std::span<const Action> ref(reference);
    for (const NodeSpan* s : candidates) {
        // Try slice ends nearest the deviation first.
        std::vector<int> ends;
        for (int e = d; e <= n; ++e) ends.push_back(e);
        for (int e = d - 1; e >= s->begin; --e) ends.push_back(e);
        for (int e : ends) {
            auto q = splice_literal(p, *s, ref.subspan(static_cast<std::size_t>(s->begin),
                                                        static_cast<std::size_t>(e - s->begin)));
            if (q && trace_equivalent(*q, m, reference)) return *q;
        }
    }

    Program literal;
    literal.statements = fold_literal(ref);
    if (!trace_equivalent(literal, m, reference)) {
        throw PatchFailure("patch: fully unrolled program still deviates from the reference");
    }
    return literal;
}

Program compress(const Program& tree, const Maze& m, const std::vector<Action>& reference) {
    Program current = trace_equivalent(tree, m, reference) ? tree : patch(tree, m, reference);

    auto settle = [&](Program candidate) -> std::optional<Program> {
        if (!trace_equivalent(candidate, m, reference)) candidate = patch(candidate, m, reference);
        if (!trace_equivalent(candidate, m, reference)) {
            throw PatchFailure("compress: patched program is not trace-equivalent");
        }
        if (compress_rank(candidate) < compress_rank(current)) return candidate;
        return std::nullopt;
    };

    const std::vector<BlockRewrite> passes = {
        merge_adjacent,
        [](const Block& b) { return roll_repeats(b, true); },
        fight_loops,
        corridor_whiles,
    };

    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& pass : passes) {
            for (Program& candidate : rewrite_each_block(current, pass)) {
                if (auto accepted = settle(std::move(candidate))) {
                    current = std::move(*accepted);
                    changed = true;
                    break;
                }
            }
            if (changed) break;
        }
        if (changed) continue;

        std::vector<NodeSpan> spans;
        execute_instrumented(current, m, fuel_for(reference), spans);
        for (const NodeSpan& s : spans) {
            if (!is_guarded_attack(node_at(current, s.path))) continue;
            if (auto accepted = settle(drop_guard(current, s.path))) {
                current = std::move(*accepted);
                changed = true;
                break;
            }
        }
    }
    return current;
}

// --- VNS neighbourhoods -----------------------------------------------------

namespace {

std::vector<Block> unroll_loops(const Block& b) {
    std::vector<Block> out;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i].kind != NodeKind::Repeat) continue;
        const Node& r = b[i];
        Block full(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(i));
        for (int k = 0; k < r.count; ++k) full.insert(full.end(), r.body.begin(), r.body.end());
        full.insert(full.end(), b.begin() + static_cast<std::ptrdiff_t>(i) + 1, b.end());
        out.push_back(std::move(full));
        if (r.count >= 2) {
            Block peeled = b;
            peeled[i].count -= 1;
            peeled.insert(peeled.begin() + static_cast<std::ptrdiff_t>(i) + 1, r.body.begin(), r.body.end());
            out.push_back(std::move(peeled));
        }
    }
    return out;
}

std::vector<Block> repeats_to_whiles(const Block& b) {
    std::vector<Block> out;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i].kind != NodeKind::Repeat) continue;
        for (int k = 0; k < kConditionKindCount; ++k) {
            for (bool neg : {false, true}) {
                Block nb = b;
                nb[i] = Node::make_while({static_cast<ConditionKind>(k), neg}, b[i].body);
                out.push_back(std::move(nb));
            }
        }
    }
    return out;
}

std::vector<Block> hoist_branches(const Block& b) {
    std::vector<Block> out;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const Node& n = b[i];
        if (n.kind != NodeKind::IfElse) continue;
        auto rebuild = [&](Block then_body, Block else_body) -> std::optional<Node> {
            if (then_body.empty() && else_body.empty()) return std::nullopt;
            if (else_body.empty()) return Node::make_if(n.condition, std::move(then_body));
            if (then_body.empty()) {
                return Node::make_if({n.condition.kind, !n.condition.negated}, std::move(else_body));
            }
            return Node::make_if_else(n.condition, std::move(then_body), std::move(else_body));
        };
        if (n.body.front() == n.else_body.front()) {
            Block nb(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(i));
            nb.push_back(n.body.front());
            if (auto rest = rebuild(Block(n.body.begin() + 1, n.body.end()),
                                    Block(n.else_body.begin() + 1, n.else_body.end()))) {
                nb.push_back(std::move(*rest));
            }
            nb.insert(nb.end(), b.begin() + static_cast<std::ptrdiff_t>(i) + 1, b.end());
            out.push_back(std::move(nb));
        }
        if (n.body.back() == n.else_body.back()) {
            Block nb(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(i));
            if (auto rest = rebuild(Block(n.body.begin(), n.body.end() - 1),
                                    Block(n.else_body.begin(), n.else_body.end() - 1))) {
                nb.push_back(std::move(*rest));
            }
            nb.push_back(n.body.back());
            nb.insert(nb.end(), b.begin() + static_cast<std::ptrdiff_t>(i) + 1, b.end());
            out.push_back(std::move(nb));
        }
    }
    return out;
}

bool cancelling(const Node& a, const Node& b) {
    if (a.kind != NodeKind::Action || b.kind != NodeKind::Action) return false;
    return (a.action == Action::TurnLeft && b.action == Action::TurnRight) ||
           (a.action == Action::TurnRight && b.action == Action::TurnLeft) ||
           (a.action == Action::TurnBack && b.action == Action::TurnBack);
}

std::vector<Block> drop_turn_pairs(const Block& b) {
    std::vector<Block> out;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        if (!cancelling(b[i], b[i + 1])) continue;
        Block nb = b;
        nb.erase(nb.begin() + static_cast<std::ptrdiff_t>(i), nb.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        out.push_back(std::move(nb));
    }
    return out;
}

// While(c, literal body) executed once -> Repeat(k, body) with k taken from
// the observed iterations.
std::vector<Program> whiles_to_repeats(const Program& p, const Maze& m) {
    std::vector<Program> out;
    std::vector<NodeSpan> spans;
    execute_instrumented(p, m, kDefaultFuel, spans);
    for (const NodeSpan& s : spans) {
        const Node& n = node_at(p, s.path);
        if (n.kind != NodeKind::While) continue;
        const bool literal = std::all_of(n.body.begin(), n.body.end(),
                                         [](const Node& x) { return x.kind == NodeKind::Action; });
        const int executed = s.end - s.begin;
        const auto len = static_cast<int>(n.body.size());
        if (!literal || executed < len || executed % len != 0) continue;
        Program q = p;
        std::span<const int> path(s.path);
        block_at(q, path.first(path.size() - 1))[static_cast<std::size_t>(path.back())] =
            Node::make_repeat(executed / len, n.body);
        out.push_back(std::move(q));
    }
    return out;
}

}  // namespace

std::vector<Program> neighbors(const Program& p, const Maze& m, Neighborhood n) {
    switch (n) {
        case Neighborhood::LoopRoll: {
            auto out = rewrite_each_block(p, [](const Block& b) { return roll_repeats(b, false); });
            auto unrolled = rewrite_each_block(p, unroll_loops);
            out.insert(out.end(), unrolled.begin(), unrolled.end());
            return out;
        }
        case Neighborhood::MergeRepeats: return rewrite_each_block(p, merge_adjacent);
        case Neighborhood::RepeatWhile: {
            auto out = rewrite_each_block(p, repeats_to_whiles);
            auto back = whiles_to_repeats(p, m);
            out.insert(out.end(), back.begin(), back.end());
            return out;
        }
        case Neighborhood::HoistBranches: return rewrite_each_block(p, hoist_branches);
        case Neighborhood::DeadTurns: return rewrite_each_block(p, drop_turn_pairs);
    }
    return {};
}

}  // namespace mazemate
