#include "program_edit.hpp"

namespace mazemate::detail {

namespace {

template <typename P, typename B>
B& walk(P& p, std::span<const int> path) {
    B* b = &p.statements;
    for (std::size_t k = 0; k + 1 < path.size(); k += 2) {
        auto& n = (*b)[static_cast<std::size_t>(path[k])];
        b = path[k + 1] == 0 ? &n.body : &n.else_body;
    }
    return *b;
}

void collect(const Block& b, BlockPath& path, std::vector<BlockPath>& out) {
    out.push_back(path);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const Node& n = b[i];
        if (n.kind == NodeKind::Action) continue;
        path.push_back(static_cast<int>(i));
        path.push_back(0);
        collect(n.body, path, out);
        if (n.kind == NodeKind::IfElse) {
            path.back() = 1;
            collect(n.else_body, path, out);
        }
        path.pop_back();
        path.pop_back();
    }
}

bool block_ok(const Block& b, int depth) {
    if (b.empty() || depth > kMaxProgramDepth) return false;
    for (const Node& n : b) {
        switch (n.kind) {
            case NodeKind::Action:
                if (!n.body.empty() || !n.else_body.empty()) return false;
                break;
            case NodeKind::Repeat:
                if (n.count < 1) return false;
                [[fallthrough]];
            case NodeKind::While:
            case NodeKind::If:
                if (!n.else_body.empty() || !block_ok(n.body, depth + 1)) return false;
                break;
            case NodeKind::IfElse:
                if (!block_ok(n.body, depth + 1) || !block_ok(n.else_body, depth + 1)) return false;
                break;
        }
    }
    return true;
}

}  // namespace

Block& block_at(Program& p, std::span<const int> path) {
    return walk<Program, Block>(p, path);
}

const Block& block_at(const Program& p, std::span<const int> path) {
    return walk<const Program, const Block>(p, path);
}

std::vector<BlockPath> all_block_paths(const Program& p) {
    std::vector<BlockPath> out;
    BlockPath path;
    collect(p.statements, path, out);
    return out;
}

bool well_formed(const Program& p) {
    return block_ok(p.statements, 1);
}

std::vector<Program> rewrite_each_block(const Program& p, const BlockRewrite& rewrite) {
    std::vector<Program> out;
    for (const BlockPath& path : all_block_paths(p)) {
        for (Block& nb : rewrite(block_at(p, path))) {
            Program q = p;
            block_at(q, path) = std::move(nb);
            if (well_formed(q)) out.push_back(std::move(q));
        }
    }
    return out;
}

Block fold_literal(std::span<const Action> actions) {
    Block out;
    for (std::size_t i = 0; i < actions.size();) {
        std::size_t j = i;
        while (j < actions.size() && actions[j] == actions[i]) ++j;
        const auto run = static_cast<int>(j - i);
        if (run >= 3) {
            out.push_back(Node::make_repeat(run, {Node::make_action(actions[i])}));
        } else {
            for (std::size_t k = i; k < j; ++k) {
                if (actions[k] == Action::Attack) {
                    out.push_back(Node::make_if({ConditionKind::MonsterAhead, false},
                                                {Node::make_action(Action::Attack)}));
                } else {
                    out.push_back(Node::make_action(actions[k]));
                }
            }
        }
        i = j;
    }
    return out;
}

bool is_action(const Node& n, Action a) {
    return n.kind == NodeKind::Action && n.action == a;
}

bool is_guarded_attack(const Node& n) {
    return n.kind == NodeKind::If && n.condition == Condition{ConditionKind::MonsterAhead, false} &&
           n.body.size() == 1 && is_action(n.body[0], Action::Attack);
}

std::pair<Block, int> as_repetition(const Node& n) {
    if (n.kind == NodeKind::Repeat) return {n.body, n.count};
    return {Block{n}, 1};
}

}  // namespace mazemate::detail
