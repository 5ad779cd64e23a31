#include "mazemate/interpreter.hpp"

#include <bit>

namespace mazemate {

namespace {

bool monster_alive(const Maze& maze, const SimState& s, Cell c) {
    if (maze.content(c) != CellContent::Monster) return false;
    return (s.monsters_defeated & (1u << maze.entity_index(c))) == 0;
}

void collect_items(const Maze& maze, SimState& s) {
    const Cell c = s.position;
    const int idx = maze.entity_index(c);
    switch (maze.content(c)) {
        case CellContent::Gem: s.gems_collected |= 1u << idx; break;
        case CellContent::Heart:
            if ((s.hearts_collected & (1u << idx)) == 0) {
                s.hearts_collected |= 1u << idx;
                s.health += maze.heart_heal();
            }
            break;
        default: break;
    }
}

}  // namespace

SimState initial_state(const Maze& maze) {
    SimState s;
    s.position = maze.start();
    s.orientation = maze.start_orientation();
    s.health = maze.initial_health();
    collect_items(maze, s);
    return s;
}

int derived_health(const Maze& maze, std::uint32_t hearts, std::uint32_t defeated) {
    int health = maze.initial_health() + maze.heart_heal() * std::popcount(hearts);
    for (std::size_t i = 0; i < maze.monsters().size(); ++i) {
        if (defeated & (1u << i)) health -= maze.monster_damage(static_cast<int>(i));
    }
    return health;
}

bool is_success(const SimState& s, const Maze& maze) noexcept {
    return s.position == maze.goal() && s.gems_collected == maze.full_gem_mask();
}

bool eval_condition(Condition c, const SimState& s, const Maze& maze) noexcept {
    const Cell front = ahead(s.position, s.orientation);
    bool value = false;
    switch (c.kind) {
        case ConditionKind::PathAhead: {
            const auto what = maze.content(front);
            value = what != CellContent::Obstacle && !monster_alive(maze, s, front);
            break;
        }
        case ConditionKind::MonsterAhead: value = monster_alive(maze, s, front); break;
        case ConditionKind::GemsRemaining: value = s.gems_collected != maze.full_gem_mask(); break;
        case ConditionKind::AtGoal: value = s.position == maze.goal(); break;
    }
    return value != c.negated;
}

std::string_view failure_reason_name(FailureReason r) noexcept {
    switch (r) {
        case FailureReason::InvalidMove: return "InvalidMove";
        case FailureReason::InvalidAttack: return "InvalidAttack";
        case FailureReason::Death: return "Death";
        case FailureReason::FuelExhausted: return "FuelExhausted";
        case FailureReason::Incomplete: return "Incomplete";
    }
    return "?";
}

StepResult step(const SimState& s, Action a, const Maze& maze) {
    SimState next = s;
    switch (a) {
        case Action::MoveForward: {
            const Cell front = ahead(s.position, s.orientation);
            if (maze.content(front) == CellContent::Obstacle || monster_alive(maze, s, front)) {
                return {s, FailureReason::InvalidMove};
            }
            next.position = front;
            collect_items(maze, next);
            break;
        }
        case Action::TurnLeft: next.orientation = turn_left(s.orientation); break;
        case Action::TurnRight: next.orientation = turn_right(s.orientation); break;
        case Action::TurnBack: next.orientation = turn_back(s.orientation); break;
        case Action::Attack: {
            const Cell front = ahead(s.position, s.orientation);
            if (!monster_alive(maze, s, front)) return {s, FailureReason::InvalidAttack};
            const int idx = maze.entity_index(front);
            const int dmg = maze.monster_damage(idx);
            if (s.health - dmg <= 0) return {s, FailureReason::Death};
            next.health -= dmg;
            next.monsters_defeated |= 1u << idx;
            break;
        }
    }
    ++next.steps_taken;
    return {next, std::nullopt};
}

namespace {

class Executor {
public:
    Executor(const Maze& maze, int fuel, std::vector<NodeSpan>* spans)
        : maze_(maze), fuel_(fuel), spans_(spans) {
        trace_.states.push_back(initial_state(maze));
    }

    Trace run(const Program& program) {
        std::vector<int> path;
        run_block(program.statements, path, false);
        if (!halted_) halt(Outcome::failed(FailureReason::Incomplete));
        return std::move(trace_);
    }

private:
    const SimState& state() const { return trace_.states.back(); }

    void halt(Outcome outcome) {
        halted_ = true;
        trace_.outcome = outcome;
    }

    void perform(Action a) {
        if (trace_.fuel_used >= fuel_) {
            halt(Outcome::failed(FailureReason::FuelExhausted));
            return;
        }
        StepResult r = step(state(), a, maze_);
        if (!r.ok()) {
            trace_.failed_action = a;
            halt(Outcome::failed(*r.failure));
            return;
        }
        ++trace_.fuel_used;
        trace_.primitive_actions.push_back(a);
        trace_.states.push_back(r.state);
        if (is_success(r.state, maze_)) halt(Outcome::succeeded());
    }

    void run_block(const Block& block, std::vector<int>& path, bool in_loop) {
        for (std::size_t i = 0; i < block.size() && !halted_; ++i) {
            path.push_back(static_cast<int>(i));
            run_node(block[i], path, in_loop);
            path.pop_back();
        }
    }

    void run_branch(const Block& block, int branch, std::vector<int>& path, bool in_loop) {
        path.push_back(branch);
        run_block(block, path, in_loop);
        path.pop_back();
    }

    void run_node(const Node& n, std::vector<int>& path, bool in_loop) {
        const bool record = spans_ != nullptr && !in_loop;
        std::size_t span_index = 0;
        if (record) {
            span_index = spans_->size();
            spans_->push_back({path, static_cast<int>(trace_.primitive_actions.size()), 0, -1});
        }
        switch (n.kind) {
            case NodeKind::Action: perform(n.action); break;
            case NodeKind::Repeat:
                for (int k = 0; k < n.count && !halted_; ++k) {
                    const int before = trace_.fuel_used;
                    run_branch(n.body, 0, path, true);
                    // An iteration without actions leaves the state unchanged,
                    // so the remaining iterations are no-ops too.
                    if (trace_.fuel_used == before) break;
                }
                break;
            case NodeKind::While:
                while (!halted_ && eval_condition(n.condition, state(), maze_)) {
                    const int before = trace_.fuel_used;
                    run_branch(n.body, 0, path, true);
                    if (!halted_ && trace_.fuel_used == before) {
                        // Same state, same condition: this loop never ends.
                        halt(Outcome::failed(FailureReason::FuelExhausted));
                    }
                }
                break;
            case NodeKind::If:
            case NodeKind::IfElse: {
                int taken = -1;
                if (eval_condition(n.condition, state(), maze_)) {
                    taken = 0;
                } else if (n.kind == NodeKind::IfElse) {
                    taken = 1;
                }
                if (record) (*spans_)[span_index].taken_branch = taken;
                if (taken == 0) run_branch(n.body, 0, path, in_loop);
                if (taken == 1) run_branch(n.else_body, 1, path, in_loop);
                break;
            }
        }
        if (record) (*spans_)[span_index].end = static_cast<int>(trace_.primitive_actions.size());
    }

    const Maze& maze_;
    int fuel_;
    std::vector<NodeSpan>* spans_;
    Trace trace_;
    bool halted_ = false;
};

}  // namespace

Trace execute(const Program& program, const Maze& maze, int fuel) {
    return Executor(maze, fuel, nullptr).run(program);
}

Trace execute_instrumented(const Program& program, const Maze& maze, int fuel,
                           std::vector<NodeSpan>& spans) {
    spans.clear();
    return Executor(maze, fuel, &spans).run(program);
}

}  // namespace mazemate
