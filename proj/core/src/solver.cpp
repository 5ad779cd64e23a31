#include "mazemate/solver.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace mazemate {

std::string_view unsolvable_reason_name(UnsolvableReason r) noexcept {
    return r == UnsolvableReason::NoPath ? "NoPath" : "HealthInfeasible";
}

UnsolvableError::UnsolvableError(UnsolvableReason reason)
    : Error(ErrorCode::Unsolvable,
            std::string("maze is unsolvable: ") + std::string(unsolvable_reason_name(reason))),
      reason_(reason) {}

namespace {

constexpr int kCellBits = 20;
constexpr int kDirShift = kCellBits;
constexpr int kGemShift = kDirShift + 2;
constexpr int kHeartShift = kGemShift + kMaxGems;
constexpr int kMonsterShift = kHeartShift + kMaxHearts;
static_assert(kMonsterShift + kMaxMonsters <= 64);
static_assert((1 << kCellBits) >= kMaxSide * kMaxSide);

}  // namespace

std::uint64_t SearchState::pack() const noexcept {
    return static_cast<std::uint64_t>(cell) |
           (static_cast<std::uint64_t>(orientation) << kDirShift) |
           (static_cast<std::uint64_t>(gems) << kGemShift) |
           (static_cast<std::uint64_t>(hearts) << kHeartShift) |
           (static_cast<std::uint64_t>(monsters) << kMonsterShift);
}

SearchState SearchState::unpack(std::uint64_t key) noexcept {
    SearchState s;
    s.cell = static_cast<int>(key & ((1u << kCellBits) - 1));
    s.orientation = static_cast<Direction>((key >> kDirShift) & 3u);
    s.gems = static_cast<std::uint32_t>((key >> kGemShift) & ((1u << kMaxGems) - 1));
    s.hearts = static_cast<std::uint32_t>((key >> kHeartShift) & ((1u << kMaxHearts) - 1));
    s.monsters = static_cast<std::uint32_t>((key >> kMonsterShift) & ((1u << kMaxMonsters) - 1));
    return s;
}

namespace {

class Search {
public:
    Search(const Maze& maze, bool health_rule, const Deadline& deadline)
        : maze_(maze), health_rule_(health_rule), deadline_(deadline) {
        for (std::size_t i = 0; i < maze.monsters().size(); ++i) {
            damage_.push_back(maze.monster_damage(static_cast<int>(i)));
        }
    }

    std::optional<std::vector<Action>> run() {
        SearchState start;
        start.cell = maze_.cell_index(maze_.start());
        start.orientation = maze_.start_orientation();
        pick_up(start);
        visit(start.pack(), -1, Action::MoveForward);

        const int goal = maze_.cell_index(maze_.goal());
        const std::uint32_t full = maze_.full_gem_mask();
        for (std::size_t head = 0; head < nodes_.size(); ++head) {
            if ((head & 0xfff) == 0) deadline_.check("solve_low");
            const SearchState s = SearchState::unpack(nodes_[head].key);
            for (Action a : kAllActions) {
                auto next = successor(s, a);
                if (!next) continue;
                if (!visit(next->pack(), static_cast<std::int64_t>(head), a)) continue;
                if (next->cell == goal && next->gems == full) return path_to(nodes_.size() - 1);
            }
        }
        return std::nullopt;
    }

    std::size_t explored() const noexcept { return nodes_.size(); }

private:
    struct Node {
        std::uint64_t key;
        std::int64_t parent;
        Action action;
    };

    bool visit(std::uint64_t key, std::int64_t parent, Action a) {
        if (!seen_.insert(key).second) return false;
        nodes_.push_back({key, parent, a});
        return true;
    }

    std::vector<Action> path_to(std::size_t index) const {
        std::vector<Action> out;
        for (auto i = static_cast<std::int64_t>(index); nodes_[static_cast<std::size_t>(i)].parent >= 0;
             i = nodes_[static_cast<std::size_t>(i)].parent) {
            out.push_back(nodes_[static_cast<std::size_t>(i)].action);
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

    int health(const SearchState& s) const {
        int h = maze_.initial_health() + maze_.heart_heal() * std::popcount(s.hearts);
        for (std::size_t i = 0; i < damage_.size(); ++i) {
            if (s.monsters & (1u << i)) h -= damage_[i];
        }
        return h;
    }

    void pick_up(SearchState& s) const {
        const Cell c = maze_.cell_at(s.cell);
        const int idx = maze_.entity_index(c);
        const auto what = maze_.content(c);
        if (what == CellContent::Gem) s.gems |= 1u << idx;
        if (what == CellContent::Heart) s.hearts |= 1u << idx;
    }

    bool live_monster(const SearchState& s, Cell c) const {
        return maze_.content(c) == CellContent::Monster &&
               (s.monsters & (1u << maze_.entity_index(c))) == 0;
    }

    std::optional<SearchState> successor(const SearchState& s, Action a) const {
        SearchState n = s;
        const Cell front = ahead(maze_.cell_at(s.cell), s.orientation);
        switch (a) {
            case Action::MoveForward:
                if (maze_.content(front) == CellContent::Obstacle || live_monster(s, front)) {
                    return std::nullopt;
                }
                n.cell = maze_.cell_index(front);
                pick_up(n);
                return n;
            case Action::TurnLeft: n.orientation = turn_left(s.orientation); return n;
            case Action::TurnRight: n.orientation = turn_right(s.orientation); return n;
            case Action::TurnBack: n.orientation = turn_back(s.orientation); return n;
            case Action::Attack:
                if (!live_monster(s, front)) return std::nullopt;
                n.monsters |= 1u << maze_.entity_index(front);
                if (health_rule_ && health(n) <= 0) return std::nullopt;
                return n;
        }
        return std::nullopt;
    }

    const Maze& maze_;
    bool health_rule_;
    const Deadline& deadline_;
    std::vector<int> damage_;
    std::vector<Node> nodes_;
    std::unordered_set<std::uint64_t> seen_;
};

}  // namespace

SolverResult solve_low(const Maze& maze, const Deadline& deadline) {
    if (maze.gems().size() > kMaxGems || maze.hearts().size() > kMaxHearts ||
        maze.monsters().size() > kMaxMonsters) {
        throw LimitError("solve_low: entity capacity exceeded");
    }
    const auto t0 = std::chrono::steady_clock::now();
    SolverResult result;
    Search search(maze, true, deadline);
    result.actions = search.run();
    result.explored = search.explored();
    if (!result.actions) {
        Search relaxed(maze, false, deadline);
        result.unsolvable =
            relaxed.run() ? UnsolvableReason::HealthInfeasible : UnsolvableReason::NoPath;
        result.explored += relaxed.explored();
    }
    result.elapsed = std::chrono::steady_clock::now() - t0;
    return result;
}

SolvabilityVerdict is_solvable(const Maze& maze, const Deadline& deadline) {
    SolverResult r = solve_low(maze, deadline);
    SolvabilityVerdict v;
    v.solvable = r.solved();
    if (r.actions) v.witness = std::move(*r.actions);
    v.reason = r.unsolvable;
    return v;
}

}  // namespace mazemate
