#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mazemate/deadline.hpp"
#include "mazemate/errors.hpp"
#include "mazemate/maze.hpp"
#include "mazemate/program.hpp"

namespace mazemate {

enum class UnsolvableReason : std::uint8_t { NoPath, HealthInfeasible };

std::string_view unsolvable_reason_name(UnsolvableReason r) noexcept;

class UnsolvableError : public Error {
public:
    explicit UnsolvableError(UnsolvableReason reason);

    UnsolvableReason reason() const noexcept { return reason_; }

private:
    UnsolvableReason reason_;
};

// Search node: pose plus collection masks. Health is derived from the masks.
struct SearchState {
    int cell = 0;  // row-major cell index
    Direction orientation = Direction::East;
    std::uint32_t gems = 0;
    std::uint32_t hearts = 0;
    std::uint32_t monsters = 0;

    std::uint64_t pack() const noexcept;
    static SearchState unpack(std::uint64_t key) noexcept;

    friend bool operator==(const SearchState&, const SearchState&) = default;
};

struct SolverResult {
    std::optional<std::vector<Action>> actions;
    std::optional<UnsolvableReason> unsolvable;  // set iff !actions
    std::size_t explored = 0;
    std::chrono::nanoseconds elapsed{0};

    bool solved() const noexcept { return actions.has_value(); }
};

// Shortest action sequence by breadth-first search. Successors are expanded
// in the order MoveForward, TurnLeft, TurnRight, TurnBack, Attack.
SolverResult solve_low(const Maze& maze, const Deadline& deadline = Deadline::none());

struct SolvabilityVerdict {
    bool solvable = false;
    std::vector<Action> witness;
    std::optional<UnsolvableReason> reason;
};

SolvabilityVerdict is_solvable(const Maze& maze, const Deadline& deadline = Deadline::none());

inline constexpr int kOracleMaxLength = 14;

// Exhaustive breadth-ordered enumeration built only on the interpreter's
// step rule. Throws LimitError if max_len > 14.
std::optional<std::vector<Action>> oracle_enumerate(const Maze& maze, int max_len);

}  // namespace mazemate
