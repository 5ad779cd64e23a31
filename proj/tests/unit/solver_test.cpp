#include <doctest.h>

#include <random>

#include "mazemate/errors.hpp"
#include "mazemate/interpreter.hpp"
#include "mazemate/solver.hpp"
#include "support/test_support.hpp"

using namespace mazemate;
using mazemate::testing::grid_maze;
using mazemate::testing::row_maze;

namespace {

const std::vector<Action> kBatPath = {Action::Attack, Action::MoveForward, Action::MoveForward, Action::MoveForward};

}  // namespace

TEST_CASE("straight corridor") {
    SolverResult r = solve_low(row_maze("S . G"));
    REQUIRE(r.solved());
    CHECK(*r.actions == std::vector<Action>{Action::MoveForward, Action::MoveForward});
    CHECK(r.explored > 0);
}

TEST_CASE("bat in the corridor") {
    Maze m = row_maze("S b . G");
    SolverResult r = solve_low(m);
    REQUIRE(r.solved());
    CHECK(*r.actions == kBatPath);
    Trace t = execute(literal_program(*r.actions), m);
    CHECK(t.outcome.success);
    CHECK(t.states.back().health == 80);
}

TEST_CASE("severed corridor has no path") {
    SolverResult r = solve_low(row_maze("S # G"));
    CHECK_FALSE(r.solved());
    CHECK(r.unsolvable == UnsolvableReason::NoPath);
}

TEST_CASE("two mandatory dragons are health infeasible") {
    SolvabilityVerdict v = is_solvable(testing::health_infeasible_fixture());
    CHECK_FALSE(v.solvable);
    CHECK(v.reason == UnsolvableReason::HealthInfeasible);
    CHECK(v.witness.empty());
}

TEST_CASE("a heart makes the second dragon survivable") {
    Maze m = grid_maze({"Sdhh.dG"});
    SolvabilityVerdict v = is_solvable(m);
    REQUIRE(v.solvable);
    CHECK(execute(literal_program(v.witness), m).outcome.success);
}

TEST_CASE("walled goal") {
    SolvabilityVerdict v = is_solvable(testing::walled_goal_fixture());
    CHECK_FALSE(v.solvable);
    CHECK(v.reason == UnsolvableReason::NoPath);
}

TEST_CASE("8x8 witness replays to success") {
    Maze m = testing::design_fixture();
    SolvabilityVerdict v = is_solvable(m);
    REQUIRE(v.solvable);
    Trace t = execute(literal_program(v.witness), m);
    CHECK(t.outcome.success);
    for (const auto& s : t.states) CHECK(s.health > 0);
}

TEST_CASE("search state packing") {
    SearchState s{1048575, Direction::West, 0xffff, 0xff, 0xffff};
    CHECK(SearchState::unpack(s.pack()) == s);
    SearchState z{};
    CHECK(SearchState::unpack(z.pack()) == z);
}

TEST_CASE("oracle examples") {
    CHECK(oracle_enumerate(row_maze("S . G"), 4) == std::vector<Action>{Action::MoveForward, Action::MoveForward});
    auto bat = oracle_enumerate(row_maze("S b . G"), 6);
    REQUIRE(bat.has_value());
    CHECK(bat->size() == 4);
    CHECK_FALSE(oracle_enumerate(row_maze("S # G"), 8).has_value());
    CHECK_THROWS_AS(oracle_enumerate(row_maze("S . G"), 15), LimitError);
}

TEST_CASE("breadth-first search matches the enumeration oracle") {
    std::mt19937_64 rng(2024);
    int solvable = 0;
    for (int i = 0; i < 120; ++i) {
        Maze m = testing::random_maze(rng, {.min_side = 1, .max_width = 4, .max_height = 4});
        SolverResult r = solve_low(m);
        auto oracle = oracle_enumerate(m, 10);
        if (oracle) {
            REQUIRE(r.solved());
            CHECK(r.actions->size() == oracle->size());
            ++solvable;
        } else if (r.solved()) {
            CHECK(r.actions->size() > 10);
        }
        if (r.solved()) CHECK(execute(literal_program(*r.actions), m).outcome.success);
    }
    CHECK(solvable > 30);
}

TEST_CASE("solving is deterministic") {
    Maze m = testing::design_fixture();
    CHECK(solve_low(m).actions == solve_low(m).actions);
}

TEST_CASE("removing an obstacle never creates NoPath") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 60; ++i) {
        Maze m = testing::random_maze(rng, {.min_side = 2, .max_width = 6, .max_height = 6, .obstacle_density = 0.3});
        if (!solve_low(m).solved() || m.obstacles().empty()) continue;
        MazeSpec spec = m.spec();
        spec.obstacles.erase(spec.obstacles.begin() + static_cast<long>(rng() % spec.obstacles.size()));
        SolverResult r = solve_low(Maze::create(spec));
        CHECK(r.unsolvable != UnsolvableReason::NoPath);
    }
}

TEST_CASE("expired deadline raises a limit error") {
    Maze big = grid_maze({"S" + std::string(200, '.') + "G"});
    Deadline already = Deadline::after(std::chrono::nanoseconds(0));
    CHECK_THROWS_AS(solve_low(big, already), LimitError);
}
