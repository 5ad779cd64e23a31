#include <benchmark/benchmark.h>

#include <string>

#include "mazemate/compressor.hpp"
#include "mazemate/interpreter.hpp"
#include "mazemate/maze.hpp"
#include "mazemate/program.hpp"
#include "mazemate/solver.hpp"

using namespace mazemate;

namespace {

// 8x8 board with two gems, a heart, a bat and a dragon.
constexpr const char* kBoard8 = R"({
  "width": 8, "height": 8,
  "start": {"x": 0, "y": 0, "dir": "E"},
  "goal": {"x": 7, "y": 7},
  "obstacles": [
    {"x": 3, "y": 0}, {"x": 1, "y": 1}, {"x": 3, "y": 1}, {"x": 5, "y": 1}, {"x": 6, "y": 1},
    {"x": 1, "y": 2}, {"x": 5, "y": 2}, {"x": 1, "y": 3}, {"x": 2, "y": 3}, {"x": 3, "y": 3},
    {"x": 4, "y": 3}, {"x": 6, "y": 3}, {"x": 6, "y": 4}, {"x": 0, "y": 5}, {"x": 1, "y": 5},
    {"x": 3, "y": 5}, {"x": 4, "y": 5}, {"x": 6, "y": 5}, {"x": 3, "y": 6}, {"x": 0, "y": 7},
    {"x": 1, "y": 7}, {"x": 5, "y": 7}
  ],
  "gems": [{"x": 2, "y": 2}, {"x": 4, "y": 6}],
  "hearts": [{"x": 0, "y": 6}],
  "monsters": [{"x": 3, "y": 4, "kind": "bat"}, {"x": 6, "y": 6, "kind": "dragon"}]
})";

// Corridor that climbs a column and ends at the top-right corner.
constexpr const char* kQuiz = R"({
  "width": 5, "height": 7,
  "start": {"x": 0, "y": 6, "dir": "E"},
  "goal": {"x": 4, "y": 0},
  "obstacles": [
    {"x": 0, "y": 0}, {"x": 1, "y": 0}, {"x": 2, "y": 0},
    {"x": 0, "y": 1}, {"x": 1, "y": 1}, {"x": 2, "y": 1}, {"x": 4, "y": 1},
    {"x": 0, "y": 2}, {"x": 1, "y": 2}, {"x": 2, "y": 2}, {"x": 4, "y": 2},
    {"x": 0, "y": 3}, {"x": 1, "y": 3}, {"x": 2, "y": 3}, {"x": 4, "y": 3},
    {"x": 0, "y": 4}, {"x": 1, "y": 4}, {"x": 2, "y": 4}, {"x": 4, "y": 4},
    {"x": 0, "y": 5}, {"x": 1, "y": 5}, {"x": 2, "y": 5}, {"x": 4, "y": 5},
    {"x": 4, "y": 6}
  ]
})";

// Open n x n field with gems in three corners; the goal is the fourth.
std::string open_field(int n) {
    const std::string last = std::to_string(n - 1);
    return R"({"width": )" + std::to_string(n) + R"(, "height": )" + std::to_string(n) +
           R"(, "start": {"x": 0, "y": 0, "dir": "E"}, "goal": {"x": )" + last + R"(, "y": )" + last +
           R"(}, "gems": [{"x": )" + last + R"(, "y": 0}, {"x": 0, "y": )" + last + "}]}";
}

void BM_SolveLowBoard8(benchmark::State& state) {
    const Maze m = parse_maze(kBoard8);
    for (auto _ : state) benchmark::DoNotOptimize(solve_low(m));
}
BENCHMARK(BM_SolveLowBoard8);

void BM_SolveLowOpenField(benchmark::State& state) {
    const Maze m = parse_maze(open_field(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(solve_low(m));
    state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_SolveLowOpenField)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_SolveHighQuiz(benchmark::State& state) {
    const Maze m = parse_maze(kQuiz);
    for (auto _ : state) benchmark::DoNotOptimize(solve_high(m));
}
BENCHMARK(BM_SolveHighQuiz);

void BM_SolveHighBoard8(benchmark::State& state) {
    const Maze m = parse_maze(kBoard8);
    for (auto _ : state) benchmark::DoNotOptimize(solve_high(m));
}
BENCHMARK(BM_SolveHighBoard8);

void BM_ExecuteLiteral(benchmark::State& state) {
    const Maze m = parse_maze(kBoard8);
    const Program p = literal_program(*solve_low(m).actions);
    for (auto _ : state) benchmark::DoNotOptimize(execute(p, m));
}
BENCHMARK(BM_ExecuteLiteral);

void BM_ParsePrintRoundTrip(benchmark::State& state) {
    const Maze m = parse_maze(kBoard8);
    const std::string text = print_program(solve_high(m).program);
    for (auto _ : state) benchmark::DoNotOptimize(print_program(parse_program(text)));
}
BENCHMARK(BM_ParsePrintRoundTrip);

}  // namespace

BENCHMARK_MAIN();
