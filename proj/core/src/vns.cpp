// Variable neighbourhood search refinement and the full high-efficiency
// pipeline.

#include <random>

#include "mazemate/compressor.hpp"
#include "mazemate/interpreter.hpp"

namespace mazemate {

namespace {

class Refiner {
public:
    Refiner(const Maze& m, const VnsConfig& cfg, const Deadline& deadline)
        : maze_(m), cfg_(cfg), deadline_(deadline), rng_(cfg.seed) {}

    Program run(const Program& start) {
        auto start_j = evaluate(start, maze_);
        if (!start_j || cfg_.order.empty()) return start;

        Program best = start;
        Objective best_j = *start_j;
        descend(best, best_j);

        const std::size_t kinds = cfg_.order.size();
        std::size_t k = 0;
        int no_improve = 0;
        for (int iter = 0; iter < cfg_.max_iterations && no_improve < cfg_.no_improve_cap; ++iter) {
            deadline_.check("vns_refine");
            std::vector<Program> moves = neighbors(best, maze_, cfg_.order[k]);
            if (moves.empty()) {
                k = (k + 1) % kinds;
                ++no_improve;
                continue;
            }
            std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
            Program shaken = std::move(moves[pick(rng_)]);
            std::optional<Objective> shaken_j = evaluate(shaken, maze_);
            descend(shaken, shaken_j);
            if (shaken_j && *shaken_j < best_j) {
                best = std::move(shaken);
                best_j = *shaken_j;
                k = 0;
                no_improve = 0;
            } else {
                k = (k + 1) % kinds;
                ++no_improve;
            }
        }
        return best;
    }

private:
    // First-improvement local search across all neighbourhoods. A program
    // that does not succeed counts as worse than any that does.
    template <typename J>
    void descend(Program& p, J& j) {
        for (bool improved = true; improved;) {
            improved = false;
            for (Neighborhood n : cfg_.order) {
                for (Program& q : neighbors(p, maze_, n)) {
                    auto qj = evaluate(q, maze_);
                    if (qj && (!has_value(j) || *qj < value(j))) {
                        p = std::move(q);
                        j = *qj;
                        improved = true;
                        break;
                    }
                }
                if (improved) break;
            }
        }
    }

    static bool has_value(const Objective&) { return true; }
    static bool has_value(const std::optional<Objective>& j) { return j.has_value(); }
    static const Objective& value(const Objective& j) { return j; }
    static const Objective& value(const std::optional<Objective>& j) { return *j; }

    const Maze& maze_;
    const VnsConfig& cfg_;
    const Deadline& deadline_;
    std::mt19937_64 rng_;
};

}  // namespace

Program vns_refine(const Program& p, const Maze& m, const VnsConfig& cfg, const Deadline& deadline) {
    return Refiner(m, cfg, deadline).run(p);
}

CompressionResult solve_high(const Maze& m, const VnsConfig& cfg, const Deadline& deadline) {
    SolverResult low = solve_low(m, deadline);
    if (!low.solved()) throw UnsolvableError(*low.unsolvable);

    CompressionResult result;
    result.low_actions = std::move(*low.actions);
    result.stages.tree = build_program_tree(result.low_actions, m);
    result.stages.compressed = compress(result.stages.tree, m, result.low_actions);
    result.stages.refined = vns_refine(result.stages.compressed, m, cfg, deadline);
    result.program = result.stages.refined;
    result.block_count = block_count(result.program);
    result.exec_steps = execute(result.program, m).fuel_used;
    result.trace_equivalent = trace_equivalent(result.program, m, result.low_actions);
    return result;
}

}  // namespace mazemate
