#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mazemate/compressor.hpp"
#include "mazemate/maze.hpp"
#include "mazemate/program.hpp"
#include "mazemate/solver.hpp"

namespace mazemate {

// Lesson requirements for a student-designed maze.
struct DesignRequirements {
    int required_width = 8;
    int required_height = 8;
    int min_gems = 1;
    int min_monsters = 2;
    // Distinct kinds among gem, heart, obstacle and each monster kind.
    int min_asset_kinds = 3;
    bool must_be_solvable = true;
};

struct DesignCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct WitnessSummary {
    int path_length = 0;
    int health_margin = 0;  // lowest health along the witness path
};

struct DesignReport {
    std::vector<DesignCheck> checks;
    bool overall = false;
    std::optional<WitnessSummary> witness;
    std::optional<UnsolvableReason> unsolvable;
};

DesignReport check_design(const Maze& m, const DesignRequirements& req = {},
                          const Deadline& deadline = Deadline::none());

enum class HintKind : std::uint8_t { LowEfficiencySteps, TransformationHints, HighEfficiencyProgram };

std::string_view hint_kind_name(HintKind k) noexcept;

enum class FindingKind : std::uint8_t { Run, RepeatedBlock, Attack };

struct Finding {
    FindingKind kind = FindingKind::Run;
    int start = 0;
    // Run: action and length. RepeatedBlock: block and repetitions.
    std::vector<Action> actions;
    int length = 0;
    int repetitions = 0;

    friend bool operator==(const Finding&, const Finding&) = default;
};

// Maximal runs (length >= 2), adjacent repeated blocks (>= 2 copies) and
// attack positions, ordered by start index.
std::vector<Finding> pattern_report(const std::vector<Action>& actions);

struct HintPayload {
    int stage = 0;
    HintKind kind = HintKind::LowEfficiencySteps;
    std::vector<Action> actions;    // stage 1
    std::vector<Finding> findings;  // stage 2
    std::string program_text;       // stage 3
    std::string rendered_text;

    friend bool operator==(const HintPayload&, const HintPayload&) = default;
};

inline constexpr int kMaxHintSentences = 10;

std::string render_hint_text(const HintPayload& payload);

// Sentence terminators outside fenced code blocks.
int count_sentences(std::string_view text);
// Keeps at most `max` sentences; fenced code blocks are kept whole.
std::string truncate_sentences(std::string_view text, int max = kMaxHintSentences);
// Content of the first ``` fenced block, if any.
std::optional<std::string> extract_code_block(std::string_view text);

struct HintSession {
    std::string id;
    std::string maze_hash;
    int stage = 0;
    std::vector<HintPayload> log;
    std::int64_t created_ms = 0;
    std::int64_t updated_ms = 0;

    friend bool operator==(const HintSession&, const HintSession&) = default;
};

std::int64_t now_ms();
std::string generate_session_id();

HintSession new_session(const Maze& maze);
HintSession new_session(const Maze& maze, std::string id, std::int64_t now);

// Advances the session one stage (saturating at 3) and returns the payload.
// Throws StaleSessionError when the maze no longer matches the session and
// UnsolvableError when the maze has no solution.
std::pair<HintSession, HintPayload> request_hint(const HintSession& session, const Maze& maze,
                                                 const VnsConfig& cfg = {},
                                                 const Deadline& deadline = Deadline::none());

}  // namespace mazemate
