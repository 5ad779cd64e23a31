#include "mazemate/scaffold.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <span>

#include "mazemate/errors.hpp"
#include "mazemate/interpreter.hpp"

namespace mazemate {

namespace {

std::string plural(int n, const char* word) {
    return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

}  // namespace

DesignReport check_design(const Maze& m, const DesignRequirements& req, const Deadline& deadline) {
    DesignReport report;
    auto add = [&](std::string name, bool passed, std::string detail) {
        report.checks.push_back({std::move(name), passed, std::move(detail)});
    };

    add("size", m.width() == req.required_width && m.height() == req.required_height,
        "expected " + std::to_string(req.required_width) + "×" + std::to_string(req.required_height) +
            ", found " + std::to_string(m.width()) + "×" + std::to_string(m.height()));

    const auto gems = static_cast<int>(m.gems().size());
    add("gems", gems >= req.min_gems,
        "found " + plural(gems, "gem") + ", need at least " + std::to_string(req.min_gems));

    const auto monsters = static_cast<int>(m.monsters().size());
    add("monsters", monsters >= req.min_monsters,
        "found " + plural(monsters, "monster") + ", need at least " + std::to_string(req.min_monsters));

    std::set<std::string> kinds;
    if (!m.gems().empty()) kinds.insert("gem");
    if (!m.hearts().empty()) kinds.insert("heart");
    if (!m.obstacles().empty()) kinds.insert("obstacle");
    for (const Monster& mon : m.monsters()) kinds.insert(std::string(monster_kind_name(mon.kind)));
    std::string listed;
    for (const auto& k : kinds) listed += (listed.empty() ? "" : ", ") + k;
    add("asset_kinds", static_cast<int>(kinds.size()) >= req.min_asset_kinds,
        "found " + plural(static_cast<int>(kinds.size()), "asset kind") +
            (listed.empty() ? "" : " (" + listed + ")") + ", need at least " +
            std::to_string(req.min_asset_kinds));

    if (req.must_be_solvable) {
        SolvabilityVerdict v = is_solvable(m, deadline);
        if (v.solvable) {
            Trace t = execute(literal_program(v.witness), m);
            int lowest = t.states.front().health;
            for (const SimState& s : t.states) lowest = std::min(lowest, s.health);
            report.witness = WitnessSummary{static_cast<int>(v.witness.size()), lowest};
            add("solvable", true, "solvable in " + plural(static_cast<int>(v.witness.size()), "action"));
        } else {
            report.unsolvable = v.reason;
            add("solvable", false, "unsolvable: " + std::string(unsolvable_reason_name(*v.reason)));
        }
    }

    report.overall = std::all_of(report.checks.begin(), report.checks.end(),
                                 [](const DesignCheck& c) { return c.passed; });
    return report;
}

std::string_view hint_kind_name(HintKind k) noexcept {
    switch (k) {
        case HintKind::LowEfficiencySteps: return "low_efficiency_steps";
        case HintKind::TransformationHints: return "transformation_hints";
        case HintKind::HighEfficiencyProgram: return "high_efficiency_program";
    }
    return "?";
}

namespace {

// Smallest period of v; v.size() when it is not a repetition.
std::size_t period(std::span<const Action> v) {
    for (std::size_t p = 1; p < v.size(); ++p) {
        if (v.size() % p != 0) continue;
        bool ok = true;
        for (std::size_t i = p; i < v.size() && ok; ++i) ok = v[i] == v[i - p];
        if (ok) return p;
    }
    return v.size();
}

}  // namespace

std::vector<Finding> pattern_report(const std::vector<Action>& actions) {
    std::vector<Finding> out;
    const std::size_t n = actions.size();

    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && actions[j] == actions[i]) ++j;
        if (j - i >= 2) {
            out.push_back({FindingKind::Run, static_cast<int>(i), {actions[i]}, static_cast<int>(j - i), 0});
        }
        i = j;
    }

    std::span<const Action> all(actions);
    for (std::size_t i = 0; i < n;) {
        std::size_t best_len = 0;
        std::size_t best_reps = 0;
        for (std::size_t len = 2; i + 2 * len <= n; ++len) {
            auto unit = all.subspan(i, len);
            if (period(unit) != len) continue;
            std::size_t reps = 1;
            while (i + (reps + 1) * len <= n &&
                   std::equal(unit.begin(), unit.end(), all.begin() + static_cast<std::ptrdiff_t>(i + reps * len))) {
                ++reps;
            }
            if (reps >= 2 && reps * len > best_reps * best_len) {
                best_len = len;
                best_reps = reps;
            }
        }
        if (best_len == 0) {
            ++i;
            continue;
        }
        auto unit = all.subspan(i, best_len);
        out.push_back({FindingKind::RepeatedBlock, static_cast<int>(i),
                       std::vector<Action>(unit.begin(), unit.end()), static_cast<int>(best_len),
                       static_cast<int>(best_reps)});
        i += best_len * best_reps;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (actions[i] == Action::Attack) out.push_back({FindingKind::Attack, static_cast<int>(i), {Action::Attack}, 1, 0});
    }

    std::stable_sort(out.begin(), out.end(), [](const Finding& a, const Finding& b) {
        if (a.start != b.start) return a.start < b.start;
        return a.kind < b.kind;
    });
    return out;
}

namespace {

std::string spoken(Action a) {
    switch (a) {
        case Action::MoveForward: return "Move Forward";
        case Action::TurnLeft: return "Turn Left";
        case Action::TurnRight: return "Turn Right";
        case Action::TurnBack: return "Turn Back";
        case Action::Attack: return "Attack";
    }
    return "?";
}

std::string finding_label(const Finding& f) {
    switch (f.kind) {
        case FindingKind::Run:
            return std::string(action_name(f.actions.front())) + " ×" + std::to_string(f.length) + " run";
        case FindingKind::RepeatedBlock: {
            std::string s = "[";
            for (std::size_t i = 0; i < f.actions.size(); ++i) {
                s += (i ? ", " : "") + std::string(action_name(f.actions[i]));
            }
            return s + "] ×" + std::to_string(f.repetitions) + " block";
        }
        case FindingKind::Attack: return "Attack guarded by monster_ahead";
    }
    return "?";
}

std::string finding_sentence(const Finding& f) {
    const std::string where = " at step " + std::to_string(f.start + 1);
    switch (f.kind) {
        case FindingKind::Run:
            if (f.actions.front() == Action::MoveForward) {
                return finding_label(f) + where +
                       ": a while path_ahead loop or a repeat block can replace these moves.";
            }
            return finding_label(f) + where + ": a repeat block can replace this run.";
        case FindingKind::RepeatedBlock:
            return finding_label(f) + where +
                   ": the same group of steps happens again, so one repeat block can hold it.";
        case FindingKind::Attack:
            return finding_label(f) + where +
                   ": wrap the attack in an if monster_ahead block so it only happens when a monster blocks the way.";
    }
    return {};
}

bool terminator(char c) {
    return c == '.' || c == '?' || c == '!';
}

bool boundary_after(std::string_view text, std::size_t i) {
    return i + 1 >= text.size() || text[i + 1] == ' ' || text[i + 1] == '\n' || text[i + 1] == '\t' ||
           text[i + 1] == '"' || text[i + 1] == '\r';
}

// Calls fn(index) at every sentence end outside fenced blocks; stops when fn
// returns false.
template <typename Fn>
void scan_sentences(std::string_view text, Fn fn) {
    bool fenced = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text.compare(i, 3, "```") == 0) {
            fenced = !fenced;
            i += 2;
            continue;
        }
        if (fenced || !terminator(text[i]) || !boundary_after(text, i)) continue;
        if (i + 1 < text.size() && terminator(text[i + 1])) continue;
        if (!fn(i)) return;
    }
}

}  // namespace

int count_sentences(std::string_view text) {
    int n = 0;
    scan_sentences(text, [&](std::size_t) {
        ++n;
        return true;
    });
    return n;
}

std::string truncate_sentences(std::string_view text, int max) {
    int n = 0;
    std::size_t cut = std::string_view::npos;
    scan_sentences(text, [&](std::size_t i) {
        if (++n == max) {
            cut = i + 1;
            return false;
        }
        return true;
    });
    if (cut == std::string_view::npos) return std::string(text);
    return std::string(text.substr(0, cut));
}

std::optional<std::string> extract_code_block(std::string_view text) {
    auto open = text.find("```");
    if (open == std::string_view::npos) return std::nullopt;
    auto line_end = text.find('\n', open);
    if (line_end == std::string_view::npos) return std::nullopt;
    auto close = text.find("```", line_end + 1);
    if (close == std::string_view::npos) return std::nullopt;
    return std::string(text.substr(line_end + 1, close - line_end - 1));
}

std::string render_hint_text(const HintPayload& payload) {
    std::string text;
    switch (payload.kind) {
        case HintKind::LowEfficiencySteps: {
            const auto n = static_cast<int>(payload.actions.size());
            text = "Here is one step-by-step path through the maze, " + plural(n, "action") + " long. ";
            text += "The steps in order are: ";
            for (int i = 0; i < n; ++i) {
                text += (i ? ", " : "") + std::string("(") + std::to_string(i + 1) + ") " +
                        spoken(payload.actions[static_cast<std::size_t>(i)]);
            }
            text += ". Try breaking the path into smaller parts, like each straight stretch and each turn. ";
            text += "How would you describe each part in your own words?";
            break;
        }
        case HintKind::TransformationHints: {
            text = "Look again at the step-by-step path and search for patterns. ";
            constexpr std::size_t kListed = 6;
            const auto& f = payload.findings;
            for (std::size_t i = 0; i < f.size() && i < kListed; ++i) text += finding_sentence(f[i]) + " ";
            if (f.size() > kListed) {
                text += "Other patterns worth a look: ";
                for (std::size_t i = kListed; i < f.size(); ++i) {
                    text += (i > kListed ? "; " : "") + finding_label(f[i]) + " at step " +
                            std::to_string(f[i].start + 1);
                }
                text += ". ";
            }
            if (f.empty()) {
                text += "This path has no repeated steps, so look for places where a condition such as "
                        "path_ahead could decide what to do next. ";
            }
            text += "Which of these patterns could you turn into a while, if or repeat block?";
            break;
        }
        case HintKind::HighEfficiencyProgram: {
            text = "Here is a high-efficiency program that solves the maze. ";
            text += "\n\n```\n" + payload.program_text + "```\n\n";
            text += "Compare it with your own version and spot which loops and conditions replaced the repeated steps.";
            break;
        }
    }
    return truncate_sentences(text, kMaxHintSentences);
}

std::int64_t now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::string generate_session_id() {
    static std::atomic<std::uint64_t> counter{0};
    static const std::uint64_t salt = [] {
        std::random_device rd;
        return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }();
    std::uint64_t v = salt ^ (++counter * 0x9e3779b97f4a7c15ull);
    char buf[24];
    std::snprintf(buf, sizeof buf, "s-%016llx", static_cast<unsigned long long>(v));
    return buf;
}

HintSession new_session(const Maze& maze) {
    return new_session(maze, generate_session_id(), now_ms());
}

HintSession new_session(const Maze& maze, std::string id, std::int64_t now) {
    HintSession s;
    s.id = std::move(id);
    s.maze_hash = maze_hash(maze);
    s.created_ms = now;
    s.updated_ms = now;
    return s;
}

std::pair<HintSession, HintPayload> request_hint(const HintSession& session, const Maze& maze,
                                                 const VnsConfig& cfg, const Deadline& deadline) {
    if (maze_hash(maze) != session.maze_hash) {
        throw StaleSessionError("session " + session.id +
                                " was opened for a different version of this maze; open a new session");
    }
    if (session.stage >= 3 && !session.log.empty()) return {session, session.log.back()};

    HintPayload payload;
    payload.stage = std::min(session.stage + 1, 3);
    if (payload.stage < 3) {
        SolverResult low = solve_low(maze, deadline);
        if (!low.solved()) throw UnsolvableError(*low.unsolvable);
        if (payload.stage == 1) {
            payload.kind = HintKind::LowEfficiencySteps;
            payload.actions = std::move(*low.actions);
        } else {
            payload.kind = HintKind::TransformationHints;
            payload.findings = pattern_report(*low.actions);
        }
    } else {
        payload.kind = HintKind::HighEfficiencyProgram;
        payload.program_text = print_program(solve_high(maze, cfg, deadline).program);
    }
    payload.rendered_text = render_hint_text(payload);

    HintSession next = session;
    if (next.stage < 3) {
        next.stage = payload.stage;
        next.log.push_back(payload);
    }
    next.updated_ms = now_ms();
    return {std::move(next), std::move(payload)};
}

}  // namespace mazemate
