#include "mazemate/maze.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <utility>

#include "mazemate/errors.hpp"

namespace mazemate {

Direction turn_left(Direction d) noexcept {
    return static_cast<Direction>((static_cast<int>(d) + 3) % 4);
}

Direction turn_right(Direction d) noexcept {
    return static_cast<Direction>((static_cast<int>(d) + 1) % 4);
}

Direction turn_back(Direction d) noexcept {
    return static_cast<Direction>((static_cast<int>(d) + 2) % 4);
}

Cell ahead(Cell c, Direction d) noexcept {
    switch (d) {
        case Direction::North: return {c.x, c.y - 1};
        case Direction::East: return {c.x + 1, c.y};
        case Direction::South: return {c.x, c.y + 1};
        case Direction::West: return {c.x - 1, c.y};
    }
    return c;
}

char direction_letter(Direction d) noexcept {
    static constexpr char kLetters[] = {'N', 'E', 'S', 'W'};
    return kLetters[static_cast<int>(d)];
}

std::optional<Direction> direction_from_letter(std::string_view s) noexcept {
    if (s == "N") return Direction::North;
    if (s == "E") return Direction::East;
    if (s == "S") return Direction::South;
    if (s == "W") return Direction::West;
    return std::nullopt;
}

int default_damage(MonsterKind kind) noexcept {
    switch (kind) {
        case MonsterKind::Bat: return 20;
        case MonsterKind::Ghost: return 40;
        case MonsterKind::SkeletonArcher: return 20;
        case MonsterKind::Dragon: return 60;
    }
    return 0;
}

std::string_view monster_kind_name(MonsterKind kind) noexcept {
    switch (kind) {
        case MonsterKind::Bat: return "bat";
        case MonsterKind::Ghost: return "ghost";
        case MonsterKind::SkeletonArcher: return "skeleton_archer";
        case MonsterKind::Dragon: return "dragon";
    }
    return "?";
}

std::optional<MonsterKind> monster_kind_from_name(std::string_view name) noexcept {
    for (int k = 0; k < kMonsterKindCount; ++k) {
        auto kind = static_cast<MonsterKind>(k);
        if (monster_kind_name(kind) == name) return kind;
    }
    return std::nullopt;
}

namespace {

std::string coord(Cell c) {
    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

}  // namespace

Maze Maze::create(MazeSpec spec) {
    if (spec.width < 1 || spec.width > kMaxSide || spec.height < 1 || spec.height > kMaxSide) {
        throw SchemaError("width/height: size " + std::to_string(spec.width) + "x" +
                          std::to_string(spec.height) + " outside [1," + std::to_string(kMaxSide) +
                          "] (cap exceeded)");
    }
    if (spec.gems.size() > kMaxGems) {
        throw SchemaError("gems: " + std::to_string(spec.gems.size()) + " gems exceed cap of " +
                          std::to_string(kMaxGems));
    }
    if (spec.hearts.size() > kMaxHearts) {
        throw SchemaError("hearts: " + std::to_string(spec.hearts.size()) +
                          " hearts exceed cap of " + std::to_string(kMaxHearts));
    }
    if (spec.monsters.size() > kMaxMonsters) {
        throw SchemaError("monsters: " + std::to_string(spec.monsters.size()) +
                          " monsters exceed cap of " + std::to_string(kMaxMonsters));
    }
    if (spec.initial_health <= 0) {
        throw SchemaError("config.initial_health: must be > 0, found " +
                          std::to_string(spec.initial_health));
    }
    if (spec.heart_heal < 0) {
        throw SchemaError("config.heart_heal: must be >= 0, found " +
                          std::to_string(spec.heart_heal));
    }
    for (const auto& [kind, dmg] : spec.damage_overrides) {
        if (dmg < 0) {
            throw SchemaError("config.damage_overrides." + std::string(monster_kind_name(kind)) +
                              ": must be >= 0, found " + std::to_string(dmg));
        }
    }

    std::sort(spec.obstacles.begin(), spec.obstacles.end());
    std::sort(spec.gems.begin(), spec.gems.end());
    std::sort(spec.hearts.begin(), spec.hearts.end());
    std::sort(spec.monsters.begin(), spec.monsters.end(),
              [](const Monster& a, const Monster& b) { return a.cell < b.cell; });

    Maze maze;
    maze.spec_ = std::move(spec);
    const MazeSpec& s = maze.spec_;
    const auto cells = static_cast<std::size_t>(s.width) * static_cast<std::size_t>(s.height);
    maze.contents_.assign(cells, CellContent::Empty);
    maze.indices_.assign(cells, -1);

    auto place = [&](const char* field, Cell c, CellContent what, int index) {
        if (!maze.in_bounds(c)) {
            throw SchemaError(std::string(field) + ": coordinate " + coord(c) + " out of bounds");
        }
        auto i = static_cast<std::size_t>(maze.cell_index(c));
        if (maze.contents_[i] != CellContent::Empty) {
            throw SchemaError(std::string(field) + ": cell " + coord(c) +
                              " already holds another entity");
        }
        maze.contents_[i] = what;
        maze.indices_[i] = static_cast<std::int16_t>(index);
    };

    for (const Cell& c : s.obstacles) place("obstacles", c, CellContent::Obstacle, -1);
    for (std::size_t i = 0; i < s.gems.size(); ++i) {
        place("gems", s.gems[i], CellContent::Gem, static_cast<int>(i));
    }
    for (std::size_t i = 0; i < s.hearts.size(); ++i) {
        place("hearts", s.hearts[i], CellContent::Heart, static_cast<int>(i));
    }
    for (std::size_t i = 0; i < s.monsters.size(); ++i) {
        place("monsters", s.monsters[i].cell, CellContent::Monster, static_cast<int>(i));
    }

    if (!maze.in_bounds(s.start)) {
        throw SchemaError("start: coordinate " + coord(s.start) + " out of bounds");
    }
    if (!maze.in_bounds(s.goal)) {
        throw SchemaError("goal: coordinate " + coord(s.goal) + " out of bounds");
    }
    if (s.start == s.goal) {
        throw SchemaError("goal: coordinate " + coord(s.goal) + " coincides with start");
    }
    for (auto [field, c] : {std::pair{"start", s.start}, std::pair{"goal", s.goal}}) {
        auto what = maze.content(c);
        if (what == CellContent::Obstacle || what == CellContent::Monster) {
            throw SchemaError(std::string(field) + ": cell " + coord(c) + " holds " +
                              (what == CellContent::Obstacle ? "an obstacle" : "a monster"));
        }
    }
    return maze;
}

int Maze::damage(MonsterKind kind) const noexcept {
    if (auto it = spec_.damage_overrides.find(kind); it != spec_.damage_overrides.end()) {
        return it->second;
    }
    return default_damage(kind);
}

int Maze::monster_damage(int monster_index) const noexcept {
    return damage(spec_.monsters[static_cast<std::size_t>(monster_index)].kind);
}

CellContent Maze::content(Cell c) const noexcept {
    if (!in_bounds(c)) return CellContent::Obstacle;
    return contents_[static_cast<std::size_t>(cell_index(c))];
}

int Maze::entity_index(Cell c) const noexcept {
    if (!in_bounds(c)) return -1;
    return indices_[static_cast<std::size_t>(cell_index(c))];
}

std::string maze_hash(const Maze& maze) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : serialize_maze(maze)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace mazemate
