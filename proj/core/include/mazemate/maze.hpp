#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mazemate {

inline constexpr int kMaxGems = 16;
inline constexpr int kMaxHearts = 8;
inline constexpr int kMaxMonsters = 16;
inline constexpr int kMaxSide = 1024;
inline constexpr int kDefaultInitialHealth = 100;
inline constexpr int kDefaultHeartHeal = 20;

struct Cell {
    int x = 0;
    int y = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
    // Canonical order is row-major: (y, x).
    friend std::strong_ordering operator<=>(const Cell& a, const Cell& b) {
        if (auto c = a.y <=> b.y; c != 0) return c;
        return a.x <=> b.x;
    }
};

enum class Direction : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

Direction turn_left(Direction d) noexcept;
Direction turn_right(Direction d) noexcept;
Direction turn_back(Direction d) noexcept;
Cell ahead(Cell c, Direction d) noexcept;  // y grows southwards

char direction_letter(Direction d) noexcept;
std::optional<Direction> direction_from_letter(std::string_view s) noexcept;

enum class MonsterKind : std::uint8_t { Bat = 0, Ghost = 1, SkeletonArcher = 2, Dragon = 3 };
inline constexpr int kMonsterKindCount = 4;

// Damage inflicted when the avatar defeats a monster of this kind.
int default_damage(MonsterKind kind) noexcept;
std::string_view monster_kind_name(MonsterKind kind) noexcept;
std::optional<MonsterKind> monster_kind_from_name(std::string_view name) noexcept;

struct Monster {
    Cell cell;
    MonsterKind kind = MonsterKind::Bat;

    friend bool operator==(const Monster&, const Monster&) = default;
};

// Plain description of a maze as authored. Maze::create validates it.
struct MazeSpec {
    int width = 0;
    int height = 0;
    std::vector<Cell> obstacles;
    std::vector<Cell> gems;
    std::vector<Cell> hearts;
    std::vector<Monster> monsters;
    Cell start;
    Direction start_orientation = Direction::East;
    Cell goal;
    int initial_health = kDefaultInitialHealth;
    int heart_heal = kDefaultHeartHeal;
    std::map<MonsterKind, int> damage_overrides;

    friend bool operator==(const MazeSpec&, const MazeSpec&) = default;
};

enum class CellContent : std::uint8_t { Empty, Obstacle, Gem, Heart, Monster };

// Immutable, validated maze. Entity lists are kept sorted by (y, x); the
// position of an entity in its list is its bit in the state bitmasks.
class Maze {
public:
    // Throws SchemaError naming the offending field and coordinate.
    static Maze create(MazeSpec spec);

    const MazeSpec& spec() const noexcept { return spec_; }
    int width() const noexcept { return spec_.width; }
    int height() const noexcept { return spec_.height; }
    Cell start() const noexcept { return spec_.start; }
    Direction start_orientation() const noexcept { return spec_.start_orientation; }
    Cell goal() const noexcept { return spec_.goal; }
    int initial_health() const noexcept { return spec_.initial_health; }
    int heart_heal() const noexcept { return spec_.heart_heal; }
    const std::vector<Cell>& obstacles() const noexcept { return spec_.obstacles; }
    const std::vector<Cell>& gems() const noexcept { return spec_.gems; }
    const std::vector<Cell>& hearts() const noexcept { return spec_.hearts; }
    const std::vector<Monster>& monsters() const noexcept { return spec_.monsters; }

    int damage(MonsterKind kind) const noexcept;
    int monster_damage(int monster_index) const noexcept;

    bool in_bounds(Cell c) const noexcept {
        return c.x >= 0 && c.y >= 0 && c.x < spec_.width && c.y < spec_.height;
    }
    int cell_index(Cell c) const noexcept { return c.y * spec_.width + c.x; }
    Cell cell_at(int index) const noexcept { return {index % spec_.width, index / spec_.width}; }

    // Out-of-bounds cells report Obstacle.
    CellContent content(Cell c) const noexcept;
    // Index of the gem/heart/monster at c within its list, or -1.
    int entity_index(Cell c) const noexcept;

    std::uint32_t full_gem_mask() const noexcept {
        return spec_.gems.size() >= 32 ? ~0u : (1u << spec_.gems.size()) - 1u;
    }

    friend bool operator==(const Maze& a, const Maze& b) { return a.spec_ == b.spec_; }

private:
    Maze() = default;

    MazeSpec spec_;
    std::vector<CellContent> contents_;
    std::vector<std::int16_t> indices_;
};

// JSON maze document <-> Maze. serialize_maze output is canonical: fixed key
// order, entity lists sorted by (y, x), so equal mazes give identical bytes.
Maze parse_maze(std::string_view document);
std::string serialize_maze(const Maze& maze);

// FNV-1a over the canonical serialization, as 16 lowercase hex digits.
std::string maze_hash(const Maze& maze);

}  // namespace mazemate
