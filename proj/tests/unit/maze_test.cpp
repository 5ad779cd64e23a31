#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "mazemate/errors.hpp"
#include "mazemate/maze.hpp"
#include "support/test_support.hpp"

using namespace mazemate;
using mazemate::testing::grid_maze;
using mazemate::testing::random_maze;

namespace {

constexpr const char* kTrivial = R"({"width":3,"height":1,"start":{"x":0,"y":0,"dir":"E"},"goal":{"x":2,"y":0}})";

std::string error_message(const auto& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("minimal document takes defaults") {
    Maze m = parse_maze(kTrivial);
    CHECK(m.width() == 3);
    CHECK(m.height() == 1);
    CHECK(m.gems().empty());
    CHECK(m.initial_health() == 100);
    CHECK(m.heart_heal() == 20);
    CHECK(m.start() == Cell{0, 0});
    CHECK(m.start_orientation() == Direction::East);
    CHECK(m.goal() == Cell{2, 0});
}

TEST_CASE("monster damage table") {
    CHECK(default_damage(MonsterKind::Bat) == 20);
    CHECK(default_damage(MonsterKind::Ghost) == 40);
    CHECK(default_damage(MonsterKind::SkeletonArcher) == 20);
    CHECK(default_damage(MonsterKind::Dragon) == 60);

    Maze m = parse_maze(R"({"width":3,"height":1,"start":{"x":0,"y":0,"dir":"E"},"goal":{"x":2,"y":0},
                           "monsters":[{"x":1,"y":0,"kind":"dragon"}]})");
    REQUIRE(m.monsters().size() == 1);
    CHECK(m.monsters()[0].kind == MonsterKind::Dragon);
    CHECK(m.monster_damage(0) == 60);
    CHECK(m.content({1, 0}) == CellContent::Monster);
}

TEST_CASE("damage overrides replace the table per maze") {
    Maze m = parse_maze(R"({"width":3,"height":1,"start":{"x":0,"y":0,"dir":"E"},"goal":{"x":2,"y":0},
                           "config":{"damage_overrides":{"bat":5}}})");
    CHECK(m.damage(MonsterKind::Bat) == 5);
    CHECK(m.damage(MonsterKind::Dragon) == 60);
}

TEST_CASE("co-located entities are rejected naming the cell") {
    auto msg = error_message([] {
        parse_maze(R"({"width":3,"height":1,"start":{"x":0,"y":0,"dir":"E"},"goal":{"x":2,"y":0},
                      "obstacles":[{"x":1,"y":0}],"gems":[{"x":1,"y":0}]})");
    });
    CHECK(msg.find("(1,0)") != std::string::npos);
    CHECK_THROWS_AS(parse_maze(R"({"width":3,"height":1,"start":{"x":0,"y":0,"dir":"E"},"goal":{"x":2,"y":0},
                                  "obstacles":[{"x":1,"y":0}],"gems":[{"x":1,"y":0}]})"),
                    SchemaError);
}

TEST_CASE("schema violations") {
    SUBCASE("missing goal") {
        CHECK_THROWS_AS(parse_maze(R"({"width":3,"height":1,"start":{"x":0,"y":0,"dir":"E"}})"), SchemaError);
    }
    SUBCASE("duplicate start") {
        CHECK_THROWS_AS(parse_maze(R"({"width":3,"height":1,"start":{"x":0,"y":0,"dir":"E"},
                                      "start":{"x":1,"y":0,"dir":"E"},"goal":{"x":2,"y":0}})"),
                        SchemaError);
    }
    SUBCASE("out of bounds names field and coordinate") {
        auto msg = error_message([] {
            parse_maze(R"({"width":3,"height":1,"start":{"x":0,"y":0,"dir":"E"},"goal":{"x":2,"y":0},
                          "gems":[{"x":5,"y":0}]})");
        });
        CHECK(msg.find("gems") != std::string::npos);
        CHECK(msg.find("(5,0)") != std::string::npos);
    }
    SUBCASE("start equals goal") {
        CHECK_THROWS_AS(parse_maze(R"({"width":3,"height":1,"start":{"x":0,"y":0,"dir":"E"},"goal":{"x":0,"y":0}})"),
                        SchemaError);
    }
    SUBCASE("monster on goal") {
        CHECK_THROWS_AS(parse_maze(R"({"width":3,"height":1,"start":{"x":0,"y":0,"dir":"E"},"goal":{"x":2,"y":0},
                                      "monsters":[{"x":2,"y":0,"kind":"bat"}]})"),
                        SchemaError);
    }
    SUBCASE("unknown monster kind") {
        CHECK_THROWS_AS(parse_maze(R"({"width":3,"height":1,"start":{"x":0,"y":0,"dir":"E"},"goal":{"x":2,"y":0},
                                      "monsters":[{"x":1,"y":0,"kind":"troll"}]})"),
                        SchemaError);
    }
    SUBCASE("bad direction") {
        CHECK_THROWS_AS(parse_maze(R"({"width":3,"height":1,"start":{"x":0,"y":0,"dir":"Q"},"goal":{"x":2,"y":0}})"),
                        SchemaError);
    }
    SUBCASE("non-positive health") {
        CHECK_THROWS_AS(parse_maze(R"({"width":3,"height":1,"start":{"x":0,"y":0,"dir":"E"},"goal":{"x":2,"y":0},
                                      "config":{"initial_health":0}})"),
                        SchemaError);
    }
    SUBCASE("gem cap") {
        MazeSpec spec;
        spec.width = 20;
        spec.height = 1;
        spec.goal = {19, 0};
        for (int x = 1; x <= 17; ++x) spec.gems.push_back({x, 0});
        CHECK_THROWS_AS(Maze::create(spec), SchemaError);
    }
    SUBCASE("unknown key") {
        CHECK_THROWS_AS(parse_maze(R"({"width":3,"height":1,"start":{"x":0,"y":0,"dir":"E"},"goal":{"x":2,"y":0},
                                      "lava":[]})"),
                        SchemaError);
    }
}

TEST_CASE("malformed JSON is a syntax error with a position") {
    try {
        parse_maze("{\n  \"width\": 3,\n  oops\n}");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() > 0);
    }
}

TEST_CASE("trivial maze round-trips") {
    Maze m = parse_maze(kTrivial);
    CHECK(parse_maze(serialize_maze(m)) == m);
}

TEST_CASE("canonical serialization fixes key order and sorts entities") {
    Maze m = grid_maze({"S.g", "#bh", "g.G"});
    const std::string text = serialize_maze(m);
    const auto doc = nlohmann::ordered_json::parse(text);
    std::vector<std::string> keys;
    for (const auto& [k, v] : doc.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"width", "height", "start", "goal", "obstacles", "gems", "hearts",
                                           "monsters", "config"});
    CHECK(doc["gems"][0]["y"] == 0);
    CHECK(doc["gems"][1]["y"] == 2);
    CHECK(doc["monsters"][0]["kind"] == "bat");
}

TEST_CASE("listing order does not change the canonical bytes") {
    const char* a = R"({"width":4,"height":2,"start":{"x":0,"y":0,"dir":"S"},"goal":{"x":3,"y":1},
        "gems":[{"x":2,"y":1},{"x":1,"y":0}],"monsters":[{"x":3,"y":0,"kind":"ghost"},{"x":0,"y":1,"kind":"bat"}],
        "config":{"heart_heal":10,"initial_health":120}})";
    const char* b = R"({"config":{"initial_health":120,"heart_heal":10},
        "monsters":[{"kind":"bat","x":0,"y":1},{"x":3,"y":0,"kind":"ghost"}],"gems":[{"x":1,"y":0},{"x":2,"y":1}],
        "goal":{"y":1,"x":3},"start":{"dir":"S","x":0,"y":0},"height":2,"width":4})";
    CHECK(serialize_maze(parse_maze(a)) == serialize_maze(parse_maze(b)));
    CHECK(maze_hash(parse_maze(a)) == maze_hash(parse_maze(b)));
}

TEST_CASE("random mazes round-trip and reshuffle to identical bytes") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        Maze m = random_maze(rng, {.min_side = 1, .max_width = 8, .max_height = 8, .max_gems = 4,
                                   .max_monsters = 3, .max_hearts = 2});
        const std::string text = serialize_maze(m);
        Maze back = parse_maze(text);
        CHECK(back == m);

        MazeSpec shuffled = m.spec();
        std::shuffle(shuffled.gems.begin(), shuffled.gems.end(), rng);
        std::shuffle(shuffled.obstacles.begin(), shuffled.obstacles.end(), rng);
        std::shuffle(shuffled.monsters.begin(), shuffled.monsters.end(), rng);
        CHECK(serialize_maze(Maze::create(shuffled)) == text);
    }
}

TEST_CASE("maze hash is 16 hex digits and content sensitive") {
    Maze a = grid_maze({"S.G"});
    Maze b = grid_maze({"Sg.G"});
    CHECK(maze_hash(a).size() == 16);
    CHECK(maze_hash(a) != maze_hash(b));
    CHECK(maze_hash(a) == maze_hash(grid_maze({"S.G"})));
}

TEST_CASE("directions") {
    CHECK(turn_left(Direction::North) == Direction::West);
    CHECK(turn_right(Direction::West) == Direction::North);
    CHECK(turn_back(Direction::East) == Direction::West);
    CHECK(ahead({2, 2}, Direction::North) == Cell{2, 1});
    CHECK(ahead({2, 2}, Direction::South) == Cell{2, 3});
    CHECK(grid_maze({"S.G"}).content({-1, 0}) == CellContent::Obstacle);
    CHECK(grid_maze({"S.G"}).content({3, 0}) == CellContent::Obstacle);
}
