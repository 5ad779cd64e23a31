// JSON maze document format.

#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mazemate/errors.hpp"
#include "mazemate/maze.hpp"

namespace mazemate {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

json parse_json_strict(std::string_view document) {
    // nlohmann keeps the last of duplicated keys; reject them instead.
    std::vector<std::set<std::string>> seen;
    std::vector<std::string> path;
    json::parser_callback_t cb = [&](int depth, json::parse_event_t event, json& parsed) {
        switch (event) {
            case json::parse_event_t::object_start: seen.emplace_back(); break;
            case json::parse_event_t::object_end:
                if (!seen.empty()) seen.pop_back();
                break;
            case json::parse_event_t::key: {
                auto key = parsed.get<std::string>();
                if (!seen.empty() && !seen.back().insert(key).second) {
                    throw SchemaError(key + ": duplicate key at depth " + std::to_string(depth));
                }
                break;
            }
            default: break;
        }
        return true;
    };
    try {
        return json::parse(document.begin(), document.end(), cb);
    } catch (const json::parse_error& e) {
        auto [line, column] = line_column(document, e.byte == 0 ? 0 : e.byte - 1);
        throw SyntaxError(std::string("malformed maze document: ") + e.what(), line, column);
    }
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw SchemaError(where + (where.empty() ? "" : ".") + key + ": unknown key");
    }
}

int get_int(const json& obj, const std::string& where, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(where + "." + key + ": missing");
    if (!it->is_number_integer()) throw SchemaError(where + "." + key + ": expected an integer");
    auto v = it->get<long long>();
    if (v < -1'000'000'000LL || v > 1'000'000'000LL) {
        throw SchemaError(where + "." + key + ": value out of range");
    }
    return static_cast<int>(v);
}

const json& get_object(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(std::string(key) + ": missing");
    if (!it->is_object()) throw SchemaError(std::string(key) + ": expected an object");
    return *it;
}

Cell get_cell(const json& obj, const std::string& where) {
    if (!obj.is_object()) throw SchemaError(where + ": expected an object with x and y");
    return {get_int(obj, where, "x"), get_int(obj, where, "y")};
}

std::vector<Cell> get_cells(const json& doc, const char* key) {
    std::vector<Cell> out;
    auto it = doc.find(key);
    if (it == doc.end()) return out;
    if (!it->is_array()) throw SchemaError(std::string(key) + ": expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
        std::string where = std::string(key) + "[" + std::to_string(i) + "]";
        check_keys((*it)[i], where, {"x", "y"});
        out.push_back(get_cell((*it)[i], where));
    }
    return out;
}

ordered_json cell_json(Cell c) {
    ordered_json j;
    j["x"] = c.x;
    j["y"] = c.y;
    return j;
}

}  // namespace

Maze parse_maze(std::string_view document) {
    json doc = parse_json_strict(document);
    if (!doc.is_object()) throw SchemaError("document: expected a JSON object");
    check_keys(doc, "",
               {"width", "height", "start", "goal", "obstacles", "gems", "hearts", "monsters",
                "config"});

    MazeSpec spec;
    if (!doc.contains("width")) throw SchemaError("width: missing");
    if (!doc.contains("height")) throw SchemaError("height: missing");
    spec.width = get_int(doc, "document", "width");
    spec.height = get_int(doc, "document", "height");

    const json& start = get_object(doc, "start");
    check_keys(start, "start", {"x", "y", "dir"});
    spec.start = get_cell(start, "start");
    auto dir_it = start.find("dir");
    if (dir_it == start.end()) throw SchemaError("start.dir: missing");
    if (!dir_it->is_string()) throw SchemaError("start.dir: expected one of N, E, S, W");
    auto dir = direction_from_letter(dir_it->get<std::string>());
    if (!dir) throw SchemaError("start.dir: expected one of N, E, S, W");
    spec.start_orientation = *dir;

    const json& goal = get_object(doc, "goal");
    check_keys(goal, "goal", {"x", "y"});
    spec.goal = get_cell(goal, "goal");

    spec.obstacles = get_cells(doc, "obstacles");
    spec.gems = get_cells(doc, "gems");
    spec.hearts = get_cells(doc, "hearts");

    if (auto it = doc.find("monsters"); it != doc.end()) {
        if (!it->is_array()) throw SchemaError("monsters: expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            std::string where = "monsters[" + std::to_string(i) + "]";
            const json& m = (*it)[i];
            if (!m.is_object()) throw SchemaError(where + ": expected an object");
            check_keys(m, where, {"x", "y", "kind"});
            Monster monster;
            monster.cell = get_cell(m, where);
            auto kind_it = m.find("kind");
            if (kind_it == m.end() || !kind_it->is_string()) {
                throw SchemaError(where + ".kind: expected a monster kind");
            }
            auto kind = monster_kind_from_name(kind_it->get<std::string>());
            if (!kind) {
                throw SchemaError(where + ".kind: unknown monster kind '" +
                                  kind_it->get<std::string>() + "'");
            }
            monster.kind = *kind;
            spec.monsters.push_back(monster);
        }
    }

    if (auto it = doc.find("config"); it != doc.end()) {
        if (!it->is_object()) throw SchemaError("config: expected an object");
        check_keys(*it, "config", {"initial_health", "heart_heal", "damage_overrides"});
        if (it->contains("initial_health")) {
            spec.initial_health = get_int(*it, "config", "initial_health");
        }
        if (it->contains("heart_heal")) spec.heart_heal = get_int(*it, "config", "heart_heal");
        if (auto ov = it->find("damage_overrides"); ov != it->end()) {
            if (!ov->is_object()) throw SchemaError("config.damage_overrides: expected an object");
            for (const auto& [name, value] : ov->items()) {
                auto kind = monster_kind_from_name(name);
                if (!kind) {
                    throw SchemaError("config.damage_overrides." + name + ": unknown monster kind");
                }
                spec.damage_overrides[*kind] =
                    get_int(*ov, "config.damage_overrides", name.c_str());
            }
        }
    }

    return Maze::create(std::move(spec));
}

std::string serialize_maze(const Maze& maze) {
    ordered_json doc;
    doc["width"] = maze.width();
    doc["height"] = maze.height();
    ordered_json start = cell_json(maze.start());
    start["dir"] = std::string(1, direction_letter(maze.start_orientation()));
    doc["start"] = start;
    doc["goal"] = cell_json(maze.goal());
    auto cells = [](const std::vector<Cell>& v) {
        ordered_json a = ordered_json::array();
        for (Cell c : v) a.push_back(cell_json(c));
        return a;
    };
    doc["obstacles"] = cells(maze.obstacles());
    doc["gems"] = cells(maze.gems());
    doc["hearts"] = cells(maze.hearts());
    ordered_json monsters = ordered_json::array();
    for (const Monster& m : maze.monsters()) {
        ordered_json j = cell_json(m.cell);
        j["kind"] = std::string(monster_kind_name(m.kind));
        monsters.push_back(j);
    }
    doc["monsters"] = monsters;
    ordered_json config;
    config["initial_health"] = maze.initial_health();
    config["heart_heal"] = maze.heart_heal();
    ordered_json overrides = ordered_json::object();
    for (const auto& [kind, dmg] : maze.spec().damage_overrides) {
        overrides[std::string(monster_kind_name(kind))] = dmg;
    }
    config["damage_overrides"] = overrides;
    doc["config"] = config;
    return doc.dump(2) + "\n";
}

}  // namespace mazemate
