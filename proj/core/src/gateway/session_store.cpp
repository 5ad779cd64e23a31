#include "mazemate/gateway/session_store.hpp"

#include <fstream>
#include <sstream>

#include "mazemate/errors.hpp"

namespace mazemate::gateway {

using json = nlohmann::json;

namespace {

json finding_to_json(const Finding& f) {
    json j;
    j["start"] = f.start;
    switch (f.kind) {
        case FindingKind::Run:
            j["type"] = "run";
            j["action"] = std::string(action_keyword(f.actions.front()));
            j["length"] = f.length;
            break;
        case FindingKind::RepeatedBlock: {
            j["type"] = "repeated_block";
            json actions = json::array();
            for (Action a : f.actions) actions.push_back(std::string(action_keyword(a)));
            j["actions"] = actions;
            j["repetitions"] = f.repetitions;
            break;
        }
        case FindingKind::Attack: j["type"] = "attack"; break;
    }
    return j;
}

Action action_from_json(const json& j) {
    auto a = action_from_keyword(j.get<std::string>());
    if (!a) throw SchemaError("unknown action '" + j.get<std::string>() + "'");
    return *a;
}

Finding finding_from_json(const json& j) {
    Finding f;
    f.start = j.at("start").get<int>();
    const auto type = j.at("type").get<std::string>();
    if (type == "run") {
        f.kind = FindingKind::Run;
        f.actions = {action_from_json(j.at("action"))};
        f.length = j.at("length").get<int>();
    } else if (type == "repeated_block") {
        f.kind = FindingKind::RepeatedBlock;
        for (const auto& a : j.at("actions")) f.actions.push_back(action_from_json(a));
        f.length = static_cast<int>(f.actions.size());
        f.repetitions = j.at("repetitions").get<int>();
    } else if (type == "attack") {
        f.kind = FindingKind::Attack;
        f.actions = {Action::Attack};
        f.length = 1;
    } else {
        throw SchemaError("unknown finding type '" + type + "'");
    }
    return f;
}

json session_json(const StoredSession& s) {
    json j;
    j["id"] = s.hint.id;
    j["maze_id"] = s.maze_id;
    j["maze_hash"] = s.hint.maze_hash;
    j["stage"] = s.hint.stage;
    j["created_ms"] = s.hint.created_ms;
    j["updated_ms"] = s.hint.updated_ms;
    json log = json::array();
    for (const auto& p : s.hint.log) log.push_back(hint_payload_to_json(p));
    j["log"] = log;
    json chat = json::array();
    for (const auto& t : s.chat) chat.push_back(chat_turn_to_json(t));
    j["chat"] = chat;
    return j;
}

StoredSession session_from_json(const json& j) {
    StoredSession s;
    s.hint.id = j.at("id").get<std::string>();
    s.maze_id = j.at("maze_id").get<std::string>();
    s.hint.maze_hash = j.at("maze_hash").get<std::string>();
    s.hint.stage = j.at("stage").get<int>();
    s.hint.created_ms = j.at("created_ms").get<std::int64_t>();
    s.hint.updated_ms = j.at("updated_ms").get<std::int64_t>();
    for (const auto& p : j.at("log")) s.hint.log.push_back(hint_payload_from_json(p));
    for (const auto& t : j.at("chat")) s.chat.push_back(chat_turn_from_json(t));
    return s;
}

}  // namespace

json hint_payload_to_json(const HintPayload& p) {
    json j;
    j["stage"] = p.stage;
    j["kind"] = std::string(hint_kind_name(p.kind));
    json content = json::object();
    switch (p.kind) {
        case HintKind::LowEfficiencySteps: {
            json actions = json::array();
            for (Action a : p.actions) actions.push_back(std::string(action_keyword(a)));
            content["actions"] = actions;
            break;
        }
        case HintKind::TransformationHints: {
            json findings = json::array();
            for (const auto& f : p.findings) findings.push_back(finding_to_json(f));
            content["findings"] = findings;
            break;
        }
        case HintKind::HighEfficiencyProgram: content["program"] = p.program_text; break;
    }
    j["content"] = content;
    j["rendered_text"] = p.rendered_text;
    return j;
}

HintPayload hint_payload_from_json(const json& j) {
    HintPayload p;
    p.stage = j.at("stage").get<int>();
    const auto kind = j.at("kind").get<std::string>();
    const json& content = j.at("content");
    if (kind == hint_kind_name(HintKind::LowEfficiencySteps)) {
        p.kind = HintKind::LowEfficiencySteps;
        for (const auto& a : content.at("actions")) p.actions.push_back(action_from_json(a));
    } else if (kind == hint_kind_name(HintKind::TransformationHints)) {
        p.kind = HintKind::TransformationHints;
        for (const auto& f : content.at("findings")) p.findings.push_back(finding_from_json(f));
    } else if (kind == hint_kind_name(HintKind::HighEfficiencyProgram)) {
        p.kind = HintKind::HighEfficiencyProgram;
        p.program_text = content.at("program").get<std::string>();
    } else {
        throw SchemaError("unknown hint kind '" + kind + "'");
    }
    p.rendered_text = j.at("rendered_text").get<std::string>();
    return p;
}

SessionStore::SessionStore(std::optional<std::filesystem::path> snapshot) : path_(std::move(snapshot)) {
    if (!path_ || !std::filesystem::exists(*path_)) return;
    std::ifstream in(*path_, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read snapshot " + path_->string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        json doc = json::parse(buf.str());
        for (const auto& [id, maze_doc] : doc.at("mazes").items()) {
            mazes_[id] = serialize_maze(parse_maze(maze_doc.dump()));
        }
        for (const auto& [id, s] : doc.at("sessions").items()) sessions_[id] = session_from_json(s);
    } catch (const std::exception& e) {
        throw std::runtime_error("unreadable snapshot " + path_->string() + ": " + e.what());
    }
}

void SessionStore::put_maze(const std::string& id, const Maze& maze) {
    std::lock_guard lock(mu_);
    mazes_[id] = serialize_maze(maze);
    persist_locked();
}

std::optional<Maze> SessionStore::get_maze(const std::string& id) const {
    std::string doc;
    {
        std::lock_guard lock(mu_);
        auto it = mazes_.find(id);
        if (it == mazes_.end()) return std::nullopt;
        doc = it->second;
    }
    return parse_maze(doc);
}

void SessionStore::create_session(const StoredSession& session) {
    std::lock_guard lock(mu_);
    sessions_[session.hint.id] = session;
    persist_locked();
}

std::optional<StoredSession> SessionStore::get_session(const std::string& id) const {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return std::nullopt;
    return it->second;
}

std::shared_ptr<std::mutex> SessionStore::session_lock(const std::string& id) {
    std::lock_guard lock(mu_);
    auto& l = locks_[id];
    if (!l) l = std::make_shared<std::mutex>();
    return l;
}

void SessionStore::update_session(const std::string& id, const std::function<void(StoredSession&)>& fn) {
    auto guard = session_lock(id);
    std::lock_guard session_guard(*guard);
    auto current = get_session(id);
    if (!current) throw NotFoundError("session '" + id + "' not found");
    fn(*current);
    std::lock_guard lock(mu_);
    sessions_[id] = std::move(*current);
    persist_locked();
}

std::size_t SessionStore::session_count() const {
    std::lock_guard lock(mu_);
    return sessions_.size();
}

std::string SessionStore::snapshot_text() const {
    std::lock_guard lock(mu_);
    return snapshot_text_locked();
}

std::string SessionStore::snapshot_text_locked() const {
    json doc;
    doc["version"] = 1;
    json mazes = json::object();
    for (const auto& [id, text] : mazes_) mazes[id] = json::parse(text);
    doc["mazes"] = mazes;
    json sessions = json::object();
    for (const auto& [id, s] : sessions_) sessions[id] = session_json(s);
    doc["sessions"] = sessions;
    return doc.dump(2) + "\n";
}

void SessionStore::persist_locked() const {
    if (!path_) return;
    auto tmp = *path_;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write snapshot " + tmp.string());
        out << snapshot_text_locked();
    }
    std::filesystem::rename(tmp, *path_);
}

}  // namespace mazemate::gateway
