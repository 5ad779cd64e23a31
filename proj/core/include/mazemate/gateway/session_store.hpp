#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mazemate/gateway/chat.hpp"
#include "mazemate/maze.hpp"
#include "mazemate/scaffold.hpp"

namespace mazemate::gateway {

struct StoredSession {
    HintSession hint;
    std::string maze_id;
    std::vector<ChatTurn> chat;
};

nlohmann::json hint_payload_to_json(const HintPayload& p);
HintPayload hint_payload_from_json(const nlohmann::json& j);

// Mazes and sessions, persisted write-through to a single JSON snapshot file
// (rewritten atomically on every change). Without a path it is memory-only.
class SessionStore {
public:
    // Loads the snapshot if the file exists; throws on an unreadable file.
    explicit SessionStore(std::optional<std::filesystem::path> snapshot = std::nullopt);

    void put_maze(const std::string& id, const Maze& maze);
    std::optional<Maze> get_maze(const std::string& id) const;

    void create_session(const StoredSession& session);
    std::optional<StoredSession> get_session(const std::string& id) const;

    // Serialised read-modify-write of one session. `fn` edits a copy that is
    // committed (and persisted) only if it returns without throwing. Throws
    // NotFoundError for unknown ids.
    void update_session(const std::string& id, const std::function<void(StoredSession&)>& fn);

    std::size_t session_count() const;

    // Canonical snapshot document; equal stores give identical bytes.
    std::string snapshot_text() const;

private:
    std::shared_ptr<std::mutex> session_lock(const std::string& id);
    void persist_locked() const;
    std::string snapshot_text_locked() const;

    std::optional<std::filesystem::path> path_;
    mutable std::mutex mu_;
    std::map<std::string, std::string> mazes_;  // id -> canonical document
    std::map<std::string, StoredSession> sessions_;
    std::map<std::string, std::shared_ptr<std::mutex>> locks_;
};

}  // namespace mazemate::gateway
