#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "mazemate/errors.hpp"

namespace mazemate {

// Cooperative time box for long-running searches.
class Deadline {
public:
    using Clock = std::chrono::steady_clock;

    Deadline() = default;

    static Deadline none() { return {}; }
    static Deadline after(Clock::duration budget) { return Deadline(Clock::now() + budget); }

    bool expired() const { return at_ && Clock::now() >= *at_; }

    // Throws LimitError naming the interrupted operation.
    void check(const std::string& what) const {
        if (expired()) throw LimitError(what + ": time budget exceeded");
    }

private:
    explicit Deadline(Clock::time_point at) : at_(at) {}

    std::optional<Clock::time_point> at_;
};

}  // namespace mazemate
