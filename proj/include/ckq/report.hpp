#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ckq {

using json = nlohmann::ordered_json;

// Outcome of one verification. pass holds iff residual <= tolerance and every condition holds.
struct Report {
    std::string check;
    json inputs = json::object();
    double residual = 0;
    double tolerance = 0;
    std::vector<std::pair<std::string, bool>> conditions;
    json detail = json::object();
    double wall_ms = 0;
    bool pass = false;

    Report& finish() {
        pass = residual <= tolerance;
        for (const auto& c : conditions) pass = pass && c.second;
        return *this;
    }
    json to_json(bool timing = false) const;
};

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

}  // namespace ckq
