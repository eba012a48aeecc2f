#include "ckq/report.hpp"

#include <cmath>

namespace ckq {

json Report::to_json(bool timing) const {
    json j;
    j["check"] = check;
    for (auto it = inputs.begin(); it != inputs.end(); ++it) j[it.key()] = it.value();
    j["residual"] = std::isfinite(residual) ? json(residual) : json(nullptr);
    j["tolerance"] = tolerance;
    if (!conditions.empty()) {
        json c = json::object();
        for (const auto& [k, v] : conditions) c[k] = v;
        j["conditions"] = c;
    }
    if (!detail.empty()) j["detail"] = detail;
    j["pass"] = pass;
    if (timing) j["wall_ms"] = wall_ms;
    return j;
}

}  // namespace ckq
