#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace orlicz {

using Json = nlohmann::ordered_json;

/// Bumped on any change to field names or meaning.
inline constexpr int kReportSchemaVersion = 1;

/// Outcome of one experiment. `pass` is decided from the values in
/// `thresholds`, which are recorded next to the statistics they judge.
struct ExperimentReport {
    std::string name;
    Json params = Json::object();
    Json statistics = Json::object();
    Json thresholds = Json::object();
    std::vector<std::string> flags;
    bool pass = false;
    std::uint64_t sample_size = 0;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    double duration_ms = 0.0;
};

Json to_json(const ExperimentReport& r);

}  // namespace orlicz
